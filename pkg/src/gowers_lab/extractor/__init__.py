"""Constructive extraction of monochromatic and approximately monochromatic
block sequences; every witness is re-verified before it is returned."""
from .canon import canonize_block_types, canonize_signed, canonize_types, is_type_canonical
from .mt import mt_search
from .multidim import canon_d, extract_multidim_positive, extract_multidim_signed, stab_d
from .positive import (direct_search_positive, extract_positive, is_insensitive, lift,
                       make_insensitive, pyramid_sequence, q_map)
from .report import Budget, BudgetExhausted, ExtractionReport, Status
from .signed import approximate_witness, extract_signed, q_delta, signed_carrier

__all__ = [
    "Budget", "BudgetExhausted", "ExtractionReport", "Status",
    "mt_search", "canonize_types", "canonize_signed", "canonize_block_types", "is_type_canonical",
    "pyramid_sequence", "is_insensitive", "make_insensitive", "q_map", "lift",
    "extract_positive", "direct_search_positive",
    "q_delta", "signed_carrier", "approximate_witness", "extract_signed",
    "stab_d", "canon_d", "extract_multidim_positive", "extract_multidim_signed",
]
