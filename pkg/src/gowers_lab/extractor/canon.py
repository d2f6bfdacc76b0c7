"""Type canonicalization: find ``s`` on which the color depends only on the type."""
from __future__ import annotations

import itertools

from ..blocks import SetBlockSeq, SpanMode, block_subseqs, enumerate_set_block_seqs, span
from ..core import char_fn
from ..gtypes import block_map, block_type, map_onto, tp, types_up_to
from ..oracle import BLOCK_PM, SETS, X, X_PM, ColoringOracle, Domain, DomainMismatch
from .mt import mt_first
from .report import Budget, BudgetExhausted, ExtractionReport, Status, absent, as_budget, out_of_budget


def _require(c, kind: str, n: int, k: int, d: int = 1) -> None:
    dom = getattr(c, "domain", None)
    if dom is None:
        return
    if dom.kind != kind or dom.n != n or dom.k != k or (dom.is_sequence and dom.d != d):
        raise DomainMismatch(f"oracle on {dom}, expected {Domain(kind, n, k, d)}")


def sphere_over(s: SetBlockSeq, k: int, signed: bool) -> list:
    """X_k(s) (or X_{±k}(s)) as the strict span of ``(k chi_{s_i})``."""
    base = [char_fn(b, s.ambient, k) for b in s.sets]
    return span(base, SpanMode.SIGNED_STRICT if signed else SpanMode.POS_STRICT, k)


def is_type_canonical(s: SetBlockSeq, c, k: int, signed: bool = False) -> bool:
    seen: dict = {}
    for f in sphere_over(s, k, signed):
        key = tp(f)
        col = c(f)
        if seen.setdefault(key, col) != col:
            return False
    return True


def block_sphere_over(s: SetBlockSeq, k: int, d: int, signed: bool) -> list[tuple]:
    base = [char_fn(b, s.ambient, k) for b in s.sets]
    return block_subseqs(base, d, SpanMode.SIGNED_STRICT if signed else SpanMode.POS_STRICT, k)


def is_block_type_canonical(s: SetBlockSeq, c, k: int, d: int, signed: bool = True) -> bool:
    seen: dict = {}
    for H in block_sphere_over(s, k, d, signed):
        key = block_type(H)
        col = c(H)
        if seen.setdefault(key, col) != col:
            return False
    return True


def _block_type_tuples(k: int, d: int, L: int, signed: bool) -> list[tuple]:
    """Every ``d``-tuple of types of total length at most ``L``."""
    pool = types_up_to(k, L, signed)
    out = []
    for combo in itertools.product(pool, repeat=d):
        if sum(len(p) for p in combo) <= L:
            out.append(combo)
    return out


def _canon(n: int, L: int, derived, verify, budget: Budget):
    """Run the MT construction with target ``2L-1`` on the derived coloring
    and truncate.  Falls back to a direct search over ``Block^L(n)`` when the
    construction has no room (``n < 2L-1``)."""
    if 2 * L - 1 <= n:
        res = mt_first(SetBlockSeq.singletons(n), L, 2 * L - 1, derived, budget)
        if res is None:
            return None, "mt"
        masks, _ = res
        s = SetBlockSeq.singletons(n).apply(masks[:L])
        if not verify(s):
            raise AssertionError(f"canonicalization produced a non-canonical {s!r}")
        return s, "mt"
    if L > n:
        return None, "direct"
    for s in enumerate_set_block_seqs(n, L):
        budget.tick()
        if verify(s):
            return s, "direct"
    return None, "direct"


def _run(kind, params, n, L, derived, verify, budget) -> ExtractionReport:
    budget = as_budget(budget)
    try:
        s, method = _canon(n, L, derived, verify, budget)
    except BudgetExhausted:
        return out_of_budget(kind, params, budget)
    if s is None:
        return absent(kind, params, budget.used, f"method={method}")
    return ExtractionReport(Status.FOUND, witness=s, examined=budget.used, kind=kind,
                            params=params, notes=[f"method={method}"])


def canonize_types(n: int, k: int, m: int, c, budget=None, signed: bool = False) -> ExtractionReport:
    """``s`` of length ``m`` such that equal types over ``s`` get equal colors.

    The derived coloring sends ``t`` in ``Block^m(n)`` to the vector
    ``(c(map(phi, t|len(phi))))_phi`` over all types of length at most ``m``.
    """
    if not 1 <= m:
        raise ValueError("m must be positive")
    _require(c, X_PM if signed else X, n, k)
    phis = types_up_to(k, m, signed)

    def derived_fn(t: SetBlockSeq):
        return tuple(c(map_onto(phi, t[:len(phi)], k, signed)) for phi in phis)

    derived = ColoringOracle(Domain(SETS, n, 1, m), None, derived_fn, "type-vector")
    params = {"n": n, "k": k, "m": m, "signed": signed}
    return _run("canon_signed" if signed else "canon", params, n, m, derived,
                lambda s: is_type_canonical(s, c, k, signed), budget)


def canonize_signed(n: int, k: int, m: int, c, budget=None) -> ExtractionReport:
    return canonize_types(n, k, m, c, budget, signed=True)


def canonize_block_types(n: int, k: int, d: int, L: int, c, budget=None) -> ExtractionReport:
    """``s`` of length ``L`` such that block sequences in ``Block^d_{±k}(s)``
    of equal block type get equal colors; colors ``t`` by ``bl(phi-bar, t)``."""
    _require(c, BLOCK_PM, n, k, d)
    tuples = _block_type_tuples(k, d, L, True)

    def derived_fn(t: SetBlockSeq):
        return tuple(c(tuple(f.as_signed() for f in block_map(pb, t))) for pb in tuples)

    derived = ColoringOracle(Domain(SETS, n, 1, L), None, derived_fn, "block-type-vector")
    params = {"n": n, "k": k, "d": d, "L": L}
    return _run("canon_block", params, n, L, derived,
                lambda s: is_block_type_canonical(s, c, k, d, True), budget)
