"""Independent re-verification of extraction witnesses.

Only the primitives of ``core``, ``blocks`` and ``gtypes`` are used here; no
extractor state or helper is consulted, so a passing check certifies the
witness against the definitions alone.
"""
from __future__ import annotations

import itertools

from .blocks import (NotRepresentable, SetBlockSeq, SpanMode, block_subseqs, displacement_at_most_one,
                     enumerate_block_subseqs, is_block, is_s_skipped, iter_span, s_coords)
from .core import FiniteFunction, sup_metric
from .gtypes import map_onto


def _funcs(F):
    return tuple(F.funcs) if hasattr(F, "funcs") else tuple(F)


def check_mt(t: SetBlockSeq, s: SetBlockSeq, d: int, m: int, c) -> bool:
    """``t`` is a length-``m`` block subsequence of ``s`` with ``Block^d(t)`` monochromatic."""
    if len(t) != m or t.ambient != s.ambient:
        return False
    unions = {frozenset(s.union(mask)) for mask in range(1, 1 << len(s))}
    if any(frozenset(b) not in unions for b in t.sets):
        return False
    return len({c(u) for u in enumerate_block_subseqs(t, d)}) == 1


def check_positive(F, c, k: int, m: int) -> bool:
    """Block, length ``m``, members in ``X_k(n)``, strict span monochromatic."""
    funcs = _funcs(F)
    if len(funcs) != m or not is_block(funcs):
        return False
    if any(f.signed or f.k != k or not f.in_sphere() for f in funcs):
        return False
    return len({c(f) for f in iter_span(funcs, SpanMode.POS_STRICT, k)}) == 1


def check_multidim_positive(F, c, k: int, d: int, m: int) -> bool:
    funcs = _funcs(F)
    if len(funcs) != m or not is_block(funcs):
        return False
    if any(f.signed or f.k != k or not f.in_sphere() for f in funcs):
        return False
    return len({c(H) for H in block_subseqs(funcs, d, SpanMode.POS_STRICT, k)}) == 1


def _in_sphere_over(f: FiniteFunction, s: SetBlockSeq, k: int) -> bool:
    try:
        g = s_coords(f, s)
    except NotRepresentable:
        return False
    return max(abs(v) for v in g) == k


def near_partners(f: FiniteFunction, s: SetBlockSeq, k: int):
    """Every ``f'`` in ``X_{±k}(s)`` with ``rho(f, f') <= 1`` and s-displacement at most one."""
    g = s_coords(f, s)
    supp = [i for i, v in enumerate(g) if v]
    lo, hi = supp[0], min(supp[-1] + 1, len(s) - 1)
    ranges = [range(max(-k, g[i] - 1), min(k, g[i] + 1) + 1) for i in range(lo, hi + 1)]
    for window in itertools.product(*ranges):
        vals = (0,) * lo + window + (0,) * (len(s) - hi - 1)
        if max(abs(v) for v in vals) != k:
            continue
        fp = map_onto(vals, s, k, True)
        if sup_metric(f, fp) <= 1 and displacement_at_most_one(f, fp, s):
            yield fp


def _signed_members_ok(funcs, s: SetBlockSeq, k: int) -> bool:
    if not is_block(funcs) or not is_s_skipped(funcs, s):
        return False
    return all(_in_sphere_over(f, s, k) for f in funcs)


def check_signed(F, s: SetBlockSeq, c, k: int, m: int, color) -> bool:
    """Clause (i): ``F`` is an s-skipped block sequence in ``X_{±k}(s)``.
    Clause (ii): each ``f`` in ``<F>_{±k}`` has a partner ``f'`` in
    ``X_{±k}(s)`` of color ``color`` with ``rho <= 1`` and displacement at most one."""
    funcs = _funcs(F)
    if len(funcs) != m:
        return False
    try:
        if not _signed_members_ok(funcs, s, k):
            return False
        for f in iter_span(funcs, SpanMode.SIGNED_STRICT, k):
            if not any(c(fp) == color for fp in near_partners(f, s, k)):
                return False
    except NotRepresentable:
        return False
    return True


def check_multidim_signed(F, s: SetBlockSeq, c, k: int, d: int, m: int, color) -> bool:
    """As ``check_signed`` for ``Block^d_{±k}(F)`` with componentwise partners."""
    funcs = _funcs(F)
    if len(funcs) != m:
        return False
    try:
        if not _signed_members_ok(funcs, s, k):
            return False
        for H in block_subseqs(funcs, d, SpanMode.SIGNED_STRICT, k):
            pools = [list(near_partners(h, s, k)) for h in H]
            if not any(is_block(Hp) and c(tuple(Hp)) == color for Hp in itertools.product(*pools)):
                return False
    except NotRepresentable:
        return False
    return True


def check_canonical(s: SetBlockSeq, c, k: int, signed: bool = False) -> bool:
    """Equal types over ``s`` get equal colors, checked over every ``map(phi, u)``."""
    seen: dict = {}
    for d in range(1, len(s) + 1):
        for u in enumerate_block_subseqs(s, d):
            alphabet = [v for v in range(-k, k + 1) if v and (signed or v > 0)]
            for word in itertools.product(alphabet, repeat=d):
                if any(word[i] == word[i + 1] for i in range(d - 1)) or max(map(abs, word)) != k:
                    continue
                col = c(map_onto(word, u, k, signed))
                if seen.setdefault(word, col) != col:
                    return False
    return True


def check_insensitive(F, c, k: int, m: int) -> bool:
    """Block in ``X_k(n)`` of length ``m`` and ``c(f) = c(f + T^{k-1} f')`` on the strict span."""
    funcs = _funcs(F)
    if len(funcs) != m or not is_block(funcs) or any(not f.in_sphere() for f in funcs):
        return False
    elems = list(dict.fromkeys(iter_span(funcs, SpanMode.POS_STRICT, k)))
    for f in elems:
        for g in elems:
            if any(a and b for a, b in zip(f.values, g.values)):
                continue
            low = tuple(max(0, v - (k - 1)) for v in g.values)
            if c(f) != c(f.with_values(a + b for a, b in zip(f.values, low))):
                return False
    return True
