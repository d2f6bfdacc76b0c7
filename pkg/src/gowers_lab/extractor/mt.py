"""Milliken-Taylor search: a length-m block subsequence ``t`` of ``s`` with
``Block^d(t)`` monochromatic."""
from __future__ import annotations

from collections import defaultdict

from ..blocks import SetBlockSeq, block_patterns
from ..oracle import SETS, DomainMismatch
from .report import Budget, BudgetExhausted, ExtractionReport, Status, absent, as_budget, out_of_budget


def _check_domain(c, s: SetBlockSeq, d: int) -> None:
    dom = getattr(c, "domain", None)
    if dom is None:
        return
    if dom.kind != SETS or dom.n != s.ambient or dom.d != d:
        raise DomainMismatch(f"oracle on {dom} cannot color Block^{d} of sets below {s.ambient}")


def _patterns_by_last(m: int, d: int) -> dict[int, list[tuple[int, ...]]]:
    out: dict[int, list] = defaultdict(list)
    for p in block_patterns(m, d):
        out[p[-1].bit_length() - 1].append(p)
    return out


def mt_first(s: SetBlockSeq, d: int, m: int, c, budget: Budget):
    """Lexicographically first ``t`` (as s-index bitmasks) or ``None``.

    Patterns are grouped by the last ``t`` index they touch so each one is
    colored as soon as the prefix determines it.
    """
    L = len(s)
    groups = _patterns_by_last(m, d)
    unions: dict[int, tuple[int, ...]] = {}

    def union(mask: int) -> tuple[int, ...]:
        u = unions.get(mask)
        if u is None:
            u = unions[mask] = s.union(mask)
        return u

    def color(t: list[int], pattern) -> object:
        sets = []
        for pm in pattern:
            acc = 0
            i = 0
            while pm:
                if pm & 1:
                    acc |= t[i]
                pm >>= 1
                i += 1
            sets.append(union(acc))
        return c(SetBlockSeq(tuple(sets), s.ambient))

    t: list[int] = []

    def rec(lo: int, ref):
        j = len(t)
        if j == m:
            return ref
        # bits of t_j lie in [lo, hi]; leave room for the later members
        hi = L - (m - j)
        if hi < lo:
            return None
        for x in range(1, 1 << (hi - lo + 1)):
            mask = x << lo
            budget.tick()
            t.append(mask)
            r = ref
            ok = True
            for p in groups.get(j, ()):
                col = color(t, p)
                if r is None:
                    r = (col,)
                elif col != r[0]:
                    ok = False
                    break
            if ok:
                res = rec(mask.bit_length(), r)
                if res is not None:
                    return res
            t.pop()
        return None

    res = rec(0, None)
    if res is None:
        return None
    return list(t), res[0]


def mt_search(s: SetBlockSeq, d: int, m: int, c, budget=None) -> ExtractionReport:
    """Lexicographically first length-``m`` block subsequence ``t`` of ``s``
    with ``Block^d(t)`` monochromatic under ``c``, or absent."""
    if not 1 <= d <= m:
        raise ValueError(f"need 1 <= d <= m, got d={d}, m={m}")
    _check_domain(c, s, d)
    budget = as_budget(budget)
    params = {"d": d, "m": m, "len_s": len(s)}
    if m > len(s):
        return absent("mt", params, 0, "s shorter than the target length")
    try:
        res = mt_first(s, d, m, c, budget)
    except BudgetExhausted:
        return out_of_budget("mt", params, budget)
    if res is None:
        return absent("mt", params, budget.used)
    masks, col = res
    return ExtractionReport(Status.FOUND, witness=s.apply(masks), color=col,
                            examined=budget.used, kind="mt", params=params)
