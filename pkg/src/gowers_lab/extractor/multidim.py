"""Block sequences of length ``d``: the induction on ``d`` and its signed
counterpart over block types."""
from __future__ import annotations

from ..blocks import FuncBlockSeq, SpanMode, block_subseqs
from ..core import FiniteFunction, char_fn
from ..oracle import BLOCK, BLOCK_PM, ColoringOracle, Domain, X
from .canon import _require, canonize_block_types
from .positive import _extract_positive, lift
from .report import Budget, BudgetExhausted, ExtractionReport, Status, absent, as_budget, out_of_budget
from .signed import approximate_witness, signed_carrier


def _blocks_of(G, d: int, k: int) -> list[tuple]:
    return block_subseqs(G, d, SpanMode.POS_STRICT, k)


def stab_d(G, F, target: int, c, k: int, budget=None):
    """Block subsequence ``F'`` of ``F`` of length ``target`` such that
    ``c(H + (f,))`` does not depend on ``f`` in ``<F'>_k`` for each ``H`` in
    ``Block^d_k(G)`` (``d+1`` is the oracle's dimension); ``None`` if the
    positive extraction finds none."""
    dd = c.domain.d - 1 if getattr(c, "domain", None) is not None else len(G)
    return _stab(tuple(G), tuple(F), target, c, k, dd, as_budget(budget))


def canon_d(n: int, k: int, dd: int, ell: int, c, budget: Budget):
    """End-stabilized ``G`` of length ``ell``: for ``J, J'`` in
    ``Block^{dd+1}_k(G)`` with ``J|dd = J'|dd`` the colors agree.

    Starts from unit functions, then repeatedly stabilizes the tail and moves
    its first member onto ``G``.  Target lengths are tried longest first so
    later rounds keep room.
    """
    G = tuple(char_fn([i], n, k) for i in range(dd))
    tail = tuple(char_fn([i], n, k) for i in range(dd, n))
    rounds = ell - dd
    for p in range(1, rounds + 1):
        need = rounds - p + 1
        found = None
        for target in range(len(tail), need - 1, -1):
            found = _stab(G, tail, target, c, k, dd, budget)
            if found is not None:
                break
        if found is None:
            return None
        G = G + (found[0],)
        tail = found[1:]
    return G


def _stab(G, F, target, c, k, dd, budget):
    Hs = _blocks_of(G, dd, k)

    def vec(g: FiniteFunction):
        f = lift(F, g, k)
        return tuple(c(H + (f,)) for H in Hs)

    inner_c = ColoringOracle(Domain(X, len(F), k), None, vec, "stab")
    res = _extract_positive(len(F), k, target, inner_c, budget)
    if res is None:
        return None
    return tuple(lift(F, h, k) for h in res[0])


def _extract_multi(n: int, k: int, d: int, m: int, c, budget: Budget):
    """Returns ``(funcs, color)`` or ``None``."""
    if d == 1:
        c1 = ColoringOracle(Domain(X, n, k), None, lambda f: c((f,)), "d=1")
        return _extract_positive(n, k, m, c1, budget)
    dd = d - 1
    for M in range(max(m - 1, dd), n):
        G = canon_d(n, k, dd, M + 1, c, budget)
        if G is None:
            continue
        head, last = G[:M], G[M]
        inner_c = ColoringOracle(
            Domain(BLOCK, M, k, dd), None,
            lambda H, head=head, last=last: c(tuple(lift(head, h, k) for h in H) + (last,)),
            "append-last")
        inner = _extract_multi(M, k, dd, m - 1, inner_c, budget)
        if inner is None:
            continue
        funcs = tuple(lift(head, h, k) for h in inner[0]) + (last,)
        return funcs, inner[1]
    return None


def extract_multidim_positive(n: int, k: int, d: int, m: int, c, budget=None) -> ExtractionReport:
    """``F`` of length ``m`` with ``Block^d_k(F)`` monochromatic."""
    if not 1 <= d <= m:
        raise ValueError(f"need 1 <= d <= m, got d={d}, m={m}")
    _require(c, BLOCK, n, k, d)
    budget = as_budget(budget)
    params = {"n": n, "k": k, "d": d, "m": m}
    try:
        res = _extract_multi(n, k, d, m, c, budget) if m <= n else None
    except BudgetExhausted:
        return out_of_budget("multidim", params, budget)
    if res is None:
        return absent("multidim", params, budget.used)
    funcs, col = res
    F = FuncBlockSeq(funcs)
    cols = {c(H) for H in _blocks_of(funcs, d, k)}
    if cols != {col}:
        raise AssertionError(f"extracted {F!r} has block colors {cols}")
    return ExtractionReport(Status.FOUND, witness=F, color=col, examined=budget.used,
                            kind="multidim", params=params)


def _extract_multi_signed(n: int, k: int, d: int, m: int, c, budget: Budget):
    for M in range(m, n + 1):
        L = 2 * k * M
        if L > n:
            break
        rep = canonize_block_types(n, k, d, L, c, budget)
        if rep.status is Status.BUDGET:
            raise BudgetExhausted("block canonicalization")
        if not rep.found:
            continue
        s = rep.witness
        G = signed_carrier(s, k, M)
        inner_c = ColoringOracle(Domain(BLOCK, M, k, d), None,
                                 lambda H, G=G: c(tuple(lift(G, h, k) for h in H)), "carrier-d")
        inner = _extract_multi(M, k, d, m, inner_c, budget)
        if inner is None:
            continue
        return s, G, tuple(lift(G, h, k) for h in inner[0]), inner[1]
    return None


def extract_multidim_signed(n: int, k: int, d: int, m: int, c, budget=None) -> ExtractionReport:
    """``(s, F)`` with ``Block^d_{±k}(F)`` approximately monochromatic."""
    if not 1 <= d <= m:
        raise ValueError(f"need 1 <= d <= m, got d={d}, m={m}")
    _require(c, BLOCK_PM, n, k, d)
    budget = as_budget(budget)
    params = {"n": n, "k": k, "d": d, "m": m}
    try:
        res = _extract_multi_signed(n, k, d, m, c, budget)
    except BudgetExhausted:
        return out_of_budget("multidim_signed", params, budget)
    if res is None:
        return absent("multidim_signed", params, budget.used)
    s, G, funcs, col = res
    F = FuncBlockSeq(funcs)
    for H in block_subseqs(funcs, d, SpanMode.SIGNED_STRICT, k):
        Hp = tuple(approximate_witness(h, funcs, G, s, k)[0] for h in H)
        if c(Hp) != col:
            raise AssertionError(f"partner of {H!r} has color {c(Hp)}, expected {col}")
    return ExtractionReport(Status.FOUND, witness=F, carrier=s, color=col, examined=budget.used,
                            kind="multidim_signed", params=params)
