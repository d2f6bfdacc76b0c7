"""The signed statement: approximate monochromaticity of ``<F>_{±k}``
through alternating pyramids over a type-canonical ``s``."""
from __future__ import annotations

from ..blocks import FuncBlockSeq, SetBlockSeq, SpanMode, decompose, iter_span
from ..core import FiniteFunction
from ..oracle import X, X_PM, ColoringOracle, Domain
from .canon import _require, canonize_signed
from .positive import _extract_positive, lift
from .report import Budget, BudgetExhausted, ExtractionReport, Status, absent, as_budget, out_of_budget


def q_delta(delta: int, ell: int, s: SetBlockSeq, k: int | None = None) -> FiniteFunction:
    """Alternating pyramid ``sum_j (-1)^j (delta-|j|) chi_{s_{ell+j}}``; zero for ``delta <= 0``."""
    k = max(delta, 1) if k is None else k
    vals = [0] * s.ambient
    if delta <= 0:
        return FiniteFunction(tuple(vals), k, True)
    if ell - (delta - 1) < 0 or ell + (delta - 1) >= len(s):
        raise IndexError(f"q({delta},{ell}) needs s-indices {ell - delta + 1}..{ell + delta - 1}")
    for j in range(-(delta - 1), delta):
        v = (delta - abs(j)) * (-1 if j % 2 else 1)
        for x in s.sets[ell + j]:
            vals[x] = v
    return FiniteFunction(tuple(vals), k, True)


def signed_carrier(s: SetBlockSeq, k: int, M: int) -> FuncBlockSeq:
    """``(q(k, 2ki+k-1, s))_{i<M}``."""
    if len(s) != 2 * k * M:
        raise ValueError(f"need len(s) = 2kM = {2 * k * M}, got {len(s)}")
    return FuncBlockSeq(tuple(q_delta(k, 2 * k * i + k - 1, s, k) for i in range(M)))


def approximate_witness(f: FiniteFunction, F, G, s: SetBlockSeq, k: int):
    """The pair ``(f', f'')`` attached to ``f`` in ``<F>_{±k}``.

    Writing ``f = sum_j a_j T^{e_j}(f_j)`` and ``f_j = sum_i T^{e_i}(g_i)``,
    every summand ``q(delta, l_i)`` of ``f''`` is moved to ``l_i + 1`` in
    ``f'`` when ``a_j = -1``.
    """
    Ff = F.funcs if isinstance(F, FuncBlockSeq) else tuple(F)
    Gf = G.funcs if isinstance(G, FuncBlockSeq) else tuple(G)
    outer = decompose(f, Ff, signed=True, k=k)
    if outer is None:
        raise ValueError(f"{f!r} does not decompose over F")
    ells = [2 * k * i + k - 1 for i in range(len(Gf))]
    fp = [0] * s.ambient
    fpp = [0] * s.ambient
    for j, a, e_outer in outer:
        inner = decompose(Ff[j], Gf, signed=False, k=k)
        if inner is None:
            raise ValueError(f"member {j} of F does not decompose over G")
        for i, _, e in inner:
            delta = k - e - e_outer
            if delta <= 0:
                continue
            shift = 1 if a == -1 else 0
            for x, v in enumerate(q_delta(delta, ells[i] + shift, s, k).values):
                fp[x] += v
            for x, v in enumerate(q_delta(delta, ells[i], s, k).values):
                fpp[x] += v
    return FiniteFunction(tuple(fp), k, True), FiniteFunction(tuple(fpp), k, True)


def _extract_signed(n: int, k: int, m: int, c, budget: Budget):
    """Returns ``(s, funcs, color)`` or ``None``."""
    for M in range(m, n + 1):
        L = 2 * k * M
        if L > n:
            break
        rep = canonize_signed(n, k, L, c, budget)
        if rep.status is Status.BUDGET:
            raise BudgetExhausted("signed canonicalization")
        if not rep.found:
            continue
        s = rep.witness
        G = signed_carrier(s, k, M)
        inner_c = ColoringOracle(Domain(X, M, k), None, lambda g, G=G: c(lift(G, g, k)), "carrier")
        inner = _extract_positive(M, k, m, inner_c, budget)
        if inner is None:
            continue
        funcs = tuple(lift(G, h, k) for h in inner[0])
        return s, G, funcs, inner[1]
    return None


def extract_signed(n: int, k: int, m: int, c, budget=None) -> ExtractionReport:
    """``(s, F)`` with ``F`` s-skipped in ``X_{±k}(s)`` and ``<F>_{±k}``
    approximately monochromatic through partners in ``X_{±k}(s)``."""
    if m < 1 or k < 1 or n < 1:
        raise ValueError("n, k, m must be positive")
    _require(c, X_PM, n, k)
    budget = as_budget(budget)
    params = {"n": n, "k": k, "m": m}
    try:
        res = _extract_signed(n, k, m, c, budget)
    except BudgetExhausted:
        return out_of_budget("signed", params, budget)
    if res is None:
        return absent("signed", params, budget.used)
    s, G, funcs, col = res
    F = FuncBlockSeq(funcs)
    for f in iter_span(F, SpanMode.SIGNED_STRICT, k):
        fp, _ = approximate_witness(f, F, G, s, k)
        if c(fp) != col:
            raise AssertionError(f"partner of {f!r} has color {c(fp)}, expected {col}")
    return ExtractionReport(Status.FOUND, witness=F, carrier=s, color=col, examined=budget.used,
                            kind="signed", params=params)
