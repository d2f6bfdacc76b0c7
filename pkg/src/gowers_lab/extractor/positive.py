"""The positive statement: ``F`` in ``X_k(n)`` with ``<F>_k`` monochromatic."""
from __future__ import annotations

from ..blocks import FuncBlockSeq, SetBlockSeq, SpanMode, iter_span, span
from ..core import FiniteFunction, all_functions, char_fn, support_list, tetris_pow
from ..oracle import X, ColoringOracle, Domain
from .canon import _require, canonize_types
from .mt import mt_first
from .report import Budget, BudgetExhausted, ExtractionReport, Status, absent, as_budget, out_of_budget


def pyramid_sequence(s: SetBlockSeq, k: int, m: int) -> FuncBlockSeq:
    """Pyramids of height ``k`` centered at s-indices ``i(2k-1)+k-1``."""
    if len(s) != m * (2 * k - 1):
        raise ValueError(f"need len(s) = m(2k-1) = {m * (2 * k - 1)}, got {len(s)}")
    funcs = []
    for i in range(m):
        j = i * (2 * k - 1) + k - 1
        vals = [0] * s.ambient
        for q in range(-(k - 1), k):
            for x in s.sets[j + q]:
                vals[x] = k - abs(q)
        funcs.append(FiniteFunction(tuple(vals), k))
    return FuncBlockSeq(tuple(funcs))


def is_insensitive(c, F, k: int | None = None) -> bool:
    """``c(f) == c(f + T^{k-1} f')`` for all disjointly supported ``f, f'`` in ``<F>_k``."""
    funcs = F.funcs if isinstance(F, FuncBlockSeq) else tuple(F)
    k = funcs[0].k if k is None else k
    elems = span(funcs, SpanMode.POS_STRICT, k)
    tops = [(set(support_list(g)), tetris_pow(g, k - 1).values) for g in elems]
    for f in elems:
        sf = set(support_list(f))
        cf = c(f)
        for sg, low in tops:
            if sf & sg:
                continue
            h = f.with_values(a + b for a, b in zip(f.values, low))
            if c(h) != cf:
                return False
    return True


def lift(G, g: FiniteFunction | tuple, top: int) -> FiniteFunction:
    """``sum_{i in supp g} T^{top - g(i)}(G_i)``.

    ``top = k-1`` is the Q map of the positive induction; ``top = k`` is the
    isomorphism of ``X_k(M)`` onto ``<G>_k`` used by the signed and
    multidimensional reductions.
    """
    funcs = G.funcs if isinstance(G, FuncBlockSeq) else tuple(G)
    vals = g.values if isinstance(g, FiniteFunction) else tuple(g)
    if len(vals) != len(funcs):
        raise ValueError(f"need {len(funcs)} coordinates, got {len(vals)}")
    out = [0] * funcs[0].n
    for gi, f in zip(vals, funcs):
        if gi == 0:
            continue
        if not 0 < gi <= top:
            raise ValueError(f"coordinate {gi} outside 1..{top}")
        for x, v in enumerate(tetris_pow(f, top - gi).values):
            if v:
                out[x] += v
    return FiniteFunction(tuple(out), funcs[0].k, funcs[0].signed)


def q_map(Fp, g, k: int | None = None) -> FiniteFunction:
    """``Q(g) = sum_{i in supp g} T^{k-1-g(i)}(f'_i)``."""
    funcs = Fp.funcs if isinstance(Fp, FuncBlockSeq) else tuple(Fp)
    k = funcs[0].k if k is None else k
    if k < 2:
        raise ValueError("the Q map needs k >= 2")
    return lift(funcs, g, k - 1)


# ---------------------------------------------------------------------------
# searches

def _span_mono_dfs(pool, n: int, k: int, m: int, c, budget: Budget, signed_out: bool = False):
    """Lexicographically first block sequence from ``pool`` whose strict span
    is monochromatic.  Span elements involving the newest member are colored
    incrementally from the partial sums of the prefix."""
    pool = [(f, support_list(f)) for f in pool]
    pool = [(f, s[0], s[-1], [tetris_pow(f, e).values for e in range(k)]) for f, s in pool]

    chosen: list = []

    def rec(lo: int, partials: list, ref):
        if len(chosen) == m:
            return ref
        need = m - len(chosen) - 1
        for f, a, b, powers in pool:
            if a < lo or n - (b + 1) < need:
                continue
            budget.tick()
            new_partials = []
            r = ref
            ok = True
            for vals, has0 in partials:
                for e in range(k):
                    p = powers[e]
                    nv = tuple(x + y for x, y in zip(vals, p))
                    h0 = has0 or e == 0
                    new_partials.append((nv, h0))
                    if h0:
                        col = c(FiniteFunction(nv, k, signed_out))
                        if r is None:
                            r = (col,)
                        elif col != r[0]:
                            ok = False
                            break
                if not ok:
                    break
            if not ok:
                continue
            chosen.append(f)
            res = rec(b + 1, partials + new_partials, r)
            if res is not None:
                return res
            chosen.pop()
        return None

    ref = rec(0, [((0,) * n, False)], None)
    return None if ref is None else (tuple(chosen), ref[0])


def direct_search_positive(n: int, k: int, m: int, c, budget=None) -> ExtractionReport:
    """Exhaustive search over all length-``m`` block sequences in ``X_k(n)``."""
    _require(c, X, n, k)
    budget = as_budget(budget)
    params = {"n": n, "k": k, "m": m}
    try:
        res = _span_mono_dfs(all_functions(n, k), n, k, m, c, budget)
    except BudgetExhausted:
        return out_of_budget("direct_positive", params, budget)
    if res is None:
        return absent("direct_positive", params, budget.used)
    funcs, col = res
    return ExtractionReport(Status.FOUND, witness=FuncBlockSeq(funcs), color=col,
                            examined=budget.used, kind="direct_positive", params=params)


def _make_insensitive(n: int, k: int, m: int, c, budget: Budget):
    """Returns ``(F, note)`` or ``(None, note)``."""
    if k == 1:
        # at k=1 insensitivity is union invariance; the MT reduction supplies it
        res = _extract_positive(n, 1, m, c, budget)
        if res is None:
            return None, "k=1 via mt"
        return FuncBlockSeq(res[0]), "k=1 via mt"
    L = m * (2 * k - 1)
    rep = canonize_types(n, k, L, c, budget)
    if rep.status is Status.BUDGET:
        raise BudgetExhausted("canonicalization")
    if not rep.found:
        return None, rep.notes[0] if rep.notes else ""
    F = pyramid_sequence(rep.witness, k, m)
    if not is_insensitive(c, F, k):
        raise AssertionError(f"pyramids over canonical {rep.witness!r} are not insensitive")
    return F, rep.notes[0] if rep.notes else ""


def make_insensitive(n: int, k: int, m: int, c, budget=None) -> ExtractionReport:
    """Length-``m`` block sequence over which ``c`` is insensitive."""
    _require(c, X, n, k)
    budget = as_budget(budget)
    params = {"n": n, "k": k, "m": m}
    try:
        F, note = _make_insensitive(n, k, m, c, budget)
    except BudgetExhausted:
        return out_of_budget("insensitive", params, budget)
    if F is None:
        return absent("insensitive", params, budget.used, note)
    return ExtractionReport(Status.FOUND, witness=F, examined=budget.used, kind="insensitive",
                            params=params, notes=[note])


def _extract_positive(n: int, k: int, m: int, c, budget: Budget):
    """Returns ``(funcs, color)`` or ``None``; raises BudgetExhausted."""
    if m > n:
        return None
    if k == 1:
        s = SetBlockSeq.singletons(n)
        derived = ColoringOracle(None, None, lambda t: c(char_fn(t.sets[0], n, 1)), "k1")
        res = mt_first(s, 1, m, derived, budget)
        if res is None:
            return None
        masks, col = res
        return tuple(char_fn(s.union(x), n, 1) for x in masks), col
    # the inner target M ranges upward while the canonicalization fits
    for M in range(m, n + 1):
        if M * (2 * k - 1) > n:
            break
        Fp, _ = _make_insensitive(n, k, M, c, budget)
        if Fp is None:
            continue
        inner_c = ColoringOracle(Domain(X, M, k - 1), None,
                                 lambda g, Fp=Fp: c(q_map(Fp, g, k)), "Q-induced")
        inner = _extract_positive(M, k - 1, m, inner_c, budget)
        if inner is None:
            continue
        funcs = tuple(q_map(Fp, h, k) for h in inner[0])
        return funcs, inner[1]
    return None


def extract_positive(n: int, k: int, m: int, c, budget=None) -> ExtractionReport:
    """``F`` of length ``m`` in ``X_k(n)`` with ``<F>_k`` monochromatic, built
    by the induction on ``k`` (pyramids, then the Q map)."""
    if m < 1 or k < 1 or n < 1:
        raise ValueError("n, k, m must be positive")
    _require(c, X, n, k)
    budget = as_budget(budget)
    params = {"n": n, "k": k, "m": m}
    try:
        res = _extract_positive(n, k, m, c, budget)
    except BudgetExhausted:
        return out_of_budget("positive", params, budget)
    if res is None:
        return absent("positive", params, budget.used)
    funcs, col = res
    F = FuncBlockSeq(funcs)
    cols = {c(f) for f in iter_span(F, SpanMode.POS_STRICT, k)}
    if cols != {col}:
        raise AssertionError(f"extracted {F!r} has span colors {cols}")
    return ExtractionReport(Status.FOUND, witness=F, color=col, examined=budget.used,
                            kind="positive", params=params)
