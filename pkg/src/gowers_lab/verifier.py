"""Exhaustive ground truth at tiny parameters.

``holds_at`` decides whether every ``r``-coloring of a domain admits the
witness a statement asks for.  It searches for a bad coloring with the
backtracking kernels, visiting colorings up to relabeling of colors.
"""
from __future__ import annotations

import json
import os
import subprocess
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from . import kernels
from .blocks import SpanMode, block_subseqs, enumerate_block_subseqs, enumerate_set_block_seqs, span
from .core import FiniteFunction, all_functions, sup_metric, support_list
from .gtypes import tp
from .oracle import block_func_seqs

KINDS = ("MT", "G", "G_PM", "MG", "MG_PM")
REGRESSION_PATH = Path(__file__).with_name("data") / "regression.json"


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class ExactQuery:
    kind: str
    k: int = 1
    d: int = 1
    m: int = 1
    r: int = 1
    n_max: int = 8

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; expected one of {KINDS}")
        if min(self.k, self.d, self.m, self.r, self.n_max) < 1:
            raise ValueError("parameters must be positive")
        if self.d > self.m:
            raise ValueError("need d <= m")

    @property
    def key(self) -> str:
        return f"{self.kind}:k={self.k},d={self.d},m={self.m},r={self.r}"


# ---------------------------------------------------------------------------
# problem construction

def _index(elems) -> dict:
    return {x: i for i, x in enumerate(elems)}


def _dedupe(cands):
    seen = {}
    for c in cands:
        seen.setdefault(frozenset(c), None)
    return [sorted(c) for c in seen]


def _rho_balls(elems, dist):
    """Owner ``i`` sees every element within distance one of ``elems[i]``."""
    return [[j for j, y in enumerate(elems) if dist(x, y) <= 1] for x in elems]


def _seq_dist(H, Hp) -> int:
    return max(sup_metric(a, b) for a, b in zip(H, Hp))


@lru_cache(maxsize=64)
def build_problem(kind: str, k: int, d: int, m: int, n: int) -> kernels.SearchProblem:
    """Elements of the colored domain and, per candidate witness, the members
    that must share a (visible) color."""
    if kind == "MT":
        elems = enumerate_set_block_seqs(n, d)
        idx = _index(elems)
        cands = [[idx[u] for u in enumerate_block_subseqs(t, d)] for t in enumerate_set_block_seqs(n, m)]
        return kernels.SearchProblem(len(elems), _dedupe(cands))
    signed = kind in ("G_PM", "MG_PM")
    mode = SpanMode.SIGNED_STRICT if signed else SpanMode.POS_STRICT
    if kind in ("G", "G_PM"):
        elems = list(all_functions(n, k, signed))
        idx = _index(elems)
        cands = [[idx[f] for f in span(F, mode, k)] for F in block_func_seqs(n, k, m, signed)]
        balls = _rho_balls(elems, sup_metric) if signed else None
    else:
        elems = list(block_func_seqs(n, k, d, signed))
        idx = _index(elems)
        cands = [[idx[H] for H in block_subseqs(F, d, mode, k)] for F in block_func_seqs(n, k, m, signed)]
        balls = _rho_balls(elems, _seq_dist) if signed else None
    return kernels.SearchProblem(len(elems), _dedupe(cands), balls)


def _search_chunk(args):
    problem, r, budget, backend, prefix = args
    return kernels.search_bad_coloring(problem, r, budget, backend, prefix)


def find_bad_coloring(query: ExactQuery, n: int, budget: int = 0, backend: str | None = None,
                      jobs: int = 1):
    """``(status, coloring, nodes)`` for the kernel search at size ``n``."""
    problem = build_problem(query.kind, query.k, query.d, query.m, n)
    if jobs <= 1:
        return kernels.search_bad_coloring(problem, query.r, budget, backend)
    relabel, compiled = problem.compile()
    depth = 0
    while len(kernels.restricted_prefixes(depth, query.r)) < 4 * jobs and depth < min(compiled[0], 8):
        depth += 1
    prefixes = kernels.restricted_prefixes(depth, query.r)
    nodes = 0
    with ProcessPoolExecutor(jobs) as pool:
        results = list(pool.map(_search_chunk, [(problem, query.r, budget, backend, p) for p in prefixes]))
    # the first prefix in canonical order decides, so the answer is schedule-independent
    for status, coloring, used in results:
        nodes += used
    for status, coloring, used in results:
        if status != kernels.EXHAUSTED:
            return status, coloring, nodes
    return kernels.EXHAUSTED, None, nodes


def holds_at(query: ExactQuery, n: int, budget: int = 0, backend: str | None = None, jobs: int = 1) -> bool:
    """Every ``r``-coloring at size ``n`` admits the required witness."""
    if n < 1:
        raise ValueError("n must be positive")
    status, _, _ = find_bad_coloring(query, n, budget, backend, jobs)
    if status == kernels.BUDGET:
        raise BudgetExceeded(f"{query.key} at n={n}: node budget {budget} exhausted")
    return status == kernels.EXHAUSTED


def exact_number(query: ExactQuery, budget: int = 0, backend: str | None = None, jobs: int = 1) -> int | None:
    """Least ``n <= n_max`` at which ``holds_at`` is true, confirmed at ``n+1``
    as well; ``None`` if there is none up to ``n_max``."""
    for n in range(query.m, query.n_max + 1):
        if holds_at(query, n, budget, backend, jobs):
            if not holds_at(query, n + 1, budget, backend, jobs):
                raise AssertionError(f"{query.key}: holds at {n} but not at {n + 1}")
            return n
    return None


# ---------------------------------------------------------------------------
# regression file

def load_regression(path: Path | str = REGRESSION_PATH) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        return {}


def regression_value(query: ExactQuery, path: Path | str = REGRESSION_PATH) -> int | None:
    entry = load_regression(path).get(query.key)
    return None if entry is None else entry["value"]


def _revision() -> str:
    try:
        out = subprocess.run(["git", "rev-parse", "--short", "HEAD"], capture_output=True, text=True,
                             cwd=Path(__file__).parent, timeout=5)
        return out.stdout.strip() or "unknown"
    except (OSError, subprocess.SubprocessError):
        return "unknown"


def record_regression(query: ExactQuery, value: int, path: Path | str = REGRESSION_PATH) -> None:
    data = load_regression(path)
    data[query.key] = {"value": value, "n_max": query.n_max, "revision": _revision(),
                       "params": {"kind": query.kind, "k": query.k, "d": query.d, "m": query.m, "r": query.r}}
    tmp = f"{path}.tmp"
    with open(tmp, "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")
    os.replace(tmp, path)


# ---------------------------------------------------------------------------
# no Ramsey degree

def degree_coloring(f: FiniteFunction, K: int) -> int:
    """``(|tp(f)| mod K) + 1``."""
    if f.is_zero():
        raise ValueError("the zero function has no type")
    return len(tp(f)) % K + 1


def all_colors_witness(F, K: int) -> list[FiniteFunction]:
    """``h_0..h_{K-1}`` in ``<F>_{±1}`` with ``|tp(h_i)| = |tp(h_0)| + i``."""
    funcs = tuple(F.funcs) if hasattr(F, "funcs") else tuple(F)
    if len(funcs) != 2 * K:
        raise ValueError(f"need a block sequence of length 2K = {2 * K}")
    n = funcs[0].n
    gs = []
    for i in range(K):
        a, b = funcs[2 * i], funcs[2 * i + 1]
        sa = a.values[support_list(a)[0]]
        sb = b.values[support_list(b)[-1]]
        gs.append(tuple(sa * x + sb * y for x, y in zip(a.values, b.values)))
    hs = []
    for i in range(K):
        vals = [0] * n
        for j, g in enumerate(gs):
            sign = (-1) ** j if j < i else (-1) ** i
            for x, v in enumerate(g):
                vals[x] += sign * v
        hs.append(FiniteFunction(tuple(vals), 1, True))
    return hs


def verify_no_ramsey_degree(n: int, K: int, check_witness: bool = True) -> bool:
    """Every length-``2K`` block sequence in ``X_{±1}(n)`` has a span realizing all ``K`` colors."""
    if n < 2 * K:
        raise ValueError("need n >= 2K")
    for F in block_func_seqs(n, 1, 2 * K, True):
        if check_witness:
            hs = all_colors_witness(F, K)
            base = len(tp(hs[0]))
            if any(len(tp(h)) != base + i for i, h in enumerate(hs)):
                return False
            if len({degree_coloring(h, K) for h in hs}) != K:
                return False
        if len({degree_coloring(f, K) for f in span(F, SpanMode.SIGNED_STRICT, 1)}) != K:
            return False
    return True
