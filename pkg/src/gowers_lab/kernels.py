"""Backend selection for the exhaustive-search kernels.

The compiled extension ``_ckernels`` is used when it imports; otherwise the
pure-Python twin.  ``GOWERS_LAB_KERNEL=python`` forces the fallback.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _pykernels

FOUND = _pykernels.FOUND
EXHAUSTED = _pykernels.EXHAUSTED
BUDGET = _pykernels.BUDGET

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["compiled"] = _ckernels

if os.environ.get("GOWERS_LAB_KERNEL", "").lower() == "python" or _ckernels is None:
    BACKEND = "python"
else:
    BACKEND = "compiled"


def get_backend(name: str | None = None):
    name = name or BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} unavailable; have {sorted(BACKENDS)}") from None


def _csr(groups: Sequence[Sequence[int]]) -> tuple[np.ndarray, np.ndarray]:
    ptr = np.zeros(len(groups) + 1, dtype=np.int32)
    for i, g in enumerate(groups):
        ptr[i + 1] = ptr[i] + len(g)
    idx = np.fromiter((x for g in groups for x in g), dtype=np.int32, count=int(ptr[-1]))
    return ptr, idx


@dataclass
class SearchProblem:
    """Colorings of ``n_elems`` elements against a family of candidate witnesses.

    ``balls[f]`` lists the elements whose colors are visible from ``f``
    (``[f]`` for exact monochromaticity).  A candidate is satisfied under a
    coloring when one color is visible from every member.
    """

    n_elems: int
    candidates: list[list[int]]
    balls: list[list[int]] | None = None

    def compile(self):
        balls = self.balls if self.balls is not None else [[f] for f in range(self.n_elems)]
        # keep only elements some candidate can see, ordered by first use
        order: dict[int, int] = {}
        for cand in sorted(self.candidates, key=len):
            for f in cand:
                for g in balls[f]:
                    order.setdefault(g, len(order))
        relabel = order
        involved = {f for cand in self.candidates for f in cand}
        ball_owner = {f: i for i, f in enumerate(sorted(involved, key=relabel.__getitem__))}
        new_balls = [sorted(relabel[g] for g in balls[f]) for f in ball_owner]
        cands = [[ball_owner[f] for f in cand] for cand in self.candidates]
        trig: list[list[int]] = [[] for _ in range(len(relabel))]
        for ci, cand in enumerate(cands):
            last = max(g for f in cand for g in new_balls[f])
            trig[last].append(ci)
        ball_ptr, ball_idx = _csr(new_balls)
        cand_ptr, cand_idx = _csr(cands)
        trig_ptr, trig_cand = _csr(trig)
        return relabel, (len(relabel), ball_ptr, ball_idx, cand_ptr, cand_idx, trig_ptr, trig_cand)


def search_bad_coloring(problem: SearchProblem, r: int, budget: int = 0, backend: str | None = None,
                        prefix: Sequence[int] = (), compiled=None):
    """Find a coloring of the problem's elements satisfying no candidate.

    Returns ``(status, coloring, nodes)`` where ``coloring`` maps every
    element ``0..n_elems-1`` to a color in ``0..r-1`` (elements no candidate
    sees get color 0) when ``status == FOUND``.  ``prefix`` fixes the colors
    of the first elements in the compiled order (see ``restricted_prefixes``).
    """
    if r < 1:
        raise ValueError("need at least one color")
    if any(len(c) == 0 for c in problem.candidates):
        raise ValueError("empty candidate")
    relabel, args = compiled if compiled is not None else problem.compile()
    n, ball_ptr, ball_idx, cand_ptr, cand_idx, trig_ptr, trig_cand = args
    kern = get_backend(backend)
    status, colors, nodes = kern.search_bad_coloring(
        n, r, ball_ptr, ball_idx, cand_ptr, cand_idx, trig_ptr, trig_cand, int(budget),
        tuple(int(x) for x in prefix))
    if status != FOUND:
        return status, None, nodes
    full = [0] * problem.n_elems
    for old, new in relabel.items():
        full[old] = colors[new]
    return status, full, nodes


def restricted_prefixes(length: int, r: int) -> list[tuple[int, ...]]:
    """Restricted-growth strings of the given length over ``r`` colors."""
    out = [()]
    for _ in range(length):
        out = [p + (c,) for p in out for c in range(min(r, max(p, default=-1) + 2))]
    return out


def first_satisfied(problem: SearchProblem, coloring: Sequence[int], backend: str | None = None) -> int:
    """Index of the first candidate satisfied under ``coloring`` (0-based colors), or -1."""
    balls = problem.balls if problem.balls is not None else [[f] for f in range(problem.n_elems)]
    ball_ptr, ball_idx = _csr(balls)
    cand_ptr, cand_idx = _csr(problem.candidates)
    colors = np.asarray(coloring, dtype=np.int32)
    return int(get_backend(backend).first_satisfied(colors, ball_ptr, ball_idx, cand_ptr, cand_idx))
