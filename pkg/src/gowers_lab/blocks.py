"""Block sequences of sets and of functions, spans, and s-relative support."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .core import FiniteFunction, support_list, tetris_pow


class NotRepresentable(ValueError):
    """A function is not of the form map(g, s) for the given set block sequence."""


@dataclass(frozen=True)
class SetBlockSeq:
    sets: tuple[tuple[int, ...], ...]
    ambient: int

    def __post_init__(self):
        sets = tuple(tuple(sorted(set(x))) for x in self.sets)
        object.__setattr__(self, "sets", sets)
        prev = -1
        for x in sets:
            if not x:
                raise ValueError("block sequences hold nonempty sets")
            if x[0] <= prev:
                raise ValueError(f"not a block sequence: {sets}")
            prev = x[-1]
        if sets and sets[-1][-1] >= self.ambient:
            raise ValueError(f"element {sets[-1][-1]} outside ambient {self.ambient}")

    @classmethod
    def singletons(cls, n: int, start: int = 0) -> SetBlockSeq:
        return cls(tuple((i,) for i in range(start, n)), n)

    def __len__(self) -> int:
        return len(self.sets)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return SetBlockSeq(self.sets[i], self.ambient)
        return self.sets[i]

    def __iter__(self):
        return iter(self.sets)

    def prefix(self, d: int) -> SetBlockSeq:
        return SetBlockSeq(self.sets[:d], self.ambient)

    def union(self, mask: int) -> tuple[int, ...]:
        """Union of the member sets selected by an index bitmask."""
        out: list[int] = []
        i = 0
        while mask:
            if mask & 1:
                out.extend(self.sets[i])
            mask >>= 1
            i += 1
        return tuple(out)

    def apply(self, pattern: Sequence[int]) -> SetBlockSeq:
        """The block subsequence selected by a tuple of index bitmasks."""
        return SetBlockSeq(tuple(self.union(m) for m in pattern), self.ambient)

    def to_json(self) -> list[list[int]]:
        return [list(x) for x in self.sets]

    @classmethod
    def from_json(cls, obj, ambient: int | None = None) -> SetBlockSeq:
        if isinstance(obj, dict):
            ambient = obj.get("ambient", ambient)
            obj = obj["sets"]
        sets = tuple(tuple(x) for x in obj)
        if ambient is None:
            ambient = (sets[-1][-1] + 1) if sets else 0
        return cls(sets, ambient)

    def __repr__(self) -> str:
        inner = ",".join("{" + ",".join(map(str, x)) + "}" for x in self.sets)
        return f"S({inner})"


def masks_in_order(m: int) -> range:
    """Nonempty index subsets of ``range(m)`` as bitmasks, in the canonical order."""
    return range(1, 1 << m)


def nonempty_unions(s: SetBlockSeq) -> list[tuple[int, ...]]:
    return [s.union(mask) for mask in masks_in_order(len(s))]


@lru_cache(maxsize=None)
def block_patterns(m: int, d: int) -> tuple[tuple[int, ...], ...]:
    """Every length-``d`` block sequence of nonempty subsets of ``range(m)``.

    Patterns are tuples of bitmasks, listed in lexicographic order of the
    mask tuple.
    """
    if d < 1 or d > m:
        raise ValueError(f"need 1 <= d <= m, got d={d}, m={m}")
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], lo: int) -> None:
        left = d - len(prefix)
        if left == 0:
            out.append(prefix)
            return
        # leave room for the remaining left-1 blocks
        for sub in range(1, 1 << (m - lo)):
            mask = sub << lo
            top = mask.bit_length()
            if m - top < left - 1:
                continue
            rec(prefix + (mask,), top)

    rec((), 0)
    out.sort()
    return tuple(out)


def enumerate_block_subseqs(s: SetBlockSeq, d: int) -> list[SetBlockSeq]:
    if d < 1 or d > len(s):
        raise ValueError(f"invalid subsequence length {d} for length {len(s)}")
    return [s.apply(p) for p in block_patterns(len(s), d)]


def enumerate_set_block_seqs(n: int, d: int) -> list[SetBlockSeq]:
    """Block^d(n): length-d block sequences of subsets of {0..n-1}."""
    return enumerate_block_subseqs(SetBlockSeq.singletons(n), d)


# ---------------------------------------------------------------------------
# function block sequences

@dataclass(frozen=True)
class FuncBlockSeq:
    funcs: tuple[FiniteFunction, ...]

    def __post_init__(self):
        funcs = tuple(self.funcs)
        object.__setattr__(self, "funcs", funcs)
        if funcs:
            f0 = funcs[0]
            for f in funcs[1:]:
                if f.n != f0.n or f.k != f0.k:
                    raise ValueError("block sequence members must share n and k")
        if not is_block(funcs):
            raise ValueError(f"not a block sequence: {funcs}")

    def __len__(self) -> int:
        return len(self.funcs)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return FuncBlockSeq(self.funcs[i])
        return self.funcs[i]

    def __iter__(self):
        return iter(self.funcs)

    @property
    def n(self) -> int:
        return self.funcs[0].n

    @property
    def k(self) -> int:
        return self.funcs[0].k

    def to_json(self) -> list[dict]:
        return [f.to_json() for f in self.funcs]

    @classmethod
    def from_json(cls, obj) -> FuncBlockSeq:
        return cls(tuple(FiniteFunction.from_json(x) for x in obj))


def is_block(funcs: Sequence[FiniteFunction]) -> bool:
    prev_max = -1
    for f in funcs:
        supp = support_list(f)
        if not supp or supp[0] <= prev_max:
            return False
        prev_max = supp[-1]
    return True


class SpanMode(enum.Enum):
    POS_STRICT = "pos_strict"
    POS_ALL = "pos_all"
    SIGNED_STRICT = "signed_strict"
    SIGNED_ALL = "signed_all"

    @property
    def strict(self) -> bool:
        return self in (SpanMode.POS_STRICT, SpanMode.SIGNED_STRICT)

    @property
    def signed(self) -> bool:
        return self in (SpanMode.SIGNED_STRICT, SpanMode.SIGNED_ALL)


def _funcs(F) -> tuple[FiniteFunction, ...]:
    return F.funcs if isinstance(F, FuncBlockSeq) else tuple(F)


def _sum_values(parts: Iterable[tuple[int, ...]], n: int) -> list[int]:
    vals = [0] * n
    for p in parts:
        for i, v in enumerate(p):
            if v:
                vals[i] += v
    return vals


def iter_span(F, mode: SpanMode = SpanMode.POS_STRICT, k: int | None = None) -> Iterator[FiniteFunction]:
    """All span elements in canonical order, duplicates included.

    The order is lexicographic over (index subset as bitmask, exponent tuple,
    sign tuple).
    """
    funcs = _funcs(F)
    if not funcs:
        raise ValueError("span of an empty sequence")
    k = funcs[0].k if k is None else k
    n = funcs[0].n
    out_signed = mode.signed or any(f.signed for f in funcs)
    if mode.strict:
        for f in funcs:
            if f.magnitude() != k:
                raise ValueError(f"strict span needs members attaining {k}: {f!r}")
    # tetris powers are precomputed once per member
    powers = [[tetris_pow(f, e).values for e in range(k)] for f in funcs]
    m = len(funcs)
    for mask in masks_in_order(m):
        idx = [i for i in range(m) if mask >> i & 1]
        for eps in itertools.product(range(k), repeat=len(idx)):
            if mode.strict and min(eps) != 0:
                continue
            base = [powers[i][e] for i, e in zip(idx, eps)]
            if mode.signed:
                for signs in itertools.product((1, -1), repeat=len(idx)):
                    parts = [p if a == 1 else tuple(-v for v in p) for p, a in zip(base, signs)]
                    vals = _sum_values(parts, n)
                    if any(vals):
                        yield FiniteFunction(tuple(vals), k, True)
            else:
                vals = _sum_values(base, n)
                if any(vals):
                    yield FiniteFunction(tuple(vals), k, out_signed)


def span(F, mode: SpanMode = SpanMode.POS_STRICT, k: int | None = None) -> list[FiniteFunction]:
    """Deduplicated span elements, first-occurrence order."""
    seen: dict[FiniteFunction, None] = {}
    for f in iter_span(F, mode, k):
        seen.setdefault(f, None)
    return list(seen)


def decompose(f: FiniteFunction, F, signed: bool = False, k: int | None = None):
    """Write ``f`` as ``sum a_j T^{e_j}(F_j)`` over a subset of indices.

    Returns a list of ``(j, a_j, e_j)`` or ``None`` if no such decomposition
    exists.  The decomposition is unique when it exists because members of a
    block sequence have disjoint supports.
    """
    funcs = _funcs(F)
    k = funcs[0].k if k is None else k
    covered: set[int] = set()
    terms = []
    for j, g in enumerate(funcs):
        supp = support_list(g)
        covered.update(supp)
        restricted = tuple(f.values[i] for i in supp)
        if not any(restricted):
            continue
        found = None
        for e in range(k):
            t = tetris_pow(g, e).values
            tr = tuple(t[i] for i in supp)
            if not any(tr):
                break
            if tr == restricted:
                found = (j, 1, e)
                break
            if signed and tuple(-v for v in tr) == restricted:
                found = (j, -1, e)
                break
        if found is None:
            return None
        terms.append(found)
    if any(v for i, v in enumerate(f.values) if i not in covered):
        return None
    if not terms:
        return None
    return terms


def in_span(f: FiniteFunction, F, mode: SpanMode = SpanMode.POS_STRICT, k: int | None = None) -> bool:
    """Membership predicate that does not materialize the span."""
    funcs = _funcs(F)
    if f.n != funcs[0].n:
        return False
    terms = decompose(f, funcs, signed=mode.signed, k=k)
    if terms is None:
        return False
    return not (mode.strict and min(e for _, _, e in terms) != 0)


# ---------------------------------------------------------------------------
# s-relative notions

def s_coords(f: FiniteFunction, s: SetBlockSeq) -> tuple[int, ...]:
    """The unique ``g`` with ``f = map(g, s)``; raises NotRepresentable."""
    if f.n != s.ambient:
        raise NotRepresentable(f"length {f.n} does not match ambient {s.ambient}")
    g = []
    covered: set[int] = set()
    for block in s.sets:
        vals = {f.values[i] for i in block}
        if len(vals) != 1:
            raise NotRepresentable(f"{f!r} is not constant on block {block}")
        g.append(vals.pop())
        covered.update(block)
    for i, v in enumerate(f.values):
        if v and i not in covered:
            raise NotRepresentable(f"{f!r} is nonzero at {i}, outside the blocks of {s!r}")
    return tuple(g)


def s_support(f: FiniteFunction, s: SetBlockSeq) -> frozenset[int]:
    return frozenset(i for i, v in enumerate(s_coords(f, s)) if v)


def _s_extent(f: FiniteFunction, s: SetBlockSeq) -> tuple[int, int]:
    supp = s_support(f, s)
    if not supp:
        raise NotRepresentable(f"{f!r} has empty support")
    return min(supp), max(supp)


def displacement_at_most_one(a, b, s: SetBlockSeq) -> bool:
    if isinstance(a, FiniteFunction):
        lo_a, hi_a = _s_extent(a, s)
        lo_b, hi_b = _s_extent(b, s)
        return lo_a <= lo_b <= lo_a + 1 and hi_a <= hi_b <= hi_a + 1
    a, b = _funcs(a), _funcs(b)
    if len(a) != len(b):
        raise ValueError("sequences must have equal length")
    return all(displacement_at_most_one(x, y, s) for x, y in zip(a, b))


def is_s_skipped(F, s: SetBlockSeq) -> bool:
    """Consecutive s-supports are separated by at least one unused s-index."""
    extents = [_s_extent(f, s) for f in _funcs(F)]
    return all(extents[i][1] + 1 < extents[i + 1][0] for i in range(len(extents) - 1))


def block_subseqs(F, d: int, mode: SpanMode = SpanMode.POS_STRICT, k: int | None = None) -> list[tuple]:
    """Length-``d`` block sequences with entries in the span of ``F``.

    Entries drawing on disjoint index sets of ``F`` are block exactly when the
    index sets are, so each index pattern contributes a product of spans.
    """
    funcs = _funcs(F)
    out: list[tuple] = []
    spans: dict[int, list[FiniteFunction]] = {}
    for pattern in block_patterns(len(funcs), d):
        parts = []
        for mask in pattern:
            if mask not in spans:
                sub = [funcs[i] for i in range(len(funcs)) if mask >> i & 1]
                spans[mask] = [f for f in span(sub, mode, k) if _uses_all(f, sub)]
            parts.append(spans[mask])
        out.extend(itertools.product(*parts))
    return out


def _uses_all(f: FiniteFunction, sub: Sequence[FiniteFunction]) -> bool:
    return all(any(f.values[i] for i in support_list(g)) for g in sub)
