"""Types and block supports: the decomposition ``f = map(tp(f), bsupp(f))``."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .blocks import FuncBlockSeq, SetBlockSeq
from .core import FiniteFunction


@dataclass(frozen=True, order=True)
class GType:
    word: tuple[int, ...]
    k: int
    signed: bool = False

    def __post_init__(self):
        word = tuple(int(v) for v in self.word)
        object.__setattr__(self, "word", word)
        if not word:
            raise ValueError("types are nonempty words")
        lo = -self.k if self.signed else 1
        for i, v in enumerate(word):
            if v == 0 or not lo <= v <= self.k:
                raise ValueError(f"entry {v} not allowed in a type over k={self.k}")
            if i and word[i - 1] == v:
                raise ValueError(f"adjacent entries repeat in {word}")
        if max(abs(v) for v in word) != self.k:
            raise ValueError(f"type {word} never reaches magnitude {self.k}")

    def __len__(self) -> int:
        return len(self.word)

    def as_function(self) -> FiniteFunction:
        return FiniteFunction(self.word, self.k, self.signed)

    def to_json(self) -> dict:
        return {"word": list(self.word), "k": self.k, "signed": self.signed}

    @classmethod
    def from_json(cls, obj) -> GType:
        return cls(tuple(obj["word"]), int(obj["k"]), bool(obj.get("signed", False)))

    def __repr__(self) -> str:
        return "tp(" + ",".join(map(str, self.word)) + ")"


def map_onto(g, s: SetBlockSeq, k: int | None = None, signed: bool | None = None) -> FiniteFunction:
    """Spread ``g(i)`` constantly over ``s_i``; the result has length ``s.ambient``."""
    if isinstance(g, GType):
        word, gk, gsigned = g.word, g.k, g.signed
    elif isinstance(g, FiniteFunction):
        word, gk, gsigned = g.values, g.k, g.signed
    else:
        word = tuple(g)
        gk = max((abs(v) for v in word), default=1) or 1
        gsigned = any(v < 0 for v in word)
    if len(word) != len(s):
        raise ValueError(f"length mismatch: {len(word)} values for {len(s)} blocks")
    vals = [0] * s.ambient
    for v, block in zip(word, s.sets):
        for i in block:
            vals[i] = v
    return FiniteFunction(tuple(vals), gk if k is None else k,
                          gsigned if signed is None else signed)


def type_of(f: FiniteFunction) -> tuple[GType, SetBlockSeq]:
    """``(tp(f), bsupp(f))``: runs of equal value in support order."""
    word: list[int] = []
    blocks: list[list[int]] = []
    for i, v in enumerate(f.values):
        if not v:
            continue
        if word and word[-1] == v:
            blocks[-1].append(i)
        else:
            word.append(v)
            blocks.append([i])
    if not word:
        raise ValueError("the zero function has no type")
    k = max(abs(v) for v in word)
    return (GType(tuple(word), k, f.signed),
            SetBlockSeq(tuple(tuple(b) for b in blocks), f.n))


def tp(f: FiniteFunction) -> GType:
    return type_of(f)[0]


def type_of_seq(F) -> list[GType]:
    funcs = F.funcs if isinstance(F, FuncBlockSeq) else F
    return [tp(f) for f in funcs]


@lru_cache(maxsize=None)
def _types(k: int, d: int, signed: bool) -> tuple[GType, ...]:
    alphabet = sorted(v for v in range(-k, k + 1) if v and (signed or v > 0))
    out = []
    for word in itertools.product(alphabet, repeat=d):
        if any(word[i] == word[i + 1] for i in range(d - 1)):
            continue
        if max(abs(v) for v in word) != k:
            continue
        out.append(GType(word, k, signed))
    return tuple(out)


def enumerate_types(k: int, d: int, signed: bool = False) -> list[GType]:
    return list(_types(k, d, signed))


def types_up_to(k: int, m: int, signed: bool = False) -> list[GType]:
    """Every type of length at most ``m``, by length then lexicographically."""
    out: list[GType] = []
    for d in range(1, m + 1):
        out.extend(_types(k, d, signed))
    return out


def type_count_bound(k: int, d: int, signed: bool = False) -> int:
    """The counting bound d(k-1)^(d-1), or 2d(2k-1)^(d-1) for signed types (0^0 = 1)."""
    if signed:
        return 2 * d * (2 * k - 1) ** (d - 1)
    return d * (k - 1) ** (d - 1)


def block_type(F: Sequence[FiniteFunction]) -> tuple[GType, ...]:
    return tuple(type_of_seq(F))


def block_map(phis: Sequence[GType], t: SetBlockSeq) -> tuple[FiniteFunction, ...]:
    """``bl(phi-bar, t)``: consecutive stretches of ``t`` carry each type in turn."""
    out = []
    pos = 0
    for phi in phis:
        part = t[pos:pos + len(phi)]
        if len(part) != len(phi):
            raise ValueError("set block sequence too short for the block type")
        out.append(map_onto(phi, part))
        pos += len(phi)
    return tuple(out)
