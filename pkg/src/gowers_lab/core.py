"""Discretized sphere elements and the tetris operator.

A :class:`FiniteFunction` is a function ``{0..n-1} -> {0..k}`` (unsigned) or
``{0..n-1} -> {-k..k}`` (signed).  Membership in the sphere ``X_k(n)`` /
``X_{±k}(n)`` is a predicate on the value, not a separate type.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class ParameterMismatch(ValueError):
    """Two functions that must share length/k/signedness do not."""


class OverlappingSupports(ValueError):
    pass


@dataclass(frozen=True, order=True)
class FiniteFunction:
    values: tuple[int, ...]
    k: int
    signed: bool = False

    def __post_init__(self):
        if not isinstance(self.values, tuple):
            object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if self.k < 1:
            raise ValueError(f"k must be positive, got {self.k}")
        if not self.values:
            raise ValueError("length must be positive")
        lo = -self.k if self.signed else 0
        for v in self.values:
            if not lo <= v <= self.k:
                raise ValueError(f"value {v} outside [{lo}, {self.k}]")

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)

    def is_zero(self) -> bool:
        return not any(self.values)

    def magnitude(self) -> int:
        return max(abs(v) for v in self.values)

    def in_sphere(self) -> bool:
        """Membership in X_k(n) (unsigned) or X_{±k}(n) (signed)."""
        return self.magnitude() == self.k

    def with_values(self, values: Iterable[int]) -> FiniteFunction:
        return FiniteFunction(tuple(values), self.k, self.signed)

    def as_signed(self) -> FiniteFunction:
        return self if self.signed else FiniteFunction(self.values, self.k, True)

    def negate(self) -> FiniteFunction:
        if not self.signed:
            raise ValueError("cannot negate an unsigned function")
        return self.with_values(-v for v in self.values)

    def scale(self, a: int) -> FiniteFunction:
        """Multiply by a sign ``a`` in {-1, 1}; promotes to signed when a = -1."""
        if a == 1:
            return self
        if a != -1:
            raise ValueError("scale factor must be +1 or -1")
        return self.as_signed().negate()

    def encode(self) -> str:
        return ",".join(str(v) for v in self.values)

    def to_json(self) -> dict:
        return {"n": self.n, "k": self.k, "signed": self.signed, "values": list(self.values)}

    @classmethod
    def from_json(cls, obj) -> FiniteFunction:
        if isinstance(obj, str):
            obj = json.loads(obj)
        f = cls(tuple(obj["values"]), int(obj["k"]), bool(obj.get("signed", False)))
        if "n" in obj and obj["n"] != f.n:
            raise ValueError(f"declared n={obj['n']} but {f.n} values given")
        return f

    def __repr__(self) -> str:
        tag = "±" if self.signed else ""
        return f"F{tag}{self.k}[{self.encode()}]"


def zero(n: int, k: int, signed: bool = False) -> FiniteFunction:
    return FiniteFunction((0,) * n, k, signed)


def _step(v: int, e: int) -> int:
    if v > 0:
        return max(0, v - e)
    if v < 0:
        return min(0, v + e)
    return 0


def tetris(f: FiniteFunction) -> FiniteFunction:
    return tetris_pow(f, 1)


def tetris_pow(f: FiniteFunction, e: int) -> FiniteFunction:
    if e < 0:
        raise ValueError("exponent must be non-negative")
    if e == 0:
        return f
    return f.with_values(_step(v, e) for v in f.values)


def support(f: FiniteFunction) -> frozenset[int]:
    return frozenset(i for i, v in enumerate(f.values) if v)


def support_list(f: FiniteFunction) -> list[int]:
    return [i for i, v in enumerate(f.values) if v]


def sup_metric(f: FiniteFunction, g: FiniteFunction) -> int:
    if f.n != g.n:
        raise ParameterMismatch(f"lengths differ: {f.n} vs {g.n}")
    return max(abs(a - b) for a, b in zip(f.values, g.values))


def _check_compatible(f: FiniteFunction, g: FiniteFunction) -> None:
    if f.n != g.n or f.k != g.k or f.signed != g.signed:
        raise ParameterMismatch(f"incompatible functions {f!r} and {g!r}")


def add_disjoint(f: FiniteFunction, g: FiniteFunction) -> FiniteFunction:
    _check_compatible(f, g)
    out = []
    for a, b in zip(f.values, g.values):
        if a and b:
            raise OverlappingSupports(f"supports of {f!r} and {g!r} overlap")
        out.append(a + b)
    return f.with_values(out)


def sum_disjoint(funcs: Sequence[FiniteFunction], n: int | None = None, k: int | None = None,
                 signed: bool | None = None) -> FiniteFunction:
    """Disjoint sum of a (possibly empty) list; parameters needed only when empty."""
    if not funcs:
        if n is None or k is None:
            raise ValueError("empty sum needs explicit n and k")
        return zero(n, k, bool(signed))
    acc = funcs[0]
    for g in funcs[1:]:
        acc = add_disjoint(acc, g)
    return acc


def char_fn(A: Iterable[int], n: int, scale: int = 1, k: int | None = None) -> FiniteFunction:
    """``scale`` times the characteristic function of ``A`` on ``{0..n-1}``.

    ``k`` defaults to ``|scale|``; the result is signed iff ``scale < 0``.
    """
    A = sorted(set(A))
    if not A:
        raise ValueError("index set must be nonempty")
    if A[0] < 0 or A[-1] >= n:
        raise IndexError(f"index set {A} out of range for n={n}")
    if k is None:
        k = abs(scale)
    if abs(scale) > k or scale == 0:
        raise ValueError(f"scale {scale} not allowed for k={k}")
    vals = [0] * n
    for i in A:
        vals[i] = scale
    return FiniteFunction(tuple(vals), k, scale < 0)


def all_functions(n: int, k: int, signed: bool = False, sphere: bool = True) -> Iterator[FiniteFunction]:
    """Every function of length ``n``, in lexicographic value order.

    With ``sphere`` only those attaining magnitude ``k`` (X_k(n) / X_{±k}(n)).
    """
    alphabet = range(-k, k + 1) if signed else range(k + 1)
    for vals in itertools.product(alphabet, repeat=n):
        if sphere and max(abs(v) for v in vals) != k:
            continue
        yield FiniteFunction(vals, k, signed)


def sphere_size(n: int, k: int, signed: bool = False) -> int:
    if signed:
        return (2 * k + 1) ** n - (2 * k - 1) ** n
    return (k + 1) ** n - k ** n
