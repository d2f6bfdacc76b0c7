"""Exact big-integer evaluation of the bound recursions.

Every bound is built from a small expression language.  Values are Python
ints when they can be computed (under the digit guard) and ``Expr`` trees
otherwise; ``MT`` leaves are resolved by a pluggable strategy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Mapping, Union

DEFAULT_DIGIT_GUARD = 10**6
_LOG2_10 = math.log2(10)


class TooLarge(ArithmeticError):
    """A value would exceed the digit guard."""


@dataclass(frozen=True)
class Expr:
    op: str
    args: tuple

    def to_json(self) -> dict:
        return {"op": self.op, "args": [a.to_json() if isinstance(a, Expr) else a for a in self.args]}

    @classmethod
    def from_json(cls, obj) -> Union[Expr, int]:
        if isinstance(obj, int):
            return obj
        op, args = obj["op"], obj["args"]
        if op == "lit":
            return int(args[0])
        return cls(op, tuple(cls.from_json(a) for a in args))

    def __str__(self) -> str:
        infix = {"add": "+", "sub": "-", "mul": "*", "pow": "^"}
        if self.op in infix:
            return "(" + f" {infix[self.op]} ".join(map(_fmt, self.args)) + ")"
        return f"{self.op}(" + ", ".join(map(_fmt, self.args)) + ")"


Value = Union[int, Expr]
OPS = ("MT", "pow", "mul", "add", "sub", "lit", "alpha", "beta", "gamma", "h")


def _fmt(v) -> str:
    if isinstance(v, int) and v.bit_length() > 200:
        return f"<~{int(v.bit_length() / _LOG2_10) + 1} digits>"
    return str(v)


def lit(v: int) -> dict:
    return {"op": "lit", "args": [v]}


def is_ground(v) -> bool:
    return isinstance(v, int)


# ---------------------------------------------------------------------------
# guarded arithmetic on Values

class _Arith:
    def __init__(self, guard: int = DEFAULT_DIGIT_GUARD):
        self.guard = guard
        self.max_bits = int(guard * _LOG2_10) + 1

    def _ok(self, bits: float) -> bool:
        return bits <= self.max_bits

    def _ok_pow(self, base: int, exp: int, extra: float = 0.0) -> bool:
        """``base**exp`` (times a factor of ``2**extra``) fits under the guard."""
        if exp.bit_length() > 64:
            return False
        return self._ok(exp * math.log2(base) + extra)

    def add(self, a: Value, b: Value) -> Value:
        if is_ground(a) and is_ground(b):
            return a + b
        return Expr("add", (a, b))

    def sub(self, a: Value, b: Value) -> Value:
        if is_ground(a) and is_ground(b):
            return a - b
        return Expr("sub", (a, b))

    def mul(self, a: Value, b: Value) -> Value:
        if is_ground(a) and is_ground(b):
            if self._ok(a.bit_length() + b.bit_length()):
                return a * b
        return Expr("mul", (a, b))

    def pow(self, a: Value, b: Value) -> Value:
        if is_ground(a) and is_ground(b):
            if a in (0, 1) or b == 0:
                return 1 if b == 0 else a
            if self._ok_pow(a, b):
                return a ** b
        elif is_ground(a) and a == 1:
            return 1
        return Expr("pow", (a, b))

    def alpha(self, k: Value, m: Value) -> Value:
        if is_ground(k) and is_ground(m):
            x = k - 1
            if x <= 1 and m.bit_length() <= 64 or self._ok_pow(x, m, 2 * math.log2(m + 1)):
                return _geo_weighted(x, m)
        return Expr("alpha", (k, m))

    def beta(self, k: Value, m: Value) -> Value:
        if is_ground(k) and is_ground(m):
            x = 2 * k - 1
            if x <= 1 and m.bit_length() <= 64 or self._ok_pow(x, m, 2 * math.log2(m + 1)):
                return 2 * _geo_weighted(x, m)
        return Expr("beta", (k, m))

    def gamma(self, k: Value, d: Value, m: Value) -> Value:
        if is_ground(k) and is_ground(d) and is_ground(m):
            if d > m:
                raise ValueError("gamma needs d <= m")
            if max(d, m).bit_length() > 64:
                return Expr("gamma", (k, d, m))
            bits = d * (1 + math.log2(max(m, 1))) + m + d * (m - 1) * math.log2(2 * k - 1)
            if self._ok(bits):
                return math.comb(m, d) * 2**d * m**d * (2 * k - 1) ** (d * (m - 1))
        return Expr("gamma", (k, d, m))


def _geo_weighted(x: int, m: int) -> int:
    """``sum_{d=1}^m d x^(d-1)`` with ``0^0 = 1``."""
    if x == 0:
        return 1
    if x == 1:
        return m * (m + 1) // 2
    return (1 - (m + 1) * x**m + m * x ** (m + 1)) // ((1 - x) ** 2)


# ---------------------------------------------------------------------------
# Grzegorczyk functions and the explicit sums

def grzegorczyk_E(q: int, *args: int, guard: int = DEFAULT_DIGIT_GUARD) -> int:
    """``E_0(n,m) = n+m``, ``E_1(n) = n^2+2``, ``E_{q+1}(0) = 2``,
    ``E_{q+1}(n+1) = E_q(E_{q+1}(n))``.  Raises ``TooLarge`` past the guard."""
    if q < 0:
        raise ValueError("q must be non-negative")
    if q == 0:
        if len(args) != 2:
            raise TypeError("E_0 takes two arguments")
        return args[0] + args[1]
    if len(args) != 1:
        raise TypeError(f"E_{q} takes one argument")
    n = args[0]
    if n < 0:
        raise ValueError("argument must be non-negative")
    max_bits = int(guard * _LOG2_10) + 1
    if q == 1:
        if 2 * n.bit_length() > max_bits:
            raise TooLarge(f"E_1({_fmt(n)}) exceeds {guard} digits")
        return n * n + 2
    v = 2
    for _ in range(n):
        v = grzegorczyk_E(q - 1, v, guard=guard)
    return v


def alpha(k: int, m: int) -> int:
    """``sum_{d=1}^m d(k-1)^(d-1)``, taking ``0^0 = 1``."""
    if k < 1 or m < 1:
        raise ValueError("k, m must be positive")
    return _geo_weighted(k - 1, m)


def beta(k: int, m: int) -> int:
    """``sum_{d=1}^m 2d(2k-1)^(d-1)``."""
    if k < 1 or m < 1:
        raise ValueError("k, m must be positive")
    return 2 * _geo_weighted(2 * k - 1, m)


def gamma(k: int, d: int, m: int) -> int:
    """``C(m,d) 2^d m^d (2k-1)^(d(m-1))``."""
    if not 1 <= d <= m:
        raise ValueError("gamma needs 1 <= d <= m")
    return math.comb(m, d) * 2**d * m**d * (2 * k - 1) ** (d * (m - 1))


# ---------------------------------------------------------------------------
# MT strategies

class MTStrategy:
    name = "abstract"

    def __call__(self, d: Value, m: Value, r: Value) -> Value:
        raise NotImplementedError


class Symbolic(MTStrategy):
    """``MT`` stays an uninterpreted function."""
    name = "symbolic"

    def __call__(self, d, m, r):
        return Expr("MT", (d, m, r))


class Table(MTStrategy):
    """User-supplied values, from a mapping ``(d,m,r) -> n`` or a callable.
    Missing entries stay symbolic."""
    name = "table"

    def __init__(self, source: Mapping | Callable):
        self.source = source
        if not callable(source):
            items = [(tuple(key), v) for key, v in dict(source).items()]
            for key, v in items:
                if not isinstance(v, int) or v < 1:
                    raise ValueError(f"table entry {key} -> {v!r} must be a positive integer")
            for ka, va in items:
                for kb, vb in items:
                    if all(x <= y for x, y in zip(ka, kb)) and va > vb:
                        raise ValueError(f"table not monotone: {ka}->{va} vs {kb}->{vb}")

    def __call__(self, d, m, r):
        if not (is_ground(d) and is_ground(m) and is_ground(r)):
            return Expr("MT", (d, m, r))
        if callable(self.source):
            v = self.source(d, m, r)
        else:
            v = self.source.get((d, m, r))
        if v is None:
            return Expr("MT", (d, m, r))
        if not isinstance(v, int) or v < 1:
            raise ValueError(f"table value MT({d},{m},{r}) = {v!r} must be a positive integer")
        return v


class ExactTiny(MTStrategy):
    """Exact ``MT`` from closed forms, the regression file, or exhaustive
    search within a node budget.

    Out of that regime the leaf stays symbolic, or with ``floor=True`` it is
    replaced by the certified lower bound ``MT(d,m,r) >= m``.  A floored
    bound is a lower bound for the true bound value, so an exact number
    below it is below the bound as well.
    """
    name = "exact-tiny"

    def __init__(self, floor: bool = False, n_max: int = 7, budget: int = 2_000_000,
                 max_r: int = 4, search: bool = True):
        self.floor = floor
        self.n_max = n_max
        self.budget = budget
        self.max_r = max_r
        self.search = search
        self.floored: list[tuple] = []

    def exact(self, d: int, m: int, r: int) -> int | None:
        if r == 1 or d == m:
            return m
        from . import verifier
        key = verifier.ExactQuery("MT", d=d, m=m, r=r)
        known = verifier.regression_value(key)
        if known is not None:
            return known
        if not self.search or r > self.max_r:
            return None
        try:
            return verifier.exact_number(verifier.ExactQuery("MT", d=d, m=m, r=r, n_max=self.n_max),
                                         budget=self.budget)
        except verifier.BudgetExceeded:
            return None

    def __call__(self, d, m, r):
        if is_ground(d) and is_ground(m) and is_ground(r):
            v = self.exact(d, m, r)
            if v is not None:
                return v
        if self.floor and is_ground(m):
            self.floored.append((d, m, r))
            return m
        return Expr("MT", (d, m, r))


STRATEGIES = {"symbolic": Symbolic, "exact-tiny": ExactTiny}


# ---------------------------------------------------------------------------
# bound recursions

def _ar(guard) -> _Arith:
    return _Arith(DEFAULT_DIGIT_GUARD if guard is None else guard)


def bound_G(k: int, m: Value, r: Value, mt: MTStrategy, guard: int | None = None) -> Value:
    """``G(1,m,r) = MT(1,m,r)``; for ``k >= 2``, with ``L = G(k-1,m,r)(2k-1)``,
    ``G(k,m,r) <= MT(L, 2L-1, r^alpha(k, L))``."""
    if k < 1:
        raise ValueError("k must be positive")
    A = _ar(guard)
    if k == 1:
        return mt(1, m, r)
    L = A.mul(bound_G(k - 1, m, r, mt, guard), 2 * k - 1)
    return mt(L, A.sub(A.mul(2, L), 1), A.pow(r, A.alpha(k, L)))


def bound_G_pm(k: int, m: Value, r: Value, mt: MTStrategy, guard: int | None = None) -> Value:
    """``MT(2kM, 4kM-1, r^beta(k, 2kM))`` with ``M = G(k,m,r)``."""
    A = _ar(guard)
    M = bound_G(k, m, r, mt, guard)
    L = A.mul(2 * k, M)
    return mt(L, A.sub(A.mul(2, L), 1), A.pow(r, A.beta(k, L)))


def h_fn(d: Value, ell: Value, r: Value, k: int, x: Value, g_bound: Callable | MTStrategy,
         guard: int | None = None) -> Value:
    """``h(d,l,r,k,0) = 0`` and ``h(d,l,r,k,x+1) = G(k, h(d,l,r,k,x)+1, r^((k+1)^(d l)))``.

    ``g_bound`` is an MT strategy (``G`` is then ``bound_G``) or a callable
    ``(k, m, r) -> G``.
    """
    A = _ar(guard)
    if not is_ground(x):
        return Expr("h", (d, ell, r, k, x))
    if x < 0:
        raise ValueError("x must be non-negative")
    G = _g_callable(g_bound, guard)
    colors = A.pow(r, A.pow(k + 1, A.mul(d, ell)))
    v: Value = 0
    for _ in range(x):
        v = G(k, A.add(v, 1), colors)
        if not is_ground(v):
            # past the guard; keep the tree one node deep
            return Expr("h", (d, ell, r, k, x))
    return v


def _g_callable(g_bound, guard):
    if isinstance(g_bound, MTStrategy):
        return lambda k, m, r: bound_G(k, m, r, g_bound, guard)
    return g_bound


def bound_MG(k: int, d: int, m: int, r: Value, mt: MTStrategy, guard: int | None = None,
             g_bound: Callable | None = None) -> Value:
    """``MG(k,1,m,r) = G(k,m,r)`` and
    ``MG(k,d+1,m,r) <= d + h(d, M+1, r, k, M-d+1)`` with ``M = MG(k,d,m-1,r)``."""
    if not 1 <= d <= m:
        raise ValueError("need 1 <= d <= m")
    A = _ar(guard)
    G = g_bound or (lambda kk, mm, rr: bound_G(kk, mm, rr, mt, guard))
    if d == 1:
        return G(k, m, r)
    dd = d - 1
    M = bound_MG(k, dd, m - 1, r, mt, guard, g_bound)
    return A.add(dd, h_fn(dd, A.add(M, 1), r, k, A.add(A.sub(M, dd), 1), G, guard))


def bound_MG_pm(k: int, d: int, m: int, r: Value, mt: MTStrategy, guard: int | None = None) -> Value:
    """``MT(2kM, 4kM-1, r^gamma(k, d, 2kM))`` with ``M = MG(k,d,m,r)``."""
    A = _ar(guard)
    M = bound_MG(k, d, m, r, mt, guard)
    L = A.mul(2 * k, M)
    return mt(L, A.sub(A.mul(2, L), 1), A.pow(r, A.gamma(k, d, L)))


# ---------------------------------------------------------------------------
# re-evaluation of trees

def evaluate(v: Value, mt: MTStrategy, guard: int | None = None) -> Value:
    """Fold a tree bottom-up, resolving ``MT`` leaves with ``mt``."""
    if is_ground(v):
        return v
    A = _ar(guard)
    args = [evaluate(a, mt, guard) for a in v.args]
    op = v.op
    if op == "MT":
        return mt(*args)
    if op == "h":
        d, ell, r, k, x = args
        return h_fn(d, ell, r, k, x, mt, guard)
    if op in ("add", "sub", "mul", "pow", "alpha", "beta", "gamma"):
        return getattr(A, op)(*args)
    raise ValueError(f"unknown op {op!r}")


_MONOTONE = frozenset({"MT", "add", "mul", "pow", "alpha", "beta", "gamma", "h"})


def compare_le(a: Value, b: Value) -> bool | None:
    """``a <= b`` where trees stand for values beyond the digit guard.

    Two trees with the same head are compared argument by argument, which
    proves ``a <= b`` for the operations that are monotone in every argument
    (``MT`` leaves included) and for ``sub`` with equal subtrahends.
    Returns ``None`` when neither side can be shown to dominate.
    """
    if is_ground(a) and is_ground(b):
        return a <= b
    if is_ground(a):
        return True
    if is_ground(b):
        return False
    if a == b:
        return True
    if a.op == b.op and len(a.args) == len(b.args):
        if a.op == "sub":
            if a.args[1] == b.args[1] and compare_le(a.args[0], b.args[0]):
                return True
        elif a.op in _MONOTONE and all(compare_le(x, y) for x, y in zip(a.args, b.args)):
            return True
    return None


BOUNDS = {"G": bound_G, "G_PM": bound_G_pm, "MG": bound_MG, "MG_PM": bound_MG_pm}
