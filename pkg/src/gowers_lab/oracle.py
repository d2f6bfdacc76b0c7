"""Coloring oracles over the finite domains the theorems quantify over."""
from __future__ import annotations

import hashlib
import json
import zlib
from dataclasses import dataclass
from typing import Callable, Hashable, Iterator

from .blocks import SetBlockSeq, enumerate_set_block_seqs
from .core import FiniteFunction, all_functions, support_list
from .gtypes import tp

MAX_TABLE_ENTRIES = 10**6

# domain kinds
X = "X"                 # X_k(n)
X_PM = "X_pm"           # X_{±k}(n)
BLOCK = "Block"         # Block^d_k(n): block sequences in X_k(n)
BLOCK_PM = "Block_pm"   # Block^d_{±k}(n)
SETS = "Sets"           # Block^d(n): block sequences of subsets of {0..n-1}

KINDS = (X, X_PM, BLOCK, BLOCK_PM, SETS)


class DomainMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Domain:
    kind: str
    n: int
    k: int = 1
    d: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if self.n < 1 or self.k < 1 or self.d < 1:
            raise ValueError("domain parameters must be positive")

    @property
    def signed(self) -> bool:
        return self.kind in (X_PM, BLOCK_PM)

    @property
    def is_sequence(self) -> bool:
        return self.kind in (BLOCK, BLOCK_PM, SETS)

    def contains(self, x) -> bool:
        if self.kind in (X, X_PM):
            return (isinstance(x, FiniteFunction) and x.n == self.n and x.k == self.k
                    and (self.signed or not any(v < 0 for v in x.values)) and x.in_sphere())
        if self.kind == SETS:
            return isinstance(x, SetBlockSeq) and len(x) == self.d and x.ambient == self.n
        if not isinstance(x, tuple) or len(x) != self.d:
            return False
        point = Domain(X_PM if self.signed else X, self.n, self.k)
        if not all(point.contains(f) for f in x):
            return False
        prev = -1
        for f in x:
            supp = support_list(f)
            if supp[0] <= prev:
                return False
            prev = supp[-1]
        return True

    def elements(self) -> Iterator:
        if self.kind in (X, X_PM):
            yield from all_functions(self.n, self.k, self.signed)
        elif self.kind == SETS:
            yield from enumerate_set_block_seqs(self.n, self.d)
        else:
            yield from block_func_seqs(self.n, self.k, self.d, self.signed)

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n, "k": self.k, "d": self.d}

    @classmethod
    def from_json(cls, obj) -> Domain:
        return cls(obj["kind"], int(obj["n"]), int(obj.get("k", 1)), int(obj.get("d", 1)))


def block_func_seqs(n: int, k: int, d: int, signed: bool = False, start: int = 0) -> Iterator[tuple]:
    """Length-``d`` block sequences in X_k(n) (or X_{±k}(n)), lexicographic by values."""
    pool = []
    for f in all_functions(n, k, signed):
        supp = support_list(f)
        if supp[0] >= start:
            pool.append((f, supp[0], supp[-1]))

    def rec(prefix: tuple, lo: int):
        if len(prefix) == d:
            yield prefix
            return
        need = d - len(prefix) - 1
        for f, a, b in pool:
            if a >= lo and n - (b + 1) >= need:
                yield from rec(prefix + (f,), b + 1)

    yield from rec((), start)


def encode(x) -> str:
    if isinstance(x, FiniteFunction):
        return x.encode()
    if isinstance(x, SetBlockSeq):
        return ";".join(".".join(map(str, b)) for b in x.sets)
    if isinstance(x, tuple):
        return "|".join(encode(y) for y in x)
    raise TypeError(f"cannot encode {type(x).__name__}")


def decode(domain: Domain, text: str):
    if domain.kind in (X, X_PM):
        return FiniteFunction(tuple(int(v) for v in text.split(",")), domain.k, domain.signed)
    if domain.kind == SETS:
        sets = tuple(tuple(int(v) for v in b.split(".")) for b in text.split(";"))
        return SetBlockSeq(sets, domain.n)
    return tuple(FiniteFunction(tuple(int(v) for v in part.split(",")), domain.k, domain.signed)
                 for part in text.split("|"))


class ColoringOracle:
    """Total, pure map from a finite domain to colors ``1..r``; results are memoized."""

    def __init__(self, domain: Domain | None, r: int | None, fn: Callable[[object], Hashable],
                 name: str = "custom", check: bool = False):
        if r is not None and r < 1:
            raise ValueError("need r >= 1")
        self.domain = domain
        self.r = r
        self.name = name
        self._fn = fn
        self._memo: dict = {}
        self._check = check
        self.evaluations = 0

    def __call__(self, x):
        try:
            return self._memo[x]
        except KeyError:
            pass
        if self._check and self.domain is not None and not self.domain.contains(x):
            raise DomainMismatch(f"{x!r} is not in {self.domain}")
        c = self._fn(x)
        if self.r is not None and not (isinstance(c, int) and 1 <= c <= self.r):
            raise ValueError(f"oracle {self.name} produced color {c!r} outside 1..{self.r}")
        self.evaluations += 1
        self._memo[x] = c
        return c

    def require(self, domain: Domain) -> None:
        if self.domain is not None and self.domain != domain:
            raise DomainMismatch(f"oracle is on {self.domain}, needed {domain}")

    def table(self) -> dict[str, int]:
        if self.domain is None:
            raise ValueError("oracle has no declared domain")
        out = {}
        for x in self.domain.elements():
            out[encode(x)] = self(x)
            if len(out) > MAX_TABLE_ENTRIES:
                raise ValueError("table exceeds the 10^6 entry cap")
        return out

    def to_json(self) -> dict:
        return {"domain": self.domain.to_json(), "r": self.r, "table": self.table()}

    def __repr__(self) -> str:
        return f"ColoringOracle({self.name}, r={self.r}, domain={self.domain})"


# ---------------------------------------------------------------------------
# built-in families

def _first(x):
    return x[0] if isinstance(x, tuple) else x


def _stable_hash(text: str) -> int:
    return zlib.crc32(text.encode())


def constant(domain: Domain | None, r: int = 1, color: int = 1) -> ColoringOracle:
    return ColoringOracle(domain, r, lambda x: color, "constant")


def by_type(domain: Domain | None, r: int) -> ColoringOracle:
    """Color determined by the type (componentwise for sequences)."""
    def fn(x):
        if isinstance(x, SetBlockSeq):
            key = ";".join(str(len(b)) for b in x.sets)
        elif isinstance(x, tuple):
            key = "|".join(",".join(map(str, tp(f).word)) for f in x)
        else:
            key = ",".join(map(str, tp(x).word))
        return 1 + _stable_hash(key) % r
    return ColoringOracle(domain, r, fn, "by-type")


def by_min_supp_sign(domain: Domain | None, r: int = 2) -> ColoringOracle:
    if r < 2:
        raise ValueError("by-min-supp-sign needs two colors")

    def fn(x):
        f = _first(x)
        return 1 if f.values[support_list(f)[0]] > 0 else 2
    return ColoringOracle(domain, r, fn, "by-min-supp-sign")


def parity_of_sum(domain: Domain | None, r: int = 2) -> ColoringOracle:
    """``1 + (sum of values mod r)``; for sets the sum is the total cardinality."""
    def fn(x):
        if isinstance(x, SetBlockSeq):
            total = sum(len(b) for b in x.sets)
        elif isinstance(x, tuple):
            total = sum(sum(f.values) for f in x)
        else:
            total = sum(x.values)
        return 1 + total % r
    return ColoringOracle(domain, r, fn, "parity-of-sum")


def degree(domain: Domain | None, K: int) -> ColoringOracle:
    """``(|tp(f)| mod K) + 1``; counts sign runs of a signed function."""
    return ColoringOracle(domain, K, lambda x: len(tp(_first(x))) % K + 1, "degree")


def random_table(domain: Domain | None, r: int, seed: int) -> ColoringOracle:
    """A uniformly random table, materialized lazily from a keyed hash."""
    key = str(seed).encode()

    def fn(x):
        h = hashlib.blake2b(encode(x).encode(), digest_size=8, key=key[:64])
        return 1 + int.from_bytes(h.digest(), "little") % r
    return ColoringOracle(domain, r, fn, f"random:{seed}")


def random_type_table(domain: Domain | None, r: int, seed: int) -> ColoringOracle:
    """A random table that is constant on types."""
    key = str(seed).encode()

    def fn(x):
        if isinstance(x, tuple):
            text = "|".join(",".join(map(str, tp(f).word)) for f in x)
        else:
            text = ",".join(map(str, tp(x).word))
        h = hashlib.blake2b(text.encode(), digest_size=8, key=key[:64])
        return 1 + int.from_bytes(h.digest(), "little") % r
    return ColoringOracle(domain, r, fn, f"random-type:{seed}")


def from_table(domain: Domain, r: int, table: dict[str, int]) -> ColoringOracle:
    if len(table) > MAX_TABLE_ENTRIES:
        raise ValueError("oracle table exceeds the 10^6 entry cap")

    def fn(x):
        try:
            return table[encode(x)]
        except KeyError:
            raise DomainMismatch(f"table has no entry for {encode(x)}") from None
    for c in table.values():
        if not isinstance(c, int) or not 1 <= c <= r:
            raise ValueError(f"table color {c!r} outside 1..{r}")
    return ColoringOracle(domain, r, fn, "table")


BUILTINS = {
    "constant": lambda dom, r, **kw: constant(dom, r),
    "by-type": lambda dom, r, **kw: by_type(dom, r),
    "by-min-supp-sign": lambda dom, r, **kw: by_min_supp_sign(dom, r),
    "parity-of-sum": lambda dom, r, **kw: parity_of_sum(dom, r),
    "degree": lambda dom, r, **kw: degree(dom, r),
    "random": lambda dom, r, seed=0, **kw: random_table(dom, r, seed),
    "random-type": lambda dom, r, seed=0, **kw: random_type_table(dom, r, seed),
}


def builtin(name: str, domain: Domain | None, r: int, **kw) -> ColoringOracle:
    try:
        factory = BUILTINS[name]
    except KeyError:
        raise ValueError(f"unknown oracle family {name!r}; known: {sorted(BUILTINS)}") from None
    return factory(domain, r, **kw)


def load(path_or_obj) -> ColoringOracle:
    if isinstance(path_or_obj, dict):
        obj = path_or_obj
    else:
        with open(path_or_obj) as fh:
            obj = json.load(fh)
    try:
        domain = Domain.from_json(obj["domain"])
        r = int(obj["r"])
        table = obj["table"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed oracle file: {exc}") from None
    if not isinstance(table, dict):
        raise ValueError("malformed oracle file: table must be an object")
    return from_table(domain, r, table)
