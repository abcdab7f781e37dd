"""Indecomposable stable objects over simple singularities of type A_n.

Objects of the stable category are finite multisets of non-free
indecomposables.  Identifiers are plain strings:

    ``I<i>``   the ideal (x^i, y)            (reduced dimension 1)
    ``N+``     R/(x^{(n+1)/2} + i*y)          (reduced dimension 1, n odd)
    ``N-``     R/(x^{(n+1)/2} - i*y)          (reduced dimension 1, n odd)
    ``M<i>``   k[x]/(x^i), 1 <= i <= n        (reduced dimension 0)

The free module is the zero object and never appears as an identifier.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Mapping


class DomainError(ValueError):
    """Raised for invalid ring parameters or identifiers outside a ring."""


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class SingularitySpec:
    """The ring k[[x_0..x_d]]/(x_0^{n+1} + x_1^2 + ... + x_d^2)."""

    n: int
    d: int
    family: str = "A"

    def __post_init__(self):
        if self.family != "A":
            raise DomainError(f"only type A is supported, got {self.family!r}")
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"n must be a positive integer, got {self.n!r}")
        if not isinstance(self.d, int) or self.d < 0:
            raise DomainError(f"d must be a non-negative integer, got {self.d!r}")

    @classmethod
    def parse(cls, text: str) -> "SingularitySpec":
        m = re.fullmatch(r"\s*([A-Za-z]+):(-?\d+):(-?\d+)\s*", text)
        if not m:
            raise DomainError(f"ring spec must look like A:<n>:<d>, got {text!r}")
        return cls(n=int(m.group(2)), d=int(m.group(3)), family=m.group(1))

    @property
    def reduced(self) -> "SingularitySpec":
        return knoerrer_reduce(self)

    @property
    def is_reduced(self) -> bool:
        return self.d < 2

    def __str__(self) -> str:
        return f"{self.family}:{self.n}:{self.d}"


def knoerrer_reduce(spec: SingularitySpec) -> SingularitySpec:
    """Drop pairs of square variables; the stable category is unchanged."""
    if spec.d < 2:
        return spec
    return SingularitySpec(n=spec.n, d=spec.d % 2, family=spec.family)


def sort_key(ident: str):
    """Canonical order: I1 < I2 < ... < N+ < N- ; M1 < M2 < ..."""
    if ident == "N+":
        return (1, 0)
    if ident == "N-":
        return (1, 1)
    kind, idx = ident[0], ident[1:]
    if kind == "I":
        return (0, int(idx))
    if kind == "M":
        return (2, int(idx))
    raise DomainError(f"malformed identifier {ident!r}")


@lru_cache(maxsize=None)
def _classify(n: int, d: int) -> tuple[str, ...]:
    if d == 0:
        return tuple(f"M{i}" for i in range(1, n + 1))
    ideals = tuple(f"I{i}" for i in range(1, n // 2 + 1))
    if n % 2 == 0:
        return ideals
    return ideals + ("N+", "N-")


def classify(spec: SingularitySpec) -> list[str]:
    """All non-free indecomposables of the (reduced) ring, canonically ordered."""
    r = knoerrer_reduce(spec)
    return list(_classify(r.n, r.d))


def check_id(spec: SingularitySpec, ident: str) -> str:
    r = knoerrer_reduce(spec)
    if ident not in _classify(r.n, r.d):
        raise DomainError(f"{ident!r} is not a non-free indecomposable over {spec}")
    return ident


def syzygy(spec: SingularitySpec, ident: str) -> str:
    check_id(spec, ident)
    r = knoerrer_reduce(spec)
    if r.d == 0:
        return f"M{r.n + 1 - int(ident[1:])}"
    if ident == "N+":
        return "N-"
    if ident == "N-":
        return "N+"
    return ident


def shift(spec: SingularitySpec, ident: str, k: int = 1) -> str:
    """Apply the suspension [k] = Omega^{-k}.  Omega is an involution here."""
    check_id(spec, ident)
    return syzygy(spec, ident) if k % 2 else ident


def tau(spec: SingularitySpec, ident: str) -> str:
    """AR translate, which equals the shift by the Krull dimension."""
    return shift(spec, ident, knoerrer_reduce(spec).d)


class StableModule(Mapping[str, int]):
    """An immutable multiset of indecomposable identifiers.

    Behaves as a read-only mapping ``id -> multiplicity`` whose keys are
    exactly the summands with positive multiplicity.
    """

    __slots__ = ("_items", "_hash")

    def __init__(self, mults: Mapping[str, int] | Iterable[tuple[str, int]] | None = None):
        acc: dict[str, int] = {}
        if mults is not None:
            pairs = mults.items() if isinstance(mults, Mapping) else mults
            for ident, m in pairs:
                if m < 0:
                    raise ValueError(f"negative multiplicity for {ident}")
                if m:
                    sort_key(ident)
                    acc[ident] = acc.get(ident, 0) + m
        self._items = tuple(sorted(acc.items(), key=lambda kv: sort_key(kv[0])))
        self._hash = hash(self._items)

    @classmethod
    def of(cls, *idents: str) -> "StableModule":
        acc: dict[str, int] = {}
        for ident in idents:
            acc[ident] = acc.get(ident, 0) + 1
        return cls(acc)

    def __getitem__(self, ident: str) -> int:
        for k, v in self._items:
            if k == ident:
                return v
        raise KeyError(ident)

    def __iter__(self) -> Iterator[str]:
        return (k for k, _ in self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, StableModule):
            return self._items == other._items
        return NotImplemented

    def mu(self, ident: str) -> int:
        return self.get(ident, 0)

    @property
    def total(self) -> int:
        return sum(v for _, v in self._items)

    def __add__(self, other: "StableModule") -> "StableModule":
        return StableModule(list(self._items) + list(other._items))

    def __mul__(self, k: int) -> "StableModule":
        return StableModule({i: m * k for i, m in self._items})

    __rmul__ = __mul__

    def __sub__(self, other: "StableModule") -> "StableModule":
        """Remove summands; raises if ``other`` is not a summand of self."""
        acc = dict(self._items)
        for ident, m in other._items:
            if acc.get(ident, 0) < m:
                raise ValueError(f"{other} is not a direct summand of {self}")
            acc[ident] -= m
        return StableModule(acc)

    def contains(self, other: "StableModule") -> bool:
        return all(self.mu(i) >= m for i, m in other.items())

    def common(self, other: "StableModule") -> "StableModule":
        return StableModule({i: min(m, other.mu(i)) for i, m in self._items})

    def map(self, fn) -> "StableModule":
        """Apply an object map to each summand (used for Omega, shift, tau)."""
        return StableModule([(fn(i), m) for i, m in self._items])

    def render(self) -> str:
        if not self._items:
            return "0"
        return " + ".join(i if m == 1 else f"{m}*{i}" for i, m in self._items)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"StableModule({self.render()!r})"


ZERO = StableModule()

_TOKEN = re.compile(r"\s*(?:(\d+)\s*\*\s*)?(N\+|N-|I\d+|M\d+)\s*")


def parse_module(text: str, spec: SingularitySpec | None = None) -> StableModule:
    """Parse ``expr := '0' | term ('+' term)*`` with ``term := [uint '*'] ind``.

    >>> parse_module("2*I1 + N+").render()
    '2*I1 + N+'
    """
    if text.strip() == "0":
        return ZERO
    acc: dict[str, int] = {}
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprSyntaxError("expected a term like '2*I1' or 'N+'", pos)
        mult = int(m.group(1)) if m.group(1) else 1
        ident = m.group(2)
        if spec is not None:
            check_id(spec, ident)
        acc[ident] = acc.get(ident, 0) + mult
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != "+":
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        pos += 1
    return StableModule(acc)


def check_module(spec: SingularitySpec, module: StableModule) -> StableModule:
    for ident in module:
        check_id(spec, ident)
    return module


def module_syzygy(spec: SingularitySpec, module: StableModule) -> StableModule:
    return module.map(lambda i: syzygy(spec, i))


def module_shift(spec: SingularitySpec, module: StableModule, k: int = 1) -> StableModule:
    return module.map(lambda i: shift(spec, i, k))


def module_tau(spec: SingularitySpec, module: StableModule) -> StableModule:
    return module.map(lambda i: tau(spec, i))


def all_modules(spec: SingularitySpec, max_total: int) -> list[StableModule]:
    """Every stable module with total multiplicity <= max_total, deterministically ordered."""
    ids = classify(spec)
    out: list[StableModule] = []

    def rec(pos: int, left: int, acc: dict[str, int]):
        if pos == len(ids):
            out.append(StableModule(acc))
            return
        for m in range(left + 1):
            acc[ids[pos]] = m
            rec(pos + 1, left - m, acc)
        acc.pop(ids[pos], None)

    rec(0, max_total, {})
    out.sort(key=lambda m: (m.total, [m.mu(i) * -1 for i in ids]))
    return out
