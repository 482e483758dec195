"""Hidden-subset descriptions over the boolean cube and bit-string helpers.

Bit strings are Python ints.  Printed left to right, character i of an
n-bit string is bit n - 1 - i, so variable j (1-based) has mask 1 << (n - j).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb
from typing import Any, Iterable, Literal, Mapping, Sequence

import numpy as np

from shifted_subsets.config import MAX_CUBE_N
from shifted_subsets.errors import CapacityError, DomainError

SubsetKind = Literal[
    "explicit", "sphere", "ball", "junta", "parity", "generalised-parity"
]


def to_bits(value: int, n: int) -> str:
    return format(value, f"0{n}b") if n > 0 else ""


def from_bits(bits: str) -> int:
    if bits and set(bits) - {"0", "1"}:
        raise DomainError(f"not a bit string: {bits!r}")
    return int(bits, 2) if bits else 0


def weight(value: int) -> int:
    return value.bit_count()


def dot(a: int, b: int) -> int:
    """Inner product over Z_2."""
    return (a & b).bit_count() & 1


def variable_mask(n: int, variables: Iterable[int]) -> int:
    mask = 0
    for j in variables:
        if not 1 <= j <= n:
            raise DomainError(f"variable {j} outside [1, {n}]")
        mask |= 1 << (n - j)
    return mask


def restrict(value: int, n: int, variables: Sequence[int]) -> int:
    """Bits of value at the given variables, first variable most significant."""
    out = 0
    for j in variables:
        out = (out << 1) | ((value >> (n - j)) & 1)
    return out


def shift_elements(elements: Iterable[int], shift: int) -> frozenset[int]:
    return frozenset(y ^ shift for y in elements)


def check_materialisable(n: int) -> None:
    if n > MAX_CUBE_N:
        raise CapacityError(f"n={n} exceeds the brute-force limit {MAX_CUBE_N}")


def _check_table(table: Sequence[int], length: int, what: str) -> tuple[int, ...]:
    values = tuple(int(v) for v in table)
    if len(values) != length:
        raise DomainError(
            f"{what} truth table needs {length} entries, got {len(values)}"
        )
    if set(values) - {0, 1}:
        raise DomainError(f"{what} truth table must be 0/1 valued")
    return values


@dataclass(frozen=True)
class SubsetSpec:
    """Declarative description of a hidden subset S of {0,1}^n.

    Use the named constructors rather than building instances directly.
    """

    kind: SubsetKind
    n: int
    elements: frozenset[int] = frozenset()
    radius: int = 0
    variables: tuple[int, ...] = ()
    table: tuple[int, ...] = ()
    prefix: str = ""

    def __post_init__(self) -> None:
        if self.n < 0:
            raise DomainError("dimension must be non-negative")

    @classmethod
    def explicit(cls, n: int, elements: Iterable[int | str]) -> SubsetSpec:
        values = frozenset(
            from_bits(e) if isinstance(e, str) else int(e) for e in elements
        )
        if not values:
            raise DomainError("explicit set must be non-empty")
        if any(not 0 <= v < 2**n for v in values):
            raise DomainError(f"element outside {{0,1}}^{n}")
        return cls(kind="explicit", n=n, elements=values)

    @classmethod
    def sphere(cls, n: int, r: int) -> SubsetSpec:
        if not 0 <= 2 * r <= n:
            raise DomainError(f"sphere radius must satisfy 0 <= r <= n/2, got r={r}")
        return cls(kind="sphere", n=n, radius=r)

    @classmethod
    def ball(cls, n: int, r: int) -> SubsetSpec:
        if not 0 <= r <= n:
            raise DomainError(f"ball radius must lie in [0, {n}], got {r}")
        return cls(kind="ball", n=n, radius=r)

    @classmethod
    def junta(
        cls, n: int, variables: Sequence[int], table: Sequence[int]
    ) -> SubsetSpec:
        variables = tuple(variables)
        if not variables or len(set(variables)) != len(variables):
            raise DomainError("junta variables must be distinct and non-empty")
        variable_mask(n, variables)
        values = _check_table(table, 2 ** len(variables), "junta")
        if len(set(values)) < 2:
            raise DomainError("junta function must be non-constant")
        return cls(kind="junta", n=n, variables=variables, table=values)

    @classmethod
    def parity(cls, n: int, variables: Iterable[int]) -> SubsetSpec:
        variables = tuple(sorted(set(variables)))
        if not variables:
            raise DomainError("parity set needs a non-empty variable set")
        variable_mask(n, variables)
        return cls(kind="parity", n=n, variables=variables)

    @classmethod
    def generalised_parity(
        cls, n: int, prefix: str, table: Sequence[int] | None = None
    ) -> SubsetSpec:
        k = len(prefix)
        if not 1 <= k <= n:
            raise DomainError(f"prefix length must lie in [1, {n}], got {k}")
        from_bits(prefix)
        values = _check_table(table if table is not None else [0] * 2 ** (n - k),
                              2 ** (n - k), "suffix")
        spec = cls(kind="generalised-parity", n=n, prefix=prefix, table=values)
        if spec.size() == 0:
            raise DomainError("generalised parity set is empty")
        return spec

    @property
    def t(self) -> int:
        """Indicator bit string of the parity variables (full n bits or prefix)."""
        if self.kind == "parity":
            return variable_mask(self.n, self.variables)
        if self.kind == "generalised-parity":
            return from_bits(self.prefix)
        raise DomainError(f"{self.kind} subsets carry no parity string")

    @property
    def recoverable(self) -> bool:
        """False for a generalised parity set whose prefix string is all zeros."""
        return not (self.kind == "generalised-parity" and self.t == 0)

    def contains(self, y: int) -> bool:
        n = self.n
        if self.kind == "explicit":
            return y in self.elements
        if self.kind == "sphere":
            return weight(y) == self.radius
        if self.kind == "ball":
            return weight(y) <= self.radius
        if self.kind == "junta":
            return self.table[restrict(y, n, self.variables)] == 1
        if self.kind == "parity":
            return dot(y, self.t) == 1
        k = len(self.prefix)
        suffix = y & ((1 << (n - k)) - 1)
        return (dot(y >> (n - k), self.t) ^ self.table[suffix]) == 1

    def size(self) -> int:
        if self.kind == "explicit":
            return len(self.elements)
        if self.kind == "sphere":
            return comb(self.n, self.radius)
        if self.kind == "ball":
            return sum(comb(self.n, k) for k in range(self.radius + 1))
        if self.kind == "junta":
            return sum(self.table) * 2 ** (self.n - len(self.variables))
        if self.kind == "parity":
            return 2 ** (self.n - 1)
        k = len(self.prefix)
        if self.t != 0:
            return 2 ** (self.n - 1)
        return sum(self.table) * 2**k

    def members(self) -> tuple[int, ...]:
        return self._members

    @cached_property
    def _members(self) -> tuple[int, ...]:
        if self.kind == "explicit":
            return tuple(sorted(self.elements))
        check_materialisable(self.n)
        cube = np.arange(2**self.n, dtype=np.int64)
        if self.kind == "sphere":
            mask = np.bitwise_count(cube) == self.radius
        elif self.kind == "ball":
            mask = np.bitwise_count(cube) <= self.radius
        elif self.kind == "parity":
            mask = (np.bitwise_count(cube & self.t) & 1) == 1
        else:
            return tuple(y for y in range(2**self.n) if self.contains(y))
        return tuple(int(y) for y in np.flatnonzero(mask))

    def describe(self) -> str:
        if self.kind == "explicit":
            return f"explicit(n={self.n}, |S|={len(self.elements)})"
        if self.kind in ("sphere", "ball"):
            return f"{self.kind}(n={self.n}, r={self.radius})"
        if self.kind == "junta":
            return f"junta(n={self.n}, T={list(self.variables)})"
        if self.kind == "parity":
            return f"parity(n={self.n}, t={to_bits(self.t, self.n)})"
        return f"generalised-parity(n={self.n}, t={self.prefix})"

    @classmethod
    def from_params(cls, n: int, params: Mapping[str, Any]) -> SubsetSpec:
        """Build a subset from flat parameters, as carried by an experiment config."""
        kind = params.get("subset", "sphere")
        try:
            return cls._from_kind(n, kind, params)
        except KeyError as exc:
            raise DomainError(f"{kind} subset needs parameter {exc.args[0]!r}") from exc

    @classmethod
    def _from_kind(cls, n: int, kind: str, params: Mapping[str, Any]) -> SubsetSpec:
        if kind == "sphere":
            return cls.sphere(n, int(params["r"]))
        if kind == "ball":
            return cls.ball(n, int(params["r"]))
        if kind == "parity":
            return cls.parity(n, params["variables"])
        if kind == "junta":
            return cls.junta(n, params["variables"], params["table"])
        if kind == "generalised-parity":
            return cls.generalised_parity(n, params["prefix"], params.get("table"))
        if kind == "explicit":
            return cls.explicit(n, params["elements"])
        raise DomainError(f"unknown subset kind: {kind}")
