"""Normalised Fourier analysis of functions on {0,1}^n.

A CubeFunction holds values v together with a power p of sqrt(2), standing
for f(y) = v(y) / sqrt(2)^p.  Exact functions keep v as Python ints or
Fractions in an object array, so the 2^{-n/2} normaliser never forces a
rounding.  Float functions always have p = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from shifted_subsets.config import MAX_CUBE_N
from shifted_subsets.errors import CapacityError, DomainError
from shifted_subsets.spectra.hadamard import hadamard


@dataclass(frozen=True, eq=False)
class CubeFunction:
    n: int
    values: np.ndarray
    root_two_power: int = 0

    def __post_init__(self) -> None:
        if self.values.shape != (2**self.n,):
            raise ValueError("cube function needs 2^n values")
        if not self.exact and self.root_two_power:
            raise ValueError("float cube functions carry no sqrt(2) power")

    @classmethod
    def exact_from(cls, n: int, values: Iterable[int | Fraction]) -> CubeFunction:
        array = np.empty(2**n, dtype=object)
        array[:] = [Fraction(v) for v in values]
        return cls(n=n, values=array)

    @classmethod
    def indicator(cls, n: int, elements: Iterable[int]) -> CubeFunction:
        members = set(elements)
        return cls.exact_from(n, (1 if y in members else 0 for y in range(2**n)))

    @classmethod
    def delta(cls, n: int, point: int = 0) -> CubeFunction:
        return cls.indicator(n, [point])

    @classmethod
    def from_floats(cls, values: np.ndarray) -> CubeFunction:
        values = np.asarray(values, dtype=np.float64)
        return cls(n=values.size.bit_length() - 1, values=values)

    @property
    def exact(self) -> bool:
        return self.values.dtype == object

    def normalised(self) -> CubeFunction:
        """Fold pairs of sqrt(2) factors into the values, leaving p in {0, 1}."""
        if not self.exact or self.root_two_power in (0, 1):
            return self
        half, parity = divmod(self.root_two_power, 2)
        scale = Fraction(1, 2**half) if half >= 0 else Fraction(2 ** (-half))
        values = np.empty_like(self.values)
        values[:] = [Fraction(v) * scale for v in self.values]
        return CubeFunction(n=self.n, values=values, root_two_power=parity)

    def rescaled(self, extra_power: int) -> CubeFunction:
        """Multiply by sqrt(2)^extra_power."""
        if not self.exact:
            scaled = self.values * np.sqrt(2.0) ** extra_power
            return CubeFunction(n=self.n, values=scaled)
        return CubeFunction(
            n=self.n,
            values=self.values,
            root_two_power=self.root_two_power - extra_power,
        ).normalised()

    def squared(self, z: int) -> Fraction:
        """f(z)^2, exact."""
        if not self.exact:
            raise DomainError("squared values are exact only for exact functions")
        return Fraction(self.values[z]) ** 2 / 2**self.root_two_power

    def same_as(self, other: CubeFunction) -> bool:
        """Exact equality, whatever the sqrt(2) bookkeeping of either side."""
        if other.n != self.n:
            return False
        for a, b in zip(self.values, other.values):
            if (a > 0) != (b > 0) or (a < 0) != (b < 0):
                return False
            if a * a * 2**other.root_two_power != b * b * 2**self.root_two_power:
                return False
        return True

    def to_float(self) -> np.ndarray:
        if not self.exact:
            return self.values.copy()
        scale = np.sqrt(2.0) ** -self.root_two_power
        return np.array([float(v) for v in self.values], dtype=np.float64) * scale

    def __mul__(self, other: CubeFunction) -> CubeFunction:
        _check_same_dimension(self, other)
        if self.exact and other.exact:
            return CubeFunction(
                n=self.n,
                values=self.values * other.values,
                root_two_power=self.root_two_power + other.root_two_power,
            ).normalised()
        return CubeFunction(n=self.n, values=self.to_float() * other.to_float())


def _check_same_dimension(f: CubeFunction, g: CubeFunction) -> None:
    if f.n != g.n:
        raise DomainError(f"dimension mismatch: {f.n} != {g.n}")


def walsh_transform(f: CubeFunction) -> CubeFunction:
    """f^(x) = 2^{-n/2} sum_y (-1)^(x.y) f(y).

    An involution that preserves the 2-norm.  Exact inputs stay exact.
    """
    if f.n > MAX_CUBE_N:
        raise CapacityError(f"n={f.n} exceeds the transform limit {MAX_CUBE_N}")
    if not f.exact:
        return CubeFunction(n=f.n, values=hadamard(f.values) / np.sqrt(2.0**f.n))
    return CubeFunction(
        n=f.n, values=hadamard(f.values), root_two_power=f.root_two_power + f.n
    ).normalised()


def convolve(f: CubeFunction, g: CubeFunction) -> CubeFunction:
    """(f * g)(x) = 2^{-n/2} sum_y f(y) g(x + y), through the convolution theorem."""
    _check_same_dimension(f, g)
    return walsh_transform(walsh_transform(f) * walsh_transform(g))


def norm_squared(f: CubeFunction) -> Fraction | float:
    if not f.exact:
        return float(np.dot(f.values, f.values))
    return sum((Fraction(v) ** 2 for v in f.values), Fraction(0)) / 2**f.root_two_power
