"""Exact Fourier-sampling distributions of shifted subsets.

pi_S(z) = (sum_{y in S} (-1)^(y.z))^2 / (|S| 2^n).  The shift only contributes
a phase, so none of these functions take one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Any, Iterable, Iterator

import mpmath
import numpy as np

from shifted_subsets.errors import DomainError
from shifted_subsets.spectra.hadamard import hadamard
from shifted_subsets.spectra.krawtchouk import kraw_table
from shifted_subsets.spectra.subsets import (
    SubsetSpec,
    check_materialisable,
    from_bits,
    to_bits,
)

PRECISION_DIGITS = 50


def _record(key: str, index: Any, value: Fraction) -> dict[str, Any]:
    return {
        key: index,
        "numerator": value.numerator,
        "denominator": value.denominator,
        "decimal": float(value),
    }


@dataclass(frozen=True)
class WeightDistribution:
    """Exact probabilities of the Hamming weight of an outcome, indexed 0..n."""

    n: int
    probs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.probs) != self.n + 1:
            raise ValueError("weight distribution needs n + 1 entries")
        if any(p < 0 for p in self.probs):
            raise ValueError("probabilities must be non-negative")
        if sum(self.probs) != 1:
            raise ValueError("probabilities must sum to 1")

    def __getitem__(self, k: int) -> Fraction:
        return self.probs[k]

    def __len__(self) -> int:
        return len(self.probs)

    def as_floats(self) -> np.ndarray:
        return np.array([float(p) for p in self.probs], dtype=np.float64)

    def records(self) -> list[dict[str, Any]]:
        return [_record("weight", k, p) for k, p in enumerate(self.probs)]


@dataclass(frozen=True, eq=False)
class CubeDistribution:
    """Exact probabilities over {0,1}^n as integer numerators over one denominator."""

    n: int
    numerators: np.ndarray
    denominator: int

    def __post_init__(self) -> None:
        if self.numerators.shape != (2**self.n,):
            raise ValueError("cube distribution needs 2^n entries")
        if (self.numerators < 0).any():
            raise ValueError("probabilities must be non-negative")
        if sum(int(v) for v in self.numerators) != self.denominator:
            raise ValueError("probabilities must sum to 1")

    def __getitem__(self, z: int | str) -> Fraction:
        index = from_bits(z) if isinstance(z, str) else z
        return Fraction(int(self.numerators[index]), self.denominator)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CubeDistribution) or other.n != self.n:
            return NotImplemented
        if other.denominator == self.denominator:
            return bool(np.array_equal(self.numerators, other.numerators))
        return all(self[z] == other[z] for z in range(2**self.n))

    def items(self) -> Iterator[tuple[str, Fraction]]:
        for z in range(2**self.n):
            yield to_bits(z, self.n), self[z]

    def support(self) -> list[int]:
        return [int(z) for z in np.flatnonzero(self.numerators)]

    def as_floats(self) -> np.ndarray:
        return self.numerators.astype(np.float64) / float(self.denominator)

    def weight_collapse(self) -> WeightDistribution:
        weights = np.bitwise_count(np.arange(2**self.n, dtype=np.int64))
        totals = [0] * (self.n + 1)
        for w, value in zip(weights.tolist(), self.numerators.tolist()):
            totals[w] += value
        return WeightDistribution(
            n=self.n, probs=tuple(Fraction(t, self.denominator) for t in totals)
        )

    def records(self) -> list[dict[str, Any]]:
        return [_record("bitstring", bits, p) for bits, p in self.items()]


def pi_elements(n: int, elements: Iterable[int]) -> CubeDistribution:
    check_materialisable(n)
    members = sorted(set(elements))
    if not members:
        raise DomainError("subset must be non-empty")
    if members[0] < 0 or members[-1] >= 2**n:
        raise DomainError(f"elements must lie in {{0,1}}^{n}")
    indicator = np.zeros(2**n, dtype=np.int64)
    indicator[members] = 1
    sums = hadamard(indicator)
    return CubeDistribution(
        n=n, numerators=sums * sums, denominator=len(members) * 2**n
    )


def pi_subset(spec: SubsetSpec) -> CubeDistribution:
    return pi_elements(spec.n, spec.members())


def _check_sphere(n: int, r: int) -> None:
    if n < 0 or not 0 <= 2 * r <= n:
        raise DomainError(f"sphere radius must satisfy 0 <= r <= n/2, got n={n}, r={r}")


@lru_cache(maxsize=None)
def pi_sphere(n: int, r: int) -> WeightDistribution:
    """pi_r(x) = C(n, x) K_r(x)^2 / (C(n, r) 2^n)."""
    _check_sphere(n, r)
    table = kraw_table(n)
    denominator = comb(n, r) * 2**n
    return WeightDistribution(
        n=n,
        probs=tuple(
            Fraction(comb(n, x) * table[r, x] ** 2, denominator) for x in range(n + 1)
        ),
    )


@lru_cache(maxsize=None)
def pi_ball(n: int, r: int) -> WeightDistribution:
    """Weight distribution for the ball of radius r, via the Krawtchouk sum identity.

    Weight 0 uses the direct sum of K_s^n(0) = C(n, s) instead of the identity.
    """
    if n < 0 or not 0 <= r <= n:
        raise DomainError(f"ball radius must lie in [0, {n}], got {r}")
    volume = sum(comb(n, k) for k in range(r + 1))
    denominator = 2**n * volume
    probs = [Fraction(volume**2, denominator)]
    if n > 0:
        lower = kraw_table(n - 1)
        probs.extend(
            Fraction(comb(n, x) * lower.value(r, x - 1) ** 2, denominator)
            for x in range(1, n + 1)
        )
    return WeightDistribution(n=n, probs=tuple(probs))


@dataclass(frozen=True)
class CentralProbs:
    """Probabilities of the central weights; center is None for odd n."""

    center: Fraction | None
    flank: Fraction


def _central(m: int) -> int:
    return comb(m, m // 2)


def lemma1_probs(n: int, r: int) -> CentralProbs:
    """Closed forms for the weights around n/2.

    Even n: center = pi_r(n/2), flank = pi_r(n/2 - 1) + pi_r(n/2 + 1).
    Odd n: flank = pi_r((n-1)/2) + pi_r((n+1)/2).
    """
    _check_sphere(n, r)
    if n < 1:
        raise DomainError("dimension must be positive")
    scale = Fraction(1, 2**n)
    if n % 2 == 0:
        if r % 2 == 0:
            binomials = _central(r) * _central(n - r)
            center = scale * binomials
            flank = Fraction((n - 2 * r) ** 2 * 2, n * (n + 2)) * scale * binomials
        else:
            center = Fraction(0)
            binomials = _central(r - 1) * _central(n - r - 1)
            flank = Fraction(r * (n - r) * 32, n * (n + 2)) * scale * binomials
        return CentralProbs(center=center, flank=flank)

    if r % 2 == 0:
        flank = Fraction((n - r) * 4, n + 1) * scale * _central(r) * _central(n - r - 1)
    else:
        flank = Fraction(r * 4, n + 1) * scale * _central(r - 1) * _central(n - r)
    return CentralProbs(center=None, flank=flank)


def flank_values(n: int, r: int) -> tuple[Fraction, Fraction]:
    """The two weights either side of n/2 (even n) or the two middle weights (odd n)."""
    dist = pi_sphere(n, r)
    if n % 2 == 0:
        return dist[n // 2 - 1], dist[n // 2 + 1]
    return dist[(n - 1) // 2], dist[(n + 1) // 2]


def center_gap_even(n: int, r: int) -> Fraction:
    """pi_r(n/2) - pi_{r+2}(n/2) in closed form."""
    if n % 2 or r % 2 or r < 0 or r > n // 2 - 2:
        raise DomainError(f"need even n, even r <= n/2 - 2; got n={n}, r={r}")
    factor = Fraction(n - 2 * (r + 1), (n - r - 1) * (r + 2))
    return factor * Fraction(_central(r) * _central(n - r), 2**n)


def flank_gap_even(n: int, r: int) -> Fraction:
    """p(r + 2) - p(r) for even n and odd r, p the flank probability."""
    if n % 2 or r % 2 == 0 or r < 1 or 2 * (r + 2) > n:
        raise DomainError(f"need even n, odd r with r + 2 <= n/2; got n={n}, r={r}")
    factor = Fraction(32 * r * (n - 2 * (r + 1)), n * (n + 2) * (r + 1))
    return factor * Fraction(_central(r - 1) * _central(n - r - 1), 2**n)


def flank_gap_odd(n: int, r: int) -> Fraction:
    """p'(r + 2) - p'(r) for odd n and odd r, p' the middle-pair probability."""
    if n % 2 == 0 or r % 2 == 0 or r < 1 or 2 * (r + 2) > n:
        raise DomainError(f"need odd n, odd r with r + 2 <= n/2; got n={n}, r={r}")
    factor = Fraction(4 * r, (r + 1) * (n - r - 1))
    return factor * Fraction(_central(r - 1) * _central(n - r), 2**n)


def to_mpf(value: Fraction | int) -> mpmath.mpf:
    value = Fraction(value)
    with mpmath.workdps(PRECISION_DIGITS):
        return mpmath.mpf(value.numerator) / value.denominator


def central_binomial_bounds(m: int) -> tuple[mpmath.mpf, int, mpmath.mpf]:
    """(4^m / sqrt(2 pi m), C(2m, m), 4^m / sqrt(pi m)) for m >= 1."""
    if m < 1:
        raise DomainError("m must be positive")
    with mpmath.workdps(PRECISION_DIGITS):
        power = mpmath.mpf(4) ** m
        lower = power / mpmath.sqrt(2 * mpmath.pi * m)
        upper = power / mpmath.sqrt(mpmath.pi * m)
    return lower, comb(2 * m, m), upper


def center_probability_floor(n: int, r: int) -> mpmath.mpf:
    """Lower bound on pi_r(n/2) for even n: 1/(pi sqrt(r(n-r))) when r > 0.

    For r = 0 the bound is 1/sqrt(pi n), from the central binomial bound.
    """
    if n % 2 or n < 2 or r % 2 or not 0 <= 2 * r <= n:
        raise DomainError(f"need even n >= 2 and even r <= n/2; got n={n}, r={r}")
    with mpmath.workdps(PRECISION_DIGITS):
        if r == 0:
            return 1 / mpmath.sqrt(mpmath.pi * n)
        return 1 / (mpmath.pi * mpmath.sqrt(r * (n - r)))
