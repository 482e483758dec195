"""Distances between Fourier-sampling distributions and copy-count bounds."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Any, Iterable, Sequence

import mpmath
import numpy as np

from shifted_subsets.bounds.fourier import CubeFunction, convolve
from shifted_subsets.config import MAX_BOUNDS_N
from shifted_subsets.errors import CapacityError, DomainError
from shifted_subsets.logging import get_logger
from shifted_subsets.spectra.distributions import (
    PRECISION_DIGITS,
    CubeDistribution,
    WeightDistribution,
    pi_sphere,
    to_mpf,
)
from shifted_subsets.spectra.krawtchouk import kraw_table

logger = get_logger(__name__)

FIDELITY_TOLERANCE = 1e-12

Distribution = WeightDistribution | CubeDistribution


def _paired(p: Distribution, q: Distribution) -> tuple[list[Fraction], list[Fraction]]:
    if type(p) is not type(q) or p.n != q.n:
        raise DomainError("distributions must share the same index set")
    if isinstance(p, WeightDistribution):
        return list(p.probs), list(q.probs)
    return [p[z] for z in range(2**p.n)], [q[z] for z in range(2**q.n)]


def trace_distance(p: Distribution, q: Distribution) -> Fraction:
    """sum_x |p_x - q_x|, exact; lies in [0, 2]."""
    if isinstance(p, CubeDistribution) and isinstance(q, CubeDistribution):
        if p.n != q.n:
            raise DomainError("distributions must share the same index set")
        a = p.numerators.astype(object) * q.denominator
        b = q.numerators.astype(object) * p.denominator
        return Fraction(int(np.abs(a - b).sum()), p.denominator * q.denominator)
    left, right = _paired(p, q)
    return sum((abs(a - b) for a, b in zip(left, right)), Fraction(0))


def fidelity(p: Distribution, q: Distribution) -> float:
    """Squared Bhattacharyya coefficient (sum_x sqrt(p_x q_x))^2."""
    left, right = _paired(p, q)
    with mpmath.workdps(PRECISION_DIGITS):
        overlap = mpmath.fsum(
            mpmath.sqrt(to_mpf(a * b)) for a, b in zip(left, right) if a and b
        )
        return float(min(overlap**2, mpmath.mpf(1)))


def _ceil(value: mpmath.mpf) -> int:
    nearest = mpmath.nint(value)
    if abs(value - nearest) < mpmath.mpf(10) ** (-(PRECISION_DIGITS - 10)):
        return int(nearest)
    return int(mpmath.ceil(value))


def copies_bound(
    n_states: int, max_fidelity: Fraction | float, epsilon: Fraction
) -> int:
    """Copies sufficient to identify one of N states with error epsilon.

    ceil(2 log(N / epsilon) / log(1 / F)); logarithms are base 2 throughout.
    """
    if n_states < 2:
        raise DomainError("need at least two states")
    if not 0 < epsilon < 1:
        raise DomainError("epsilon must lie in (0, 1)")
    if max_fidelity >= 1:
        raise DomainError("fidelity 1 means the states cannot be told apart")
    if max_fidelity <= 0:
        raise DomainError("fidelity must be positive; zero fidelity needs one copy")
    with mpmath.workdps(PRECISION_DIGITS):
        numerator = 2 * mpmath.log(to_mpf(n_states) / to_mpf(Fraction(epsilon)), 2)
        denominator = mpmath.log(1 / to_mpf(Fraction(max_fidelity)), 2)
        return max(1, _ceil(numerator / denominator))


def copies_bound_from_trace(
    n_states: int, min_trace: Fraction | float, epsilon: Fraction = Fraction(1, 3)
) -> int:
    """Copy count from the minimum pairwise trace distance via F <= 1 - T^2/4.

    T = 2 means disjoint supports, which a single copy already separates.
    """
    min_trace = Fraction(min_trace)
    if not 0 < min_trace <= 2:
        raise DomainError("trace distance must lie in (0, 2]")
    if min_trace == 2:
        return 1
    return copies_bound(n_states, 1 - min_trace**2 / 4, epsilon)


def _check_set(n: int, elements: Iterable[int]) -> frozenset[int]:
    members = frozenset(elements)
    if not members:
        raise DomainError("sets must be non-empty")
    if any(not 0 <= y < 2**n for y in members):
        raise DomainError(f"element outside {{0,1}}^{n}")
    return members


def hy_lower_bound(n: int, s: Iterable[int], t: Iterable[int]) -> Fraction:
    """sqrt(2^n) max_x |(1_S * 1_S)(x) / |S| - (1_T * 1_T)(x) / |T||.

    A lower bound on the trace distance between pi_S and pi_T, computed
    exactly through the normalised convolution.
    """
    if n > MAX_BOUNDS_N:
        raise CapacityError(f"n={n} exceeds the exhaustive limit {MAX_BOUNDS_N}")
    s_set, t_set = _check_set(n, s), _check_set(n, t)
    auto: dict[str, list[Fraction]] = {}
    for name, members in (("s", s_set), ("t", t_set)):
        f = CubeFunction.indicator(n, members)
        # sqrt(2^n) (1_S * 1_S) is the integer overlap count |S & (S + x)|
        overlap = convolve(f, f).rescaled(n)
        auto[name] = [Fraction(v) / len(members) for v in overlap.values]
    return max(abs(a - b) for a, b in zip(auto["s"], auto["t"]))


def _sphere_overlaps(n: int, r: int) -> list[int]:
    """|S & (S + x)| for the radius-r sphere as a function of |x|.

    2^n |S & (S + x)| = sum_k K_r(k)^2 K_k(|x|).
    """
    table = kraw_table(n)
    scale = 2**n
    return [
        sum(table[r, k] ** 2 * table[k, w] for k in range(n + 1)) // scale
        for w in range(n + 1)
    ]


def sphere_hy_bound(n: int, i: int, j: int) -> Fraction:
    """Hausdorff-Young lower bound for two sphere radii, on the weight domain."""
    for r in (i, j):
        if not 0 <= 2 * r <= n:
            raise DomainError(f"sphere radius must satisfy 0 <= r <= n/2, got {r}")
    first, second = _sphere_overlaps(n, i), _sphere_overlaps(n, j)
    return max(
        abs(Fraction(a, comb(n, i)) - Fraction(b, comb(n, j)))
        for a, b in zip(first, second)
    )


@dataclass(frozen=True)
class DistanceReport:
    i: int
    j: int
    trace: Fraction
    fidelity: float
    hy_bound: Fraction

    def __post_init__(self) -> None:
        if not self.hy_bound <= self.trace <= 2:
            raise ValueError("trace distance outside [lower bound, 2]")
        ceiling = 1 - float(self.trace) ** 2 / 4
        if not 0 <= self.fidelity <= ceiling + FIDELITY_TOLERANCE:
            raise ValueError("fidelity exceeds 1 - T^2/4")

    def record(self) -> dict[str, Any]:
        return {
            "i": self.i,
            "j": self.j,
            "trace_numerator": self.trace.numerator,
            "trace_denominator": self.trace.denominator,
            "trace": float(self.trace),
            "fidelity": self.fidelity,
            "hy_bound": float(self.hy_bound),
        }


def sphere_distance_survey(n: int) -> list[DistanceReport]:
    """Every pair i <= j of sphere radii in 0..n/2."""
    if n < 0:
        raise DomainError("dimension must be non-negative")
    radii = range(n // 2 + 1)
    reports = [
        DistanceReport(
            i=i,
            j=j,
            trace=trace_distance(pi_sphere(n, i), pi_sphere(n, j)),
            fidelity=fidelity(pi_sphere(n, i), pi_sphere(n, j)),
            hy_bound=sphere_hy_bound(n, i, j),
        )
        for i in radii
        for j in radii
        if i <= j
    ]
    logger.info("sphere survey n=%d: %d pairs", n, len(reports))
    return reports


@dataclass(frozen=True)
class SurveySummary:
    n: int
    family_size: int
    min_trace: Fraction
    closest_pair: tuple[int, int]
    copies: int

    def record(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "family_size": self.family_size,
            "min_trace": float(self.min_trace),
            "closest_pair": list(self.closest_pair),
            "copies": self.copies,
        }


def survey_summary(
    reports: Sequence[DistanceReport], n: int, epsilon: Fraction = Fraction(1, 3)
) -> SurveySummary:
    """Closest pair of distinct radii and the copy count it implies."""
    off_diagonal = [r for r in reports if r.i != r.j]
    if not off_diagonal:
        raise DomainError("survey has no pair of distinct radii")
    closest = min(off_diagonal, key=lambda r: (r.trace, r.i, r.j))
    family_size = n // 2 + 1
    return SurveySummary(
        n=n,
        family_size=family_size,
        min_trace=closest.trace,
        closest_pair=(closest.i, closest.j),
        copies=copies_bound_from_trace(family_size, closest.trace, epsilon),
    )
