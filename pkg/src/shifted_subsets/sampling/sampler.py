"""Simulated Fourier sampling of shifted subset states.

The state path (prepare |S+x>, Hadamard every qubit, measure) uses float64
amplitudes and validates the pipeline.  Large-n sphere and ball experiments
sample Hamming weights straight from the exact weight distributions instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import accumulate
from typing import Iterable

import numpy as np
from scipy import stats

from shifted_subsets.errors import DomainError
from shifted_subsets.sampling.rng import RngLike, RngState, as_generator
from shifted_subsets.spectra.distributions import WeightDistribution
from shifted_subsets.spectra.hadamard import hadamard
from shifted_subsets.spectra.subsets import (
    SubsetSpec,
    check_materialisable,
    from_bits,
    to_bits,
)

NORM_TOLERANCE = 2.0**-40
ROUNDING_FLOOR = 2.0**-60


@dataclass(frozen=True, eq=False)
class ShiftedState:
    """Equal superposition over S + shift; shift is kept for inspection only."""

    n: int
    amplitudes: np.ndarray
    shift: int = 0

    def __post_init__(self) -> None:
        if self.amplitudes.shape != (2**self.n,):
            raise ValueError("state needs 2^n amplitudes")
        norm = float(np.dot(self.amplitudes, self.amplitudes))
        if abs(norm - 1.0) > NORM_TOLERANCE:
            raise ValueError(f"state is not normalised (norm^2={norm})")
        nonzero = self.amplitudes[self.amplitudes != 0]
        expected = 1.0 / np.sqrt(nonzero.size)
        if not np.allclose(nonzero, expected, rtol=0, atol=NORM_TOLERANCE):
            raise ValueError("amplitudes must all equal 1/sqrt(|S|)")

    @property
    def support(self) -> frozenset[int]:
        return frozenset(int(z) for z in np.flatnonzero(self.amplitudes))

    @cached_property
    def outcome_probabilities(self) -> np.ndarray:
        transformed = walsh_hadamard(self.amplitudes)
        probs = transformed * transformed
        # true nonzero probabilities are at least 1/(|S| 2^n) >= 2^-40
        probs[probs < ROUNDING_FLOOR] = 0.0
        return probs / probs.sum()


def walsh_hadamard(amplitudes: np.ndarray) -> np.ndarray:
    """Normalised transform H^{(x)n}; an involution on float vectors."""
    values = np.asarray(amplitudes, dtype=np.float64)
    n = values.size.bit_length() - 1
    return hadamard(values) / np.sqrt(2.0**n)


def state_from_elements(
    n: int, elements: Iterable[int], shift: int = 0
) -> ShiftedState:
    check_materialisable(n)
    if not 0 <= shift < 2**n:
        raise DomainError(f"shift outside {{0,1}}^{n}")
    members = set(elements)
    if any(not 0 <= y < 2**n for y in members):
        raise DomainError(f"elements must lie in {{0,1}}^{n}")
    support = sorted({y ^ shift for y in members})
    if not support:
        raise DomainError("subset must be non-empty")
    amplitudes = np.zeros(2**n, dtype=np.float64)
    amplitudes[support] = 1.0 / np.sqrt(len(support))
    return ShiftedState(n=n, amplitudes=amplitudes, shift=shift)


def make_shifted_state(spec: SubsetSpec, shift: int | str = 0) -> ShiftedState:
    if isinstance(shift, str):
        if len(shift) != spec.n:
            raise DomainError(f"shift must have {spec.n} bits")
        shift = from_bits(shift)
    return state_from_elements(spec.n, spec.members(), shift)


def fourier_samples(state: ShiftedState, rng: RngLike, count: int) -> np.ndarray:
    generator = as_generator(rng)
    return generator.choice(2**state.n, size=count, p=state.outcome_probabilities)


def fourier_sample(state: ShiftedState, rng: RngState) -> tuple[str, RngState]:
    """One measurement outcome as an n-bit string, plus the advanced state.

    Each draw consumes one core draw, so feeding the returned state back in
    walks the same stream.
    """
    outcome = int(fourier_samples(state, rng, 1)[0])
    return to_bits(outcome, state.n), rng.advanced()


def weight_cdf(dist: WeightDistribution) -> np.ndarray:
    """Cumulative probabilities, summed exactly and rounded once each."""
    cumulative = list(accumulate(dist.probs, initial=Fraction(0)))[1:]
    return np.array([float(c) for c in cumulative], dtype=np.float64)


def sample_weights(dist: WeightDistribution, rng: RngLike, count: int) -> np.ndarray:
    generator = as_generator(rng)
    cdf = weight_cdf(dist)
    draws = generator.random(count)
    # zero-probability weights have empty intervals and are never returned
    return np.minimum(np.searchsorted(cdf, draws, side="right"), dist.n)


def sample_weight(dist: WeightDistribution, rng: RngState) -> tuple[int, RngState]:
    return int(sample_weights(dist, rng, 1)[0]), rng.advanced()


def goodness_of_fit(observed: np.ndarray, probs: np.ndarray) -> float:
    """Chi-square p-value of observed counts against outcome probabilities.

    Any count on a zero-probability outcome is an outright failure (p = 0).
    """
    observed = np.asarray(observed, dtype=np.float64)
    probs = np.asarray(probs, dtype=np.float64)
    possible = probs > 0
    if observed[~possible].sum() > 0:
        return 0.0
    total = observed.sum()
    expected = probs[possible] / probs[possible].sum() * total
    return float(stats.chisquare(observed[possible], expected).pvalue)
