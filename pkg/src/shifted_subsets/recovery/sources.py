"""Sample streams consumed by the recovery algorithms.

Every source offers draw(count), the raw outcomes, and tally(count), a
histogram of outcome weights 0..n.  tally draws from the same distribution
through a multinomial, so budgets of n^6 samples cost O(n) or O(2^n) work.
"""

from __future__ import annotations

from typing import Protocol

import numpy as np

from shifted_subsets.sampling.rng import RngLike, as_generator
from shifted_subsets.sampling.sampler import ShiftedState, sample_weights
from shifted_subsets.spectra.distributions import (
    CubeDistribution,
    WeightDistribution,
    pi_ball,
    pi_sphere,
    pi_subset,
)
from shifted_subsets.spectra.subsets import SubsetSpec


class SampleSource(Protocol):
    n: int
    emits_bitstrings: bool

    def draw(self, count: int) -> np.ndarray: ...

    def tally(self, count: int) -> np.ndarray: ...


def _multinomial(
    generator: np.random.Generator, count: int, probs: np.ndarray
) -> np.ndarray:
    pvals = probs / probs.sum()
    return generator.multinomial(count, pvals)


class WeightSource:
    """Hamming weights drawn from an exact weight distribution."""

    emits_bitstrings = False

    def __init__(self, dist: WeightDistribution, rng: RngLike) -> None:
        self.n = dist.n
        self._dist = dist
        self._probs = dist.as_floats()
        self._generator = as_generator(rng)

    def draw(self, count: int) -> np.ndarray:
        return sample_weights(self._dist, self._generator, count)

    def tally(self, count: int) -> np.ndarray:
        return _multinomial(self._generator, count, self._probs)


class CubeSource:
    """Full n-bit outcomes drawn from outcome probabilities over {0,1}^n."""

    emits_bitstrings = True

    def __init__(self, n: int, probs: np.ndarray, rng: RngLike) -> None:
        self.n = n
        self._probs = np.asarray(probs, dtype=np.float64)
        self._probs = self._probs / self._probs.sum()
        self._weights = np.bitwise_count(np.arange(2**n, dtype=np.int64))
        self._generator = as_generator(rng)

    @classmethod
    def from_distribution(cls, dist: CubeDistribution, rng: RngLike) -> CubeSource:
        return cls(dist.n, dist.as_floats(), rng)

    @classmethod
    def from_state(cls, state: ShiftedState, rng: RngLike) -> CubeSource:
        return cls(state.n, state.outcome_probabilities, rng)

    def draw(self, count: int) -> np.ndarray:
        return self._generator.choice(self._probs.size, size=count, p=self._probs)

    def tally(self, count: int) -> np.ndarray:
        counts = _multinomial(self._generator, count, self._probs)
        return np.bincount(self._weights, weights=counts, minlength=self.n + 1).astype(
            np.int64
        )


def source_for_subset(spec: SubsetSpec, rng: RngLike) -> SampleSource:
    """Weight source for spheres and balls, full outcome source otherwise."""
    if spec.kind == "sphere":
        return WeightSource(pi_sphere(spec.n, spec.radius), rng)
    if spec.kind == "ball":
        return WeightSource(pi_ball(spec.n, spec.radius), rng)
    return CubeSource.from_distribution(pi_subset(spec), rng)
