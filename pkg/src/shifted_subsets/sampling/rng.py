"""Reproducible random streams.

An RngState names a numpy bit generator, a 64-bit seed, a stream index and
the number of core draws already consumed from that stream.  Streams are
independent children of the same SeedSequence, so trial i of an experiment
always sees the same draws whatever order trials run in.  Single-draw
helpers return an advanced state, and a chain of them walks the stream.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Union

import numpy as np

from shifted_subsets.config import DEFAULT_RNG_ALGORITHM

_BIT_GENERATORS = {
    "pcg64": np.random.PCG64,
    "philox": np.random.Philox,
}


@dataclass(frozen=True)
class RngState:
    seed: int
    stream: int = 0
    algorithm: str = DEFAULT_RNG_ALGORITHM
    draws: int = 0

    def __post_init__(self) -> None:
        if self.algorithm not in _BIT_GENERATORS:
            raise ValueError(f"unknown rng algorithm: {self.algorithm}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if not 0 <= self.stream < 2**64:
            raise ValueError("stream must be a 64-bit unsigned integer")
        if self.draws < 0:
            raise ValueError("draws must be non-negative")

    def generator(self) -> np.random.Generator:
        sequence = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
        bit_generator = _BIT_GENERATORS[self.algorithm](sequence)
        if self.draws:
            bit_generator.advance(self.draws)
        return np.random.Generator(bit_generator)

    def advanced(self, count: int = 1) -> RngState:
        if count < 0:
            raise ValueError("count must be non-negative")
        return replace(self, draws=self.draws + count)

    def for_trial(self, trial: int) -> RngState:
        return replace(self, stream=trial, draws=0)


RngLike = Union[RngState, np.random.Generator]


def as_generator(rng: RngLike) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return rng.generator()
