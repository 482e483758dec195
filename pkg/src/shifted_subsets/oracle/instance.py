"""Colouring, shifting and uncolouring oracles over the 2n-bit cube.

An instance is defined by a keyed Feistel permutation P of {0,1}^{2n}.  The
colour of x is P(x) // |S| + 1, so each colour class is a block of |S|
consecutive permutation values and the last class takes the remainder when
|S| does not divide 2^{2n}.  Inside a class, P(x) - (c - 1)|S| indexes the
sorted members of S.  Replies to invalid queries are keyed hashes of the
query, so every oracle is a fixed function.
"""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from shifted_subsets.config import MAX_ORACLE_N
from shifted_subsets.errors import CapacityError, DomainError
from shifted_subsets.logging import get_logger
from shifted_subsets.sampling.rng import RngLike, as_generator
from shifted_subsets.sampling.sampler import ShiftedState, state_from_elements
from shifted_subsets.spectra.subsets import SubsetSpec

logger = get_logger(__name__)

FEISTEL_ROUNDS = 4
MAX_TABLE_BITS = 24
_MASK64 = (1 << 64) - 1
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def _mix(z):
    """splitmix64 finaliser; works on Python ints and uint64 arrays alike."""
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


@dataclass
class QueryLog:
    """Oracle call counts, an optional transcript and collision bookkeeping."""

    keep_transcript: bool = True
    counts: Counter = field(default_factory=Counter)
    transcript: list[tuple[str, tuple[int, ...], int]] = field(default_factory=list)
    collision: bool = False
    collision_pair: tuple[int, int] | None = None
    queries_to_collision: int | None = None
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def record(self, oracle: str, query: tuple[int, ...], reply: int) -> None:
        with self._lock:
            self.counts[oracle] += 1
            if self.keep_transcript:
                self.transcript.append((oracle, query, reply))

    def record_bulk(self, oracle: str, count: int) -> None:
        with self._lock:
            self.counts[oracle] += count

    def mark_collision(self, first: int, second: int) -> None:
        with self._lock:
            self.collision = True
            self.collision_pair = (first, second)
            self.queries_to_collision = self.counts["c"]

    def snapshot(self) -> dict[str, int]:
        with self._lock:
            return {name: self.counts[name] for name in ("c", "s", "c_inv")}

    def to_dict(self) -> dict[str, Any]:
        return {
            "counts": self.snapshot(),
            "collision": self.collision,
            "queries_to_collision": self.queries_to_collision,
        }


@dataclass(frozen=True, eq=False)
class OracleInstance:
    """The tuple (S, c, s, c^-1) with its hidden key material.

    Only the query log changes after construction.
    """

    spec: SubsetSpec
    seed: int
    members: tuple[int, ...]
    index: dict[int, int]
    round_keys: tuple[int, ...]
    sigma_key: int
    s_key: int
    c_inv_key: int
    log: QueryLog = field(default_factory=QueryLog)

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def set_size(self) -> int:
        return len(self.members)

    @property
    def domain_size(self) -> int:
        return 2 ** (2 * self.n)

    @property
    def colour_count(self) -> int:
        return -(-self.domain_size // self.set_size)

    def class_size(self, colour: int) -> int:
        if not 1 <= colour <= self.colour_count:
            return 0
        start = (colour - 1) * self.set_size
        return min(self.set_size, self.domain_size - start)

    @property
    def deficient_colour(self) -> int | None:
        last = self.colour_count
        return last if self.class_size(last) < self.set_size else None

    def permute(self, x):
        n, low = self.n, (1 << self.n) - 1
        left, right = x >> n, x & low
        for key in self.round_keys:
            left, right = right, left ^ (_mix(right ^ key) & low)
        return (left << n) | right

    def unpermute(self, value):
        n, low = self.n, (1 << self.n) - 1
        left, right = value >> n, value & low
        for key in reversed(self.round_keys):
            left, right = right ^ (_mix(left ^ key) & low), left
        return (left << n) | right

    def colour_of(self, x: int) -> int:
        return int(self.permute(x)) // self.set_size + 1

    def sigma(self, colour: int) -> int:
        """Hidden shift of a colour class."""
        return int(_mix(self.sigma_key ^ colour)) & ((1 << self.n) - 1)

    def shift_reply(self, x: int, colour: int) -> int:
        value = int(self.permute(x))
        if value // self.set_size + 1 == colour:
            position = value - (colour - 1) * self.set_size
            return self.members[position] ^ self.sigma(colour)
        # "arbitrary point" for a mismatched colour
        return int(_mix(_mix(self.s_key ^ x) ^ colour)) & ((1 << self.n) - 1)

    def uncolour_reply(self, colour: int, y: int) -> int:
        position = self.index.get(y ^ self.sigma(colour)) if colour >= 1 else None
        if position is not None and position < self.class_size(colour):
            return int(self.unpermute((colour - 1) * self.set_size + position))
        return int(_mix(_mix(self.c_inv_key ^ y) ^ colour)) & (self.domain_size - 1)


def build_instance(spec: SubsetSpec, seed: int) -> OracleInstance:
    if spec.n > MAX_ORACLE_N:
        raise CapacityError(
            f"oracle instances support n <= {MAX_ORACLE_N}, got {spec.n}"
        )
    if spec.n < 1:
        raise DomainError("oracle instances need n >= 1")
    if not 0 <= seed < 2**64:
        raise DomainError("seed must be a 64-bit unsigned integer")
    members = spec.members()
    keys = [
        int(k)
        for k in np.random.SeedSequence(seed).generate_state(
            FEISTEL_ROUNDS + 3, dtype=np.uint64
        )
    ]
    instance = OracleInstance(
        spec=spec,
        seed=seed,
        members=members,
        index={y: i for i, y in enumerate(members)},
        round_keys=tuple(keys[:FEISTEL_ROUNDS]),
        sigma_key=keys[FEISTEL_ROUNDS],
        s_key=keys[FEISTEL_ROUNDS + 1],
        c_inv_key=keys[FEISTEL_ROUNDS + 2],
    )
    logger.debug(
        "built oracle for %s: |S|=%d colours=%d deficient=%s",
        spec.describe(),
        instance.set_size,
        instance.colour_count,
        instance.deficient_colour,
    )
    return instance


def _check_point(instance: OracleInstance, x: int, bits: int) -> None:
    if not 0 <= x < 2**bits:
        raise DomainError(f"query outside {{0,1}}^{bits}")


def query_c(instance: OracleInstance, x: int, log: QueryLog | None = None) -> int:
    _check_point(instance, x, 2 * instance.n)
    colour = instance.colour_of(x)
    (log or instance.log).record("c", (x,), colour)
    return colour


def query_s(
    instance: OracleInstance, x: int, colour: int, log: QueryLog | None = None
) -> int:
    _check_point(instance, x, 2 * instance.n)
    reply = instance.shift_reply(x, colour)
    (log or instance.log).record("s", (x, colour), reply)
    return reply


def query_c_inv(
    instance: OracleInstance, colour: int, y: int, log: QueryLog | None = None
) -> int:
    _check_point(instance, y, instance.n)
    reply = instance.uncolour_reply(colour, y)
    (log or instance.log).record("c_inv", (colour, y), reply)
    return reply


def colour_class(instance: OracleInstance, colour: int) -> tuple[int, ...]:
    """Members of a colour class, ordered by their position in S."""
    start = (colour - 1) * instance.set_size
    return tuple(
        int(instance.unpermute(start + i)) for i in range(instance.class_size(colour))
    )


def colour_table(instance: OracleInstance) -> np.ndarray:
    """Colour of every 2n-bit point, computed in one vectorised pass."""
    if 2 * instance.n > MAX_TABLE_BITS:
        raise CapacityError(f"colour tables need 2n <= {MAX_TABLE_BITS}")
    points = np.arange(instance.domain_size, dtype=np.uint64)
    values = instance.permute(points)
    return (values // np.uint64(instance.set_size)).astype(np.int64) + 1


@dataclass(frozen=True, eq=False)
class Extraction:
    colour: int
    state: ShiftedState
    deficient: bool


def quantum_extract(instance: OracleInstance, rng: RngLike) -> Extraction:
    """Simulate measure-colour, shift, uncolour: one query to each oracle.

    Measuring the colour register of c applied to a uniform superposition
    picks a colour with probability proportional to its class size, which
    is the colour of a uniform random point.  Querying s on the class and
    uncomputing x with c^-1 leaves the n-bit register in |S + sigma(c)>.
    """
    generator = as_generator(rng)
    x = int(generator.integers(instance.domain_size))
    return extract_colour(instance, query_c(instance, x))


def extract_colour(instance: OracleInstance, colour: int) -> Extraction:
    """Shift and uncolour one measured colour class."""
    if not 1 <= colour <= instance.colour_count:
        raise DomainError(f"no colour class {colour}")
    members = colour_class(instance, colour)
    replies = [instance.shift_reply(point, colour) for point in members]
    inverted = [instance.uncolour_reply(colour, y) for y in replies]
    if inverted != list(members):
        raise RuntimeError("uncolouring failed to invert the shifting oracle")
    instance.log.record_bulk("s", 1)
    instance.log.record_bulk("c_inv", 1)
    shift = instance.sigma(colour)
    elements = [y ^ shift for y in replies]
    deficient = len(members) < instance.set_size
    if deficient:
        logger.info(
            "colour %d is the deficient class (%d points)", colour, len(members)
        )
    return Extraction(
        colour=colour,
        state=state_from_elements(instance.n, elements, shift),
        deficient=deficient,
    )


def classical_size_from_colours(
    instance: OracleInstance, log: QueryLog | None = None
) -> int:
    """|S| read off the largest colour class after querying c everywhere."""
    colours = colour_table(instance)
    (log or instance.log).record_bulk("c", instance.domain_size)
    return int(np.bincount(colours).max())
