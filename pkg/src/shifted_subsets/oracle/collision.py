"""Classical collision search against the colouring oracle."""

from __future__ import annotations

from typing import Iterator, Protocol

import numpy as np

from shifted_subsets.logging import get_logger
from shifted_subsets.oracle.instance import OracleInstance, QueryLog, query_c
from shifted_subsets.sampling.rng import RngLike, as_generator

logger = get_logger(__name__)


class ClassicalStrategy(Protocol):
    name: str

    def probes(
        self, instance: OracleInstance, generator: np.random.Generator
    ) -> Iterator[int]: ...


class RandomProbeStrategy:
    """Distinct uniformly random points of {0,1}^{2n}."""

    name = "random-probe"

    def probes(
        self, instance: OracleInstance, generator: np.random.Generator
    ) -> Iterator[int]:
        size = instance.domain_size
        seen: set[int] = set()
        while len(seen) < size:
            x = int(generator.integers(size))
            if x in seen:
                continue
            seen.add(x)
            yield x


def classical_collision_experiment(
    instance: OracleInstance,
    max_queries: int,
    rng: RngLike,
    strategy: ClassicalStrategy | None = None,
) -> QueryLog:
    """Query c until two probes share a colour or max_queries is spent.

    The returned log counts only this experiment's probes.
    """
    if max_queries <= 0:
        raise ValueError("max_queries must be positive")
    strategy = strategy or RandomProbeStrategy()
    log = QueryLog(keep_transcript=False)
    first_seen: dict[int, int] = {}
    for x in strategy.probes(instance, as_generator(rng)):
        if log.counts["c"] >= max_queries:
            break
        colour = query_c(instance, x, log=log)
        if colour in first_seen:
            log.mark_collision(first_seen[colour], x)
            break
        first_seen[colour] = x
    logger.debug(
        "%s: collision=%s after %d queries",
        strategy.name,
        log.collision,
        log.counts["c"],
    )
    return log
