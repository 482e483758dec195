"""Radius recovery for shifted Hamming spheres and balls.

All decoders are pure functions of observed weight counts and exact
probability tables.  Nearest-value decoding compares Fraction(t, k) with the
exact table entries, so ties are exact and go to the smaller radius.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import inf, log
from typing import Mapping

import numpy as np

from shifted_subsets.errors import DomainError
from shifted_subsets.logging import get_logger
from shifted_subsets.recovery.budget import RecoveryResult, SampleBudget, amplify
from shifted_subsets.recovery.sources import SampleSource
from shifted_subsets.spectra.distributions import WeightDistribution, pi_ball, pi_sphere

logger = get_logger(__name__)


@lru_cache(maxsize=None)
def center_table(n: int) -> dict[int, Fraction]:
    """pi_r(n/2) for every even r <= n/2."""
    return {r: pi_sphere(n, r)[n // 2] for r in range(0, n // 2 + 1, 2)}


@lru_cache(maxsize=None)
def flank_table(n: int) -> dict[int, Fraction]:
    """p(r) = pi_r(n/2 - 1) + pi_r(n/2 + 1) for every odd r <= n/2."""
    half = n // 2
    return {
        r: pi_sphere(n, r)[half - 1] + pi_sphere(n, r)[half + 1]
        for r in range(1, half + 1, 2)
    }


@lru_cache(maxsize=None)
def middle_table(n: int) -> dict[int, Fraction]:
    """p'(r) = pi_r((n-1)/2) + pi_r((n+1)/2) for every r <= n/2, n odd."""
    low, high = (n - 1) // 2, (n + 1) // 2
    return {r: pi_sphere(n, r)[low] + pi_sphere(n, r)[high] for r in range(n // 2 + 1)}


def nearest(estimate: Fraction, table: Mapping[int, Fraction]) -> int:
    if not table:
        raise DomainError("no candidate radii")
    return min(table, key=lambda r: (abs(estimate - table[r]), r))


def _check_even(n: int) -> None:
    if n < 2 or n % 2:
        raise DomainError(f"need an even dimension >= 2, got {n}")


def _parity_once(n: int, source: SampleSource, budget: SampleBudget) -> RecoveryResult:
    count = budget["parity"]
    counts = source.tally(count)
    t1 = int(counts[n // 2])
    return RecoveryResult(
        answer=0 if t1 > 0 else 1,
        samples_used=count,
        budget=budget.total,
        diagnostics={"t1": t1},
    )


def recover_radius_parity(
    n: int,
    source: SampleSource,
    budget: SampleBudget | None = None,
    repetitions: int = 1,
) -> RecoveryResult:
    """Parity of r: 0 (even) iff some outcome of weight n/2 appears.

    Weight n/2 has probability exactly zero for odd r, so an odd radius is
    never reported as even.
    """
    _check_even(n)
    budget = budget or SampleBudget.radius_parity(n)
    return amplify(lambda: _parity_once(n, source, budget), repetitions)


def _even_once(n: int, source: SampleSource, budget: SampleBudget) -> RecoveryResult:
    half = n // 2
    k = budget["decode"]
    parity_counts = source.tally(budget["parity"])
    counts = source.tally(k)
    t1 = int(parity_counts[half] + counts[half])
    t2 = int(counts[half - 1] + counts[half + 1])
    if t1 > 0:
        branch = "even"
        estimate = Fraction(int(counts[half]), k)
        table = center_table(n)
    else:
        branch = "odd"
        estimate = Fraction(t2, k)
        table = flank_table(n)
    answer = nearest(estimate, table)
    logger.debug(
        "even-n decode n=%d t1=%d t2=%d branch=%s r=%d", n, t1, t2, branch, answer
    )
    return RecoveryResult(
        answer=answer,
        samples_used=budget.total,
        budget=budget.total,
        diagnostics={
            "t1": t1,
            "t2": t2,
            "branch": branch,
            "estimate": float(estimate),
            # few weight-n/2 hits: the center estimate rests on little data
            "weak_even_evidence": 0 < t1 < 3,
        },
    )


def recover_radius_even_n(
    n: int,
    source: SampleSource,
    budget: SampleBudget | None = None,
    repetitions: int = 1,
) -> RecoveryResult:
    _check_even(n)
    budget = budget or SampleBudget.radius_even(n)
    return amplify(lambda: _even_once(n, source, budget), repetitions)


def _odd_once(n: int, source: SampleSource, budget: SampleBudget) -> RecoveryResult:
    k = budget["decode"]
    counts = source.tally(k)
    t = int(counts[(n - 1) // 2] + counts[(n + 1) // 2])
    estimate = Fraction(t, k)
    answer = nearest(estimate, middle_table(n))
    logger.debug("odd-n decode n=%d t=%d r=%d", n, t, answer)
    return RecoveryResult(
        answer=answer,
        samples_used=k,
        budget=budget.total,
        diagnostics={"t": t, "estimate": float(estimate)},
    )


def recover_radius_odd_n(
    n: int,
    source: SampleSource,
    budget: SampleBudget | None = None,
    repetitions: int = 1,
) -> RecoveryResult:
    if n < 1 or n % 2 == 0:
        raise DomainError(f"need an odd dimension, got {n}")
    budget = budget or SampleBudget.radius_odd(n)
    return amplify(lambda: _odd_once(n, source, budget), repetitions)


def recover_radius(
    n: int,
    source: SampleSource,
    budget: SampleBudget | None = None,
    repetitions: int = 1,
) -> RecoveryResult:
    if n % 2 == 0:
        return recover_radius_even_n(n, source, budget, repetitions)
    return recover_radius_odd_n(n, source, budget, repetitions)


def log_likelihood(counts: np.ndarray, dist: WeightDistribution) -> float:
    total = 0.0
    for w, c in enumerate(counts.tolist()):
        if c == 0:
            continue
        p = dist[w]
        if p == 0:
            return -inf
        total += c * (log(p.numerator) - log(p.denominator))
    return total


def _ball_once(n: int, source: SampleSource, budget: SampleBudget) -> RecoveryResult:
    k = budget["decode"]
    counts = source.tally(k)
    best_r, best = 0, -inf
    scores = []
    for r in range(n + 1):
        score = log_likelihood(counts, pi_ball(n, r))
        scores.append(score)
        if score > best:
            best_r, best = r, score
    return RecoveryResult(
        answer=best_r,
        samples_used=k,
        budget=budget.total,
        diagnostics={"log_likelihoods": scores},
    )


def recover_ball_radius(
    n: int,
    source: SampleSource,
    budget: SampleBudget | None = None,
    repetitions: int = 1,
) -> RecoveryResult:
    """Maximum-likelihood radius over the exact ball distributions."""
    if n < 0:
        raise DomainError("dimension must be non-negative")
    budget = budget or SampleBudget.ball(n)
    return amplify(lambda: _ball_once(n, source, budget), repetitions)
