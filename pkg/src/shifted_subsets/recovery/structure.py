"""Recovery of subset size, juntas and parity sets from Fourier samples."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

from shifted_subsets import config
from shifted_subsets.errors import DomainError, InconclusiveError
from shifted_subsets.logging import get_logger
from shifted_subsets.recovery.budget import RecoveryResult, SampleBudget, amplify
from shifted_subsets.recovery.sources import SampleSource
from shifted_subsets.spectra.subsets import SubsetSpec, to_bits, variable_mask

logger = get_logger(__name__)


def _require_bitstrings(source: SampleSource) -> None:
    if not source.emits_bitstrings:
        raise DomainError("this recovery needs full n-bit outcomes")


def _first_index(flags: np.ndarray) -> int | None:
    hits = np.flatnonzero(flags)
    return int(hits[0]) if hits.size else None


def _size_once(source: SampleSource, budget: SampleBudget) -> RecoveryResult:
    k = budget["zero-count"]
    zeros = int(source.tally(k)[0])
    return RecoveryResult(
        answer=Fraction(zeros, k),
        samples_used=k,
        budget=budget.total,
        diagnostics={"zero_outcomes": zeros},
    )


def estimate_size(
    n: int,
    source: SampleSource,
    epsilon: Fraction,
    budget: SampleBudget | None = None,
    repetitions: int = 1,
) -> RecoveryResult:
    """Estimate |S| / 2^n as the frequency of the all-zero outcome."""
    if source.n != n:
        raise DomainError("source dimension does not match n")
    budget = budget or SampleBudget.size(Fraction(epsilon))
    return amplify(lambda: _size_once(source, budget), repetitions)


def identify_by_size(estimate: Fraction, family: Sequence[SubsetSpec]) -> int:
    """Index of the family member whose density |S_i| / 2^n is nearest the estimate."""
    if not family:
        raise DomainError("family must be non-empty")
    densities = [Fraction(spec.size(), 2**spec.n) for spec in family]
    return min(range(len(family)), key=lambda i: (abs(densities[i] - estimate), i))


def _check_family(n: int, family: Sequence[SubsetSpec]) -> list[int]:
    masks: list[int] = []
    for spec in family:
        if spec.kind != "junta" or spec.n != n:
            raise DomainError("family members must be juntas on n variables")
        mask = variable_mask(n, spec.variables)
        if any(mask & other for other in masks):
            raise DomainError("junta variable sets must be pairwise disjoint")
        masks.append(mask)
    if not masks:
        raise DomainError("family must be non-empty")
    return masks


def recover_junta(
    n: int,
    family: Sequence[SubsetSpec],
    source: SampleSource,
    budget: SampleBudget | None = None,
) -> RecoveryResult:
    """1-based index k of the junta whose variables hold the first nonzero outcome."""
    _require_bitstrings(source)
    masks = _check_family(n, family)
    budget = budget or SampleBudget.fixed("first-nonzero", config.JUNTA_SAMPLES)
    k = budget["first-nonzero"]
    outcomes = source.draw(k)
    first = _first_index(outcomes != 0)
    if first is None:
        raise InconclusiveError(f"only zero outcomes in {k} samples")
    z = int(outcomes[first])
    for index, mask in enumerate(masks, start=1):
        if z & ~mask == 0:
            return RecoveryResult(
                answer=index,
                samples_used=first + 1,
                budget=budget.total,
                diagnostics={"outcome": to_bits(z, n)},
            )
    raise DomainError(f"outcome {to_bits(z, n)} lies outside every family set")


def recover_parity_set(
    n: int, source: SampleSource, budget: SampleBudget | None = None
) -> RecoveryResult:
    """The parity string t: the first nonzero outcome, each sample hits t w.p. 1/2."""
    _require_bitstrings(source)
    budget = budget or SampleBudget.fixed("first-nonzero", config.PARITY_SET_SAMPLES)
    k = budget["first-nonzero"]
    outcomes = source.draw(k)
    first = _first_index(outcomes != 0)
    if first is None:
        raise InconclusiveError(f"only zero outcomes in {k} samples")
    return RecoveryResult(
        answer=to_bits(int(outcomes[first]), n),
        samples_used=first + 1,
        budget=budget.total,
    )


def recover_generalised_parity(
    n: int, k: int, source: SampleSource, budget: SampleBudget | None = None
) -> RecoveryResult:
    """Prefix string t from the first outcome whose first k bits are not all zero.

    Outcomes only ever carry prefix 0^k or t.  A zero prefix string leaves
    nothing to observe, so it always ends inconclusive.
    """
    _require_bitstrings(source)
    if not 1 <= k <= n:
        raise DomainError(f"prefix length must lie in [1, {n}], got {k}")
    budget = budget or SampleBudget.fixed("first-nonzero", config.PARITY_SET_SAMPLES)
    count = budget["first-nonzero"]
    prefixes = source.draw(count) >> (n - k)
    first = _first_index(prefixes != 0)
    if first is None:
        raise InconclusiveError(
            f"only zero prefixes in {count} samples"
            " (a zero prefix string is unrecoverable)"
        )
    seen = sorted({to_bits(int(p), k) for p in prefixes[: first + 1]})
    logger.debug("generalised parity prefixes seen: %s", seen)
    return RecoveryResult(
        answer=to_bits(int(prefixes[first]), k),
        samples_used=first + 1,
        budget=budget.total,
        diagnostics={"prefixes_seen": seen},
    )
