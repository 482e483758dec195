from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, log
from typing import Any, Callable, Mapping, Sequence

from shifted_subsets import config
from shifted_subsets.errors import DomainError


@dataclass(frozen=True)
class SampleBudget:
    """Per-phase sample counts, with the multipliers that produced them."""

    phases: Mapping[str, int]
    multipliers: Mapping[str, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.phases:
            raise ValueError("budget needs at least one phase")
        for phase, count in self.phases.items():
            if count <= 0:
                raise ValueError(f"phase {phase} must have a positive sample count")

    def __getitem__(self, phase: str) -> int:
        return self.phases[phase]

    @property
    def total(self) -> int:
        return sum(self.phases.values())

    @classmethod
    def fixed(cls, phase: str, count: int) -> SampleBudget:
        return cls(phases={phase: count})

    @classmethod
    def radius_parity(
        cls, n: int, multiplier: Fraction = config.PARITY_MULTIPLIER
    ) -> SampleBudget:
        return cls(
            phases={"parity": ceil(multiplier * n)}, multipliers={"parity": multiplier}
        )

    @classmethod
    def radius_even(
        cls,
        n: int,
        parity: Fraction = config.PARITY_MULTIPLIER,
        decode: Fraction = config.EVEN_DECODE_MULTIPLIER,
    ) -> SampleBudget:
        return cls(
            phases={"parity": ceil(parity * n), "decode": ceil(decode * n**6)},
            multipliers={"parity": parity, "decode": decode},
        )

    @classmethod
    def radius_odd(
        cls, n: int, decode: Fraction = config.ODD_DECODE_MULTIPLIER
    ) -> SampleBudget:
        return cls(
            phases={"decode": ceil(decode * n**4)}, multipliers={"decode": decode}
        )

    @classmethod
    def ball(
        cls, n: int, multiplier: Fraction = config.BALL_MULTIPLIER
    ) -> SampleBudget:
        return cls(
            phases={"decode": ceil(multiplier * 2**n)},
            multipliers={"decode": multiplier},
        )

    @classmethod
    def size(
        cls, epsilon: Fraction, failure: Fraction = config.SIZE_FAILURE_PROBABILITY
    ) -> SampleBudget:
        """Hoeffding budget ceil(2 ln(2 / failure) / epsilon^2)."""
        if not 0 < epsilon < 1:
            raise DomainError("epsilon must lie in (0, 1)")
        count = ceil(2 * log(2 / failure) / float(epsilon) ** 2)
        return cls(phases={"zero-count": count})

    def scaled(self, factor: Fraction) -> SampleBudget:
        return SampleBudget(
            phases={p: max(1, ceil(c * factor)) for p, c in self.phases.items()},
            multipliers={p: m * factor for p, m in self.multipliers.items()},
        )


@dataclass(frozen=True)
class RecoveryResult:
    answer: Any
    samples_used: int
    budget: int
    diagnostics: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.samples_used > self.budget:
            raise ValueError("samples used exceed the budget")


def majority_vote(answers: Sequence[Any]) -> Any:
    """Most common answer; ties go to the smallest."""
    if not answers:
        raise ValueError("no answers to vote on")
    counts = Counter(answers)
    best = max(counts.values())
    return min(a for a, c in counts.items() if c == best)


def amplify(
    procedure: Callable[[], RecoveryResult], repetitions: int
) -> RecoveryResult:
    """Repeat a recovery an odd number of times and keep the majority answer."""
    if repetitions < 1 or repetitions % 2 == 0:
        raise DomainError("repetitions must be a positive odd number")
    results = [procedure() for _ in range(repetitions)]
    if repetitions == 1:
        return results[0]
    answer = majority_vote([r.answer for r in results])
    return RecoveryResult(
        answer=answer,
        samples_used=sum(r.samples_used for r in results),
        budget=sum(r.budget for r in results),
        diagnostics={"votes": [r.answer for r in results]},
    )
