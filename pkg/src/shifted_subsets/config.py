"""Package-wide defaults and the serialisable experiment configuration."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Literal

# Largest cube that is materialised as an explicit set or a 2^n state vector.
MAX_CUBE_N = 20
# Largest dimension for exhaustive set-pair bounds (Hausdorff-Young checks).
MAX_BOUNDS_N = 14
# Largest base dimension for oracle instances (domain is 2n bits).
MAX_ORACLE_N = 12

DEFAULT_RNG_ALGORITHM = "pcg64"

# Sample budget multipliers for the radius algorithms.
PARITY_MULTIPLIER = Fraction(8)  # 8 n samples
EVEN_DECODE_MULTIPLIER = Fraction(4)  # 4 n^6 samples
ODD_DECODE_MULTIPLIER = Fraction(4)  # 4 n^4 samples
BALL_MULTIPLIER = Fraction(16)  # 16 * 2^n samples

PARITY_SET_SAMPLES = 20
JUNTA_SAMPLES = 10
SIZE_FAILURE_PROBABILITY = Fraction(1, 3)

OutputFormat = Literal["json", "csv", "plain"]
OUTPUT_FORMATS: tuple[str, ...] = ("json", "csv", "plain")


@dataclass(frozen=True)
class ExperimentConfig:
    subcommand: str
    n: int | None = None
    seed: int = 0
    trials: int = 1
    budget_multiplier: Fraction = Fraction(1)
    output_format: OutputFormat = "json"
    output_path: str | None = None
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"unknown output format: {self.output_format}")
        if self.trials <= 0:
            raise ValueError("trials must be positive")
        if self.seed < 0 or self.seed >= 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.budget_multiplier <= 0:
            raise ValueError("budget multiplier must be positive")

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data["budget_multiplier"] = str(self.budget_multiplier)
        return data
