from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

import numpy as np
import pandas as pd

from shifted_subsets import config as defaults
from shifted_subsets.config import ExperimentConfig
from shifted_subsets.errors import DomainError, InconclusiveError
from shifted_subsets.logging import get_logger
from shifted_subsets.oracle.collision import classical_collision_experiment
from shifted_subsets.oracle.instance import (
    OracleInstance,
    build_instance,
    quantum_extract,
)
from shifted_subsets.recovery.budget import RecoveryResult, SampleBudget
from shifted_subsets.recovery.radius import (
    recover_ball_radius,
    recover_radius,
    recover_radius_parity,
)
from shifted_subsets.recovery.sources import source_for_subset
from shifted_subsets.recovery.structure import (
    estimate_size,
    recover_generalised_parity,
    recover_junta,
    recover_parity_set,
)
from shifted_subsets.sampling.rng import RngState
from shifted_subsets.spectra.subsets import SubsetSpec, to_bits

logger = get_logger(__name__)

PROBLEMS = (
    "sphere",
    "ball",
    "parity-bit",
    "junta",
    "parity-set",
    "gen-parity",
    "size",
)
PROBLEM_ALIASES = {
    "radius": "sphere",
    "radius-parity": "parity-bit",
    "generalised-parity": "gen-parity",
}


def canonical_problem(name: str) -> str:
    return PROBLEM_ALIASES.get(name, name)


def _scaled(budget: SampleBudget, multiplier: Fraction) -> SampleBudget:
    return budget if multiplier == 1 else budget.scaled(multiplier)


def default_junta_family(n: int) -> list[SubsetSpec]:
    """Three AND-juntas on the disjoint variable pairs (1,2), (3,4), (5,6)."""
    if n < 6:
        raise DomainError("the default junta family needs n >= 6")
    return [SubsetSpec.junta(n, (2 * k + 1, 2 * k + 2), (0, 0, 0, 1)) for k in range(3)]


def _radius_of(cfg: ExperimentConfig, generator: np.random.Generator, top: int) -> int:
    if "r" in cfg.params:
        return int(cfg.params["r"])
    return int(generator.integers(top + 1))


def _plan_trial(
    cfg: ExperimentConfig, generator: np.random.Generator
) -> tuple[Any, Callable[[], RecoveryResult]]:
    """True answer and the recovery to run for one trial of the configured problem."""
    n = cfg.n
    problem = canonical_problem(cfg.params.get("problem", "sphere"))
    scale = cfg.budget_multiplier
    repetitions = int(cfg.params.get("repetitions", 1))

    if problem in ("sphere", "parity-bit"):
        r = _radius_of(cfg, generator, n // 2)
        source = source_for_subset(SubsetSpec.sphere(n, r), generator)
        if problem == "parity-bit":
            budget = _scaled(SampleBudget.radius_parity(n), scale)
            return r % 2, lambda: recover_radius_parity(n, source, budget, repetitions)
        base = SampleBudget.radius_even(n) if n % 2 == 0 else SampleBudget.radius_odd(n)
        return r, lambda: recover_radius(n, source, _scaled(base, scale), repetitions)

    if problem == "ball":
        r = _radius_of(cfg, generator, n)
        source = source_for_subset(SubsetSpec.ball(n, r), generator)
        budget = _scaled(SampleBudget.ball(n), scale)
        return r, lambda: recover_ball_radius(n, source, budget, repetitions)

    if problem == "size":
        spec = SubsetSpec.from_params(n, cfg.params)
        epsilon = Fraction(cfg.params.get("epsilon", "1/20"))
        budget = _scaled(SampleBudget.size(epsilon), scale)
        source = source_for_subset(spec, generator)
        truth = Fraction(spec.size(), 2**n)
        return truth, lambda: estimate_size(n, source, epsilon, budget, repetitions)

    if problem == "junta":
        family = default_junta_family(n)
        target = int(cfg.params.get("target", generator.integers(1, len(family) + 1)))
        source = source_for_subset(family[target - 1], generator)
        budget = _scaled(
            SampleBudget.fixed("first-nonzero", defaults.JUNTA_SAMPLES), scale
        )
        return target, lambda: recover_junta(n, family, source, budget)

    if problem == "parity-set":
        spec = SubsetSpec.from_params(n, {**cfg.params, "subset": "parity"})
        budget = _scaled(
            SampleBudget.fixed("first-nonzero", defaults.PARITY_SET_SAMPLES), scale
        )
        source = source_for_subset(spec, generator)
        return to_bits(spec.t, n), lambda: recover_parity_set(n, source, budget)

    if problem == "gen-parity":
        spec = SubsetSpec.from_params(
            n, {**cfg.params, "subset": "generalised-parity"}
        )
        budget = _scaled(
            SampleBudget.fixed("first-nonzero", defaults.PARITY_SET_SAMPLES), scale
        )
        source = source_for_subset(spec, generator)
        k = len(spec.prefix)
        return spec.prefix, lambda: recover_generalised_parity(n, k, source, budget)

    raise DomainError(f"unknown recovery problem: {problem}")


def _is_correct(cfg: ExperimentConfig, truth: Any, answer: Any) -> bool:
    if canonical_problem(cfg.params.get("problem", "sphere")) == "size":
        epsilon = Fraction(cfg.params.get("epsilon", "1/20"))
        return abs(Fraction(answer) - truth) <= epsilon
    return answer == truth


def _plain(value: Any) -> Any:
    if isinstance(value, Fraction):
        return float(value)
    return value


def run_recovery_trials(cfg: ExperimentConfig) -> list[dict[str, Any]]:
    """Seeded independent trials; trial i always uses rng stream i."""
    if cfg.n is None or cfg.n < 1:
        raise DomainError("recovery trials need a positive dimension n")
    base = RngState(seed=cfg.seed)
    records: list[dict[str, Any]] = []
    for trial in range(cfg.trials):
        generator = base.for_trial(trial).generator()
        record: dict[str, Any] = {
            "trial": trial,
            "problem": canonical_problem(cfg.params.get("problem", "sphere")),
            "n": cfg.n,
        }
        truth, recover = _plan_trial(cfg, generator)
        record["true"] = _plain(truth)
        try:
            result = recover()
        except InconclusiveError as exc:
            logger.info("trial %d inconclusive: %s", trial, exc)
            record.update(recovered=None, correct=False, status="inconclusive")
        else:
            record.update(
                recovered=_plain(result.answer),
                correct=_is_correct(cfg, truth, result.answer),
                status="ok",
                samples_used=result.samples_used,
                budget=result.budget,
            )
        records.append(record)
    records.sort(key=lambda item: item["trial"])
    return records


def summarise_trials(records: list[dict[str, Any]]) -> pd.DataFrame:
    """Success rate per (problem, n, true answer)."""
    frame = pd.DataFrame.from_records(records)
    if frame.empty:
        return frame
    frame["inconclusive"] = frame["status"] == "inconclusive"
    frame["true"] = frame["true"].astype(str)
    summary = (
        frame.groupby(["problem", "n", "true"], sort=True)
        .agg(
            trials=("trial", "count"),
            successes=("correct", "sum"),
            inconclusive=("inconclusive", "sum"),
        )
        .reset_index()
    )
    summary["success_rate"] = summary["successes"] / summary["trials"]
    return summary


def _quantum_run(
    instance: OracleInstance, generator: np.random.Generator
) -> dict[str, Any]:
    before = instance.log.snapshot()
    extraction = quantum_extract(instance, generator)
    after = instance.log.snapshot()
    expected = {
        y ^ instance.sigma(extraction.colour)
        for y in instance.members[: len(extraction.state.support)]
    }
    return {
        "colour": extraction.colour,
        "queries": sum(after.values()) - sum(before.values()),
        "deficient": extraction.deficient,
        "support_matches": extraction.state.support == expected,
    }


def _classical_run(
    instance: OracleInstance, generator: np.random.Generator, max_queries: int
) -> dict[str, Any]:
    log = classical_collision_experiment(instance, max_queries, generator)
    return {
        "queries": log.counts["c"],
        "collision": log.collision,
        "queries_to_collision": log.queries_to_collision,
    }


def run_oracle_demo(
    spec: SubsetSpec,
    seed: int,
    mode: str,
    runs: int,
    max_queries: int | None = None,
) -> dict[str, Any]:
    """Repeated quantum extractions or classical collision searches on one instance."""
    if runs <= 0:
        raise DomainError("runs must be positive")
    runners: dict[str, Callable[[np.random.Generator], dict[str, Any]]] = {}
    instance = build_instance(spec, seed)
    budget = max_queries if max_queries is not None else 4 * 2**spec.n
    runners["quantum"] = lambda g: _quantum_run(instance, g)
    runners["classical"] = lambda g: _classical_run(instance, g, budget)
    if mode not in runners:
        raise DomainError(f"unknown oracle mode: {mode}")

    base = RngState(seed=seed)
    per_run = []
    for run in range(runs):
        record = runners[mode](base.for_trial(run).generator())
        per_run.append({"run": run, **record})
    if mode == "classical":
        found = [r["queries_to_collision"] for r in per_run if r["collision"]]
        median = float(np.median(found)) if found else None
    else:
        median = float(np.median([r["queries"] for r in per_run]))
    return {"n": spec.n, "mode": mode, "median_queries": median, "per_run": per_run}


def write_research_report(
    path: str, cfg: ExperimentConfig, summary: pd.DataFrame
) -> None:
    lines: list[str] = []
    lines.append("# Recovery Report")
    lines.append("")
    lines.append("## Configuration")
    for key, value in cfg.to_dict().items():
        lines.append(f"- {key}: {value}")
    lines.append("")
    lines.append("## Summary Table")
    lines.append("| Problem | n | True | Trials | Successes | Inconclusive | Rate |")
    lines.append("| --- | --- | --- | --- | --- | --- | --- |")
    for row in summary.itertuples(index=False):
        lines.append(
            f"| {row.problem} | {row.n} | {row.true} | {row.trials} | "
            f"{row.successes} | {row.inconclusive} | {row.success_rate:.3f} |"
        )
    lines.append("")
    Path(path).write_text("\n".join(lines), encoding="utf-8")
