from __future__ import annotations

import pytest

from shifted_subsets.config import ExperimentConfig
from shifted_subsets.errors import DomainError, InconclusiveError
from shifted_subsets.research import runner
from shifted_subsets.spectra.subsets import SubsetSpec


def _config(problem: str, n: int, trials: int = 5, **params) -> ExperimentConfig:
    return ExperimentConfig(
        subcommand="recover",
        n=n,
        seed=17,
        trials=trials,
        params={"problem": problem, **params},
    )


def test_radius_trials_are_reproducible_and_sorted() -> None:
    cfg = _config("sphere", 6, trials=8)
    first = runner.run_recovery_trials(cfg)
    second = runner.run_recovery_trials(cfg)
    assert first == second
    assert [record["trial"] for record in first] == list(range(8))
    assert all(0 <= record["true"] <= 3 for record in first)


def test_fixed_radius_trials_succeed() -> None:
    records = runner.run_recovery_trials(_config("radius", 8, r=2))
    assert all(record["correct"] for record in records)
    assert all(record["samples_used"] == record["budget"] for record in records)


def test_parity_bit_trials_report_the_parity() -> None:
    records = runner.run_recovery_trials(_config("parity-bit", 10, r=3))
    assert {record["true"] for record in records} == {1}
    assert all(record["recovered"] == 1 for record in records)


def test_trial_records_use_the_problem_names() -> None:
    records = runner.run_recovery_trials(_config("radius", 6, trials=2, r=1))
    assert {record["problem"] for record in records} == {"sphere"}
    assert {"true", "recovered", "samples_used", "correct"} <= set(records[0])
    gen = runner.run_recovery_trials(
        _config("gen-parity", 6, trials=2, prefix="101", table=[0, 1] + [0] * 6)
    )
    assert all(record["recovered"] == "101" for record in gen)
    assert runner.canonical_problem("generalised-parity") == "gen-parity"


def test_size_trials_use_the_tolerance() -> None:
    cfg = _config("size", 8, trials=10, subset="parity", variables=[1, 2])
    records = runner.run_recovery_trials(cfg)
    assert all(record["true"] == 0.5 for record in records)
    assert sum(record["correct"] for record in records) >= 7


def test_structure_problems() -> None:
    junta = runner.run_recovery_trials(_config("junta", 6, target=2))
    assert all(record["true"] == 2 for record in junta)
    parity = runner.run_recovery_trials(_config("parity-set", 6, variables=[2, 3]))
    assert all(record["recovered"] == "011000" for record in parity)


def test_zero_prefix_trials_are_inconclusive() -> None:
    table = [1, 0, 0, 0, 0, 0, 0, 0]
    cfg = _config("generalised-parity", 6, prefix="000", table=table)
    records = runner.run_recovery_trials(cfg)
    assert {record["status"] for record in records} == {"inconclusive"}
    assert {record["true"] for record in records} == {"000"}


def test_inconclusive_recovery_is_recorded(monkeypatch) -> None:
    def _stub_recover(*args, **kwargs):
        raise InconclusiveError("only zero outcomes")

    monkeypatch.setattr(runner, "recover_parity_set", _stub_recover)
    records = runner.run_recovery_trials(_config("parity-set", 6, variables=[1]))
    assert all(record["status"] == "inconclusive" for record in records)
    assert all(record["true"] == "100000" for record in records)


def test_unknown_problem_and_missing_parameters() -> None:
    with pytest.raises(DomainError):
        runner.run_recovery_trials(_config("teleport", 6))
    with pytest.raises(DomainError):
        runner.run_recovery_trials(_config("parity-set", 6))
    with pytest.raises(DomainError):
        runner.default_junta_family(5)


def test_summarise_trials() -> None:
    records = [
        {"trial": 0, "problem": "radius", "n": 6, "true": 1, "correct": True,
         "status": "ok"},
        {"trial": 1, "problem": "radius", "n": 6, "true": 1, "correct": False,
         "status": "inconclusive"},
        {"trial": 2, "problem": "radius", "n": 6, "true": 2, "correct": True,
         "status": "ok"},
    ]
    summary = runner.summarise_trials(records)
    first = summary.iloc[0]
    assert first["true"] == "1"
    assert first["trials"] == 2
    assert first["inconclusive"] == 1
    assert first["success_rate"] == pytest.approx(0.5)
    assert summary.iloc[1]["success_rate"] == pytest.approx(1.0)


def test_quantum_oracle_demo_uses_three_queries() -> None:
    spec = SubsetSpec.sphere(4, 1)
    result = runner.run_oracle_demo(spec, seed=3, mode="quantum", runs=4)
    assert result["median_queries"] == 3.0
    assert all(run["support_matches"] for run in result["per_run"])


def test_classical_oracle_demo_reports_collisions() -> None:
    spec = SubsetSpec.parity(6, [1])
    result = runner.run_oracle_demo(spec, seed=3, mode="classical", runs=5)
    assert len(result["per_run"]) == 5
    assert all(run["collision"] for run in result["per_run"])
    assert result["median_queries"] is not None
    with pytest.raises(DomainError):
        runner.run_oracle_demo(spec, seed=3, mode="adiabatic", runs=1)


def test_write_research_report_contains_headers(tmp_path) -> None:
    report_path = tmp_path / "research_report.md"
    cfg = _config("radius", 6, trials=3, r=1)
    summary = runner.summarise_trials(runner.run_recovery_trials(cfg))
    runner.write_research_report(str(report_path), cfg, summary)
    content = report_path.read_text(encoding="utf-8")
    header = "| Problem | n | True | Trials | Successes | Inconclusive | Rate |"
    assert header in content
    assert "## Configuration" in content
    assert "- budget_multiplier: 1" in content
