from __future__ import annotations

import io
import json

import pandas as pd
import pytest

from shifted_subsets.ops import cli


def _run(capsys, *argv: str) -> tuple[int, str]:
    status = cli.main(list(argv))
    return status, capsys.readouterr().out


def test_kraw_table_in_plain_format(capsys) -> None:
    status, out = _run(capsys, "kraw", "--n", "3", "--r", "1")
    assert status == cli.EXIT_OK
    assert out.split() == ["3", "1", "-1", "-3"]
    status, out = _run(capsys, "kraw", "--n", "4", "--r", "2", "--method", "gf")
    assert out.split() == ["6", "0", "-2", "0", "6"]


def test_dist_csv(capsys) -> None:
    status, out = _run(
        capsys, "dist", "--sphere", "--n", "4", "--r", "1", "--format", "csv"
    )
    assert status == cli.EXIT_OK
    frame = pd.read_csv(io.StringIO(out))
    assert list(frame.columns) == ["weight", "numerator", "denominator", "decimal"]
    assert frame.loc[frame["weight"] == 2, "numerator"].item() == 0
    assert frame["decimal"].sum() == pytest.approx(1.0)


def test_dist_weights_for_explicit_sets(capsys) -> None:
    status, out = _run(
        capsys, "dist", "--n", "3", "--explicit", "--elements", "000,011", "--weights"
    )
    records = json.loads(out)
    assert [r["weight"] for r in records] == [0, 1, 2, 3]
    assert sum(r["decimal"] for r in records) == pytest.approx(1.0)


def test_sample_is_deterministic(capsys) -> None:
    argv = ("sample", "--n", "6", "--sphere", "--r", "2", "--count", "20")
    _, first = _run(capsys, *argv, "--seed", "9", "--shift", "101010")
    _, second = _run(capsys, *argv, "--seed", "9", "--shift", "101010")
    assert first == second
    records = json.loads(first)
    assert len(records) == 20
    assert all(len(r["outcome"]) == 6 for r in records)


def test_sample_weights_mode(capsys) -> None:
    status, out = _run(
        capsys, "sample", "--n", "4", "--r", "1", "--mode", "weights", "--count", "50"
    )
    weights = {r["weight"] for r in json.loads(out)}
    assert status == cli.EXIT_OK
    assert 2 not in weights


def test_recover_summary(capsys) -> None:
    status, out = _run(
        capsys, "recover", "--n", "6", "--problem", "radius", "--r", "2",
        "--trials", "3", "--summary",
    )
    assert status == cli.EXIT_OK
    summary = json.loads(out)
    assert summary[0]["trials"] == 3
    assert summary[0]["success_rate"] == 1.0


def test_recover_report(capsys, tmp_path) -> None:
    report = tmp_path / "report.md"
    status, _ = _run(
        capsys, "recover", "--n", "6", "--problem", "parity-set",
        "--variables", "2,4", "--trials", "2", "--report", str(report),
    )
    assert status == cli.EXIT_OK
    assert "# Recovery Report" in report.read_text(encoding="utf-8")


def test_inconclusive_recovery_exit_code(capsys) -> None:
    status, out = _run(
        capsys, "recover", "--n", "6", "--problem", "generalised-parity",
        "--prefix", "000", "--table", "10000000", "--trials", "2",
    )
    assert status == cli.EXIT_INCONCLUSIVE
    assert {r["status"] for r in json.loads(out)} == {"inconclusive"}


def test_capacity_and_domain_errors(capsys) -> None:
    status, _ = _run(capsys, "dist", "--parity", "--n", "21", "--variables", "1")
    assert status == cli.EXIT_CAPACITY
    status, _ = _run(capsys, "oracle-demo", "--n", "13", "--parity", "--variables", "1")
    assert status == cli.EXIT_CAPACITY
    status, _ = _run(capsys, "kraw", "--n", "4", "--r", "5", "--x", "0")
    assert status == cli.EXIT_USAGE
    status, _ = _run(capsys, "bounds", "--copies", "--N", "2")
    assert status == cli.EXIT_USAGE


def test_usage_errors_from_argparse() -> None:
    with pytest.raises(SystemExit) as excinfo:
        cli.main([])
    assert excinfo.value.code == cli.EXIT_USAGE


def test_bounds(capsys) -> None:
    _, out = _run(
        capsys, "bounds", "--copies", "--N", "2", "--F", "1/4", "--eps", "1/4"
    )
    assert json.loads(out)["copies"] == 3
    _, out = _run(capsys, "bounds", "--copies", "--N", "3", "--T", "2")
    assert json.loads(out)["copies"] == 1
    _, out = _run(capsys, "bounds", "--survey-spheres", "--n", "6", "--summary")
    summary = json.loads(out)
    assert summary["family_size"] == 4
    assert summary["copies"] >= 1


def test_oracle_demo(capsys) -> None:
    status, out = _run(
        capsys, "oracle-demo", "--n", "4", "--sphere", "--r", "1", "--runs", "3"
    )
    result = json.loads(out)
    assert status == cli.EXIT_OK
    assert result["median_queries"] == 3.0
    assert len(result["per_run"]) == 3


def test_verify_writes_report(capsys, tmp_path) -> None:
    report = tmp_path / "verify.md"
    status, _ = _run(capsys, "verify", "--max-n", "6", "--report", str(report))
    assert status == cli.EXIT_OK
    assert "- Verdict: pass" in report.read_text(encoding="utf-8")


def test_output_to_file(capsys, tmp_path) -> None:
    path = tmp_path / "kraw.json"
    status, out = _run(
        capsys, "kraw", "--n", "2", "--format", "json", "--output", str(path)
    )
    assert status == cli.EXIT_OK
    assert out == ""
    records = json.loads(path.read_text(encoding="utf-8"))
    assert len(records) == 9
    assert records[0] == {"n": 2, "r": 0, "x": 0, "value": 1}


def test_recover_with_true_radius(capsys) -> None:
    status, out = _run(
        capsys, "recover", "--n", "6", "--problem", "sphere", "--true-r", "2",
        "--trials", "2",
    )
    assert status == cli.EXIT_OK
    records = json.loads(out)
    assert [r["true"] for r in records] == [2, 2]
    assert all(r["recovered"] == 2 and r["correct"] for r in records)
    assert all(r["samples_used"] > 0 for r in records)
    status, out = _run(
        capsys, "recover", "--n", "8", "--problem", "parity-bit", "--true-r", "3",
        "--trials", "3",
    )
    assert {r["recovered"] for r in json.loads(out)} == {1}


def test_sample_random_shift_and_histogram(capsys) -> None:
    argv = ("sample", "--n", "6", "--sphere", "--r", "3", "--count", "400")
    status, first = _run(capsys, *argv, "--random-shift", "--histogram")
    _, second = _run(capsys, *argv, "--random-shift", "--histogram")
    assert status == cli.EXIT_OK
    assert first == second
    histogram = json.loads(first)
    assert [row["weight"] for row in histogram] == list(range(7))
    assert sum(row["count"] for row in histogram) == 400
    assert histogram[3]["count"] == 0


def test_sample_rejects_two_shifts() -> None:
    with pytest.raises(SystemExit) as excinfo:
        cli.main(
            ["sample", "--n", "4", "--sphere", "--r", "1", "--shift", "0000",
             "--random-shift"]
        )
    assert excinfo.value.code == cli.EXIT_USAGE
