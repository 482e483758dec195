"""Exact identity suite behind the `verify` command.

Every check is exhaustive over the stated range and uses exact arithmetic,
except the floor check, which compares an exact probability with a 50-digit
bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterator

import numpy as np

from shifted_subsets.bounds.distance import hy_lower_bound, trace_distance
from shifted_subsets.logging import get_logger
from shifted_subsets.sampling.rng import RngState
from shifted_subsets.spectra.distributions import (
    center_gap_even,
    center_probability_floor,
    flank_gap_even,
    flank_gap_odd,
    flank_values,
    lemma1_probs,
    pi_elements,
    pi_sphere,
    to_mpf,
)
from shifted_subsets.spectra.krawtchouk import (
    kraw_ball_identity,
    kraw_center_value,
    kraw_direct,
    kraw_gf_coefficients,
    kraw_near_center,
    kraw_recurrence_residual,
    kraw_table,
)
from shifted_subsets.spectra.subsets import SubsetSpec

logger = get_logger(__name__)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    cases: int
    detail: str = ""


Cases = Iterator[tuple[bool, str]]


def _three_way(max_n: int) -> Cases:
    for n in range(max_n + 1):
        table = kraw_table(n)
        for x in range(n + 1):
            gf = kraw_gf_coefficients(n, x)
            for r in range(n + 1):
                direct = kraw_direct(n, r, x)
                ok = direct == table[r, x] == gf[r]
                yield ok, f"K_{r}^{n}({x}): {direct}, {table[r, x]}, {gf[r]}"


def _recurrences(max_n: int) -> Cases:
    for n in range(1, max_n + 1):
        for r in range(n + 1):
            for x in range(n + 1):
                if x == 0 or (x == n and r == 0):
                    continue
                residuals = kraw_recurrence_residual(n, r, x)
                ok = all(v in (None, 0) for v in residuals)
                yield ok, f"n={n} r={r} x={x}: {residuals}"


def _symmetry(max_n: int) -> Cases:
    for n in range(max_n + 1):
        table = kraw_table(n)
        for r in range(n + 1):
            for x in range(n + 1):
                ok = table[r, x] == (-1) ** r * table[r, n - x]
                yield ok, f"n={n} r={r} x={x}"


def _center_values(max_n: int) -> Cases:
    for n in range(2, max_n + 1, 2):
        table = kraw_table(n)
        for r in range(n + 1):
            ok = table[r, n // 2] == kraw_center_value(n, r)
            ok = ok and table[r, n // 2 - 1] == kraw_near_center(n, r)
            yield ok, f"n={n} r={r}"


def _ball_identity(max_n: int) -> Cases:
    for n in range(1, max_n + 1):
        for r in range(n + 1):
            for x in range(1, n + 1):
                lhs, rhs = kraw_ball_identity(n, r, x)
                yield lhs == rhs, f"n={n} r={r} x={x}: {lhs} != {rhs}"


def _lemma1(max_n: int) -> Cases:
    for n in range(1, max_n + 1):
        for r in range(n // 2 + 1):
            probs = lemma1_probs(n, r)
            dist = pi_sphere(n, r)
            low, high = flank_values(n, r)
            if n % 2 == 0:
                ok = probs.center == dist[n // 2] and probs.flank == low + high
            else:
                ok = probs.center is None and probs.flank == low + high
            yield ok and low == high, f"n={n} r={r}"


def _gaps(max_n: int) -> Cases:
    for n in range(2, max_n + 1):
        half = n // 2
        for r in range(0, half - 1):
            if n % 2 == 0 and r % 2 == 0:
                direct = pi_sphere(n, r)[half] - pi_sphere(n, r + 2)[half]
                gap = center_gap_even(n, r)
            elif n % 2 == 0:
                direct = lemma1_probs(n, r + 2).flank - lemma1_probs(n, r).flank
                gap = flank_gap_even(n, r)
            elif r % 2 == 1:
                direct = lemma1_probs(n, r + 2).flank - lemma1_probs(n, r).flank
                gap = flank_gap_odd(n, r)
            else:
                continue
            yield gap == direct and gap > 0, f"n={n} r={r}: {gap} vs {direct}"


def _center_floor(max_n: int) -> Cases:
    for n in range(2, max_n + 1, 2):
        for r in range(0, n // 2 + 1, 2):
            exact = pi_sphere(n, r)[n // 2]
            ok = to_mpf(exact) >= center_probability_floor(n, r)
            yield ok, f"n={n} r={r}"


HY_DIMENSIONS = (6, 8, 10)
HY_PAIRS = 500
HY_MAX_SET = 16


def _random_set(generator: np.random.Generator, n: int) -> list[int]:
    size = int(generator.integers(1, HY_MAX_SET + 1))
    return [int(v) for v in generator.choice(2**n, size=size, replace=False)]


def _hausdorff_young(seed: int, max_n: int) -> Cases:
    dims = [n for n in HY_DIMENSIONS if n <= max_n] or [HY_DIMENSIONS[0]]
    for n in dims:
        generator = RngState(seed=seed, stream=n).generator()
        for _ in range(HY_PAIRS):
            s, t = _random_set(generator, n), _random_set(generator, n)
            bound = hy_lower_bound(n, s, t)
            distance = trace_distance(pi_elements(n, s), pi_elements(n, t))
            yield bound <= distance, f"n={n} S={s} T={t}: {bound} > {distance}"
        for first, second in ((1, 2), (3, 5)):
            s = SubsetSpec.parity(n, range(1, first + 1)).members()
            t = SubsetSpec.parity(n, range(1, second + 1)).members()
            bound = hy_lower_bound(n, s, t)
            distance = trace_distance(pi_elements(n, s), pi_elements(n, t))
            yield bound <= distance, f"n={n} parity sets: {bound} > {distance}"


def _run(name: str, cases: Cases) -> CheckResult:
    count, failures = 0, []
    for ok, detail in cases:
        count += 1
        if not ok:
            failures.append(detail)
    logger.info("%s: %d cases, %d failures", name, count, len(failures))
    return CheckResult(
        name=name,
        passed=not failures,
        cases=count,
        detail=failures[0] if failures else "",
    )


def run_identity_suite(max_n: int = 24, seed: int = 0) -> list[CheckResult]:
    """Run every identity check for dimensions up to max_n."""
    checks: list[tuple[str, Callable[[], Cases]]] = [
        ("krawtchouk three-way agreement", lambda: _three_way(max_n)),
        ("recurrence residuals", lambda: _recurrences(max_n)),
        ("symmetry", lambda: _symmetry(max_n)),
        ("values at and next to n/2", lambda: _center_values(max_n)),
        ("ball sum identity", lambda: _ball_identity(max_n)),
        ("central weight closed forms", lambda: _lemma1(max_n)),
        ("gap closed forms", lambda: _gaps(max_n)),
        ("center probability floor", lambda: _center_floor(max_n)),
        ("hausdorff-young lower bound", lambda: _hausdorff_young(seed, max_n)),
    ]
    return [_run(name, build()) for name, build in checks]


def write_verification_report(path: str, results: list[CheckResult]) -> None:
    lines: list[str] = []
    lines.append("# Verification Report")
    lines.append("")
    verdict = "pass" if all(r.passed for r in results) else "fail"
    lines.append(f"- Verdict: {verdict}")
    lines.append(f"- Checks: {len(results)}")
    lines.append(f"- Cases: {sum(r.cases for r in results)}")
    lines.append("")
    lines.append("| Check | Cases | Result | First Failure |")
    lines.append("| --- | --- | --- | --- |")
    for result in results:
        status = "pass" if result.passed else "FAIL"
        lines.append(
            f"| {result.name} | {result.cases} | {status} | {result.detail or '-'} |"
        )
    lines.append("")
    Path(path).write_text("\n".join(lines), encoding="utf-8")


def summary_records(results: list[CheckResult]) -> list[dict[str, object]]:
    return [
        {"check": r.name, "cases": r.cases, "passed": r.passed, "detail": r.detail}
        for r in results
    ]
