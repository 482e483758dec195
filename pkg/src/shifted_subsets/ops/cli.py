"""CLI entry point for shifted_subsets."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from shifted_subsets.bounds.distance import (
    copies_bound,
    copies_bound_from_trace,
    sphere_distance_survey,
    survey_summary,
)
from shifted_subsets.config import OUTPUT_FORMATS, ExperimentConfig
from shifted_subsets.errors import CapacityError, DomainError, InconclusiveError
from shifted_subsets.logging import configure_logging, get_logger
from shifted_subsets.ops.output import Payload, emit_records
from shifted_subsets.research.runner import (
    PROBLEM_ALIASES,
    PROBLEMS,
    run_oracle_demo,
    run_recovery_trials,
    summarise_trials,
    write_research_report,
)
from shifted_subsets.research.verify import (
    run_identity_suite,
    summary_records,
    write_verification_report,
)
from shifted_subsets.sampling.rng import RngState
from shifted_subsets.sampling.sampler import (
    fourier_samples,
    make_shifted_state,
    sample_weights,
)
from shifted_subsets.spectra.distributions import pi_ball, pi_sphere, pi_subset
from shifted_subsets.spectra.krawtchouk import (
    kraw_direct,
    kraw_gf_coefficients,
    kraw_table,
)
from shifted_subsets.spectra.subsets import SubsetSpec, to_bits

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED_CHECKS = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_INCONCLUSIVE = 4

SUBSET_KINDS = ("sphere", "ball", "parity", "junta", "generalised-parity", "explicit")
_COMMON = ("subcommand", "n", "seed", "trials", "budget_multiplier", "format", "output")
_COMMON_EXTRA = ("log_level",)


def _int_list(text: str) -> list[int]:
    return [int(part) for part in text.split(",") if part]


def _bit_table(text: str) -> list[int]:
    if set(text) - {"0", "1"}:
        raise argparse.ArgumentTypeError(f"not a bit string: {text!r}")
    return [int(ch) for ch in text]


def _bit_list(text: str) -> list[str]:
    return [part for part in text.split(",") if part]


def _add_subset_args(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument(
        "--spec", dest="subset", choices=SUBSET_KINDS, help="subset kind"
    )
    for kind in SUBSET_KINDS:
        group.add_argument(
            f"--{kind}",
            dest="subset",
            action="store_const",
            const=kind,
            help=f"shorthand for --spec {kind}",
        )
    parser.add_argument("--r", type=int, help="sphere or ball radius")
    parser.add_argument("--variables", type=_int_list, help="1-based variables, 1,3,4")
    parser.add_argument("--table", type=_bit_table, help="truth table as a bit string")
    parser.add_argument("--prefix", help="prefix string t of a generalised parity set")
    parser.add_argument("--elements", type=_bit_list, help="bit strings, 0101,1100")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="base random seed")
    common.add_argument("--format", choices=OUTPUT_FORMATS, help="output format")
    common.add_argument("--output", help="write output to this path")
    common.add_argument("--log-level", default="WARNING", help="stderr log level")

    parser = argparse.ArgumentParser(
        prog="shifted-subsets",
        description="shifted-subsets laboratory CLI",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    kraw = sub.add_parser("kraw", parents=[common], help="Krawtchouk values")
    kraw.add_argument("--n", type=int, required=True)
    kraw.add_argument("--r", type=int, help="degree (all degrees if omitted)")
    kraw.add_argument("--x", type=int, help="weight (all weights if omitted)")
    kraw.add_argument("--method", choices=("table", "direct", "gf"), default="table")

    dist = sub.add_parser("dist", parents=[common], help="exact sampling distribution")
    dist.add_argument("--n", type=int, required=True)
    _add_subset_args(dist)
    dist.add_argument(
        "--weights", action="store_true", help="collapse to Hamming weights"
    )

    sample = sub.add_parser("sample", parents=[common], help="simulated measurements")
    sample.add_argument("--n", type=int, required=True)
    _add_subset_args(sample)
    sample.add_argument("--count", type=int, default=10)
    shift = sample.add_mutually_exclusive_group()
    shift.add_argument("--shift", default=None, help="hidden shift as a bit string")
    shift.add_argument(
        "--random-shift", action="store_true", help="draw the shift from the seed"
    )
    sample.add_argument("--mode", choices=("state", "weights"), default="state")
    sample.add_argument(
        "--histogram", action="store_true", help="weight counts instead of outcomes"
    )

    recover = sub.add_parser("recover", parents=[common], help="recovery trials")
    recover.add_argument("--n", type=int, required=True)
    recover.add_argument(
        "--problem", choices=PROBLEMS + tuple(PROBLEM_ALIASES), default="sphere"
    )
    _add_subset_args(recover)
    recover.add_argument("--true-r", dest="r", type=int, help="hidden radius")
    recover.add_argument("--trials", type=int, default=1)
    recover.add_argument("--budget-multiplier", type=Fraction, default=Fraction(1))
    recover.add_argument("--repetitions", type=int, default=1)
    recover.add_argument("--epsilon", default="1/20")
    recover.add_argument("--target", type=int, help="hidden junta index (1-based)")
    recover.add_argument("--summary", action="store_true")
    recover.add_argument("--report", help="write a markdown report here")

    oracle = sub.add_parser("oracle-demo", parents=[common], help="oracle separation")
    oracle.add_argument("--n", type=int, required=True)
    _add_subset_args(oracle)
    oracle.add_argument("--mode", choices=("quantum", "classical"), default="quantum")
    oracle.add_argument("--runs", type=int, default=1)
    oracle.add_argument("--max-queries", type=int)

    bounds = sub.add_parser("bounds", parents=[common], help="distances and copies")
    action = bounds.add_mutually_exclusive_group(required=True)
    action.add_argument("--survey-spheres", action="store_true")
    action.add_argument("--copies", action="store_true")
    bounds.add_argument("--n", type=int)
    bounds.add_argument("--N", dest="family_size", type=int)
    bounds.add_argument("--T", dest="trace", type=Fraction)
    bounds.add_argument("--F", dest="fid", type=Fraction)
    bounds.add_argument("--eps", type=Fraction, default=Fraction(1, 3))
    bounds.add_argument("--summary", action="store_true")

    verify = sub.add_parser("verify", parents=[common], help="identity suite")
    verify.add_argument("--max-n", type=int, default=24)
    verify.add_argument("--report", help="write a markdown report here")
    return parser


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    values = vars(args)
    params = {
        key: value
        for key, value in values.items()
        if key not in _COMMON + _COMMON_EXTRA and value is not None
    }
    default_format = "plain" if args.subcommand == "kraw" else "json"
    return ExperimentConfig(
        subcommand=args.subcommand,
        n=values.get("n"),
        seed=args.seed,
        trials=values.get("trials", 1),
        budget_multiplier=values.get("budget_multiplier", Fraction(1)),
        output_format=args.format or default_format,
        output_path=args.output,
        params=params,
    )


def _require_n(cfg: ExperimentConfig) -> int:
    if cfg.n is None:
        raise DomainError(f"{cfg.subcommand} needs --n")
    return cfg.n


def _run_kraw(cfg: ExperimentConfig) -> tuple[int, Payload]:
    n = _require_n(cfg)
    method = cfg.params.get("method", "table")
    degrees = [cfg.params["r"]] if "r" in cfg.params else range(n + 1)
    weights = [cfg.params["x"]] if "x" in cfg.params else range(n + 1)
    lookup: dict[str, Callable[[int, int], int]] = {
        "table": lambda r, x: kraw_table(n)[r, x],
        "direct": lambda r, x: kraw_direct(n, r, x),
        "gf": lambda r, x: kraw_gf_coefficients(n, x)[r],
    }
    records = [
        {"n": n, "r": r, "x": x, "value": lookup[method](r, x)}
        for r in degrees
        for x in weights
    ]
    return EXIT_OK, records


def _subset(cfg: ExperimentConfig) -> SubsetSpec:
    params = dict(cfg.params)
    params.setdefault("subset", "sphere")
    return SubsetSpec.from_params(_require_n(cfg), params)


def _run_dist(cfg: ExperimentConfig) -> tuple[int, Payload]:
    spec = _subset(cfg)
    if spec.kind == "sphere":
        return EXIT_OK, pi_sphere(spec.n, spec.radius).records()
    if spec.kind == "ball":
        return EXIT_OK, pi_ball(spec.n, spec.radius).records()
    dist = pi_subset(spec)
    if cfg.params.get("weights"):
        return EXIT_OK, dist.weight_collapse().records()
    return EXIT_OK, dist.records()


def _histogram(weights: np.ndarray, n: int) -> list[dict[str, int]]:
    counts = np.bincount(weights, minlength=n + 1)
    return [{"weight": w, "count": int(c)} for w, c in enumerate(counts)]


def _run_sample(cfg: ExperimentConfig) -> tuple[int, Payload]:
    spec = _subset(cfg)
    count = int(cfg.params.get("count", 10))
    generator = RngState(seed=cfg.seed).generator()
    histogram = bool(cfg.params.get("histogram"))
    if cfg.params.get("mode") == "weights":
        if spec.kind not in ("sphere", "ball"):
            raise DomainError("weight sampling needs a sphere or a ball")
        exact = pi_sphere if spec.kind == "sphere" else pi_ball
        dist = exact(spec.n, spec.radius)
        draws = sample_weights(dist, generator, count)
        if histogram:
            return EXIT_OK, _histogram(draws, spec.n)
        return EXIT_OK, [{"sample": i, "weight": int(w)} for i, w in enumerate(draws)]
    shift = cfg.params.get("shift") or 0
    if cfg.params.get("random_shift"):
        shift = int(generator.integers(2**spec.n))
        logger.debug("random shift %s", to_bits(shift, spec.n))
    state = make_shifted_state(spec, shift)
    outcomes = fourier_samples(state, generator, count)
    if histogram:
        return EXIT_OK, _histogram(np.bitwise_count(outcomes), spec.n)
    return EXIT_OK, [
        {"sample": i, "outcome": to_bits(int(z), spec.n), "weight": int(z).bit_count()}
        for i, z in enumerate(outcomes)
    ]


def _run_recover(cfg: ExperimentConfig) -> tuple[int, Payload]:
    _require_n(cfg)
    records = run_recovery_trials(cfg)
    report = cfg.params.get("report")
    summary = None
    if report or cfg.params.get("summary"):
        summary = summarise_trials(records)
    if report:
        write_research_report(report, cfg, summary)
    status = EXIT_OK
    if all(r["status"] == "inconclusive" for r in records):
        status = EXIT_INCONCLUSIVE
    if cfg.params.get("summary"):
        return status, json.loads(summary.to_json(orient="records"))
    return status, records


def _run_oracle(cfg: ExperimentConfig) -> tuple[int, Payload]:
    spec = _subset(cfg)
    result = run_oracle_demo(
        spec,
        seed=cfg.seed,
        mode=cfg.params.get("mode", "quantum"),
        runs=int(cfg.params.get("runs", 1)),
        max_queries=cfg.params.get("max_queries"),
    )
    return EXIT_OK, result


def _run_bounds(cfg: ExperimentConfig) -> tuple[int, Payload]:
    params = cfg.params
    eps = Fraction(params.get("eps", Fraction(1, 3)))
    if params.get("survey_spheres"):
        n = _require_n(cfg)
        reports = sphere_distance_survey(n)
        if params.get("summary"):
            return EXIT_OK, survey_summary(reports, n, eps).record()
        return EXIT_OK, [report.record() for report in reports]
    family_size = params.get("family_size")
    if family_size is None:
        raise DomainError("--copies needs --N")
    if "trace" in params:
        copies = copies_bound_from_trace(family_size, params["trace"], eps)
        source = {"T": float(params["trace"])}
    elif "fid" in params:
        copies = copies_bound(family_size, params["fid"], eps)
        source = {"F": float(params["fid"])}
    else:
        raise DomainError("--copies needs --T or --F")
    return EXIT_OK, {"N": family_size, **source, "eps": float(eps), "copies": copies}


def _run_verify(cfg: ExperimentConfig) -> tuple[int, Payload]:
    results = run_identity_suite(max_n=int(cfg.params.get("max_n", 24)), seed=cfg.seed)
    report = cfg.params.get("report")
    if report:
        write_verification_report(report, results)
    status = EXIT_OK if all(r.passed for r in results) else EXIT_FAILED_CHECKS
    return status, summary_records(results)


_HANDLERS: dict[str, Callable[[ExperimentConfig], tuple[int, Payload]]] = {
    "kraw": _run_kraw,
    "dist": _run_dist,
    "sample": _run_sample,
    "recover": _run_recover,
    "oracle-demo": _run_oracle,
    "bounds": _run_bounds,
    "verify": _run_verify,
}


def run(cfg: ExperimentConfig) -> tuple[int, Payload]:
    """Exit status and the records for one fully specified experiment."""
    handler = _HANDLERS.get(cfg.subcommand)
    if handler is None:
        raise DomainError(f"unknown subcommand: {cfg.subcommand}")
    logger.debug("running %s", cfg.to_dict())
    return handler(cfg)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        configure_logging(args.log_level)
        cfg = config_from_args(args)
        status, payload = run(cfg)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except InconclusiveError as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    emit_records(payload, cfg.output_format, cfg.output_path)
    return status
