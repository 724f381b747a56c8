#!/usr/bin/env python3
"""
hpzo CLI
Subcommands: run, montecarlo, schedule, bounds, lemma-check, compare.
Exit codes: 0 success, 1 validation error, 2 acceptance-check failure.
"""

import argparse
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional, Sequence

import yaml
from pydantic import ValidationError

from ..config import settings
from ..core import guarantee_for, run_single_trajectory, schedule_for
from ..core.oracles import Regime
from ..core.schedules import comparison_table
from ..errors import HpzoError
from ..harness import BATTERIES, emit_comparison, emit_report, load_experiment_config, run_batteries, run_monte_carlo
from ..utils.export_reports import comparison_frame, default_output_path, emit_json, export_trajectory_csv

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_ACCEPTANCE = 2


class CliUsageError(Exception):
    """Raised instead of argparse's SystemExit(2) so usage errors map to exit 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliUsageError(f"{self.prog}: error: {message}")


def setup_logging(level: Optional[str] = None):
    """Configure logging to stderr so stdout stays machine-readable."""
    logging.basicConfig(
        level=getattr(logging, (level or settings.log_level).upper(), logging.INFO),
        format="%(asctime)s - %(levelname)s - %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
    )


def _json_print(payload: Any) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True, default=str))


def _parse_params(pairs: Sequence[str]) -> Dict[str, Any]:
    params: Dict[str, Any] = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise CliUsageError(f"--param expects key=value, got '{pair}'")
        key, value = pair.split("=", 1)
        params[key.strip()] = yaml.safe_load(value)
    return params


def _constants(args):
    return dict(epsilon=args.eps, mu=args.mu, Delta0=args.delta0, R=args.R)


def _add_problem_constants(cmd: argparse.ArgumentParser):
    cmd.add_argument("--regime", required=True, choices=["sc", "cvx", "nc", *[r.value for r in Regime]])
    cmd.add_argument("--d", type=int, required=True)
    cmd.add_argument("--L", type=float, required=True)
    cmd.add_argument("--mu", type=float, default=None)
    cmd.add_argument("--delta0", type=float, default=None)
    cmd.add_argument("--R", type=float, default=None)
    cmd.add_argument("--eps", type=float, default=None)
    cmd.add_argument("--delta", type=float, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hpzo", description="High-probability zeroth-order gradient descent toolkit")
    parser.add_argument("--log-level", default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    run_cmd = sub.add_parser("run", help="Run a single trajectory and write its CSV")
    run_cmd.add_argument("--problem", required=True)
    run_cmd.add_argument("--param", action="append", default=[], help="Problem parameter as key=value (repeatable)")
    run_cmd.add_argument("--T", type=int, required=True)
    run_cmd.add_argument("--alpha", type=float, default=settings.run_default_alpha)
    run_cmd.add_argument("--L-used", dest="L_used", type=float, default=None)
    run_cmd.add_argument("--delta", type=float, default=0.1)
    run_cmd.add_argument("--eps", type=float, default=1.0)
    run_cmd.add_argument("--seed", type=int, default=settings.run_default_seed)
    run_cmd.add_argument("--stream", type=int, default=0)
    run_cmd.add_argument("--out", default=None, help="Trajectory CSV path")

    mc_cmd = sub.add_parser("montecarlo", help="Run a Monte Carlo experiment from a config file")
    mc_cmd.add_argument("--config", required=True)
    mc_cmd.add_argument("--assert", dest="assert_", action="store_true")
    mc_cmd.add_argument("--out-dir", default=None)
    mc_cmd.add_argument("--parallelism", type=int, default=None)

    schedule_cmd = sub.add_parser("schedule", help="Print the (T, alpha) schedule for given constants")
    _add_problem_constants(schedule_cmd)

    bounds_cmd = sub.add_parser("bounds", help="Evaluate a guarantee; T and alpha default to the schedule")
    _add_problem_constants(bounds_cmd)
    bounds_cmd.add_argument("--T", type=int, default=None)
    bounds_cmd.add_argument("--alpha", type=float, default=None)
    bounds_cmd.add_argument("--full", action="store_true", help="Full convex bound instead of the simplified one")

    lemma_cmd = sub.add_parser("lemma-check", help="Run the lemma-check batteries")
    lemma_cmd.add_argument("--battery", choices=["all", *BATTERIES], default="all")
    lemma_cmd.add_argument("--seed", type=int, default=settings.lemma_check_seed)
    lemma_cmd.add_argument("--samples", type=int, default=settings.lemma_check_samples)
    lemma_cmd.add_argument("--out", default=None)

    compare_cmd = sub.add_parser("compare", help="Emit the baseline comparison table")
    compare_cmd.add_argument("--d", type=int, required=True)
    compare_cmd.add_argument("--L", type=float, required=True)
    compare_cmd.add_argument("--mu", type=float, required=True)
    compare_cmd.add_argument("--R", type=float, required=True)
    compare_cmd.add_argument("--delta0", type=float, required=True)
    compare_cmd.add_argument("--eps", type=float, required=True)
    compare_cmd.add_argument("--delta", type=float, required=True)
    compare_cmd.add_argument("--format", choices=["table", "json", "csv"], default="table")
    compare_cmd.add_argument("--out", default=None)
    return parser


def _cmd_run(args) -> int:
    result = run_single_trajectory(
        args.problem,
        _parse_params(args.param),
        T=args.T,
        alpha=args.alpha,
        delta=args.delta,
        epsilon=args.eps,
        L_used=args.L_used,
        seed=args.seed,
        stream_index=args.stream,
    )
    path = args.out or default_output_path(
        settings.output_trajectory_filename.format(problem=args.problem, seed=args.seed, stream=args.stream)
    )
    export_trajectory_csv(result["record"], path)
    summary = dict(result["summary"], trajectory_csv=path)
    _json_print(summary)
    return EXIT_OK if result["status"] == "completed" else EXIT_VALIDATION


def _cmd_montecarlo(args) -> int:
    config = load_experiment_config(args.config)
    if args.parallelism is not None:
        config = config.model_copy(update={"parallelism": args.parallelism})
    summary = run_monte_carlo(config)

    if config.output.write:
        directory = args.out_dir or config.output.directory
        for fmt in config.output.formats:
            filename = settings.output_summary_filename.format(problem=config.problem.name, regime=config.regime.value)
            filename = os.path.splitext(filename)[0] + f".{fmt}"
            path = os.path.join(directory, filename) if directory else default_output_path(filename)
            emit_report(summary, path, fmt)

    _json_print(
        {
            "problem": summary.problem,
            "regime": summary.regime.value,
            "T": summary.T,
            "alpha": summary.alpha,
            "quantiles": summary.quantiles,
            "failure_rate": summary.failure_rate,
            "failure_threshold": summary.failure_threshold,
            "theory_bound": summary.theory_bound,
            "bound_label": summary.bound_label,
            "dominated": summary.dominated,
            "event_failure_rates": summary.event_failure_rates,
            "pathwise_violations": summary.pathwise_violations,
            "total_queries": summary.total_queries,
        }
    )
    if args.assert_ and not summary.assertion_passed:
        logger.error("Acceptance check failed: domination or failure-rate threshold not met")
        return EXIT_ACCEPTANCE
    return EXIT_OK


def _cmd_schedule(args) -> int:
    _json_print(schedule_for(args.regime, args.d, args.L, args.delta, **_constants(args)).model_dump(mode="json"))
    return EXIT_OK


def _cmd_bounds(args) -> int:
    _json_print(
        guarantee_for(
            args.regime, args.d, args.L, args.delta, T=args.T, alpha=args.alpha, simple=not args.full, **_constants(args)
        )
    )
    return EXIT_OK


def _cmd_lemma_check(args) -> int:
    names = list(BATTERIES) if args.battery == "all" else [args.battery]
    results = run_batteries(names, args.seed, args.samples)
    payload = {"seed": args.seed, "samples": args.samples, "batteries": [r.model_dump(mode="json") for r in results]}
    payload["passed"] = all(r.passed for r in results)
    if args.out:
        emit_json(payload, args.out)
    _json_print({r.name: r.passed for r in results})
    return EXIT_OK if payload["passed"] else EXIT_ACCEPTANCE


def _cmd_compare(args) -> int:
    rows = comparison_table(args.d, args.L, args.mu, args.R, args.delta0, args.eps, args.delta)
    if args.out:
        emit_comparison(rows, args.out, "json" if args.format == "json" else "csv")
    if args.format == "json":
        _json_print({"rows": [row.model_dump(mode="json") for row in rows]})
    elif args.format == "csv":
        print(comparison_frame(rows).to_csv(index=False, lineterminator="\n"), end="")
    else:
        print(comparison_frame(rows).to_string(index=False))
    return EXIT_OK


COMMANDS = {
    "run": _cmd_run,
    "montecarlo": _cmd_montecarlo,
    "schedule": _cmd_schedule,
    "bounds": _cmd_bounds,
    "lemma-check": _cmd_lemma_check,
    "compare": _cmd_compare,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except CliUsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_VALIDATION

    setup_logging(args.log_level)
    try:
        return COMMANDS[args.command](args)
    except CliUsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_VALIDATION
    except (HpzoError, ValidationError, ValueError) as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
