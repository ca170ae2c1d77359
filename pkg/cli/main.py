"""Command-line entry point: ``wellgap <subcommand> [options]``.

Rows go to ``--out`` (stdout when omitted); experiment summaries go to
``<out stem>.summary.csv`` (stdout after the rows when ``--out`` is omitted).
Exit status is 2 for configuration or validation problems and 3 for solver
failures.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any

import pydantic
import structlog

from experiments.batch import run_random_batch
from experiments.grover import run_grover_prior, run_scaling
from experiments.ising import run_ising_map
from experiments.output import summary_path, write_rows, write_summary
from experiments.sweep import run_solve
from experiments.types import (
    GroverPriorParams,
    IsingMapParams,
    RandomBatchParams,
    ScalingParams,
)
from wells.config import parse_config, parse_params
from wells.errors import ConfigurationError, SolverError, WellGapError
from wells.logs import setup_logging
from wells.settings import get_settings
from wells.types import SolveConfig, SolveMethod

log = structlog.get_logger(__name__)

_SOURCE = "cli.main"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_SOLVER = 3


def _read_text(path: Path | None) -> str:
    if path is None:
        return ""
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(
            f"cannot read configuration file {path}: {exc.strerror}",
            source_module=_SOURCE,
            config_key="config",
        ) from exc


def _int_list(value: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in value.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected comma separated integers, got {value!r}"
        ) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="Configuration file.")
    common.add_argument("--out", type=Path, help="CSV output path (stdout when omitted).")
    common.add_argument("--epsilon", type=float, help="Fix-Heiberger deflation tolerance.")
    common.add_argument("--seed", type=int, help="Random seed.")
    parallel = argparse.ArgumentParser(add_help=False)
    parallel.add_argument("--jobs", type=int, help="Worker processes (default WELLGAP_JOBS).")

    parser = argparse.ArgumentParser(
        prog="wellgap",
        description="Spectra and minimum gaps of multi-well adiabatic Hamiltonians.",
    )
    parser.add_argument("--log-level", help="Override WELLGAP_LOG_LEVEL.")
    parser.add_argument("--log-json", action="store_true", help="JSON log lines on stderr.")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser(
        "solve", parents=[common, parallel], help="Sweep s for a configured instance."
    )
    solve.add_argument("--method", choices=[m.value for m in SolveMethod])

    grover = sub.add_parser(
        "grover-prior",
        parents=[common, parallel],
        help="Minimum gap of search with a prior guess.",
    )
    grover.add_argument("--n", type=int)
    grover.add_argument("--distances", type=_int_list, help="Prior distances, e.g. 0,1,5.")
    grover.add_argument("--prior-depth", type=float)
    grover.add_argument("--prior-radius", type=int)
    grover.add_argument("--s-count", type=int)
    grover.add_argument("--no-refine", dest="refine", action="store_false", default=None)

    scaling = sub.add_parser(
        "scaling", parents=[common, parallel], help="Probability-scaled gap over a range of n."
    )
    scaling.add_argument("--n-min", type=int)
    scaling.add_argument("--n-max", type=int)
    scaling.add_argument("--prior-depth", type=float)
    scaling.add_argument("--prior-radius", type=int)
    scaling.add_argument("--s-count", type=int)

    ising = sub.add_parser("ising-map", parents=[common], help="Map an Ising model onto wells.")
    ising.add_argument("--L", type=int)
    ising.add_argument("--J", type=float)
    ising.add_argument("--B", type=float)
    ising.add_argument("--alpha", type=float)
    ising.add_argument("--s-star", type=float)
    ising.add_argument("--n", type=int)
    ising.add_argument("--m", type=int)

    batch = sub.add_parser(
        "random-batch",
        parents=[common, parallel],
        help="Random point-well instances against an oracle.",
    )
    batch.add_argument("--runs", type=int)
    batch.add_argument("--n-min", type=int)
    batch.add_argument("--n-max", type=int)
    batch.add_argument("--K-min", type=int)
    batch.add_argument("--K-max", type=int)
    batch.add_argument("--s-count", type=int)
    return parser


def _overrides(args: argparse.Namespace, names: Sequence[str]) -> dict[str, Any]:
    return {name: getattr(args, name, None) for name in names}


def cmd_solve(args: argparse.Namespace, jobs: int) -> None:
    if args.config is None:
        raise ConfigurationError(
            "solve needs --config", source_module=_SOURCE, config_key="config"
        )
    config = parse_config(_read_text(args.config))
    if args.method is not None or args.epsilon is not None:
        config = SolveConfig(
            instance=config.instance,
            s_grid=config.s_grid,
            method=SolveMethod(args.method) if args.method else config.method,
            epsilon=args.epsilon if args.epsilon is not None else config.epsilon,
        )
    write_rows(run_solve(config, jobs=jobs), args.out)


def cmd_grover_prior(args: argparse.Namespace, jobs: int) -> None:
    params = parse_params(
        _read_text(args.config),
        GroverPriorParams,
        _overrides(
            args,
            ("n", "distances", "prior_depth", "prior_radius", "s_count", "refine", "epsilon"),
        ),
    )
    rows, summary = run_grover_prior(params, jobs=jobs)
    write_rows(rows, args.out)
    write_summary(summary, summary_path(args.out))


def cmd_scaling(args: argparse.Namespace, jobs: int) -> None:
    params = parse_params(
        _read_text(args.config),
        ScalingParams,
        _overrides(args, ("n_min", "n_max", "prior_depth", "prior_radius", "s_count")),
    )
    rows, summary = run_scaling(params, jobs=jobs)
    write_rows(rows, args.out)
    write_summary(summary, summary_path(args.out))


def cmd_ising_map(args: argparse.Namespace, jobs: int) -> None:
    """One calibration loop; the subcommand takes no --jobs."""
    params = parse_params(
        _read_text(args.config),
        IsingMapParams,
        _overrides(args, ("L", "J", "B", "alpha", "s_star", "n", "m", "epsilon")),
    )
    rows, summary = run_ising_map(params)
    write_rows(rows, args.out)
    write_summary(summary, summary_path(args.out))


def cmd_random_batch(args: argparse.Namespace, jobs: int) -> None:
    params = parse_params(
        _read_text(args.config),
        RandomBatchParams,
        _overrides(
            args, ("runs", "n_min", "n_max", "K_min", "K_max", "s_count", "epsilon", "seed")
        ),
    )
    rows, summary = run_random_batch(params, jobs=jobs)
    write_rows(rows, args.out)
    write_summary(summary, summary_path(args.out))


COMMANDS: dict[str, Callable[[argparse.Namespace, int], None]] = {
    "solve": cmd_solve,
    "grover-prior": cmd_grover_prior,
    "scaling": cmd_scaling,
    "ising-map": cmd_ising_map,
    "random-batch": cmd_random_batch,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_settings()
    setup_logging(args.log_level or settings.log_level, json=args.log_json or settings.log_json)
    jobs = getattr(args, "jobs", None)
    if jobs is None:
        jobs = settings.jobs

    try:
        COMMANDS[args.command](args, jobs)
    except SolverError as exc:
        log.error("Solver failed", command=args.command, **exc.to_dict())
        print(f"wellgap: {exc.message}", file=sys.stderr)
        return EXIT_SOLVER
    except WellGapError as exc:
        log.error("Invalid input", command=args.command, **exc.to_dict())
        print(f"wellgap: {exc.message}", file=sys.stderr)
        return EXIT_INPUT
    except pydantic.ValidationError as exc:
        log.error("Invalid input", command=args.command, error=str(exc))
        print(f"wellgap: {exc.errors()[0].get('msg', 'invalid value')}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
