"""Command-line front end.

Subcommands: ``simulate`` runs a configured experiment and writes snapshot
CSVs plus a manifest; ``validate`` checks a config file.  Exit codes: 0 on
success, 2 for config errors, 3 for solver failures.  The ``ASPIR8_LOG``
environment variable selects the log level (DEBUG, INFO, WARNING, ...).
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import replace

from .coupling import CouplingFailure
from .experiments import ConfigError, load_config, run_experiment
from .scheme import StepFailure

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3

log = logging.getLogger("aspir8")


def _setup_logging() -> None:
    level_name = os.environ.get("ASPIR8_LOG", "WARNING").upper()
    level = getattr(logging, level_name, logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aspir8",
        description="1D blood flow simulation with an inserted aspiration catheter",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run an experiment")
    sim.add_argument("--config", required=True, help="config file path")
    sim.add_argument("--N", type=int, help="override cells per segment")
    sim.add_argument("--t-end", type=float, dest="t_end",
                     help="override final time (s)")
    sim.add_argument("--out", help="override output directory")

    val = sub.add_parser("validate", help="check a config file")
    val.add_argument("--config", required=True, help="config file path")
    return parser


def main(argv: list[str] | None = None) -> int:
    _setup_logging()
    args = _build_parser().parse_args(argv)

    try:
        config = load_config(args.config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if args.command == "validate":
        print(f"{args.config}: valid {config.experiment} configuration")
        return EXIT_OK

    overrides = {}
    if args.N is not None:
        overrides["N"] = args.N
    if args.t_end is not None:
        overrides["t_end"] = args.t_end
    if args.out is not None:
        overrides["output_path"] = args.out
    if overrides:
        config = replace(config, **overrides)
        try:
            config.validate()
        except ConfigError as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return EXIT_CONFIG

    try:
        result = run_experiment(config)
    except (StepFailure, CouplingFailure) as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    print(f"{config.experiment}: {result.run_result.n_steps} steps to "
          f"t={result.run_result.state.t:g} s, "
          f"{len(result.snapshot_files)} snapshots in "
          f"{result.manifest_file.parent}")
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
