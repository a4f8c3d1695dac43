"""
Command handlers for `effbasis run` and `effbasis resources`.

Exit codes: 0 success, 1 at least one run failed, 2 invalid configuration.
"""

import argparse
from pathlib import Path

from structlog import get_logger

from effbasis.core.config import load_experiment_config
from effbasis.core.errors import ConfigError
from effbasis.services.experiment_service import (
    report_resources,
    run_experiment,
    write_report,
    write_resources,
)

logger = get_logger()

EXIT_OK = 0
EXIT_RUN_FAILED = 1
EXIT_CONFIG_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="effbasis",
        description="Ground-state energies from graph-derived separable-pair circuit bases.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run an experiment document and write CSV/JSON reports")
    run.add_argument("--config", type=Path, required=True, help="Experiment document (JSON)")
    run.add_argument("--output", type=Path, default=None, help="Report directory (overrides config)")
    run.add_argument("--jobs", type=int, default=None, help="Worker processes for scan points")
    run.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
    run.set_defaults(handler=cmd_run)

    resources = sub.add_parser("resources", help="Count CNOTs, parameters and depth per run")
    resources.add_argument("--config", type=Path, required=True, help="Experiment document (JSON)")
    resources.add_argument("--output", type=Path, default=None, help="Report directory")
    resources.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
    resources.set_defaults(handler=cmd_resources)
    return parser


def cmd_run(args: argparse.Namespace) -> int:
    try:
        config = load_experiment_config(args.config)
    except ConfigError as e:
        logger.error("config_invalid", error=str(e))
        return EXIT_CONFIG_ERROR
    if args.jobs is not None and args.jobs < 1:
        logger.error("config_invalid", error=f"--jobs must be positive, got {args.jobs}")
        return EXIT_CONFIG_ERROR

    report = run_experiment(config, jobs=args.jobs)
    write_report(report, args.output or config.output)
    for failure in report.failures:
        logger.error("run_failed", system=failure.system, run=failure.label, error=failure.error)
    return EXIT_OK if report.ok else EXIT_RUN_FAILED


def cmd_resources(args: argparse.Namespace) -> int:
    try:
        config = load_experiment_config(args.config)
    except ConfigError as e:
        logger.error("config_invalid", error=str(e))
        return EXIT_CONFIG_ERROR

    try:
        rows = report_resources(config)
    except Exception:
        logger.exception("resource_count_failed", config=str(args.config))
        return EXIT_RUN_FAILED
    write_resources(config.name, rows, args.output or config.output)
    return EXIT_OK
