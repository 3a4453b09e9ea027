# lrmipt/cli/__init__.py
"""Command-line entry point: ``lrmipt <command> [--config FILE] [--out DIR] ...``."""

import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from lrmipt.errors import CsvFormatError, DomainError, PlanError

from .commands import (
    EXIT_OK,
    EXIT_PARTIAL,
    EXIT_RUNTIME,
    EXIT_VALIDATION,
    resolve_output_dir,
    run_command,
)
from .plan import (
    DEFAULT_OUTPUT_DIR,
    CollapseSettings,
    CrossingsSettings,
    ExperimentPlan,
    GridSpec,
    HeffScanSettings,
    PowerFitSettings,
    ProjectConfig,
    dump_config,
    load_config,
    sweep_values,
    write_config,
)

logger = logging.getLogger("lrmipt")

COMMANDS = {
    "simulate": "Run trajectory ensembles over an (L, alpha, p) grid and write per-cell CSV files.",
    "collapse": "Fit a finite-size scaling collapse to simulated or tabulated data.",
    "powerfit": "Fit S_{L/2} = A L^mu to half-chain entropies.",
    "crossings": "Tabulate the expected number of gates crossing a half-chain cut.",
    "heff-scan": "Second Renyi entropy profile of the effective Ising ground state.",
}


def _add_shared_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", default=None, help="YAML project configuration.")
    p.add_argument("--out", default=None, help="Output directory (overrides LRMIPT_OUTPUT_DIR).")
    p.add_argument("--workers", type=int, default=None, help="Worker processes for ensembles and bootstrap.")
    p.add_argument("--seed", type=int, default=None, help="Override the master / analysis seed.")
    p.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug.")
    p.add_argument("--no-progress", action="store_true", help="Disable progress bars.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lrmipt", description=__doc__)
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, help_text in COMMANDS.items():
        _add_shared_args(subparsers.add_parser(name, help=help_text))
    return parser


def _apply_overrides(config: ProjectConfig, args: argparse.Namespace) -> ProjectConfig:
    if args.seed is None:
        return config
    update = {"collapse": config.collapse.model_copy(update={"seed": args.seed})}
    if config.simulate is not None:
        update["simulate"] = config.simulate.model_copy(update={"seed": args.seed})
    return config.model_copy(update=update)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING if args.verbose == 0 else logging.INFO if args.verbose == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")

    try:
        config = load_config(args.config) if args.config else ProjectConfig()
        config = _apply_overrides(config, args)
        if args.workers is not None and args.workers < 1:
            raise PlanError([f"--workers={args.workers} (must be >= 1)"])
        default_out = config.simulate.output_dir if config.simulate is not None else DEFAULT_OUTPUT_DIR
        out_dir = resolve_output_dir(args.out, default_out)
        code = run_command(args.command, config, out_dir, args.workers, not args.no_progress)
    except (PlanError, ValidationError, DomainError, CsvFormatError) as exc:
        logger.error("%s", exc)
        return EXIT_VALIDATION
    except Exception:
        logger.exception("%s failed", args.command)
        return EXIT_RUNTIME
    if code == EXIT_PARTIAL:
        logger.warning("%s finished with partial results", args.command)
    return code


__all__ = [
    "EXIT_OK",
    "EXIT_PARTIAL",
    "EXIT_RUNTIME",
    "EXIT_VALIDATION",
    "CollapseSettings",
    "CrossingsSettings",
    "ExperimentPlan",
    "GridSpec",
    "HeffScanSettings",
    "PowerFitSettings",
    "ProjectConfig",
    "build_parser",
    "dump_config",
    "load_config",
    "main",
    "sweep_values",
    "write_config",
]


if __name__ == "__main__":
    sys.exit(main())
