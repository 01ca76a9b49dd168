import argparse
from pathlib import Path

from src.conf.constants import EXIT_OK, LOG_BIN_RATIO
from src.conf.logger import logger
from src.dependencies import get_artifact_repository
from src.services.plot_data import emit_plot_data


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("plot", help="Merge metric CSVs into log-log plot tables.")
    parser.add_argument("--inputs", type=Path, nargs="+", required=True)
    parser.add_argument("--out", type=Path, required=True)
    parser.add_argument("--log-bin-ratio", type=float, default=LOG_BIN_RATIO)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    repo = get_artifact_repository(args.out)
    tables = emit_plot_data(args.inputs, repo, ratio=args.log_bin_ratio)
    logger.info(f"Plot tables {', '.join(sorted(tables))} written to {args.out}")
    return EXIT_OK
