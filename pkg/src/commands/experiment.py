import argparse
import json
from pathlib import Path

from src.conf.constants import CONFIG_REQUIRED, EXIT_FLAGGED, EXIT_OK
from src.conf.errors import ConfigValidationError
from src.conf.logger import logger
from src.schemas.experiments import ExperimentConfig
from src.services.experiments import bundled_configs, load_config, run_experiment


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("experiment", help="Run a config-driven experiment.")
    parser.add_argument(
        "--config",
        help=f"TOML file or bundled config name ({', '.join(bundled_configs())}).",
    )
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--output-root", type=Path, default=None)
    parser.add_argument(
        "--schema", action="store_true", help="Print the config JSON schema and exit."
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """
    Run an experiment, or print the published config schema.

    :param args: parsed arguments
    :type args: argparse.Namespace
    :return: exit code, flagged when any run stalled or failed
    :rtype: int
    """
    if args.schema:
        print(json.dumps(ExperimentConfig.model_json_schema(), indent=2))
        return EXIT_OK
    if not args.config:
        raise ConfigValidationError(detail=CONFIG_REQUIRED)
    config = load_config(args.config)
    manifest = run_experiment(config, args.output_root, args.workers)
    if manifest.flagged:
        logger.warning(f"Experiment {manifest.name} finished with flagged runs")
        return EXIT_FLAGGED
    return EXIT_OK
