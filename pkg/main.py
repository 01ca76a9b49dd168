import argparse
import sys

from pydantic import ValidationError

from src.commands import cascade, experiment, generate, metrics, oracle, plot
from src.conf.constants import EXIT_ERROR, EXIT_INVALID
from src.conf.errors import (
    ConfigValidationError,
    ContagionLabError,
    ParameterError,
    SchemaMismatchError,
)
from src.conf.logger import logger

COMMANDS = [generate, cascade, metrics, oracle, experiment, plot]

EXCEPTION_HANDLERS = {}


def exception_handler(*errors: type[Exception]):
    """
    Register a handler turning an error family into an exit code.

    :param errors: exception classes handled
    :type errors: type[Exception]
    """

    def register(handler):
        for error in errors:
            EXCEPTION_HANDLERS[error] = handler
        return handler

    return register


@exception_handler(ParameterError, SchemaMismatchError)
def invalid_parameters_handler(exc: ContagionLabError) -> int:
    """
    Report parameters or CSV inputs that violate their preconditions.

    :param exc: exception object
    :type exc: ContagionLabError
    :return: exit code 2
    :rtype: int
    """
    logger.error(exc.detail)
    return EXIT_INVALID


@exception_handler(ConfigValidationError)
def invalid_config_handler(exc: ConfigValidationError) -> int:
    """
    Report every violation of an experiment config.

    :param exc: exception object
    :type exc: ConfigValidationError
    :return: exit code 2
    :rtype: int
    """
    logger.error(exc.detail)
    for violation in exc.violations:
        logger.error(f"  {violation}")
    return EXIT_INVALID


@exception_handler(ValidationError)
def validation_handler(exc: ValidationError) -> int:
    """
    Report command-line values rejected by a parameter model.

    :param exc: exception object
    :type exc: ValidationError
    :return: exit code 2
    :rtype: int
    """
    for error in exc.errors():
        location = ".".join(str(part) for part in error["loc"])
        logger.error(f"{location or exc.title}: {error['msg']}")
    return EXIT_INVALID


@exception_handler(ContagionLabError)
def domain_error_handler(exc: ContagionLabError) -> int:
    """
    Report any other domain error (stalled cascade, undefined fit, guard exceeded, ...).

    :param exc: exception object
    :type exc: ContagionLabError
    :return: exit code 3
    :rtype: int
    """
    logger.error(exc.detail or str(exc))
    return EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contagion-lab",
        description="Grow contagious networks on potential networks and measure them.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def cli(argv: list[str] | None = None) -> int:
    """
    Entry point of the ``contagion-lab`` command.

    :param argv: arguments, ``sys.argv[1:]`` by default
    :type argv: list[str] | None
    :return: 0 on success, 1 when a run is flagged, 2 on invalid input, 3 on other errors
    :rtype: int
    """
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except tuple(EXCEPTION_HANDLERS) as e:
        for error_type in type(e).__mro__:
            if error_type in EXCEPTION_HANDLERS:
                return EXCEPTION_HANDLERS[error_type](e)
        raise


if __name__ == "__main__":
    sys.exit(cli())
