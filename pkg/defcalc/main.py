"""
Command-line entry point.
"""
import logging
import sys
from argparse import Namespace
from typing import Optional

from defcalc.cli.commands import diffop, duality, gl, kz, numbers, plane, series, suite
from defcalc.cli.dependencies import (
    get_error_handler,
    get_report_emitter,
    get_suite_runner,
    get_verification_service,
)
from defcalc.cli.models.responses import CommandResponse
from defcalc.cli.parser import parse_args
from defcalc.config import settings
from defcalc.infrastructure.report_constants import Subcommands

logger = logging.getLogger(__name__)

HANDLERS = {
    Subcommands.NUM: numbers.handle,
    Subcommands.SERIES: series.handle,
    Subcommands.DIFFOP: diffop.handle,
    Subcommands.PLANE: plane.handle,
    Subcommands.GL: gl.handle,
    Subcommands.KZ: kz.handle,
    Subcommands.DUALITY: duality.handle,
}


def configure_logging(level: Optional[str] = None) -> None:
    """Diagnostics go to stderr; stdout carries only the JSON report."""
    level = (level or settings.log_level).upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.INFO),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        stream=sys.stderr,
        force=True,
    )


def command_path(args: Namespace) -> str:
    nested = getattr(args, f"{args.command}_command", None)
    return f"{args.command} {nested}" if nested else args.command


def _dispatch(args: Namespace) -> CommandResponse:
    if args.command == Subcommands.SUITE:
        return suite.handle(args, get_suite_runner())
    return HANDLERS[args.command](args, get_verification_service(args))


def run(argv: Optional[list[str]] = None) -> int:
    """
    Parse ``argv``, run the command and print its report.

    Returns:
        Process exit code: 0 all checks pass, 1 a check failed or was
        degenerate, 2 malformed arguments
    """
    argv = sys.argv[1:] if argv is None else argv
    handler = get_error_handler()
    emitter = get_report_emitter()

    parsed = handler.dispatch("defcalc", lambda: CommandResponse(command="defcalc", result=parse_args(argv)))
    if parsed.usage_error:
        configure_logging()
        emitter.emit(parsed)
        return parsed.exit_code

    args: Namespace = parsed.result
    configure_logging(args.log_level)
    command = command_path(args)
    logger.info(f"Running {command}")
    response = handler.dispatch(command, lambda: _dispatch(args))
    emitter.emit(response)
    logger.info(f"{command} finished with status {response.status.value}")
    return response.exit_code


def main() -> None:
    sys.exit(run())
