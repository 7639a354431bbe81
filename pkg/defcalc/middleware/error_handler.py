"""
Command error handling.

Every subcommand runs through ``ErrorHandler.dispatch``, which turns
exceptions into reports so that a JSON document is always emitted.
"""
import logging
from typing import Callable

from defcalc.cli.models.responses import CommandResponse, ErrorBody
from defcalc.domain.exceptions import DefcalcError, UsageError
from defcalc.domain.models import CheckReport, CheckStatus

logger = logging.getLogger(__name__)


def report_from_error(check_name: str, error: DefcalcError) -> CheckReport:
    """Report carrying the status the error maps to."""
    return CheckReport(
        check_name=check_name,
        status=CheckStatus(error.status),
        witness={"error": type(error).__name__, "detail": error.message},
    )


class ErrorHandler:
    """
    Catches exceptions raised while a command runs and returns consistent
    responses.
    """

    def dispatch(self, command: str, call_next: Callable[[], CommandResponse]) -> CommandResponse:
        """
        Run the command and handle any exceptions.

        Args:
            command: Subcommand path, used in report names
            call_next: The command handler

        Returns:
            CommandResponse
        """
        try:
            return call_next()

        except UsageError as e:
            logger.warning(f"Usage error in {command}: {e.message}")
            return CommandResponse(
                command=command,
                error=ErrorBody(error="usage", detail=e.message),
                usage_error=True,
            )

        except DefcalcError as e:
            logger.warning(f"{type(e).__name__} in {command}: {e.message}")
            return CommandResponse(
                command=command,
                checks=[report_from_error(f"{command.replace(' ', '.')}.error", e)],
            )

        except Exception as e:
            # flags are validated before any domain code runs; anything else is internal
            logger.exception(f"Unhandled exception in {command}: {e}")
            return CommandResponse(
                command=command,
                checks=[CheckReport(
                    check_name=f"{command.replace(' ', '.')}.error",
                    status=CheckStatus.FAIL,
                    witness={"error": type(e).__name__, "detail": str(e)},
                )],
            )
