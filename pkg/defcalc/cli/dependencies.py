"""
Dependency factories for the command handlers.
"""
from argparse import Namespace

from defcalc.infrastructure.report_emitter import ReportEmitter
from defcalc.middleware.error_handler import ErrorHandler
from defcalc.services.application.suite_runner import SuiteRunner
from defcalc.services.application.verification_service import VerificationService


def get_verification_service(args: Namespace) -> VerificationService:
    """
    Dependency factory for VerificationService.

    Args:
        args: Parsed arguments; ``seed`` and ``trials`` are used when present

    Returns:
        VerificationService instance
    """
    return VerificationService(seed=getattr(args, "seed", None), trials=getattr(args, "trials", None))


def get_suite_runner() -> SuiteRunner:
    return SuiteRunner()


def get_error_handler() -> ErrorHandler:
    return ErrorHandler()


def get_report_emitter() -> ReportEmitter:
    return ReportEmitter()
