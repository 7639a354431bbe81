"""
``defcalc gl check``: gl_M structure checks on a tensor power.
"""
from argparse import Namespace

from defcalc.cli.commands.kz import validate_sizes
from defcalc.cli.models.responses import CommandResponse
from defcalc.services.application.verification_service import VerificationService
from defcalc.utils.parsing import parse_module


def handle(args: Namespace, service: VerificationService) -> CommandResponse:
    validate_sizes(args)
    outcome = service.gl_checks(args.rank, args.n_slots, parse_module(args.module))
    return CommandResponse(command="gl check", result=outcome.result, checks=outcome.checks)
