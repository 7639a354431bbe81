"""
``defcalc diffop``: deformed difference-quotient derivative of a polynomial.
"""
from argparse import Namespace

from defcalc.cli.models.responses import CommandResponse
from defcalc.domain.symbols import SymbolNames
from defcalc.services.application.verification_service import VerificationService
from defcalc.utils.parsing import parse_rational_list, parse_scalar_flag


def handle(args: Namespace, service: VerificationService) -> CommandResponse:
    outcome = service.difference_operator(
        parse_rational_list(args.poly, "--poly"),
        parse_scalar_flag(args.scale, SymbolNames.Q, "--scale"),
        parse_scalar_flag(args.shift, SymbolNames.ETA, "--shift"),
    )
    return CommandResponse(command="diffop", result=outcome.result, checks=outcome.checks)
