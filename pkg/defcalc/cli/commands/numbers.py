"""
``defcalc num``: a single deformed number.
"""
from argparse import Namespace

from defcalc.cli.models.responses import CommandResponse
from defcalc.domain.models import DeformedKind
from defcalc.domain.symbols import SymbolNames
from defcalc.services.application.verification_service import VerificationService
from defcalc.services.domain.deformed_numbers import DeformationParams
from defcalc.utils.parsing import parse_scalar_flag


def deformation_params(args: Namespace) -> DeformationParams:
    return DeformationParams(
        q=parse_scalar_flag(args.q, SymbolNames.Q, "--q"),
        eta=parse_scalar_flag(args.eta, SymbolNames.ETA, "--eta"),
    )


def handle(args: Namespace, service: VerificationService) -> CommandResponse:
    outcome = service.deformed_number(DeformedKind(args.kind), args.z, deformation_params(args))
    return CommandResponse(command="num", result=outcome.result, checks=outcome.checks)
