"""
``defcalc series exp|hyp``: truncated deformed series.
"""
from argparse import Namespace

from defcalc.cli.commands.numbers import deformation_params
from defcalc.cli.models.responses import CommandResponse
from defcalc.config import settings
from defcalc.domain.exceptions import UsageError
from defcalc.domain.models import DeformedKind
from defcalc.services.application.verification_service import VerificationService
from defcalc.services.domain.deformed_functions import SeriesSpec
from defcalc.utils.parsing import parse_int_list


def handle(args: Namespace, service: VerificationService) -> CommandResponse:
    if not 0 <= args.order <= settings.max_series_order:
        raise UsageError(f"--order must lie in [0, {settings.max_series_order}], got {args.order}")
    if args.which == "exp" and (args.a or args.b):
        raise UsageError("--a/--b only apply to hyp")
    spec = SeriesSpec(
        upper_params=parse_int_list(args.a, "--a"),
        lower_params=parse_int_list(args.b, "--b"),
        kind=DeformedKind(args.kind),
        order=args.order,
    )
    target = DeformedKind(args.specialize) if args.specialize else None
    outcome = service.series(args.which, spec, deformation_params(args), target)
    return CommandResponse(command=f"series {args.which}", result=outcome.result, checks=outcome.checks)
