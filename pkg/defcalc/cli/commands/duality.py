"""
``defcalc duality``: KZ / DD identification on the polynomial model.
"""
from argparse import Namespace

from defcalc.cli.commands.kz import operator_params, validate_sizes
from defcalc.cli.models.responses import CommandResponse
from defcalc.config import settings
from defcalc.domain.exceptions import UsageError
from defcalc.domain.models import CheckMode, OperatorKind, VerificationMode
from defcalc.services.application.verification_service import VerificationService


def handle(args: Namespace, service: VerificationService) -> CommandResponse:
    validate_sizes(args)
    if not 1 <= args.degree <= settings.max_model_degree:
        raise UsageError(f"--degree must lie in [1, {settings.max_model_degree}], got {args.degree}")
    exact = True if args.exact is None else args.exact
    mode = VerificationMode(
        mode=CheckMode.EXACT if exact else CheckMode.PROBABILISTIC,
        seed=service.seed if args.seed is None else args.seed,
        trials=args.trials or service.trials,
    )
    outcome = service.duality(
        OperatorKind(args.kind), args.n_slots, args.rank, args.degree,
        operator_params(args), mode, strict=not args.record,
    )
    return CommandResponse(command="duality", result=outcome.result, checks=outcome.checks)
