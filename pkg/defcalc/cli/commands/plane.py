"""
``defcalc plane normal-order|funceq|confluence``.
"""
from argparse import Namespace

from defcalc.cli.commands.numbers import deformation_params
from defcalc.cli.models.responses import CommandResponse
from defcalc.domain.exceptions import UsageError
from defcalc.services.application.verification_service import VerificationService
from defcalc.services.domain.quantum_plane import RewriteStrategy, validate_word


def handle(args: Namespace, service: VerificationService) -> CommandResponse:
    params = deformation_params(args)
    command = f"plane {args.plane_command}"
    if args.plane_command == "normal-order":
        try:
            validate_word(args.word)
        except ValueError as e:
            raise UsageError(f"--word: {e}") from e
        outcome = service.normal_order(args.word, params, RewriteStrategy(args.strategy))
    elif args.plane_command == "funceq":
        if args.degree < 1:
            raise UsageError(f"--degree must be at least 1, got {args.degree}")
        outcome = service.functional_equation(args.degree, params)
    else:
        if args.words < 1 or args.length < 0:
            raise UsageError("--words must be positive and --length nonnegative")
        outcome = service.confluence(args.words, args.length, params)
    return CommandResponse(command=command, result=outcome.result, checks=outcome.checks)
