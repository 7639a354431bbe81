"""
``defcalc kz build|check``: KZ and DD operators.
"""
from argparse import Namespace

from defcalc.cli.models.responses import CommandResponse
from defcalc.config import settings
from defcalc.domain.exceptions import UsageError
from defcalc.domain.models import Construction, OperatorKind
from defcalc.domain.symbols import SymbolNames
from defcalc.services.application.verification_service import VerificationService
from defcalc.services.domain.kz_dd import OperatorParams
from defcalc.utils.parsing import parse_assignment, parse_module, parse_scalar_flag


def validate_sizes(args: Namespace) -> None:
    if not 1 <= args.rank <= settings.max_rank:
        raise UsageError(f"--M must lie in [1, {settings.max_rank}], got {args.rank}")
    if not 1 <= args.n_slots <= settings.max_factors:
        raise UsageError(f"--N must lie in [1, {settings.max_factors}], got {args.n_slots}")


def operator_params(args: Namespace) -> OperatorParams:
    params = {
        "kappa": parse_scalar_flag(args.kappa, SymbolNames.KAPPA, "--kappa"),
        "hbar": parse_scalar_flag(args.hbar, SymbolNames.HBAR, "--hbar"),
        "eta": parse_scalar_flag(args.eta, SymbolNames.ETA, "--eta"),
    }
    try:
        return OperatorParams(**params)
    except ValueError as e:
        raise UsageError(str(e)) from e


def handle(args: Namespace, service: VerificationService) -> CommandResponse:
    validate_sizes(args)
    ctx = service.kz_context(args.rank, args.n_slots, parse_module(args.module), operator_params(args))
    if args.kz_command == "build":
        point = parse_assignment(args.point, args.n_slots, args.rank) if args.point else None
        outcome = service.build_operator(
            args.family, OperatorKind(args.kind), args.index, ctx, Construction(args.construction), point
        )
    else:
        mode = service.mode(ctx, args.exact, args.seed, args.trials)
        outcome = service.kz_check(args.which, OperatorKind(args.kind), ctx, mode)
    return CommandResponse(command=f"kz {args.kz_command}", result=outcome.result, checks=outcome.checks)
