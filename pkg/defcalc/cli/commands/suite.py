"""
``defcalc suite``: the full verification suite or a prefix-selected part.
"""
from argparse import Namespace

from defcalc.cli.models.responses import CommandResponse
from defcalc.config import settings
from defcalc.services.application.suite_runner import SuiteConfig, SuiteRunner


def handle(args: Namespace, runner: SuiteRunner) -> CommandResponse:
    config = SuiteConfig(
        only=[] if args.all else list(args.only),
        seed=settings.default_seed if args.seed is None else args.seed,
        trials=args.trials or settings.default_trials,
    )
    checks = runner.run(config)
    return CommandResponse(
        command="suite",
        result={"seed": config.seed, "trials": config.trials, "only": config.only},
        checks=checks,
    )
