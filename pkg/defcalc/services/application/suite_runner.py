"""
Application service: the verification suite.

The suite is a fixed, ordered registry of named check groups. Running it
with an identical SuiteConfig produces identical reports.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from pydantic import BaseModel, Field, field_validator

from defcalc.config import settings
from defcalc.domain.exceptions import DefcalcError
from defcalc.domain.models import (
    CheckMode,
    CheckReport,
    CheckStatus,
    DeformedKind,
    OperatorKind,
    VerificationMode,
)
from defcalc.middleware.error_handler import report_from_error
from defcalc.services.domain import (
    deformed_calculus,
    deformed_functions,
    deformed_numbers,
    gl_rep,
    howe_duality,
    kz_dd,
    quantum_plane,
)
from defcalc.services.domain.deformed_functions import SeriesSpec
from defcalc.services.domain.kz_dd import Identity, KZContext, OperatorParams

logger = logging.getLogger(__name__)

# Parameter sets of the hypergeometric specializations: (upper, lower)
HYPERGEOMETRIC_PARAMETER_SETS: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...] = (
    ((2,), (3,)),
    ((1, 2), (4,)),
    ((3, 5), (2, 6)),
)


class SuiteConfig(BaseModel):
    """Selection, sizes and randomness of one suite run."""
    only: list[str] = Field(
        default_factory=list,
        description="Check-name prefixes to run; empty runs everything",
    )
    seed: int = Field(default_factory=lambda: settings.default_seed)
    trials: int = Field(default_factory=lambda: settings.default_trials, ge=1)
    max_rank: int = Field(default=3, ge=1, le=4, description="Largest M of the operator identities")
    max_factors: int = Field(default=3, ge=1, le=4, description="Largest N of the operator identities")
    max_degree: int = Field(default=3, ge=1, le=4, description="Largest duality model degree")
    exp_order: int = Field(default_factory=lambda: settings.suite_exp_order, ge=0, le=16)
    hyp_order: int = Field(default_factory=lambda: settings.suite_hyp_order, ge=0, le=16)

    model_config = {"frozen": True}

    @field_validator("max_rank", "max_factors")
    @classmethod
    def _within_settings(cls, value: int) -> int:
        if value > settings.max_rank:
            raise ValueError(f"size {value} exceeds the configured limit {settings.max_rank}")
        return value

    def selects(self, name: str) -> bool:
        return not self.only or any(name.startswith(prefix) or prefix.startswith(name) for prefix in self.only)

    def probabilistic(self) -> VerificationMode:
        return VerificationMode(mode=CheckMode.PROBABILISTIC, seed=self.seed, trials=self.trials)


def record_empirically(report: CheckReport) -> CheckReport:
    """
    Turn an identity check into an observation.

    Used for identities that are not claimed to hold; the outcome and the
    witness are kept in ``details`` and the check passes once recorded.
    """
    return CheckReport(
        check_name=f"{report.check_name}.observed",
        parameters=report.parameters,
        status=CheckStatus.PASS if report.status is not CheckStatus.DEGENERATE else CheckStatus.DEGENERATE,
        details={"holds": report.passed, "witness": report.witness, **(report.details or {})},
    )


@dataclass(frozen=True)
class SuiteEntry:
    name: str
    run: Callable[[SuiteConfig], Iterable[CheckReport]]


def _numbers(config: SuiteConfig) -> Iterable[CheckReport]:
    yield deformed_numbers.check_fixed_points()
    yield deformed_numbers.check_specializations(-6, 6)
    for kind in DeformedKind:
        yield deformed_numbers.check_factorial_ratio(kind, 8)


def _calculus(config: SuiteConfig) -> Iterable[CheckReport]:
    shifts = {
        "q": deformed_calculus.q_shift(),
        "eta": deformed_calculus.eta_shift(),
        "qeta": deformed_calculus.q_eta_shift(),
    }
    for label, shift in shifts.items():
        yield deformed_calculus.leibniz_sweep(
            shift, settings.suite_leibniz_pairs, config.seed, name=f"calculus.leibniz_sweep.{label}"
        )
    yield deformed_calculus.check_monomial_law(10)


def _series(config: SuiteConfig) -> Iterable[CheckReport]:
    exp_spec = SeriesSpec((), (), DeformedKind.Q_ETA, config.exp_order)
    yield deformed_functions.specialize_series(exp_spec, DeformedKind.Q)
    yield deformed_functions.specialize_series(exp_spec, DeformedKind.ETA)
    for upper, lower in HYPERGEOMETRIC_PARAMETER_SETS:
        spec = SeriesSpec(upper, lower, DeformedKind.Q_ETA, config.hyp_order)
        yield deformed_functions.specialize_series(spec, DeformedKind.ETA)
    for kind in (DeformedKind.Q, DeformedKind.ETA, DeformedKind.Q_ETA):
        yield deformed_functions.check_exp_recursion(kind, config.exp_order)
        yield deformed_functions.check_matched_parameters(kind, (2, 3), config.hyp_order)


def _plane(config: SuiteConfig) -> Iterable[CheckReport]:
    yield quantum_plane.check_confluence(
        settings.suite_confluence_words, config.seed, settings.suite_confluence_length
    )
    yield quantum_plane.check_specialization_coherence(6)
    yield quantum_plane.check_algebra_consistency(5)


def _funceq(config: SuiteConfig) -> Iterable[CheckReport]:
    yield quantum_plane.solve_functional_equation(degree=settings.suite_funceq_degree)


def _gl(config: SuiteConfig) -> Iterable[CheckReport]:
    for rank in range(1, settings.max_rank + 1):
        ctx = gl_rep.tensor_power(gl_rep.vector_rep(rank), 2)
        yield gl_rep.check_commutation_relations(ctx)
        yield gl_rep.check_flip(rank)
        if rank <= 3:
            yield gl_rep.check_casimir_centrality(ctx)
            yield gl_rep.check_omega_decomposition(ctx)
            yield gl_rep.check_omega_invariance(ctx)
            yield gl_rep.cartan_automorphism_check(ctx)
    symmetric = gl_rep.tensor_power(gl_rep.symmetric_power_rep(2, 2), 2)
    yield gl_rep.check_commutation_relations(symmetric)
    yield gl_rep.check_casimir_centrality(symmetric)
    yield gl_rep.check_omega_decomposition(symmetric)
    yield gl_rep.cartan_automorphism_check(symmetric)
    yield gl_rep.check_infinitesimal_braid(gl_rep.tensor_power(gl_rep.vector_rep(2), 4))


def _decomposition(config: SuiteConfig) -> Iterable[CheckReport]:
    exact = VerificationMode(mode=CheckMode.EXACT)
    for rank in range(1, config.max_rank + 1):
        for n_slots in range(1, config.max_factors + 1):
            ctx = KZContext(gl_rep.tensor_power(gl_rep.vector_rep(rank), n_slots))
            yield kz_dd.check_identity(Identity.KZ_DECOMPOSITION, OperatorKind.RATIONAL_TRIGONOMETRIC, ctx, exact)
            yield kz_dd.check_identity(Identity.DD_DECOMPOSITION, OperatorKind.RATIONAL_TRIGONOMETRIC, ctx, exact)
    symmetric = KZContext(gl_rep.tensor_power(gl_rep.symmetric_power_rep(2, 2), 2))
    yield kz_dd.check_identity(Identity.KZ_DECOMPOSITION, OperatorKind.RATIONAL_TRIGONOMETRIC, symmetric, exact)
    yield kz_dd.check_identity(Identity.DD_DECOMPOSITION, OperatorKind.RATIONAL_TRIGONOMETRIC, symmetric, exact)
    yield kz_dd.check_rt_linearity(KZContext(gl_rep.tensor_power(gl_rep.vector_rep(2), 2)))


def _flatness(config: SuiteConfig) -> Iterable[CheckReport]:
    ctx = KZContext(gl_rep.tensor_power(gl_rep.vector_rep(2), 3))
    mode = config.probabilistic()
    for kind in OperatorKind:
        yield kz_dd.check_identity(Identity.FLATNESS, kind, ctx, mode)
    pair = KZContext(gl_rep.tensor_power(gl_rep.vector_rep(2), 2))
    yield kz_dd.check_identity(Identity.COMPAT, OperatorKind.RATIONAL, pair, VerificationMode())
    for kind in (OperatorKind.TRIGONOMETRIC, OperatorKind.RATIONAL_TRIGONOMETRIC):
        yield record_empirically(kz_dd.check_identity(Identity.COMPAT, kind, pair, mode))


def _duality(config: SuiteConfig) -> Iterable[CheckReport]:
    exact = VerificationMode(mode=CheckMode.EXACT)
    params = OperatorParams()
    for rank in range(1, config.max_rank + 1):
        model = howe_duality.build_model(1, rank, 2)
        yield from howe_duality.check_duality(OperatorKind.RATIONAL, model, params, exact).to_checks()
    for degree in range(1, config.max_degree + 1):
        model = howe_duality.build_model(2, 2, degree)
        yield howe_duality.check_mutual_commutation(model)
        yield howe_duality.check_strata(model)
        yield from howe_duality.check_duality(OperatorKind.RATIONAL, model, params, exact).to_checks()
    model = howe_duality.build_model(2, 2, 2)
    yield from howe_duality.check_duality(OperatorKind.TRIGONOMETRIC, model, params, exact).to_checks(strict=False)
    yield from howe_duality.check_duality(
        OperatorKind.RATIONAL_TRIGONOMETRIC, model, params, exact
    ).to_checks(strict=False)


SUITE: tuple[SuiteEntry, ...] = (
    SuiteEntry("numbers", _numbers),
    SuiteEntry("calculus", _calculus),
    SuiteEntry("series", _series),
    SuiteEntry("plane", _plane),
    SuiteEntry("plane.functional_equation", _funceq),
    SuiteEntry("gl", _gl),
    SuiteEntry("kz.decomposition", _decomposition),
    SuiteEntry("kz.flatness", _flatness),
    SuiteEntry("duality", _duality),
)


class SuiteRunner:
    """Runs the selected suite entries and collects their reports."""

    def __init__(self, entries: Optional[tuple[SuiteEntry, ...]] = None):
        self.entries = entries or SUITE

    def run(self, config: SuiteConfig) -> list[CheckReport]:
        """
        Run every selected entry.

        A domain error inside one entry becomes a report for that entry and
        does not stop the rest of the suite.
        """
        reports: list[CheckReport] = []
        for entry in self.entries:
            if not config.selects(entry.name):
                continue
            logger.info(f"Running suite entry {entry.name}")
            try:
                produced = list(entry.run(config))
            except DefcalcError as e:
                logger.warning(f"Suite entry {entry.name} raised {type(e).__name__}: {e.message}")
                produced = [report_from_error(f"{entry.name}.error", e)]
            reports.extend(produced)
        failed = sum(1 for r in reports if r.status is CheckStatus.FAIL)
        logger.info(f"Suite finished: {len(reports)} checks, {failed} failing")
        return reports
