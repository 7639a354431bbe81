"""
Application service: orchestration of single verification commands.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from defcalc.config import settings
from defcalc.domain.models import (
    CheckMode,
    CheckReport,
    Construction,
    DeformedKind,
    OperatorKind,
    VerificationMode,
)
from defcalc.domain.scalars import Scalar, format_scalar
from defcalc.services.domain import (
    deformed_calculus,
    deformed_functions,
    deformed_numbers,
    gl_rep,
    howe_duality,
    kz_dd,
    quantum_plane,
)
from defcalc.services.domain.deformed_numbers import DeformationParams
from defcalc.services.domain.kz_dd import KZContext, OperatorParams

logger = logging.getLogger(__name__)


@dataclass
class Outcome:
    """Result payload of a command together with the checks it ran."""
    result: Any = None
    checks: list[CheckReport] = field(default_factory=list)


class VerificationService:
    """
    Application service for the individual subcommands.

    Coordinates the domain services and shapes their results; the
    mathematics lives in ``defcalc.services.domain``.
    """

    def __init__(self, seed: Optional[int] = None, trials: Optional[int] = None):
        """
        Args:
            seed: Default PRNG seed for probabilistic checks
            trials: Default number of probabilistic trials
        """
        self.seed = settings.default_seed if seed is None else seed
        self.trials = trials or settings.default_trials

    # ------------------------------------------------------------------
    # Numbers, series, difference operators
    # ------------------------------------------------------------------

    def deformed_number(self, kind: DeformedKind, z: int, params: DeformationParams) -> Outcome:
        value = deformed_numbers.deformed_number(z, kind, params)
        checks = []
        if kind is DeformedKind.Q_ETA:
            checks.append(deformed_numbers.specialize_number(z, params))
        return Outcome(
            result={
                "input": {"kind": DeformedKind(kind).value, "z": z, **params.as_parameters()},
                "value": format_scalar(value),
            },
            checks=checks,
        )

    def series(self, which: str, spec: deformed_functions.SeriesSpec, params: DeformationParams,
               specialize_to: Optional[DeformedKind] = None) -> Outcome:
        if which == "exp":
            coefficients = deformed_functions.exp_series(spec.kind, params, spec.order)
            checks = [deformed_functions.check_exp_recursion(spec.kind, spec.order, params)]
            parameters = {"kind": spec.kind.value, "order": spec.order}
        else:
            coefficients = deformed_functions.hypergeometric_series(spec, params)
            checks = []
            parameters = spec.as_parameters()
        if specialize_to is not None:
            source = spec if which == "hyp" else deformed_functions.SeriesSpec((), (), spec.kind, spec.order)
            checks.append(deformed_functions.specialize_series(source, specialize_to))
        return Outcome(
            result={"input": {"series": which, **parameters, **params.as_parameters()},
                    "coefficients": coefficients.to_json()},
            checks=checks,
        )

    def difference_operator(self, coefficients: list[Fraction], scale: Scalar, shift: Scalar) -> Outcome:
        f = deformed_calculus.UniPoly(coefficients)
        s = deformed_calculus.ShiftMap(scale, shift)
        derivative = deformed_calculus.apply_difference_operator(f, s)
        spot_check = deformed_calculus.derivative_spot_check(f, s)
        report = deformed_calculus.check_leibniz(f, deformed_calculus.UniPoly.x(), s)
        return Outcome(
            result={
                "input": {"poly": f.to_json(), **s.as_parameters()},
                "output": derivative.to_json(),
                "output_string": derivative.to_string(),
                "leibniz_spot_check": spot_check,
            },
            checks=[report],
        )

    # ------------------------------------------------------------------
    # Quantum plane
    # ------------------------------------------------------------------

    def normal_order(self, word: str, params: DeformationParams,
                     strategy: quantum_plane.RewriteStrategy) -> Outcome:
        form = quantum_plane.normal_order(word, params, strategy)
        other = quantum_plane.normal_order(
            word, params,
            quantum_plane.RewriteStrategy.RIGHTMOST
            if strategy is quantum_plane.RewriteStrategy.LEFTMOST
            else quantum_plane.RewriteStrategy.LEFTMOST,
        )
        check = CheckReport.from_outcome(
            "plane.strategies_agree",
            form == other,
            parameters={"word": word, **params.as_parameters()},
            witness={"first": form.to_json(), "second": other.to_json()},
        )
        return Outcome(
            result={"input": {"word": word, "strategy": strategy.value, **params.as_parameters()},
                    "normal_form": form.to_json()},
            checks=[check],
        )

    def functional_equation(self, degree: int, params: DeformationParams) -> Outcome:
        report = quantum_plane.solve_functional_equation(params, degree)
        return Outcome(result={"coefficients": (report.details or {}).get("coefficients")}, checks=[report])

    def confluence(self, words: int, max_length: int, params: DeformationParams) -> Outcome:
        return Outcome(checks=[
            quantum_plane.check_confluence(words, self.seed, max_length, params),
            quantum_plane.check_algebra_consistency(min(max_length, 5), params),
        ])

    # ------------------------------------------------------------------
    # gl_M, KZ / DD, duality
    # ------------------------------------------------------------------

    def gl_checks(self, rank: int, n_slots: int, module: str) -> Outcome:
        factor = gl_rep.module_from_name(module, rank)
        ctx = gl_rep.tensor_power(factor, n_slots)
        checks = [
            gl_rep.check_commutation_relations(ctx),
            gl_rep.check_casimir_centrality(ctx),
            gl_rep.check_omega_invariance(ctx),
            gl_rep.cartan_automorphism_check(ctx),
        ]
        if n_slots >= 2:
            checks.append(gl_rep.check_omega_decomposition(ctx))
        if n_slots >= 3:
            checks.append(gl_rep.check_infinitesimal_braid(ctx))
        if module == "vector":
            checks.append(gl_rep.check_flip(rank))
        return Outcome(
            result={**ctx.describe(), "basis": factor.basis_labels,
                    "casimir": gl_rep.casimir_c2(factor).to_json()},
            checks=checks,
        )

    def kz_context(self, rank: int, n_slots: int, module: str, params: OperatorParams) -> KZContext:
        factor = gl_rep.module_from_name(module, rank)
        return KZContext(gl_rep.tensor_power(factor, n_slots), params)

    def build_operator(self, family: str, kind: OperatorKind, index: int, ctx: KZContext,
                       construction: Construction, point: Optional[dict[str, Fraction]] = None) -> Outcome:
        if family == "kz":
            op = kz_dd.build_kz(kind, index, ctx, construction)
        else:
            op = kz_dd.build_dd(kind, index, ctx, construction)
        if point:
            op = op.evaluate(point) if set(ctx.variables()) <= set(point) else op.partial_evaluate(point)
        logger.info(f"Built {family} operator {kind.value} at index {index}, order {op.order}")
        return Outcome(
            result={
                "input": {"family": family, "kind": kind.value, "index": index,
                          "construction": Construction(construction).value, **ctx.describe()},
                "operator": op.to_json(),
            },
        )

    def mode(self, ctx: KZContext, exact: Optional[bool], seed: Optional[int],
             trials: Optional[int]) -> VerificationMode:
        seed = self.seed if seed is None else seed
        trials = trials or self.trials
        if exact is None:
            return kz_dd.default_mode(ctx, seed, trials)
        return VerificationMode(mode=CheckMode.EXACT if exact else CheckMode.PROBABILISTIC,
                                seed=seed, trials=trials)

    def kz_check(self, which: str, kind: OperatorKind, ctx: KZContext, mode: VerificationMode) -> Outcome:
        checks = [kz_dd.check_identity(which, kind, ctx, mode)]
        if which in (kz_dd.Identity.KZ_DECOMPOSITION, kz_dd.Identity.DD_DECOMPOSITION):
            checks.append(kz_dd.check_rt_linearity(ctx))
        return Outcome(checks=checks)

    def duality(self, kind: OperatorKind, n_slots: int, rank: int, degree: int,
                params: OperatorParams, mode: VerificationMode, strict: bool = True) -> Outcome:
        model = howe_duality.build_model(n_slots, rank, degree)
        report = howe_duality.check_duality(kind, model, params, mode)
        checks = [
            howe_duality.check_mutual_commutation(model),
            howe_duality.check_strata(model),
            *report.to_checks(strict=strict),
        ]
        return Outcome(result=report.to_json(), checks=checks)
