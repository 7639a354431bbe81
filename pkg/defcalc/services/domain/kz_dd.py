"""
Domain service: KZ and dynamical differential (DD) operators.

Operators are built on any slot realization of gl_M (see gl_rep). The
context fixes which symbols play the position variables z_1..z_N (one per
slot) and the dynamical variables lambda_1..lambda_M (one per Cartan index);
the duality model swaps the two lists.

Bare generators inside the formulas denote their coproduct images.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterator

from defcalc.config import settings
from defcalc.domain.diff_op import DiffOp, op_commutator
from defcalc.domain.exceptions import InvalidIndex, InvalidSite, RepresentationError
from defcalc.domain.linear_map import LinearMap, commutator
from defcalc.domain.models import (
    CheckMode,
    CheckReport,
    Construction,
    OperatorKind,
    VerificationMode,
)
from defcalc.domain.scalars import (
    RatFunc,
    Scalar,
    SparsePoly,
    as_ratfunc,
    collapse,
    format_rational,
    format_scalar,
    symbol,
)
from defcalc.domain.symbols import dynamical_name, eta, hbar, kappa, position_name
from defcalc.services.domain.gl_rep import SlotRealization
from defcalc.utils.monomials import ONE, sort_variables
from defcalc.utils.sampling import RationalSampler

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OperatorParams:
    """Parameters kappa, hbar, eta of the operator families (symbolic by default)."""

    kappa: Scalar = field(default_factory=kappa)
    """Coupling in front of the derivative; must be nonzero"""

    hbar: Scalar = field(default_factory=hbar)
    """Weight of the trigonometric part in the rt operators; must be nonzero"""

    eta: Scalar = field(default_factory=eta)
    """Weight of the rational part in the rt operators"""

    def __post_init__(self):
        for name in ("kappa", "hbar", "eta"):
            object.__setattr__(self, name, collapse(getattr(self, name)))
        if self.kappa == 0:
            raise ValueError("kappa must be nonzero")
        if self.hbar == 0:
            raise ValueError("hbar must be nonzero")

    def symbols(self) -> tuple[str, ...]:
        names = []
        for value in (self.kappa, self.hbar, self.eta):
            if isinstance(value, RatFunc):
                names.extend(value.variables)
        return sort_variables(names)

    def as_parameters(self) -> dict[str, Any]:
        return {
            "kappa": format_scalar(self.kappa),
            "hbar": format_scalar(self.hbar),
            "eta": format_scalar(self.eta),
        }


@dataclass
class KZContext:
    """A slot realization together with parameters and variable names."""

    realization: SlotRealization
    params: OperatorParams = field(default_factory=OperatorParams)
    position_vars: tuple[str, ...] = ()
    """One symbol per slot, z_1..z_N by default"""

    dynamical_vars: tuple[str, ...] = ()
    """One symbol per Cartan index, lambda_1..lambda_M by default"""

    def __post_init__(self):
        if not self.position_vars:
            self.position_vars = tuple(position_name(i) for i in range(1, self.realization.slot_count + 1))
        if not self.dynamical_vars:
            self.dynamical_vars = tuple(dynamical_name(a) for a in range(1, self.realization.rank + 1))
        if len(self.position_vars) != self.realization.slot_count:
            raise ValueError(
                f"{len(self.position_vars)} position variables for {self.realization.slot_count} slots"
            )
        if len(self.dynamical_vars) != self.realization.rank:
            raise ValueError(
                f"{len(self.dynamical_vars)} dynamical variables for gl_{self.realization.rank}"
            )

    @property
    def rank(self) -> int:
        return self.realization.rank

    @property
    def slot_count(self) -> int:
        return self.realization.slot_count

    @property
    def dim(self) -> int:
        return self.realization.dim

    def z(self, i: int) -> RatFunc:
        return symbol(self.position_vars[i - 1])

    def lam(self, a: int) -> RatFunc:
        return symbol(self.dynamical_vars[a - 1])

    def with_params(self, params: OperatorParams) -> "KZContext":
        return KZContext(self.realization, params, self.position_vars, self.dynamical_vars)

    def variables(self) -> tuple[str, ...]:
        """Every symbol an operator built on this context may contain."""
        return sort_variables(self.position_vars + self.dynamical_vars + self.params.symbols())

    def describe(self) -> dict[str, Any]:
        return {**self.realization.describe(), **self.params.as_parameters()}


# ============================================================================
# Builders
# ============================================================================

def _identity(ctx: KZContext, factor) -> LinearMap:
    return LinearMap.identity(ctx.dim).scale(factor)


def _check_site(i: int, ctx: KZContext) -> None:
    if not 1 <= i <= ctx.slot_count:
        raise InvalidSite(f"site {i} outside 1..{ctx.slot_count}")


def _check_index(a: int, ctx: KZContext) -> None:
    if not 1 <= a <= ctx.rank:
        raise InvalidIndex(f"dynamical index {a} outside 1..{ctx.rank}")


def _kz_rational(i: int, ctx: KZContext) -> DiffOp:
    real = ctx.realization
    matrix = LinearMap.zero(ctx.dim)
    for a in range(1, ctx.rank + 1):
        matrix = matrix - real.slot_generator((a, a), i).scale(ctx.lam(a))
    for j in range(1, ctx.slot_count + 1):
        if j == i:
            continue
        omega, _, _ = real.omega(i, j)
        matrix = matrix - omega.scale(Fraction(1) / (ctx.z(i) - ctx.z(j)))
    derivative = ((ctx.position_vars[i - 1], 1),)
    return DiffOp(ctx.dim, {derivative: _identity(ctx, ctx.params.kappa), ONE: matrix})


def _kz_trigonometric(i: int, ctx: KZContext) -> DiffOp:
    real = ctx.realization
    matrix = LinearMap.zero(ctx.dim)
    for a in range(1, ctx.rank + 1):
        total = real.coproduct((a, a))
        local = real.slot_generator((a, a), i)
        if not commutator(total, local).is_zero:
            raise RepresentationError(f"coproduct of e_{a}{a} does not commute with its slot-{i} copy")
        matrix = matrix - (_identity(ctx, ctx.lam(a)) - total) @ local
    for j in range(1, ctx.slot_count + 1):
        if j == i:
            continue
        _, plus, minus = real.omega(i, j)
        pole = Fraction(1) / (ctx.z(i) - ctx.z(j))
        matrix = matrix - (plus.scale(ctx.z(i)) + minus.scale(ctx.z(j))).scale(pole)
    derivative = ((ctx.position_vars[i - 1], 1),)
    return DiffOp(ctx.dim, {derivative: _identity(ctx, ctx.params.kappa * ctx.z(i)), ONE: matrix})


def _dd_rational(a: int, ctx: KZContext) -> DiffOp:
    real = ctx.realization
    matrix = LinearMap.zero(ctx.dim)
    for i in range(1, ctx.slot_count + 1):
        matrix = matrix - real.slot_generator((a, a), i).scale(ctx.z(i))
    for b in range(1, ctx.rank + 1):
        if b == a:
            continue
        pair = real.coproduct((a, b)) @ real.coproduct((b, a)) - real.coproduct((a, a))
        matrix = matrix - pair.scale(Fraction(1) / (ctx.lam(a) - ctx.lam(b)))
    derivative = ((ctx.dynamical_vars[a - 1], 1),)
    return DiffOp(ctx.dim, {derivative: _identity(ctx, ctx.params.kappa), ONE: matrix})


def _dd_trigonometric(a: int, ctx: KZContext) -> DiffOp:
    real = ctx.realization
    total = real.coproduct((a, a))
    matrix = (total @ total).scale(Fraction(1, 2))
    for i in range(1, ctx.slot_count + 1):
        matrix = matrix - real.slot_generator((a, a), i).scale(ctx.z(i))
    for b in range(1, ctx.rank + 1):
        for i, j in real.slot_pairs():
            matrix = matrix - real.two_tensor((a, b), (b, a), i, j)
    for b in range(1, ctx.rank + 1):
        if b == a:
            continue
        pair = real.coproduct((a, b)) @ real.coproduct((b, a)) - total
        matrix = matrix - pair.scale(ctx.lam(b) / (ctx.lam(a) - ctx.lam(b)))
    derivative = ((ctx.dynamical_vars[a - 1], 1),)
    return DiffOp(ctx.dim, {derivative: _identity(ctx, ctx.params.kappa * ctx.lam(a)), ONE: matrix})


def _rt_direct(trigonometric: DiffOp, rational: DiffOp, params: OperatorParams) -> DiffOp:
    return trigonometric.scale(params.hbar) + rational.scale(params.eta)


def _shift(ctx: KZContext) -> RatFunc:
    return as_ratfunc(ctx.params.eta) / ctx.params.hbar


def build_kz(kind: OperatorKind, i: int, ctx: KZContext,
             construction: Construction = Construction.DIRECT) -> DiffOp:
    """
    KZ operator at site i.

    r:  kappa d_zi - sum_a lambda_a (e_aa)_(i) - sum_{j!=i} Omega_(ij)/(z_i - z_j)
    t:  kappa z_i d_zi - sum_a (lambda_a - e_aa)(e_aa)_(i)
        - sum_{j!=i} (z_i Omega+_(ij) + z_j Omega-_(ij))/(z_i - z_j)
    rt: hbar * t with z_k -> z_k + eta/hbar and lambda_a -> (1 + eta/hbar) lambda_a
        (substitution), or hbar * t + eta * r (direct)

    Raises:
        InvalidSite: If i is not a slot index
    """
    kind = OperatorKind(kind)
    _check_site(i, ctx)
    if kind is OperatorKind.RATIONAL:
        return _kz_rational(i, ctx)
    if kind is OperatorKind.TRIGONOMETRIC:
        return _kz_trigonometric(i, ctx)
    if Construction(construction) is Construction.DIRECT:
        return _rt_direct(_kz_trigonometric(i, ctx), _kz_rational(i, ctx), ctx.params)
    shift = _shift(ctx)
    mapping: dict[str, Scalar] = {v: symbol(v) + shift for v in ctx.position_vars}
    mapping.update({v: symbol(v) * (1 + shift) for v in ctx.dynamical_vars})
    return _kz_trigonometric(i, ctx).substitute(mapping).scale(ctx.params.hbar)


def build_dd(kind: OperatorKind, a: int, ctx: KZContext,
             construction: Construction = Construction.DIRECT) -> DiffOp:
    """
    DD operator for the dynamical index a.

    r:  kappa d_la - sum_i z_i (e_aa)_(i) - sum_{b!=a} (e_ab e_ba - e_aa)/(lambda_a - lambda_b)
    t:  kappa lambda_a d_la + (e_aa)^2/2 - sum_i z_i (e_aa)_(i)
        - sum_b sum_{i<j} (e_ab)_(i)(e_ba)_(j)
        - sum_{b!=a} lambda_b (e_ab e_ba - e_aa)/(lambda_a - lambda_b)
    rt: hbar * t with lambda_b -> lambda_b + eta/hbar and z -> (1 + eta/hbar) z
        (substitution), or hbar * t + eta * r (direct)

    Raises:
        InvalidIndex: If a is not in 1..M
    """
    kind = OperatorKind(kind)
    _check_index(a, ctx)
    if kind is OperatorKind.RATIONAL:
        return _dd_rational(a, ctx)
    if kind is OperatorKind.TRIGONOMETRIC:
        return _dd_trigonometric(a, ctx)
    if Construction(construction) is Construction.DIRECT:
        return _rt_direct(_dd_trigonometric(a, ctx), _dd_rational(a, ctx), ctx.params)
    shift = _shift(ctx)
    mapping: dict[str, Scalar] = {v: symbol(v) + shift for v in ctx.dynamical_vars}
    mapping.update({v: symbol(v) * (1 + shift) for v in ctx.position_vars})
    return _dd_trigonometric(a, ctx).substitute(mapping).scale(ctx.params.hbar)


def kz_family(kind: OperatorKind, ctx: KZContext) -> list[DiffOp]:
    return [build_kz(kind, i, ctx) for i in range(1, ctx.slot_count + 1)]


def dd_family(kind: OperatorKind, ctx: KZContext) -> list[DiffOp]:
    return [build_dd(kind, a, ctx) for a in range(1, ctx.rank + 1)]


# ============================================================================
# Identity checks
# ============================================================================

class Identity:
    """Names accepted by ``check_identity``."""
    KZ_DECOMPOSITION = "kz_decomposition"
    DD_DECOMPOSITION = "dd_decomposition"
    FLATNESS = "flatness"
    COMPAT = "compat"

    ALL = (KZ_DECOMPOSITION, DD_DECOMPOSITION, FLATNESS, COMPAT)


def default_mode(ctx: KZContext, seed: int | None = None, trials: int | None = None) -> VerificationMode:
    """Exact up to the configured size, probabilistic above it."""
    small = ctx.rank <= settings.exact_max_rank and ctx.slot_count <= settings.exact_max_factors
    return VerificationMode(
        mode=CheckMode.EXACT if small else CheckMode.PROBABILISTIC,
        seed=settings.default_seed if seed is None else seed,
        trials=trials or settings.default_trials,
    )


def _denominators(ops: list[DiffOp]) -> list[SparsePoly]:
    seen: list[SparsePoly] = []
    keys: set[SparsePoly] = set()
    for op in ops:
        for _, matrix in op.items():
            for _, value in matrix.entries():
                if isinstance(value, RatFunc) and not value.denominator.is_constant:
                    if value.denominator not in keys:
                        keys.add(value.denominator)
                        seen.append(value.denominator)
    return seen


def _distinctness_guards(names: tuple[str, ...]) -> list[SparsePoly]:
    guards = []
    for k, first in enumerate(names):
        for second in names[k + 1:]:
            guards.append(SparsePoly.variable(first) - SparsePoly.variable(second))
    return guards


def sample_points(ctx: KZContext, ops: list[DiffOp], mode: VerificationMode) -> list[dict[str, Fraction]]:
    """
    Seeded points with distinct z's, distinct lambdas and no vanishing
    coefficient denominator.
    """
    sampler = RationalSampler(mode.seed)
    guards = (
        _denominators(ops)
        + _distinctness_guards(ctx.position_vars)
        + _distinctness_guards(ctx.dynamical_vars)
    )
    return [sampler.draw_point(ctx.variables(), guards) for _ in range(mode.trials)]


def _format_point(point: dict[str, Fraction]) -> dict[str, str]:
    return {var: format_rational(value) for var, value in point.items()}


@dataclass
class _Comparison:
    label: dict[str, Any]
    left: DiffOp
    right: DiffOp
    bracket: bool


def _comparisons(which: str, kind: OperatorKind, ctx: KZContext) -> Iterator[_Comparison]:
    if which == Identity.KZ_DECOMPOSITION:
        for i in range(1, ctx.slot_count + 1):
            yield _Comparison(
                {"site": i},
                build_kz(OperatorKind.RATIONAL_TRIGONOMETRIC, i, ctx, Construction.SUBSTITUTION),
                build_kz(OperatorKind.RATIONAL_TRIGONOMETRIC, i, ctx, Construction.DIRECT),
                bracket=False,
            )
    elif which == Identity.DD_DECOMPOSITION:
        for a in range(1, ctx.rank + 1):
            yield _Comparison(
                {"index": a},
                build_dd(OperatorKind.RATIONAL_TRIGONOMETRIC, a, ctx, Construction.SUBSTITUTION),
                build_dd(OperatorKind.RATIONAL_TRIGONOMETRIC, a, ctx, Construction.DIRECT),
                bracket=False,
            )
    elif which == Identity.FLATNESS:
        kz = kz_family(kind, ctx)
        for i in range(len(kz)):
            for j in range(i + 1, len(kz)):
                yield _Comparison({"kz": [i + 1, j + 1]}, kz[i], kz[j], bracket=True)
        dd = dd_family(kind, ctx)
        for a in range(len(dd)):
            for b in range(a + 1, len(dd)):
                yield _Comparison({"dd": [a + 1, b + 1]}, dd[a], dd[b], bracket=True)
    elif which == Identity.COMPAT:
        kz = kz_family(kind, ctx)
        dd = dd_family(kind, ctx)
        for i, nabla in enumerate(kz, start=1):
            for a, d in enumerate(dd, start=1):
                yield _Comparison({"kz": i, "dd": a}, nabla, d, bracket=True)
    else:
        raise ValueError(f"unknown identity {which!r}; expected one of {', '.join(Identity.ALL)}")


def _residual(comparison: _Comparison, at: dict[str, Fraction] | None) -> DiffOp:
    if comparison.bracket:
        return op_commutator(comparison.left, comparison.right, at)
    if at is None:
        return comparison.left - comparison.right
    return comparison.left.evaluate(at) - comparison.right.evaluate(at)


def check_identity(which: str, kind: OperatorKind, ctx: KZContext,
                   mode: VerificationMode | None = None) -> CheckReport:
    """
    Decide one operator identity over all sites / indices of the context.

    The decompositions compare the two rt constructions; flatness asks that
    same-kind KZ operators commute pairwise and likewise for DD operators;
    compat asks that every KZ operator commutes with every DD operator.
    Exact mode expands symbolically; probabilistic mode composes the
    operators at seeded rational points.

    Returns:
        CheckReport; failures carry the first residual as witness
    """
    kind = OperatorKind(kind)
    mode = mode or default_mode(ctx)
    comparisons = list(_comparisons(which, kind, ctx))
    name = f"kz.{which}" if which in (Identity.KZ_DECOMPOSITION, Identity.DD_DECOMPOSITION) else f"kz.{which}.{kind.value}"
    parameters = {
        **ctx.describe(),
        "which": which,
        "kind": kind.value,
        **mode.as_parameters(),
    }

    if mode.mode is CheckMode.EXACT:
        points: list[dict[str, Fraction] | None] = [None]
    else:
        ops = [op for c in comparisons for op in (c.left, c.right)]
        points = sample_points(ctx, ops, mode)

    witness = None
    for trial, point in enumerate(points):
        for comparison in comparisons:
            residual = _residual(comparison, point)
            if residual.is_zero:
                continue
            witness = {"operators": comparison.label, "residual": residual.to_json()}
            if point is not None:
                witness.update({"trial": trial, "point": _format_point(point)})
            break
        if witness:
            break

    logger.info(f"Identity {name} on {ctx.describe()}: {'holds' if witness is None else 'fails'}")
    return CheckReport.from_outcome(
        name,
        witness is None,
        parameters=parameters,
        witness=witness,
        details={"comparisons": len(comparisons), "points": len(points)},
    )


def check_rt_linearity(ctx: KZContext, pairs=((1, 1), (2, -3), (Fraction(1, 2), 5))) -> CheckReport:
    """
    The rt operators are linear in (hbar, eta): at each concrete pair the
    substitution-built rt operator equals hbar * t + eta * r, for every
    KZ site and every DD index.
    """
    failures = []
    for hbar_value, eta_value in pairs:
        params = OperatorParams(kappa=ctx.params.kappa, hbar=Fraction(hbar_value), eta=Fraction(eta_value))
        local = ctx.with_params(params)
        for i in range(1, ctx.slot_count + 1):
            rt = build_kz(OperatorKind.RATIONAL_TRIGONOMETRIC, i, local, Construction.SUBSTITUTION)
            combination = (build_kz(OperatorKind.TRIGONOMETRIC, i, local).scale(params.hbar)
                           + build_kz(OperatorKind.RATIONAL, i, local).scale(params.eta))
            if rt != combination:
                failures.append({"hbar": format_scalar(params.hbar), "eta": format_scalar(params.eta), "kz": i})
        for a in range(1, ctx.rank + 1):
            rt = build_dd(OperatorKind.RATIONAL_TRIGONOMETRIC, a, local, Construction.SUBSTITUTION)
            combination = (build_dd(OperatorKind.TRIGONOMETRIC, a, local).scale(params.hbar)
                           + build_dd(OperatorKind.RATIONAL, a, local).scale(params.eta))
            if rt != combination:
                failures.append({"hbar": format_scalar(params.hbar), "eta": format_scalar(params.eta), "dd": a})
    return CheckReport.from_outcome(
        "kz.rt_linearity",
        not failures,
        parameters={
            **ctx.realization.describe(),
            "kappa": format_scalar(ctx.params.kappa),
            "pairs": [[format_scalar(Fraction(h)), format_scalar(Fraction(e))] for h, e in pairs],
        },
        witness={"failures": failures},
    )
