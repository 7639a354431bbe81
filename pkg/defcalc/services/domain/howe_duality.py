"""
Domain service: the polynomial (gl_M, gl_N) duality model.

Polynomials in an N x M matrix of variables x_{ia}, truncated at total
degree d, carry two commuting slot realizations:

- gl_M with N slots, (e_ab)_(i) = x_{ia} d/dx_{ib}  (slot i is row i)
- gl_N with M slots, (E_ij)_(a) = x_{ia} d/dx_{ja}  (slot a is column a)

On this space the KZ operators of one algebra are compared with the DD
operators of the other, with positions and dynamical variables swapped.
Every generator preserves total degree, so comparisons run stratum by
stratum without truncation error.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb
from typing import Any

from defcalc.domain.diff_op import DiffOp
from defcalc.domain.linear_map import LinearMap, commutator
from defcalc.domain.models import CheckMode, CheckReport, CheckStatus, Construction, OperatorKind, VerificationMode
from defcalc.domain.scalars import format_rational
from defcalc.domain.symbols import dynamical_name, position_name
from defcalc.services.domain.gl_rep import SlotRealization, generator_indices
from defcalc.services.domain.kz_dd import (
    KZContext,
    OperatorParams,
    build_dd,
    build_kz,
    sample_points,
)

logger = logging.getLogger(__name__)


def variable_label(i: int, a: int) -> str:
    return f"x{i}{a}" if max(i, a) < 10 else f"x{i}_{a}"


class PolynomialModel:
    """Truncated polynomial space in x_{ia}, i = 1..N, a = 1..M."""

    def __init__(self, n_slots: int, rank: int, degree: int):
        """
        Args:
            n_slots: N, the rank of the second algebra and slot count of the first
            rank: M
            degree: Total-degree truncation d
        """
        if n_slots < 1 or rank < 1:
            raise ValueError(f"model needs positive N and M, got N={n_slots} M={rank}")
        if degree < 0:
            raise ValueError(f"model degree must be nonnegative, got {degree}")
        self.N = n_slots
        self.M = rank
        self.degree = degree
        count = n_slots * rank
        self.basis: list[tuple[int, ...]] = []
        self._strata: list[tuple[int, list[int]]] = []
        for k in range(degree + 1):
            start = len(self.basis)
            for combo in combinations_with_replacement(range(count), k):
                exponents = [0] * count
                for index in combo:
                    exponents[index] += 1
                self.basis.append(tuple(exponents))
            self._strata.append((k, list(range(start, len(self.basis)))))
        self._position = {exponents: k for k, exponents in enumerate(self.basis)}
        self.dim = len(self.basis)
        self._operators: dict[tuple[int, int, int, int], LinearMap] = {}
        self.gl_m = ModelRealization(self, "gl_M")
        self.gl_n = ModelRealization(self, "gl_N")
        logger.debug(f"Built polynomial model N={n_slots} M={rank} d={degree}, dim {self.dim}")

    def _index(self, i: int, a: int) -> int:
        return (i - 1) * self.M + (a - 1)

    def polarization(self, i: int, a: int, j: int, b: int) -> LinearMap:
        """x_{ia} d/dx_{jb} on the truncated basis."""
        key = (i, a, j, b)
        if key not in self._operators:
            target, source = self._index(i, a), self._index(j, b)
            entries = {}
            for column, exponents in enumerate(self.basis):
                if not exponents[source]:
                    continue
                image = list(exponents)
                image[source] -= 1
                image[target] += 1
                entries[(self._position[tuple(image)], column)] = exponents[source]
            self._operators[key] = LinearMap(self.dim, self.dim, entries)
        return self._operators[key]

    def strata(self) -> list[tuple[int, list[int]]]:
        """(degree, basis indices) for every degree 0..d."""
        return [(k, list(indices)) for k, indices in self._strata]

    def stratum_dimension(self, k: int) -> int:
        return comb(self.N * self.M + k - 1, k)

    def basis_labels(self) -> list[str]:
        names = [variable_label(i, a) for i in range(1, self.N + 1) for a in range(1, self.M + 1)]
        labels = []
        for exponents in self.basis:
            parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exponents) if e]
            labels.append("*".join(parts) or "1")
        return labels

    def describe(self) -> dict[str, Any]:
        return {"N": self.N, "M": self.M, "degree": self.degree, "dim": self.dim}

    def __repr__(self) -> str:
        return f"PolynomialModel(N={self.N}, M={self.M}, d={self.degree})"


class ModelRealization(SlotRealization):
    """One of the two slot realizations carried by a polynomial model."""

    def __init__(self, model: PolynomialModel, side: str):
        super().__init__()
        if side not in ("gl_M", "gl_N"):
            raise ValueError(f"unknown model side {side!r}")
        self.model = model
        self.side = side
        if side == "gl_M":
            self.rank, self.slot_count = model.M, model.N
        else:
            self.rank, self.slot_count = model.N, model.M
        self.dim = model.dim

    def _build_slot_generator(self, a: int, b: int, i: int) -> LinearMap:
        if self.side == "gl_M":
            return self.model.polarization(i, a, i, b)
        return self.model.polarization(a, i, b, i)

    def describe(self) -> dict:
        return {**super().describe(), "model": self.side, "degree": self.model.degree}


def build_model(n_slots: int, rank: int, degree: int) -> PolynomialModel:
    return PolynomialModel(n_slots, rank, degree)


def check_mutual_commutation(model: PolynomialModel) -> CheckReport:
    """[Delta(e_ab), Delta(E_ij)] = 0 for all gl_M and gl_N generators."""
    failures = []
    for x in generator_indices(model.M):
        for y in generator_indices(model.N):
            if not commutator(model.gl_m.coproduct(x), model.gl_n.coproduct(y)).is_zero:
                failures.append({"gl_M": list(x), "gl_N": list(y)})
    return CheckReport.from_outcome(
        "duality.mutual_commutation",
        not failures,
        parameters=model.describe(),
        witness={"failures": failures[:10]},
    )


def check_strata(model: PolynomialModel) -> CheckReport:
    """Stratum dimensions are C(NM+k-1, k) and every generator preserves each stratum."""
    failures = []
    for k, indices in model.strata():
        if len(indices) != model.stratum_dimension(k):
            failures.append({"degree": k, "dimension": len(indices), "expected": model.stratum_dimension(k)})
    for side in (model.gl_m, model.gl_n):
        for g in generator_indices(side.rank):
            for slot in range(1, side.slot_count + 1):
                matrix = side.slot_generator(g, slot)
                for k, indices in model.strata():
                    if not matrix.preserves(indices):
                        failures.append({"side": side.side, "generator": list(g), "slot": slot, "degree": k})
    return CheckReport.from_outcome(
        "duality.strata",
        not failures,
        parameters=model.describe(),
        witness={"failures": failures[:10]},
    )


# ============================================================================
# Realized operators
# ============================================================================

def model_context(model: PolynomialModel, params: OperatorParams, side: str, swapped: bool) -> KZContext:
    """
    Context on one side of the model.

    Unswapped gl_M uses positions z_1..z_N and dynamical lambda_1..lambda_M.
    Swapped gl_N uses positions lambda_1..lambda_M and dynamical z_1..z_N,
    so both sides speak about the same symbols.
    """
    z_names = tuple(position_name(i) for i in range(1, model.N + 1))
    lambda_names = tuple(dynamical_name(a) for a in range(1, model.M + 1))
    if side == "gl_M":
        if swapped:
            raise ValueError("the gl_M side is never swapped")
        return KZContext(model.gl_m, params, z_names, lambda_names)
    if not swapped:
        raise ValueError("the gl_N side is only used with swapped arguments")
    return KZContext(model.gl_n, params, lambda_names, z_names)


def _rt_construction(kind: OperatorKind) -> Construction:
    return Construction.SUBSTITUTION if kind is OperatorKind.RATIONAL_TRIGONOMETRIC else Construction.DIRECT


def realize_kz_on_model(kind: OperatorKind, i: int, model: PolynomialModel,
                        params: OperatorParams | None = None, swapped: bool = False) -> DiffOp:
    """
    KZ operator on the model.

    Unswapped: gl_M operator at site i in (z; lambda). Swapped: gl_N operator
    at site i (a column index) in (lambda; z).
    """
    kind = OperatorKind(kind)
    params = params or OperatorParams()
    ctx = model_context(model, params, "gl_N" if swapped else "gl_M", swapped)
    return build_kz(kind, i, ctx, _rt_construction(kind))


def realize_dd_on_model(kind: OperatorKind, a_or_i: int, model: PolynomialModel,
                        params: OperatorParams | None = None, swapped: bool = False) -> DiffOp:
    """
    DD operator on the model.

    Unswapped: gl_M operator for index a in (z; lambda). Swapped: gl_N
    operator for index i, whose dynamical variable is z_i.
    """
    kind = OperatorKind(kind)
    params = params or OperatorParams()
    ctx = model_context(model, params, "gl_N" if swapped else "gl_M", swapped)
    return build_dd(kind, a_or_i, ctx, _rt_construction(kind))


# ============================================================================
# Duality reports
# ============================================================================

@dataclass
class DualityEntry:
    """One identification at one index: the residual and its status per stratum."""

    identification: str
    """``kz_dd`` (KZ of gl_M vs swapped DD of gl_N) or ``dd_kz``"""

    index: int
    residual: DiffOp
    strata: dict[int, CheckStatus] = field(default_factory=dict)
    point: dict[str, str] | None = None
    """Sample point of the first nonzero observation in probabilistic mode"""

    @property
    def label(self) -> str:
        return f"{self.identification}.{self.index}"

    @property
    def vanishes(self) -> bool:
        return all(status is CheckStatus.PASS for status in self.strata.values())

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "identification": self.identification,
            "index": self.index,
            "strata": {str(k): status.value for k, status in sorted(self.strata.items())},
        }
        if not self.residual.is_zero:
            data["residual"] = self.residual.to_json()
        if self.point is not None:
            data["point"] = self.point
        return data


@dataclass
class DualityReport:
    """Residuals of both identifications for one operator kind on one model."""

    kind: OperatorKind
    model: PolynomialModel
    params: OperatorParams
    mode: VerificationMode
    entries: list[DualityEntry] = field(default_factory=list)
    block_diagonal: bool = True
    linearity: CheckReport | None = None

    @property
    def vanishes(self) -> bool:
        return all(entry.vanishes for entry in self.entries)

    def parameters(self) -> dict[str, Any]:
        return {
            **self.model.describe(),
            **self.params.as_parameters(),
            "kind": self.kind.value,
            **self.mode.as_parameters(),
        }

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": self.kind.value,
            "residual_zero": self.vanishes,
            "block_diagonal": self.block_diagonal,
            "entries": [entry.to_json() for entry in self.entries],
        }

    def to_checks(self, strict: bool = True) -> list[CheckReport]:
        """
        Reports for emission.

        Strict: a nonzero residual fails the identification check.
        Otherwise the residuals are recorded as observations and the check
        passes once every residual has been computed and serialized.
        """
        nonzero = [entry.to_json() for entry in self.entries if not entry.vanishes]
        details = {
            "residual_zero": self.vanishes,
            "strata": {entry.label: entry.to_json()["strata"] for entry in self.entries},
        }
        if strict:
            identity = CheckReport.from_outcome(
                f"duality.{self.kind.value}.identification",
                self.vanishes,
                parameters=self.parameters(),
                witness={"residuals": nonzero},
                details=details,
            )
        else:
            identity = CheckReport(
                check_name=f"duality.{self.kind.value}.residuals",
                parameters=self.parameters(),
                status=CheckStatus.PASS,
                details={**details, "residuals": nonzero},
            )
        checks = [
            identity,
            CheckReport.from_outcome(
                f"duality.{self.kind.value}.block_diagonal",
                self.block_diagonal,
                parameters=self.parameters(),
                witness={"reason": "a realized operator mixes degree strata"},
            ),
        ]
        if self.linearity is not None:
            checks.append(self.linearity)
        return checks


def _identifications(kind: OperatorKind, model: PolynomialModel,
                     params: OperatorParams) -> list[tuple[str, int, DiffOp, DiffOp]]:
    pairs = []
    for i in range(1, model.N + 1):
        pairs.append(("kz_dd", i,
                      realize_kz_on_model(kind, i, model, params),
                      realize_dd_on_model(kind, i, model, params, swapped=True)))
    for a in range(1, model.M + 1):
        pairs.append(("dd_kz", a,
                      realize_dd_on_model(kind, a, model, params),
                      realize_kz_on_model(kind, a, model, params, swapped=True)))
    return pairs


def _preserves_strata(op: DiffOp, model: PolynomialModel) -> bool:
    strata = model.strata()
    return all(matrix.preserves(indices) for _, matrix in op.items() for _, indices in strata)


def _residuals(kind: OperatorKind, model: PolynomialModel, params: OperatorParams,
               mode: VerificationMode) -> tuple[list[DualityEntry], bool]:
    pairs = _identifications(kind, model, params)
    block_diagonal = all(_preserves_strata(op, model) for _, _, left, right in pairs for op in (left, right))
    points: list[dict[str, Fraction]] = []
    if mode.mode is CheckMode.PROBABILISTIC:
        ctx = model_context(model, params, "gl_M", swapped=False)
        points = sample_points(ctx, [op for _, _, left, right in pairs for op in (left, right)], mode)

    entries = []
    for identification, index, left, right in pairs:
        residual = left - right
        entry = DualityEntry(identification, index, residual)
        for k, indices in model.strata():
            block = residual.restrict(indices)
            status = CheckStatus.PASS
            if mode.mode is CheckMode.EXACT:
                if not block.is_zero:
                    status = CheckStatus.FAIL
            else:
                for point in points:
                    if not block.evaluate(point).is_zero:
                        status = CheckStatus.FAIL
                        entry.point = entry.point or {v: format_rational(x) for v, x in point.items()}
                        break
            entry.strata[k] = status
        logger.debug(f"Duality {kind.value} {entry.label}: {entry.strata}")
        entries.append(entry)
    return entries, block_diagonal


def check_rt_residual_linearity(model: PolynomialModel, params: OperatorParams) -> CheckReport:
    """residual(rt) = hbar * residual(t) + eta * residual(r), exactly, for every identification."""
    exact = VerificationMode(mode=CheckMode.EXACT)
    rational, _ = _residuals(OperatorKind.RATIONAL, model, params, exact)
    trigonometric, _ = _residuals(OperatorKind.TRIGONOMETRIC, model, params, exact)
    mixed, _ = _residuals(OperatorKind.RATIONAL_TRIGONOMETRIC, model, params, exact)
    failures = []
    for r, t, rt in zip(rational, trigonometric, mixed):
        combination = t.residual.scale(params.hbar) + r.residual.scale(params.eta)
        if rt.residual != combination:
            failures.append({"identification": rt.identification, "index": rt.index,
                             "difference": (rt.residual - combination).to_json()})
    return CheckReport.from_outcome(
        "duality.rt_linearity",
        not failures,
        parameters={**model.describe(), **params.as_parameters()},
        witness={"failures": failures},
        details={
            "r_zero": all(e.vanishes for e in rational),
            "t_zero": all(e.vanishes for e in trigonometric),
            "rt_zero": all(e.vanishes for e in mixed),
        },
    )


def check_duality(kind: OperatorKind, model: PolynomialModel,
                  params: OperatorParams | None = None,
                  mode: VerificationMode | None = None) -> DualityReport:
    """
    Compare both identifications stratum by stratum.

    kz_dd: gl_M KZ at site i against the gl_N DD operator for index i with
    (lambda; z) swapped. dd_kz: gl_M DD for index a against the swapped gl_N
    KZ operator at site a. Nonzero residuals are kept in full. For the rt
    kind the linearity of the residual in (hbar, eta) is cross-checked.
    """
    kind = OperatorKind(kind)
    params = params or OperatorParams()
    mode = mode or VerificationMode()
    entries, block_diagonal = _residuals(kind, model, params, mode)
    report = DualityReport(kind, model, params, mode, entries, block_diagonal)
    if kind is OperatorKind.RATIONAL_TRIGONOMETRIC:
        report.linearity = check_rt_residual_linearity(model, params)
    logger.info(
        f"Duality {kind.value} on {model}: residual {'zero' if report.vanishes else 'nonzero'}"
    )
    return report
