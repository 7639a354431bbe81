"""
Domain service: truncated deformed exponentials and hypergeometric series.

Series are finite coefficient lists indexed by the power of x. Coefficients
are built incrementally from the ratio of consecutive terms, so every
coefficient is an exact scalar in q and eta.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from defcalc.domain.exceptions import DenominatorVanishes, InvalidSpecialization, ZeroLowerPochhammer
from defcalc.domain.models import CheckReport, DeformedKind
from defcalc.domain.scalars import (
    Scalar,
    as_ratfunc,
    collapse,
    format_scalar,
    scalar_limit,
    scalar_substitute,
)
from defcalc.domain.symbols import SymbolNames
from defcalc.services.domain.deformed_numbers import DeformationParams, deformed_number

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SeriesSpec:
    """Parameters of a truncated hypergeometric series."""

    upper_params: tuple[int, ...] = ()
    """Upper parameters a_1..a_n"""

    lower_params: tuple[int, ...] = ()
    """Lower parameters b_1..b_m"""

    kind: DeformedKind = DeformedKind.Q_ETA
    """Deformation of the numbers inside the Pochhammer symbols"""

    order: int = 8
    """Truncation degree; coefficients 0..order are produced"""

    def __post_init__(self):
        object.__setattr__(self, "upper_params", tuple(int(a) for a in self.upper_params))
        object.__setattr__(self, "lower_params", tuple(int(b) for b in self.lower_params))
        object.__setattr__(self, "kind", DeformedKind(self.kind))
        if self.order < 0:
            raise ValueError(f"series order must be nonnegative, got {self.order}")

    def as_parameters(self) -> dict[str, Any]:
        return {
            "a": list(self.upper_params),
            "b": list(self.lower_params),
            "kind": self.kind.value,
            "order": self.order,
        }


@dataclass(frozen=True)
class SeriesCoeffs:
    """Coefficients c_0..c_order of a truncated series."""

    coefficients: tuple[Scalar, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, n: int) -> Scalar:
        return self.coefficients[n]

    def __eq__(self, other):
        if not isinstance(other, SeriesCoeffs):
            return NotImplemented
        return len(self) == len(other) and all(a == b for a, b in zip(self.coefficients, other.coefficients))

    __hash__ = None

    def map(self, fn) -> "SeriesCoeffs":
        return SeriesCoeffs(tuple(collapse(fn(c)) for c in self.coefficients))

    def to_json(self) -> list[str]:
        return [format_scalar(c) for c in self.coefficients]


def _nonzero_number(n: int, kind: DeformedKind, params: DeformationParams | None) -> Scalar:
    number = deformed_number(n, kind, params)
    if number == 0:
        raise DenominatorVanishes(f"({n})_{kind.value} vanishes for the given parameters")
    return number


def exp_series(kind: DeformedKind, params: DeformationParams | None = None, order: int = 8) -> SeriesCoeffs:
    """
    Truncated deformed exponential: coefficient n is 1/(n)_kind!.

    Raises:
        DenominatorVanishes: For degenerate concrete parameters
    """
    if order < 0:
        raise ValueError(f"series order must be nonnegative, got {order}")
    kind = DeformedKind(kind)
    coefficients: list[Scalar] = [Fraction(1)]
    for n in range(1, order + 1):
        number = _nonzero_number(n, kind, params)
        coefficients.append(collapse(as_ratfunc(coefficients[-1]) / number))
    return SeriesCoeffs(tuple(coefficients))


def hypergeometric_series(spec: SeriesSpec, params: DeformationParams | None = None) -> SeriesCoeffs:
    """
    Truncated hypergeometric series.

    Coefficient k is prod_i ((a_i))_(k) / ((k)! prod_j ((b_j))_(k)) with every
    number deformed according to ``spec.kind``.

    Raises:
        DenominatorVanishes: If a concrete parameter choice zeroes some (k)
        ZeroLowerPochhammer: If a lower Pochhammer factor vanishes for k <= order
    """
    coefficients: list[Scalar] = [Fraction(1)]
    for k in range(1, spec.order + 1):
        numerator: Scalar = Fraction(1)
        for a in spec.upper_params:
            numerator = numerator * deformed_number(a + k - 1, spec.kind, params)
        denominator: Scalar = _nonzero_number(k, spec.kind, params)
        for b in spec.lower_params:
            factor = deformed_number(b + k - 1, spec.kind, params)
            if factor == 0:
                raise ZeroLowerPochhammer(
                    f"lower parameter {b} gives a vanishing factor ({b + k - 1}) at k={k}"
                )
            denominator = denominator * factor
        ratio = as_ratfunc(numerator) / denominator
        coefficients.append(collapse(ratio * coefficients[-1]))
    logger.debug(f"Built {spec.kind.value} hypergeometric series to order {spec.order}")
    return SeriesCoeffs(tuple(coefficients))


# Each allowed (source, target) pair and the steps turning source into target
_SPECIALIZATIONS: dict[tuple[DeformedKind, DeformedKind], tuple[str, ...]] = {
    (DeformedKind.Q_ETA, DeformedKind.ETA): ("q_to_one",),
    (DeformedKind.Q_ETA, DeformedKind.Q): ("eta_to_zero",),
    (DeformedKind.Q, DeformedKind.CLASSICAL): ("q_to_one",),
    (DeformedKind.ETA, DeformedKind.CLASSICAL): ("eta_to_zero",),
    (DeformedKind.Q_ETA, DeformedKind.CLASSICAL): ("eta_to_zero", "q_to_one"),
}


def _specialize(value: Scalar, steps: tuple[str, ...]) -> Scalar:
    for step in steps:
        if step == "q_to_one":
            value = scalar_limit(value, SymbolNames.Q, 1)
        else:
            value = scalar_substitute(value, {SymbolNames.ETA: Fraction(0)})
    return value


def specialize_series(spec: SeriesSpec, target: DeformedKind) -> CheckReport:
    """
    Verify coefficient-wise that the series specializes to the target kind.

    The source series is built with symbolic q and eta, specialized by an
    exact limit q -> 1 and/or the substitution eta = 0, and compared with the
    target series computed independently.

    Raises:
        InvalidSpecialization: If target is not a specialization of spec.kind
    """
    target = DeformedKind(target)
    steps = _SPECIALIZATIONS.get((spec.kind, target))
    if steps is None:
        raise InvalidSpecialization(f"{target.value} is not a specialization of {spec.kind.value}")

    source = hypergeometric_series(spec)
    specialized = source.map(lambda c: _specialize(c, steps))
    expected = hypergeometric_series(SeriesSpec(spec.upper_params, spec.lower_params, target, spec.order))
    mismatches = [
        {"k": k, "specialized": format_scalar(a), "expected": format_scalar(b)}
        for k, (a, b) in enumerate(zip(specialized.coefficients, expected.coefficients))
        if a != b
    ]
    return CheckReport.from_outcome(
        f"series.specialize.{spec.kind.value}_to_{target.value}",
        not mismatches,
        parameters={**spec.as_parameters(), "target": target.value},
        witness={"mismatches": mismatches},
        details={"steps": list(steps)},
    )


def check_exp_recursion(kind: DeformedKind, order: int = 8,
                        params: DeformationParams | None = None) -> CheckReport:
    """c_n * (n) = c_(n-1) and c_0 = 1."""
    kind = DeformedKind(kind)
    series = exp_series(kind, params, order)
    mismatches = []
    if series[0] != 1:
        mismatches.append({"n": 0, "observed": format_scalar(series[0])})
    for n in range(1, order + 1):
        product = collapse(series[n] * deformed_number(n, kind, params))
        if product != series[n - 1]:
            mismatches.append({"n": n, "observed": format_scalar(product),
                               "expected": format_scalar(series[n - 1])})
    params = params or DeformationParams()
    return CheckReport.from_outcome(
        f"series.exp_recursion.{kind.value}",
        not mismatches,
        parameters={"kind": kind.value, "order": order, **params.as_parameters()},
        witness={"mismatches": mismatches},
    )


def check_matched_parameters(kind: DeformedKind, matched: tuple[int, ...], order: int = 8) -> CheckReport:
    """A hypergeometric series with equal upper and lower lists is the exponential."""
    kind = DeformedKind(kind)
    spec = SeriesSpec(matched, matched, kind, order)
    series = hypergeometric_series(spec)
    expected = exp_series(kind, order=order)
    return CheckReport.from_outcome(
        f"series.matched_parameters.{kind.value}",
        series == expected,
        parameters=spec.as_parameters(),
        witness={"hypergeometric": series.to_json(), "exp": expected.to_json()},
    )
