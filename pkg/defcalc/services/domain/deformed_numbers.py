"""
Domain service: deformed numbers, factorials and Pochhammer symbols.

Three deformations of an integer z:
- trigonometric  (z)_q   = (1 - q^z) / (1 - q)
- rational       (z)_eta = z / (1 + eta (z - 1))
- combined       (z)_qeta = (z)_q / (1 + eta (z - 1)_q)

(z)_q is built as a geometric sum so that it stays a polynomial (or a
Laurent polynomial for negative z) and specializes at q = 1 without a limit.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from defcalc.domain.exceptions import DenominatorVanishes
from defcalc.domain.models import CheckReport, DeformedKind
from defcalc.domain.scalars import (
    Scalar,
    as_ratfunc,
    collapse,
    format_scalar,
    scalar_limit,
    scalar_substitute,
)
from defcalc.domain.symbols import SymbolNames, eta, q

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DeformationParams:
    """Values of the deformation parameters q and eta (symbolic by default)."""

    q: Scalar = field(default_factory=q)
    """The trigonometric parameter, a rational or the symbol q"""

    eta: Scalar = field(default_factory=eta)
    """The rational parameter, a rational or the symbol eta"""

    def as_parameters(self) -> dict[str, Any]:
        return {"q": format_scalar(self.q), "eta": format_scalar(self.eta)}


def _nonvanishing(denominator: Scalar, what: str) -> Scalar:
    denominator = collapse(denominator)
    if denominator == 0:
        raise DenominatorVanishes(f"{what} vanishes for the given parameters")
    return denominator


def q_number(z: int, q_value: Scalar) -> Scalar:
    """
    (z)_q as a geometric sum.

    Negative z gives -(q^-1 + ... + q^-|z|), which needs q invertible.
    """
    if z >= 0:
        total: Scalar = Fraction(0)
        power: Scalar = Fraction(1)
        for _ in range(z):
            total = total + power
            power = power * q_value
        return collapse(total)
    _nonvanishing(q_value, "q (inverted for a negative argument)")
    inverse = collapse(Fraction(1) / as_ratfunc(q_value))
    total = Fraction(0)
    power = inverse
    for _ in range(-z):
        total = total + power
        power = power * inverse
    return collapse(-total)


def deformed_number(z: int, kind: DeformedKind, params: DeformationParams | None = None) -> Scalar:
    """
    The deformed number (z)_kind.

    Args:
        z: Integer argument
        kind: Which deformation
        params: Parameter values, symbolic by default

    Returns:
        Exact scalar in q, eta

    Raises:
        DenominatorVanishes: If a concrete parameter choice zeroes a denominator
    """
    if isinstance(z, bool) or not isinstance(z, int):
        raise ValueError(f"deformed numbers need an integer argument, got {z!r}")
    params = params or DeformationParams()
    kind = DeformedKind(kind)
    if kind is DeformedKind.CLASSICAL:
        return Fraction(z)
    if kind is DeformedKind.Q:
        return q_number(z, params.q)
    if kind is DeformedKind.ETA:
        denominator = _nonvanishing(1 + params.eta * (z - 1), "1 + eta*(z-1)")
        return collapse(Fraction(z) / as_ratfunc(denominator))
    shifted = q_number(z - 1, params.q)
    denominator = _nonvanishing(1 + params.eta * shifted, "1 + eta*(z-1)_q")
    return collapse(as_ratfunc(q_number(z, params.q)) / denominator)


def deformed_factorial(n: int, kind: DeformedKind, params: DeformationParams | None = None) -> Scalar:
    """(n)_kind! = (1)(2)...(n); the empty product for n = 0 is 1."""
    if n < 0:
        raise ValueError(f"factorial of a negative integer {n}")
    result: Scalar = Fraction(1)
    for k in range(1, n + 1):
        result = collapse(result * deformed_number(k, kind, params))
    return result


def pochhammer(a: int, k: int, kind: DeformedKind, params: DeformationParams | None = None) -> Scalar:
    """
    Rising product of k factors starting at a.

    Classical kind: a(a+1)...(a+k-1). Deformed kinds: (a)(a+1)...(a+k-1)
    with every factor deformed.
    """
    if k < 0:
        raise ValueError(f"Pochhammer symbol with negative length {k}")
    result: Scalar = Fraction(1)
    for j in range(k):
        result = collapse(result * deformed_number(a + j, kind, params))
    return result


# ============================================================================
# Checks
# ============================================================================

def specialize_number(z: int, params: DeformationParams | None = None) -> CheckReport:
    """
    Verify lim_{q->1} (z)_qeta = (z)_eta and (z)_qeta at eta = 0 equals (z)_q.

    The limit is taken exactly on the symbolic-q expression; eta and q on
    the other sides come from ``params``.
    """
    params = params or DeformationParams()
    symbolic_q = DeformationParams(q=q(), eta=params.eta)
    symbolic_eta = DeformationParams(q=params.q, eta=eta())

    at_q_one = scalar_limit(deformed_number(z, DeformedKind.Q_ETA, symbolic_q), SymbolNames.Q, 1)
    eta_side = deformed_number(z, DeformedKind.ETA, params)
    at_eta_zero = scalar_substitute(
        deformed_number(z, DeformedKind.Q_ETA, symbolic_eta), {SymbolNames.ETA: Fraction(0)}
    )
    q_side = deformed_number(z, DeformedKind.Q, params)

    details = {
        "q_to_one": {"lhs": format_scalar(at_q_one), "rhs": format_scalar(eta_side)},
        "eta_to_zero": {"lhs": format_scalar(at_eta_zero), "rhs": format_scalar(q_side)},
    }
    ok_limit = at_q_one == eta_side
    ok_eta = at_eta_zero == q_side
    logger.debug(f"Specialization z={z}: q->1 {ok_limit}, eta->0 {ok_eta}")
    return CheckReport.from_outcome(
        "numbers.specialization",
        ok_limit and ok_eta,
        parameters={"z": z, **params.as_parameters()},
        witness={"z": z, **details},
        details=details,
    )


def check_specializations(z_min: int = -6, z_max: int = 6,
                          params: DeformationParams | None = None) -> CheckReport:
    """Both specializations of the combined deformation for every z in [z_min, z_max]."""
    failures = []
    for z in range(z_min, z_max + 1):
        report = specialize_number(z, params)
        if not report.passed:
            failures.append(report.witness)
    params = params or DeformationParams()
    return CheckReport.from_outcome(
        "numbers.specializations",
        not failures,
        parameters={"z_min": z_min, "z_max": z_max, **params.as_parameters()},
        witness={"failures": failures},
        details={"checked": z_max - z_min + 1},
    )


def check_fixed_points(params: DeformationParams | None = None) -> CheckReport:
    """(0)_kind = 0 and (1)_kind = 1 for every kind."""
    params = params or DeformationParams()
    observed = {
        kind.value: {
            "zero": format_scalar(deformed_number(0, kind, params)),
            "one": format_scalar(deformed_number(1, kind, params)),
        }
        for kind in DeformedKind
    }
    ok = all(values == {"zero": "0", "one": "1"} for values in observed.values())
    return CheckReport.from_outcome(
        "numbers.fixed_points",
        ok,
        parameters=params.as_parameters(),
        witness={"observed": observed},
        details={"observed": observed},
    )


def check_factorial_ratio(kind: DeformedKind, n_max: int = 8,
                          params: DeformationParams | None = None) -> CheckReport:
    """(n)! / (n-1)! = (n) for n in [1, n_max]."""
    params = params or DeformationParams()
    kind = DeformedKind(kind)
    mismatches = []
    previous = deformed_factorial(0, kind, params)
    for n in range(1, n_max + 1):
        current = deformed_factorial(n, kind, params)
        ratio = collapse(as_ratfunc(current) / previous)
        expected = deformed_number(n, kind, params)
        if ratio != expected:
            mismatches.append({"n": n, "ratio": format_scalar(ratio), "expected": format_scalar(expected)})
        previous = current
    return CheckReport.from_outcome(
        f"numbers.factorial_ratio.{kind.value}",
        not mismatches,
        parameters={"kind": kind.value, "n_max": n_max, **params.as_parameters()},
        witness={"mismatches": mismatches},
    )
