"""
Domain service: deformed derivatives as exact difference quotients.

For a shift x' = scale*x + shift the deformed derivative of a polynomial f
is (f(x') - f(x)) / (x' - x). The q-, eta- and combined derivatives are the
shifts x' = qx, x' = x + eta and x' = qx + eta.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from defcalc.domain.exceptions import InexactDivision, UndeformedShift
from defcalc.domain.models import CheckReport, DeformedKind
from defcalc.domain.scalars import Scalar, as_ratfunc, collapse, format_scalar
from defcalc.services.domain.deformed_numbers import DeformationParams, deformed_number
from defcalc.utils.sampling import RationalSampler

logger = logging.getLogger(__name__)


class UniPoly:
    """Dense univariate polynomial in x over the scalar field; trailing zeros trimmed."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[object] = ()):
        values = [collapse(c) for c in coefficients]
        while values and values[-1] == 0:
            values.pop()
        object.__setattr__(self, "coefficients", tuple(values))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def monomial(cls, n: int, coefficient: object = 1) -> "UniPoly":
        return cls([0] * n + [coefficient])

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    def __getitem__(self, n: int) -> Scalar:
        return self.coefficients[n] if 0 <= n < len(self.coefficients) else Fraction(0)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        size = max(len(self.coefficients), len(other.coefficients))
        return UniPoly(self[n] + other[n] for n in range(size))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        size = max(len(self.coefficients), len(other.coefficients))
        return UniPoly(self[n] - other[n] for n in range(size))

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coefficients)

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return self.scale(other)
        if self.is_zero or other.is_zero:
            return UniPoly()
        product: list[Scalar] = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                product[i + j] = product[i + j] + a * b
        return UniPoly(product)

    def __rmul__(self, factor) -> "UniPoly":
        return self.scale(factor)

    def scale(self, factor) -> "UniPoly":
        return UniPoly(c * factor for c in self.coefficients)

    def compose_linear(self, scale: Scalar, shift: Scalar) -> "UniPoly":
        """f(scale*x + shift) by Horner's rule."""
        inner = UniPoly([shift, scale])
        result = UniPoly()
        for c in reversed(self.coefficients):
            result = result * inner + UniPoly([c])
        return result

    def divide_exact(self, divisor: "UniPoly") -> "UniPoly":
        """
        Exact univariate long division.

        Raises:
            InexactDivision: If a nonzero remainder is left
        """
        if divisor.is_zero:
            raise InexactDivision("division by the zero polynomial")
        remainder = list(self.coefficients)
        lead = as_ratfunc(divisor.coefficients[-1])
        shift = divisor.degree
        quotient: list[Scalar] = [Fraction(0)] * max(len(remainder) - shift, 0)
        for n in range(len(remainder) - 1, shift - 1, -1):
            coefficient = collapse(remainder[n] / lead)
            if coefficient == 0:
                continue
            quotient[n - shift] = coefficient
            for k, d in enumerate(divisor.coefficients):
                remainder[n - shift + k] = collapse(remainder[n - shift + k] - coefficient * d)
        if any(c != 0 for c in remainder[:shift]):
            raise InexactDivision(
                f"{self.to_string()} is not divisible by {divisor.to_string()}"
            )
        return UniPoly(quotient)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        size = max(len(self.coefficients), len(other.coefficients))
        return all(self[n] == other[n] for n in range(size))

    __hash__ = None

    def to_json(self) -> list[str]:
        return [format_scalar(c) for c in self.coefficients]

    def to_string(self) -> str:
        if self.is_zero:
            return "0"
        pieces = []
        for n, c in enumerate(self.coefficients):
            if c == 0:
                continue
            text = format_scalar(c)
            if n and len(text) > 1 and not text.lstrip("-").isdigit():
                text = f"({text})"
            power = "" if n == 0 else ("x" if n == 1 else f"x^{n}")
            if not power:
                pieces.append(text)
            elif text == "1":
                pieces.append(power)
            elif text == "-1":
                pieces.append(f"-{power}")
            else:
                pieces.append(f"{text}*{power}")
        return "+".join(pieces).replace("+-", "-")

    def __repr__(self) -> str:
        return f"UniPoly({self.to_string()!r})"


def classical_derivative(f: UniPoly) -> UniPoly:
    return UniPoly(n * f[n] for n in range(1, len(f.coefficients)))


@dataclass(frozen=True)
class ShiftMap:
    """The shift x' = scale*x + shift defining a deformed derivative."""

    scale: Scalar
    """Multiplicative part (q)"""

    shift: Scalar
    """Additive part (eta)"""

    def __post_init__(self):
        object.__setattr__(self, "scale", collapse(self.scale))
        object.__setattr__(self, "shift", collapse(self.shift))
        if self.scale == 1 and self.shift == 0:
            raise UndeformedShift("x' = x has a vanishing difference denominator")

    def as_parameters(self) -> dict[str, str]:
        return {"scale": format_scalar(self.scale), "shift": format_scalar(self.shift)}

    def image(self) -> UniPoly:
        """x' as a polynomial in x."""
        return UniPoly([self.shift, self.scale])


def q_shift(params: DeformationParams | None = None) -> ShiftMap:
    params = params or DeformationParams()
    return ShiftMap(params.q, 0)


def eta_shift(params: DeformationParams | None = None) -> ShiftMap:
    params = params or DeformationParams()
    return ShiftMap(1, params.eta)


def q_eta_shift(params: DeformationParams | None = None) -> ShiftMap:
    params = params or DeformationParams()
    return ShiftMap(params.q, params.eta)


def apply_difference_operator(f: UniPoly, s: ShiftMap) -> UniPoly:
    """
    (f(x') - f(x)) / (x' - x), computed by substitution and exact division.

    Args:
        f: Polynomial to differentiate
        s: Shift defining x'

    Returns:
        The deformed derivative

    Raises:
        InexactDivision: Only on an arithmetic bug; f(x') - f(x) always
            vanishes at x' = x
    """
    difference = f.compose_linear(s.scale, s.shift) - f
    return difference.divide_exact(s.image() - UniPoly.x())


def _leibniz_sides(f: UniPoly, g: UniPoly, s: ShiftMap) -> tuple[UniPoly, UniPoly]:
    lhs = apply_difference_operator(f * g, s)
    rhs = apply_difference_operator(f, s) * g + f.compose_linear(s.scale, s.shift) * apply_difference_operator(g, s)
    return lhs, rhs


def check_leibniz(f: UniPoly, g: UniPoly, s: ShiftMap) -> CheckReport:
    """d(fg) = (df) g + f(x') (dg)."""
    lhs, rhs = _leibniz_sides(f, g, s)
    return CheckReport.from_outcome(
        "calculus.leibniz",
        lhs == rhs,
        parameters={"f": f.to_json(), "g": g.to_json(), **s.as_parameters()},
        witness={"lhs": lhs.to_json(), "rhs": rhs.to_json()},
    )


def check_linearity(f: UniPoly, g: UniPoly, alpha: Fraction, beta: Fraction, s: ShiftMap) -> CheckReport:
    lhs = apply_difference_operator(f.scale(alpha) + g.scale(beta), s)
    rhs = apply_difference_operator(f, s).scale(alpha) + apply_difference_operator(g, s).scale(beta)
    return CheckReport.from_outcome(
        "calculus.linearity",
        lhs == rhs,
        parameters={"f": f.to_json(), "g": g.to_json(), "alpha": format_scalar(alpha),
                    "beta": format_scalar(beta), **s.as_parameters()},
        witness={"lhs": lhs.to_json(), "rhs": rhs.to_json()},
    )


def check_monomial_law(n_max: int = 10, params: DeformationParams | None = None) -> CheckReport:
    """
    d_q x^n = (n)_q x^(n-1) for n in [1, n_max], and d_qeta x^2 = (1+q)x + eta.
    """
    params = params or DeformationParams()
    mismatches = []
    shift = q_shift(params)
    for n in range(1, n_max + 1):
        observed = apply_difference_operator(UniPoly.monomial(n), shift)
        expected = UniPoly.monomial(n - 1, deformed_number(n, DeformedKind.Q, params))
        if observed != expected:
            mismatches.append({"n": n, "observed": observed.to_json(), "expected": expected.to_json()})

    square = apply_difference_operator(UniPoly.monomial(2), q_eta_shift(params))
    expected_square = UniPoly([params.eta, 1 + params.q])
    if square != expected_square:
        mismatches.append({"n": 2, "shift": "qeta", "observed": square.to_json(),
                           "expected": expected_square.to_json()})
    return CheckReport.from_outcome(
        "calculus.monomial_law",
        not mismatches,
        parameters={"n_max": n_max, **params.as_parameters()},
        witness={"mismatches": mismatches},
    )


def random_unipoly(rng: RationalSampler, degree: int, height: int = 9) -> UniPoly:
    """Random polynomial of the given degree with small rational coefficients."""
    coefficients = [
        Fraction(rng.draw_integer(-height, height), rng.draw_integer(1, height))
        for _ in range(degree + 1)
    ]
    if coefficients[-1] == 0:
        coefficients[-1] = Fraction(1)
    return UniPoly(coefficients)


def leibniz_sweep(
    shift: ShiftMap,
    pairs: int,
    seed: int,
    max_degree: int = 6,
    name: str = "calculus.leibniz_sweep",
) -> CheckReport:
    """
    Leibniz rule and linearity on random polynomial pairs.

    Args:
        shift: Shift map under test
        pairs: Number of random (f, g) pairs
        seed: PRNG seed
        max_degree: Degrees are drawn from [0, max_degree]
        name: Check name

    Returns:
        CheckReport; the first failing pair is the witness
    """
    rng = RationalSampler(seed)
    for index in range(pairs):
        f = random_unipoly(rng, rng.draw_integer(0, max_degree))
        g = random_unipoly(rng, rng.draw_integer(0, max_degree))
        lhs, rhs = _leibniz_sides(f, g, shift)
        if lhs != rhs:
            logger.info(f"Leibniz rule failed on pair {index}")
            return CheckReport.from_outcome(
                name, False,
                parameters={"pairs": pairs, "seed": seed, "max_degree": max_degree, **shift.as_parameters()},
                witness={"pair": index, "f": f.to_json(), "g": g.to_json(),
                         "lhs": lhs.to_json(), "rhs": rhs.to_json()},
            )
        alpha = Fraction(rng.draw_integer(-9, 9), rng.draw_integer(1, 9))
        linear = check_linearity(f, g, alpha, Fraction(1) - alpha, shift)
        if not linear.passed:
            return CheckReport.from_outcome(
                name, False,
                parameters={"pairs": pairs, "seed": seed, "max_degree": max_degree, **shift.as_parameters()},
                witness={"pair": index, **linear.witness},
            )
    return CheckReport.from_outcome(
        name, True,
        parameters={"pairs": pairs, "seed": seed, "max_degree": max_degree, **shift.as_parameters()},
    )


def derivative_spot_check(f: UniPoly, s: ShiftMap) -> bool:
    """Leibniz rule for (f, x) and (x, f); used by the command line."""
    x = UniPoly.x()
    return all(lhs == rhs for lhs, rhs in (_leibniz_sides(f, x, s), _leibniz_sides(x, f, s)))
