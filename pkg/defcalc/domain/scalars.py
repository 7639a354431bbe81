"""
Exact scalars: rationals, sparse multivariate polynomials and rational functions.

Rationals are ``fractions.Fraction``. A ``SparsePoly`` maps sparse monomials
to nonzero rationals; a ``RatFunc`` is a normalized numerator/denominator
pair. The coefficient type used throughout the package is ``Scalar``:
either a Fraction or a non-constant RatFunc.

Normalization of a RatFunc cancels common monomial factors, divides out
one side when it divides the other exactly, and makes the leading
coefficient of the denominator 1. No multivariate gcd is computed, so
equality is decided by cross-multiplication.
"""
import logging
import operator
from enum import Enum
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Union

from defcalc.domain.exceptions import (
    DivisionByZero,
    InexactDivision,
    PoleAtPoint,
    UnassignedSymbol,
)
from defcalc.domain.models import CheckMode, VerificationMode
from defcalc.utils.monomials import (
    ONE,
    Monomial,
    grlex_key,
    make_monomial,
    monomial_degree,
    monomial_div,
    monomial_exponent,
    monomial_gcd,
    monomial_mul,
    monomial_to_string,
    sort_variables,
)
from defcalc.utils.sampling import RationalSampler

logger = logging.getLogger(__name__)


# ============================================================================
# Rationals
# ============================================================================

def to_rational(value) -> Fraction:
    """
    Coerce an int, Fraction or "p/q" string to a Fraction.

    Raises:
        TypeError: For floats, bools and anything else inexact
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" (no decimals, no floats)."""
    cleaned = text.strip()
    if not cleaned or any(ch in cleaned for ch in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(cleaned)


def format_rational(value: Fraction) -> str:
    """Serialize as "p/q", or "p" when the denominator is 1."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


# ============================================================================
# Sparse polynomials
# ============================================================================

class SparsePoly:
    """Immutable sparse multivariate polynomial with rational coefficients."""

    __slots__ = ("_terms", "_hash", "_degrees")

    def __init__(self, terms: Optional[Mapping] = None):
        """
        Build a polynomial from a monomial -> coefficient mapping.

        Monomials may be given in any variable order; zero coefficients are
        dropped and equal monomials merged.
        """
        cleaned: dict[Monomial, Fraction] = {}
        for monomial, coeff in (terms or {}).items():
            key = make_monomial(dict(monomial))
            value = cleaned.get(key, 0) + to_rational(coeff)
            if value:
                cleaned[key] = value
            else:
                cleaned.pop(key, None)
        self._terms = cleaned
        self._hash = None
        self._degrees = None

    @classmethod
    def _wrap(cls, terms: dict[Monomial, Fraction]) -> "SparsePoly":
        poly = object.__new__(cls)
        poly._terms = terms
        poly._hash = None
        poly._degrees = None
        return poly

    @classmethod
    def zero(cls) -> "SparsePoly":
        return cls._wrap({})

    @classmethod
    def one(cls) -> "SparsePoly":
        return cls._wrap({ONE: Fraction(1)})

    @classmethod
    def constant(cls, value) -> "SparsePoly":
        value = to_rational(value)
        return cls._wrap({ONE: value} if value else {})

    @classmethod
    def variable(cls, name: str, exponent: int = 1) -> "SparsePoly":
        if exponent == 0:
            return cls.one()
        return cls._wrap({((name, exponent),): Fraction(1)})

    @classmethod
    def from_exponent_vectors(cls, variables: Iterable[str], terms: Mapping) -> "SparsePoly":
        """Build from the dense view: exponent tuples over ``variables``."""
        names = list(variables)
        return cls({tuple(zip(names, vector)): coeff for vector, coeff in terms.items()})

    # ------------------------------------------------------------------
    # Views
    # ------------------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def variables(self) -> tuple[str, ...]:
        return sort_variables(v for m in self._terms for v, _ in m)

    def exponent_vectors(self) -> dict[tuple[int, ...], Fraction]:
        """Dense view: exponent vector over ``variables`` -> coefficient."""
        names = self.variables
        return {
            tuple(monomial_exponent(m, v) for v in names): c
            for m, c in self._terms.items()
        }

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE in self._terms)

    @property
    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError(f"{self.to_string()} is not constant")
        return self._terms.get(ONE, Fraction(0))

    @property
    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((monomial_degree(m) for m in self._terms), default=-1)

    @property
    def leading_term(self) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("the zero polynomial has no leading term")
        monomial = min(self._terms, key=grlex_key)
        return monomial, self._terms[monomial]

    @property
    def leading_coefficient(self) -> Fraction:
        return self.leading_term[1]

    def degree_in(self, var: str) -> int:
        if self._degrees is None:
            degrees: dict[str, int] = {}
            for m in self._terms:
                for v, e in m:
                    if e > degrees.get(v, 0):
                        degrees[v] = e
            self._degrees = degrees
        return self._degrees.get(var, 0)

    def __len__(self) -> int:
        return len(self._terms)

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    @staticmethod
    def _coerce(other) -> Optional["SparsePoly"]:
        if isinstance(other, SparsePoly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return SparsePoly.constant(other)
        return None

    def _combine(self, other: "SparsePoly", sign: int) -> "SparsePoly":
        result = dict(self._terms)
        for m, c in other._terms.items():
            value = result.get(m, 0) + sign * c
            if value:
                result[m] = value
            else:
                result.pop(m, None)
        return SparsePoly._wrap(result)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._combine(other, -1)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other._combine(self, -1)

    def __neg__(self) -> "SparsePoly":
        return SparsePoly._wrap({m: -c for m, c in self._terms.items()})

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self._terms or not other._terms:
            return SparsePoly.zero()
        if other.is_constant:
            return self.scale(other.constant_value)
        if self.is_constant:
            return other.scale(self.constant_value)
        result: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = monomial_mul(m1, m2)
                value = result.get(m, 0) + c1 * c2
                if value:
                    result[m] = value
                else:
                    result.pop(m, None)
        return SparsePoly._wrap(result)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "SparsePoly":
        if exponent < 0:
            raise ValueError("negative powers of polynomials are rational functions")
        result = SparsePoly.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def scale(self, factor) -> "SparsePoly":
        factor = to_rational(factor)
        if not factor:
            return SparsePoly.zero()
        if factor == 1:
            return self
        return SparsePoly._wrap({m: c * factor for m, c in self._terms.items()})

    # ------------------------------------------------------------------
    # Calculus and evaluation
    # ------------------------------------------------------------------

    def derivative(self, var: str) -> "SparsePoly":
        """Formal partial derivative with respect to ``var``."""
        result: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            e = monomial_exponent(m, var)
            if e:
                reduced = make_monomial({**dict(m), var: e - 1})
                result[reduced] = c * e
        return SparsePoly._wrap(result)

    def evaluate(self, assignment: Mapping[str, object]) -> Fraction:
        """
        Evaluate at a rational point.

        Raises:
            UnassignedSymbol: If a variable of the polynomial has no value
        """
        missing = [v for v in self.variables if v not in assignment]
        if missing:
            raise UnassignedSymbol(f"no value assigned to {', '.join(missing)}")
        values = {v: to_rational(assignment[v]) for v in self.variables}
        total = Fraction(0)
        for m, c in self._terms.items():
            term = c
            for v, e in m:
                term *= values[v] ** e
            total += term
        return total

    def partial_evaluate(self, assignment: Mapping[str, object]) -> "SparsePoly":
        """Substitute rationals for the assigned variables, keep the rest symbolic."""
        result: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            coeff = c
            rest = []
            for v, e in m:
                if v in assignment:
                    coeff *= to_rational(assignment[v]) ** e
                else:
                    rest.append((v, e))
            if coeff:
                key = tuple(rest)
                value = result.get(key, 0) + coeff
                if value:
                    result[key] = value
                else:
                    result.pop(key, None)
        return SparsePoly._wrap(result)

    def substitute(self, mapping: Mapping[str, object]) -> "Scalar":
        """
        Formal substitution of scalars (rationals or rational functions) for variables.

        All images are brought over the common denominator
        prod(den_v ** deg_v) so the result is assembled from polynomial
        arithmetic and normalized once.

        Args:
            mapping: Variable -> image

        Returns:
            The substituted scalar
        """
        images = {v: as_ratfunc(mapping[v]) for v in self.variables if v in mapping}
        if not images:
            return collapse(self)
        top = {v: self.degree_in(v) for v in images}
        powers: dict[tuple[str, str, int], SparsePoly] = {}

        def power(var: str, side: str, exp: int) -> SparsePoly:
            key = (var, side, exp)
            if key not in powers:
                base = images[var].numerator if side == "n" else images[var].denominator
                powers[key] = base ** exp
            return powers[key]

        numerator = SparsePoly.zero()
        for m, c in self._terms.items():
            exps = dict(m)
            term = SparsePoly._wrap({tuple((v, e) for v, e in m if v not in images): c})
            for var in images:
                e = exps.get(var, 0)
                term = term * power(var, "n", e) * power(var, "d", top[var] - e)
            numerator = numerator + term
        denominator = SparsePoly.one()
        for var in images:
            denominator = denominator * power(var, "d", top[var])
        return collapse(RatFunc(numerator, denominator))

    # ------------------------------------------------------------------
    # Division
    # ------------------------------------------------------------------

    def monomial_content(self) -> Monomial:
        """Largest monomial dividing every term."""
        content: Optional[Monomial] = None
        for m in self._terms:
            content = m if content is None else monomial_gcd(content, m)
            if not content:
                break
        return content or ONE

    def divide_monomial(self, monomial: Monomial) -> "SparsePoly":
        result = {}
        for m, c in self._terms.items():
            quotient = monomial_div(m, monomial)
            if quotient is None:
                raise InexactDivision(f"{monomial_to_string(monomial)} does not divide {self.to_string()}")
            result[quotient] = c
        return SparsePoly._wrap(result)

    def exact_quotient(self, divisor: "SparsePoly") -> Optional["SparsePoly"]:
        """
        Exact multivariate division.

        Returns:
            The quotient when ``divisor`` divides ``self``, otherwise None

        Raises:
            DivisionByZero: If the divisor is the zero polynomial
        """
        if divisor.is_zero:
            raise DivisionByZero("division by the zero polynomial")
        if self.is_zero:
            return SparsePoly.zero()
        if divisor.is_constant:
            return self.scale(1 / divisor.constant_value)
        if len(divisor._terms) == 1:
            (lead_m, lead_c), = divisor._terms.items()
            result = {}
            for m, c in self._terms.items():
                quotient = monomial_div(m, lead_m)
                if quotient is None:
                    return None
                result[quotient] = c / lead_c
            return SparsePoly._wrap(result)
        if self.total_degree < divisor.total_degree:
            return None
        for var in divisor.variables:
            if self.degree_in(var) < divisor.degree_in(var):
                return None

        lead_m, lead_c = divisor.leading_term
        remainder = dict(self._terms)
        quotient: dict[Monomial, Fraction] = {}
        while remainder:
            m = min(remainder, key=grlex_key)
            q_m = monomial_div(m, lead_m)
            if q_m is None:
                return None
            q_c = remainder[m] / lead_c
            quotient[q_m] = q_c
            for d_m, d_c in divisor._terms.items():
                product = monomial_mul(q_m, d_m)
                value = remainder.get(product, 0) - q_c * d_c
                if value:
                    remainder[product] = value
                else:
                    remainder.pop(product, None)
        return SparsePoly._wrap(quotient)

    # ------------------------------------------------------------------
    # Comparison and serialization
    # ------------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_constant and self.constant_value == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_constant:
                self._hash = hash(self.constant_value)
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def to_string(self) -> str:
        """Terms in ascending graded lexicographic order, e.g. ``1+q+q^2``."""
        if not self._terms:
            return "0"
        ordered = sorted(self._terms, key=grlex_key, reverse=True)
        text = ""
        for i, m in enumerate(ordered):
            piece = _format_term(self._terms[m], m)
            if i and not piece.startswith("-"):
                text += "+"
            text += piece
        return text

    def to_json(self) -> dict:
        names = self.variables
        ordered = sorted(self._terms, key=grlex_key)
        return {
            "variables": list(names),
            "terms": {
                ",".join(str(monomial_exponent(m, v)) for v in names): format_rational(self._terms[m])
                for m in ordered
            },
        }

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"SparsePoly({self.to_string()!r})"


def _format_term(coeff: Fraction, monomial: Monomial) -> str:
    if not monomial:
        return format_rational(coeff)
    text = monomial_to_string(monomial)
    if coeff == 1:
        return text
    if coeff == -1:
        return "-" + text
    return f"{format_rational(coeff)}*{text}"


_ONE = SparsePoly.one()
_ZERO = SparsePoly.zero()


# ============================================================================
# Rational functions
# ============================================================================

def _as_poly(value) -> SparsePoly:
    if isinstance(value, SparsePoly):
        return value
    return SparsePoly.constant(value)


def _normalize(num: SparsePoly, den: SparsePoly) -> tuple[SparsePoly, SparsePoly]:
    if den.is_zero:
        raise DivisionByZero("rational function with zero denominator")
    if num.is_zero:
        return _ZERO, _ONE
    if den.is_constant:
        return num.scale(1 / den.constant_value), _ONE

    common = monomial_gcd(num.monomial_content(), den.monomial_content())
    if common:
        num = num.divide_monomial(common)
        den = den.divide_monomial(common)
        if den.is_constant:
            return num.scale(1 / den.constant_value), _ONE

    quotient = num.exact_quotient(den)
    if quotient is not None:
        return quotient, _ONE
    inverse = den.exact_quotient(num)
    if inverse is not None:
        lead = inverse.leading_coefficient
        return SparsePoly.constant(1 / lead), inverse.scale(1 / lead)

    lead = den.leading_coefficient
    if lead != 1:
        return num.scale(1 / lead), den.scale(1 / lead)
    return num, den


class RatFunc:
    """Immutable quotient of two sparse polynomials."""

    __slots__ = ("numerator", "denominator")

    __hash__ = None

    def __init__(self, numerator=0, denominator=1):
        num, den = _normalize(_as_poly(numerator), _as_poly(denominator))
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    @classmethod
    def _raw(cls, numerator: SparsePoly, denominator: SparsePoly) -> "RatFunc":
        value = object.__new__(cls)
        object.__setattr__(value, "numerator", numerator)
        object.__setattr__(value, "denominator", denominator)
        return value

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @property
    def variables(self) -> tuple[str, ...]:
        return sort_variables(self.numerator.variables + self.denominator.variables)

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero

    @property
    def is_constant(self) -> bool:
        return self.numerator.is_constant and self.denominator.is_constant

    @property
    def is_polynomial(self) -> bool:
        return self.denominator.is_constant

    @property
    def constant_value(self) -> Fraction:
        return self.numerator.constant_value / self.denominator.constant_value

    def __bool__(self) -> bool:
        return not self.is_zero

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other):
        other = _coerce_ratfunc(other)
        if other is None:
            return NotImplemented
        return _add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_ratfunc(other)
        if other is None:
            return NotImplemented
        return _add(self, -other)

    def __rsub__(self, other):
        other = _coerce_ratfunc(other)
        if other is None:
            return NotImplemented
        return _add(other, -self)

    def __neg__(self) -> "RatFunc":
        return RatFunc._raw(-self.numerator, self.denominator)

    def __mul__(self, other):
        other = _coerce_ratfunc(other)
        if other is None:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return RatFunc._raw(_ZERO, _ONE)
        if other.is_constant:
            return RatFunc._raw(self.numerator.scale(other.constant_value), self.denominator)
        if self.is_constant:
            return RatFunc._raw(other.numerator.scale(self.constant_value), other.denominator)
        return RatFunc(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_ratfunc(other)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise DivisionByZero(f"division of {self.to_string()} by zero")
        return RatFunc(self.numerator * other.denominator, self.denominator * other.numerator)

    def __rtruediv__(self, other):
        other = _coerce_ratfunc(other)
        if other is None:
            return NotImplemented
        return other.__truediv__(self)

    def __pow__(self, exponent: int) -> "RatFunc":
        if exponent >= 0:
            return RatFunc._raw(self.numerator ** exponent, self.denominator ** exponent)
        if self.is_zero:
            raise DivisionByZero("negative power of zero")
        return RatFunc(self.denominator ** -exponent, self.numerator ** -exponent)

    # ------------------------------------------------------------------
    # Calculus and evaluation
    # ------------------------------------------------------------------

    def derivative(self, var: str) -> "RatFunc":
        """Partial derivative by the quotient rule."""
        num, den = self.numerator, self.denominator
        if den.is_constant:
            return RatFunc._raw(num.derivative(var), _ONE)
        if var not in self.variables:
            return RatFunc._raw(_ZERO, _ONE)
        return RatFunc(num.derivative(var) * den - num * den.derivative(var), den * den)

    def evaluate(self, assignment: Mapping[str, object]) -> Fraction:
        """
        Evaluate at a rational point.

        Raises:
            UnassignedSymbol: If a variable has no value
            PoleAtPoint: If the denominator vanishes at the point
        """
        den = self.denominator.evaluate(assignment)
        if den == 0:
            raise PoleAtPoint(f"denominator {self.denominator.to_string()} vanishes at the point")
        return self.numerator.evaluate(assignment) / den

    def partial_evaluate(self, assignment: Mapping[str, object]) -> "RatFunc":
        den = self.denominator.partial_evaluate(assignment)
        if den.is_zero:
            raise PoleAtPoint(f"denominator {self.denominator.to_string()} vanishes identically")
        return RatFunc(self.numerator.partial_evaluate(assignment), den)

    def substitute(self, mapping: Mapping[str, object]) -> "Scalar":
        num = as_ratfunc(self.numerator.substitute(mapping))
        den = as_ratfunc(self.denominator.substitute(mapping))
        if den.is_zero:
            raise PoleAtPoint(f"denominator {self.denominator.to_string()} vanishes after substitution")
        return collapse(num / den)

    def limit(self, var: str, value) -> "RatFunc":
        """
        Exact limit as ``var`` tends to ``value``.

        Factors (var - value) are cancelled from numerator and denominator
        until the denominator no longer vanishes.

        Raises:
            PoleAtPoint: If the limit is a genuine pole
        """
        value = to_rational(value)
        point = {var: value}
        factor = SparsePoly.variable(var) - value
        num, den = self.numerator, self.denominator
        while den.partial_evaluate(point).is_zero:
            if not num.partial_evaluate(point).is_zero:
                raise PoleAtPoint(f"{self.to_string()} has a pole at {var}={format_rational(value)}")
            num = num.exact_quotient(factor)
            den = den.exact_quotient(factor)
            if num is None or den is None:
                raise InexactDivision(f"({factor.to_string()}) did not divide exactly")
        return RatFunc(num.partial_evaluate(point), den.partial_evaluate(point))

    # ------------------------------------------------------------------
    # Comparison and serialization
    # ------------------------------------------------------------------

    def __eq__(self, other):
        other = _coerce_ratfunc(other)
        if other is None:
            return NotImplemented
        if self.denominator == other.denominator:
            return self.numerator == other.numerator
        return self.numerator * other.denominator == other.numerator * self.denominator

    def to_string(self) -> str:
        num = self.numerator.to_string()
        if self.denominator.is_constant:
            return num
        if len(self.numerator) > 1 or (
            self.numerator.is_constant and self.numerator.constant_value.denominator != 1
        ):
            num = f"({num})"
        den = self.denominator.to_string()
        if len(self.denominator) > 1 or len(next(iter(self.denominator.terms))) > 1:
            den = f"({den})"
        return f"{num}/{den}"

    def to_json(self) -> dict:
        return {"numerator": self.numerator.to_json(), "denominator": self.denominator.to_json()}

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"RatFunc({self.to_string()!r})"


def _coerce_ratfunc(value) -> Optional[RatFunc]:
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, SparsePoly):
        return RatFunc._raw(value, _ONE)
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return RatFunc._raw(SparsePoly.constant(value), _ONE)
    return None


def _add(a: RatFunc, b: RatFunc) -> RatFunc:
    if a.is_zero:
        return b
    if b.is_zero:
        return a
    if a.denominator == b.denominator:
        return RatFunc(a.numerator + b.numerator, a.denominator)
    if b.denominator.is_constant:
        return RatFunc(a.numerator + b.numerator * a.denominator, a.denominator)
    if a.denominator.is_constant:
        return RatFunc(a.numerator * b.denominator + b.numerator, b.denominator)
    cofactor = b.denominator.exact_quotient(a.denominator)
    if cofactor is not None:
        return RatFunc(a.numerator * cofactor + b.numerator, b.denominator)
    cofactor = a.denominator.exact_quotient(b.denominator)
    if cofactor is not None:
        return RatFunc(a.numerator + b.numerator * cofactor, a.denominator)
    return RatFunc(
        a.numerator * b.denominator + b.numerator * a.denominator,
        a.denominator * b.denominator,
    )


# ============================================================================
# Scalar helpers
# ============================================================================

Scalar = Union[Fraction, RatFunc]


def symbol(name: str) -> RatFunc:
    """The rational function consisting of a single variable."""
    return RatFunc._raw(SparsePoly.variable(name), _ONE)


def as_ratfunc(value) -> RatFunc:
    result = _coerce_ratfunc(value)
    if result is None:
        raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")
    return result


def collapse(value) -> Scalar:
    """Canonical Scalar form: constants become Fractions."""
    if isinstance(value, RatFunc):
        return value.constant_value if value.is_constant else value
    if isinstance(value, SparsePoly):
        return value.constant_value if value.is_constant else RatFunc._raw(value, _ONE)
    return to_rational(value)


def scalar_variables(value: Scalar) -> tuple[str, ...]:
    if isinstance(value, RatFunc):
        return value.variables
    return ()


def scalar_derivative(value: Scalar, var: str) -> Scalar:
    if isinstance(value, RatFunc):
        return collapse(value.derivative(var))
    return Fraction(0)


def scalar_evaluate(value: Scalar, assignment: Mapping[str, object]) -> Fraction:
    if isinstance(value, RatFunc):
        return value.evaluate(assignment)
    return to_rational(value)


def scalar_partial_evaluate(value: Scalar, assignment: Mapping[str, object]) -> Scalar:
    if isinstance(value, RatFunc):
        return collapse(value.partial_evaluate(assignment))
    return to_rational(value)


def scalar_substitute(value: Scalar, mapping: Mapping[str, object]) -> Scalar:
    if isinstance(value, RatFunc):
        return value.substitute(mapping)
    return to_rational(value)


def scalar_limit(value: Scalar, var: str, point) -> Scalar:
    if isinstance(value, RatFunc):
        return collapse(value.limit(var, point))
    return to_rational(value)


def format_scalar(value) -> str:
    """String form of any exact scalar."""
    if isinstance(value, (RatFunc, SparsePoly)):
        return value.to_string()
    return format_rational(to_rational(value))


# ============================================================================
# Operations
# ============================================================================

class ArithOp(str, Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"
    DERIVATIVE = "derivative"


_BINARY = {
    ArithOp.ADD: operator.add,
    ArithOp.SUB: operator.sub,
    ArithOp.MUL: operator.mul,
    ArithOp.DIV: operator.truediv,
}


def poly_arith(a: SparsePoly, b: SparsePoly, op: ArithOp) -> SparsePoly:
    """Add, subtract or multiply two polynomials over the union of their variables."""
    op = ArithOp(op)
    if op not in (ArithOp.ADD, ArithOp.SUB, ArithOp.MUL):
        raise ValueError(f"polynomials are not closed under {op.value}")
    return _BINARY[op](a, b)


def poly_partial_derivative(p: SparsePoly, var: str) -> SparsePoly:
    return p.derivative(var)


def ratfunc_arith_and_derivative(
    a: RatFunc,
    b: Optional[RatFunc],
    op: ArithOp,
    var: Optional[str] = None,
) -> RatFunc:
    """
    Rational-function arithmetic, or the derivative of ``a`` with respect to ``var``.

    Raises:
        DivisionByZero: When dividing by the zero rational function
    """
    op = ArithOp(op)
    a = as_ratfunc(a)
    if op is ArithOp.DERIVATIVE:
        if var is None:
            raise ValueError("derivative needs a variable")
        return a.derivative(var)
    return _BINARY[op](a, as_ratfunc(b))


def ratfunc_equal(a, b, mode: Optional[VerificationMode] = None) -> bool:
    """
    Decide a == b exactly, or probabilistically at seeded random points.

    Probabilistic mode can only err towards True: any nonzero difference
    observed at a sample point proves the functions differ.

    Args:
        a: First scalar
        b: Second scalar
        mode: Exact by default

    Returns:
        Whether the two functions are equal

    Raises:
        DegenerateSample: If no pole-free sample point could be found
    """
    a, b = as_ratfunc(a), as_ratfunc(b)
    if mode is None or mode.mode is CheckMode.EXACT:
        return a == b
    sampler = RationalSampler(mode.seed)
    variables = sort_variables(a.variables + b.variables)
    for trial in range(mode.trials):
        point = sampler.draw_point(variables, guards=(a.denominator, b.denominator))
        if a.evaluate(point) != b.evaluate(point):
            logger.debug(f"Functions differ at trial {trial}")
            return False
    return True


def eval_at(p, assignment: Mapping[str, object]) -> Fraction:
    """Evaluate a polynomial or rational function at a rational point."""
    if isinstance(p, SparsePoly):
        return p.evaluate(assignment)
    return scalar_evaluate(collapse(p), assignment)
