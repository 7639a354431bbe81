"""
Unit tests for exact scalars.

Tests cover:
- Rational parsing and formatting
- Rational-function normalization and equality
- Evaluation, poles and exact limits
- Probabilistic equality
"""
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from defcalc.domain.exceptions import DivisionByZero, PoleAtPoint, UnassignedSymbol
from defcalc.domain.models import CheckMode, VerificationMode
from defcalc.domain.scalars import (
    ArithOp,
    RatFunc,
    SparsePoly,
    collapse,
    eval_at,
    format_rational,
    format_scalar,
    parse_rational,
    poly_arith,
    poly_partial_derivative,
    ratfunc_arith_and_derivative,
    ratfunc_equal,
    scalar_limit,
    symbol,
    to_rational,
)
from defcalc.domain.symbols import q


def _poly_in_q(coefficients: list[int]):
    x = q()
    total = Fraction(0)
    for k, c in enumerate(coefficients):
        total = total + c * x ** k
    return total


small_polys = st.lists(st.integers(min_value=-4, max_value=4), min_size=1, max_size=4)


# ============================================================
# Rationals
# ============================================================

class TestRationals:
    """Tests for parsing and formatting exact rationals."""

    def test_parse_reduces(self):
        """Parsed fractions are reduced."""
        assert parse_rational("3/6") == Fraction(1, 2)
        assert parse_rational(" -4 ") == Fraction(-4)

    @pytest.mark.parametrize("text", ["1.5", "", "1e3", "2E1"])
    def test_parse_rejects_inexact(self, text):
        """Decimals, exponents and empty strings are not exact rationals."""
        with pytest.raises(ValueError):
            parse_rational(text)

    def test_format(self):
        """Integers print without a denominator."""
        assert format_rational(Fraction(-1, 2)) == "-1/2"
        assert format_rational(Fraction(4, 2)) == "2"

    def test_floats_are_refused(self):
        """Floats never enter exact arithmetic."""
        with pytest.raises(TypeError):
            to_rational(0.5)


# ============================================================
# Rational Functions
# ============================================================

class TestRationalFunctions:
    """Tests for normalization, arithmetic and equality."""

    def test_exact_quotient_normalizes(self, q_sym):
        """(q^2 - 1)/(q - 1) normalizes to the polynomial 1 + q."""
        value = (q_sym ** 2 - 1) / (q_sym - 1)
        assert value.is_polynomial
        assert format_scalar(value) == "1+q"

    def test_collapse_constants(self, q_sym):
        """Constant rational functions collapse to Fractions."""
        value = collapse((q_sym + 1) - q_sym)
        assert isinstance(value, Fraction)
        assert value == 1

    def test_cross_multiplication_equality(self, q_sym):
        """Unreduced representations still compare equal."""
        left = RatFunc((q_sym ** 2 - 1).numerator, ((q_sym - 1) ** 2).numerator)
        right = (q_sym + 1) / (q_sym - 1)
        assert left == right

    def test_division_by_zero(self, q_sym):
        """Dividing by the zero function raises."""
        with pytest.raises(DivisionByZero):
            q_sym / 0

    def test_rational_functions_are_unhashable(self, q_sym):
        """RatFunc equality is semantic, so it cannot be hashed."""
        with pytest.raises(TypeError):
            hash(q_sym)

    @settings(max_examples=40, deadline=None)
    @given(small_polys, small_polys)
    def test_sum_then_difference(self, a, b):
        """(A + B) - B == A."""
        left, right = _poly_in_q(a), _poly_in_q(b)
        assert collapse((left + right) - right) == collapse(left)

    @settings(max_examples=40, deadline=None)
    @given(small_polys, small_polys)
    def test_product_then_quotient(self, a, b):
        """(A * B) / B == A whenever B is nonzero."""
        left, right = _poly_in_q(a), _poly_in_q(b)
        if right == 0:
            return
        assert collapse(left * right / right) == collapse(left)


# ============================================================
# Evaluation and Limits
# ============================================================

class TestEvaluation:
    """Tests for evaluation at points and exact limits."""

    def test_evaluate(self, q_sym):
        """Evaluation at a rational point is exact."""
        value = (q_sym + 1) / (q_sym - 3)
        assert value.evaluate({"q": Fraction(1, 2)}) == Fraction(-3, 5)

    def test_pole(self, q_sym):
        """A vanishing denominator is a pole."""
        with pytest.raises(PoleAtPoint):
            (1 / (q_sym - 1)).evaluate({"q": 1})

    def test_unassigned_symbol(self, q_sym, eta_sym):
        """Every variable needs a value."""
        with pytest.raises(UnassignedSymbol):
            (q_sym + eta_sym).evaluate({"q": 1})

    def test_removable_limit(self, q_sym):
        """Common factors (q - 1) cancel before evaluation."""
        value = (q_sym ** 2 - 1) * (q_sym + 2) / ((q_sym - 1) * (q_sym + 3))
        assert scalar_limit(value, "q", 1) == Fraction(3, 2)

    def test_genuine_pole_limit(self, q_sym):
        """(q^2 - 1)/(q - 1)^2 has a pole at q = 1."""
        value = RatFunc((q_sym ** 2 - 1).numerator, ((q_sym - 1) ** 2).numerator)
        with pytest.raises(PoleAtPoint):
            value.limit("q", 1)


# ============================================================
# Probabilistic Equality
# ============================================================

class TestProbabilisticEquality:
    """Tests for seeded-point equality of rational functions."""

    def test_equal_functions(self, q_sym):
        """Equal functions agree at every sample point."""
        mode = VerificationMode(mode=CheckMode.PROBABILISTIC, seed=3, trials=4)
        assert ratfunc_equal((q_sym ** 2 - 1) / (q_sym - 1), q_sym + 1, mode)

    def test_different_functions(self, q_sym):
        """A single differing sample is proof of inequality."""
        mode = VerificationMode(mode=CheckMode.PROBABILISTIC, seed=3, trials=4)
        assert not ratfunc_equal(q_sym, q_sym + 1, mode)


# ============================================================
# Polynomial and Rational-Function Operations
# ============================================================

class TestOperations:
    """Tests for the operation-level entry points."""

    def test_poly_arith(self):
        """(x+1)(x-1) = x^2 - 1 and p - p = 0."""
        x = SparsePoly.variable("x")
        assert poly_arith(x + 1, x - 1, ArithOp.MUL) == x ** 2 - 1
        assert poly_arith(x + 1, x + 1, ArithOp.SUB) == 0
        with pytest.raises(ValueError):
            poly_arith(x, x, ArithOp.DIV)

    def test_poly_arith_over_union(self):
        """(q+eta)(q-eta) = q^2 - eta^2."""
        p, e = SparsePoly.variable("q"), SparsePoly.variable("eta")
        assert poly_arith(p + e, p - e, "mul") == p ** 2 - e ** 2
        assert poly_arith(p, e, "add").variables == ("eta", "q")

    def test_poly_partial_derivative(self):
        x, y = SparsePoly.variable("x"), SparsePoly.variable("y")
        assert poly_partial_derivative(x ** 3, "x") == 3 * x ** 2
        assert poly_partial_derivative(x ** 3, "y") == 0
        assert poly_partial_derivative(x * y + x, "x") == y + 1

    def test_ratfunc_derivative(self):
        """d/dz1 1/(z1 - z2) = -1/(z1 - z2)^2."""
        gap = symbol("z1") - symbol("z2")
        pole = ratfunc_arith_and_derivative(RatFunc(1), gap, ArithOp.DIV)
        derivative = ratfunc_arith_and_derivative(pole, None, ArithOp.DERIVATIVE, var="z1")
        assert derivative == -1 / gap ** 2

    def test_ratfunc_arith(self, q_sym):
        assert ratfunc_arith_and_derivative(q_sym, q_sym, ArithOp.DIV) == 1
        inverse = ratfunc_arith_and_derivative(RatFunc(1), 1 - q_sym, ArithOp.DIV)
        assert ratfunc_arith_and_derivative(inverse, 1 - q_sym, ArithOp.MUL) == 1
        with pytest.raises(DivisionByZero):
            ratfunc_arith_and_derivative(q_sym, RatFunc(0), ArithOp.DIV)

    def test_eval_at(self, q_sym):
        """x^2+1 at 2 is 5 and (1-q^3)/(1-q) at q=2 is 7."""
        x = SparsePoly.variable("x")
        assert eval_at(x ** 2 + 1, {"x": 2}) == 5
        assert eval_at((1 - q_sym ** 3) / (1 - q_sym), {"q": 2}) == 7
        with pytest.raises(PoleAtPoint):
            eval_at(1 / (symbol("z1") - symbol("z2")), {"z1": 1, "z2": 1})

    def test_exponent_vectors(self):
        """The dense view is keyed over the naturally sorted variables."""
        poly = SparsePoly({(("z10", 1),): 1, (("z2", 2),): 3})
        assert poly.variables == ("z2", "z10")
        assert poly.exponent_vectors() == {(0, 1): 1, (2, 0): 3}
        assert SparsePoly.from_exponent_vectors(poly.variables, poly.exponent_vectors()) == poly

    def test_partial_evaluate(self, q_sym, eta_sym):
        """Assigning q leaves a function of eta."""
        value = ((1 + q_sym) / (1 + eta_sym)).partial_evaluate({"q": 2})
        assert value == 3 / (1 + eta_sym)
        with pytest.raises(PoleAtPoint):
            (1 / (q_sym - 2)).partial_evaluate({"q": 2})

    def test_exact_quotient(self):
        x, y = SparsePoly.variable("x"), SparsePoly.variable("y")
        assert (x ** 2 - y ** 2).exact_quotient(x - y) == x + y
        assert (x ** 2 + 1).exact_quotient(x - y) is None
        with pytest.raises(DivisionByZero):
            x.exact_quotient(SparsePoly.zero())
