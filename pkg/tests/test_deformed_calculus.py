"""
Unit tests for deformed derivatives.

Tests cover:
- Difference quotients for the q-, eta- and combined shifts
- Leibniz rule and linearity
- Exact division errors
"""
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from defcalc.domain.exceptions import InexactDivision, UndeformedShift
from defcalc.services.domain.deformed_calculus import (
    ShiftMap,
    UniPoly,
    apply_difference_operator,
    check_leibniz,
    check_linearity,
    check_monomial_law,
    classical_derivative,
    eta_shift,
    leibniz_sweep,
    q_eta_shift,
    q_shift,
    random_unipoly,
)
from defcalc.utils.sampling import RationalSampler

coefficient_lists = st.lists(st.integers(min_value=-5, max_value=5), min_size=1, max_size=5)


# ============================================================
# Difference Quotients
# ============================================================

class TestDifferenceOperator:
    """Tests for (f(x') - f(x)) / (x' - x)."""

    def test_q_derivative_of_square(self, q_sym):
        """d_q x^2 = (1+q) x."""
        result = apply_difference_operator(UniPoly.monomial(2), q_shift())
        assert result == UniPoly([0, 1 + q_sym])

    def test_combined_derivative_of_square(self, q_sym, eta_sym):
        """d_qeta x^2 = (1+q) x + eta."""
        result = apply_difference_operator(UniPoly.monomial(2), q_eta_shift())
        assert result == UniPoly([eta_sym, 1 + q_sym])

    def test_eta_derivative_of_square(self, eta_sym):
        """d_eta x^2 = 2x + eta."""
        result = apply_difference_operator(UniPoly.monomial(2), eta_shift())
        assert result == UniPoly([eta_sym, 2])

    def test_constant(self):
        """Constants have zero derivative."""
        assert apply_difference_operator(UniPoly([7]), q_eta_shift()).is_zero

    @pytest.mark.parametrize("shift", [q_shift(), q_eta_shift()])
    @pytest.mark.parametrize("degree", range(1, 7))
    def test_symbolic_scale_lowers_degree_by_one(self, shift, degree):
        """With symbolic q the derivative has degree exactly deg(f) - 1."""
        for seed in range(3):
            f = random_unipoly(RationalSampler(seed), degree)
            assert apply_difference_operator(f, shift).degree == degree - 1

    def test_concrete_shift(self):
        """x' = 2x + 1: ((2x+1)^2 - x^2) / (x + 1) = 3x + 1."""
        result = apply_difference_operator(UniPoly.monomial(2), ShiftMap(Fraction(2), Fraction(1)))
        assert result == UniPoly([1, 3])

    def test_undeformed_shift(self):
        """x' = x has no difference quotient."""
        with pytest.raises(UndeformedShift):
            ShiftMap(1, 0)

    def test_classical_derivative(self):
        assert classical_derivative(UniPoly([1, 1, 1])) == UniPoly([1, 2])

    def test_inexact_division(self):
        """x^2 + 1 is not divisible by x."""
        with pytest.raises(InexactDivision):
            UniPoly([1, 0, 1]).divide_exact(UniPoly.x())

    def test_monomial_law(self):
        """d_q x^n = (n)_q x^(n-1)."""
        assert check_monomial_law(8).passed


# ============================================================
# Leibniz Rule
# ============================================================

class TestLeibniz:
    """Tests for the twisted Leibniz rule d(fg) = (df) g + f(x') dg."""

    def test_symbolic_pair(self):
        """Leibniz rule for x^2 + 1 and x^3 under the combined shift."""
        f = UniPoly([1, 0, 1])
        g = UniPoly.monomial(3)
        assert check_leibniz(f, g, q_eta_shift()).passed

    def test_linearity(self):
        f = UniPoly([1, 2])
        g = UniPoly([0, 0, 3])
        assert check_linearity(f, g, Fraction(2), Fraction(-1, 3), q_shift()).passed

    @pytest.mark.parametrize("shift", [q_shift(), eta_shift(), q_eta_shift()])
    def test_sweep(self, shift):
        """Random pairs satisfy Leibniz and linearity."""
        report = leibniz_sweep(shift, pairs=10, seed=3, max_degree=4)
        assert report.passed
        assert report.parameters["seed"] == 3

    @settings(max_examples=30, deadline=None)
    @given(
        coefficient_lists,
        coefficient_lists,
        st.integers(min_value=2, max_value=5),
        st.integers(min_value=-3, max_value=3),
    )
    def test_concrete_shifts(self, f, g, scale, shift):
        """The rule holds for integer shifts x' = scale*x + shift."""
        assert check_leibniz(UniPoly(f), UniPoly(g), ShiftMap(Fraction(scale), Fraction(shift))).passed

    def test_random_unipoly(self):
        """Seeded draws have the requested degree and repeat."""
        first = random_unipoly(RationalSampler(3), 4)
        assert first.degree == 4
        assert first.coefficients[-1] != 0
        assert first == random_unipoly(RationalSampler(3), 4)
