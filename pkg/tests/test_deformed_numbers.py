"""
Unit tests for deformed numbers, factorials and Pochhammer symbols.
"""
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from defcalc.domain.exceptions import DenominatorVanishes
from defcalc.domain.models import DeformedKind
from defcalc.domain.scalars import format_scalar
from defcalc.services.domain.deformed_numbers import (
    DeformationParams,
    check_factorial_ratio,
    check_fixed_points,
    check_specializations,
    deformed_factorial,
    deformed_number,
    pochhammer,
    specialize_number,
)


# ============================================================
# Deformed Numbers
# ============================================================

class TestDeformedNumber:
    """Tests for (z)_kind."""

    def test_q_number_is_geometric_sum(self, q_sym):
        """(3)_q = 1 + q + q^2."""
        assert deformed_number(3, DeformedKind.Q) == 1 + q_sym + q_sym ** 2

    def test_negative_q_number(self, q_sym):
        """(-2)_q = -(q^-1 + q^-2)."""
        assert deformed_number(-2, DeformedKind.Q) == -(1 / q_sym + 1 / q_sym ** 2)

    def test_eta_number(self, eta_sym):
        """(3)_eta = 3 / (1 + 2 eta)."""
        assert deformed_number(3, DeformedKind.ETA) == 3 / (1 + 2 * eta_sym)

    def test_combined_number_string(self, symbolic_params):
        """(2)_qeta prints as (1+q)/(1+eta)."""
        value = deformed_number(2, DeformedKind.Q_ETA, symbolic_params)
        assert format_scalar(value) == "(1+q)/(1+eta)"
        assert symbolic_params.as_parameters() == {"q": "q", "eta": "eta"}

    def test_classical(self):
        """The classical kind is the integer itself."""
        assert deformed_number(5, DeformedKind.CLASSICAL) == Fraction(5)

    def test_concrete_parameters(self, concrete_params):
        """(2)_qeta at q = 2, eta = 1/3 is 3 / (4/3) = 9/4."""
        assert deformed_number(2, DeformedKind.Q_ETA, concrete_params) == Fraction(9, 4)

    def test_vanishing_denominator(self):
        """eta = -1 zeroes 1 + eta(z - 1) at z = 2."""
        with pytest.raises(DenominatorVanishes):
            deformed_number(2, DeformedKind.ETA, DeformationParams(eta=Fraction(-1)))

    def test_negative_argument_needs_invertible_q(self):
        """q = 0 cannot be inverted for negative z."""
        with pytest.raises(DenominatorVanishes):
            deformed_number(-1, DeformedKind.Q, DeformationParams(q=Fraction(0)))

    def test_non_integer_argument(self):
        """Only integer arguments are supported."""
        with pytest.raises(ValueError):
            deformed_number(Fraction(1, 2), DeformedKind.Q)

    def test_fixed_points(self):
        """(0) = 0 and (1) = 1 for every kind."""
        assert check_fixed_points().passed


# ============================================================
# Specializations
# ============================================================

class TestSpecializations:
    """Tests for q -> 1 and eta -> 0 of the combined deformation."""

    @settings(max_examples=15, deadline=None)
    @given(st.integers(min_value=-5, max_value=6))
    def test_each_argument(self, z):
        """Both specializations hold for every integer argument."""
        assert specialize_number(z).passed

    def test_range_check(self):
        """The range check reports how many arguments it covered."""
        report = check_specializations(-3, 3)
        assert report.passed
        assert report.details == {"checked": 7}


# ============================================================
# Factorials and Pochhammer Symbols
# ============================================================

class TestFactorials:
    """Tests for deformed factorials and rising products."""

    def test_empty_factorial(self):
        """0! = 1."""
        assert deformed_factorial(0, DeformedKind.Q_ETA) == 1

    def test_classical_pochhammer(self):
        """(1)_3 = 1 * 2 * 3."""
        assert pochhammer(1, 3, DeformedKind.CLASSICAL) == 6

    def test_combined_pochhammer(self, q_sym, eta_sym):
        """(1)(2) in the combined deformation is (1+q)/(1+eta)."""
        assert pochhammer(1, 2, DeformedKind.Q_ETA) == (1 + q_sym) / (1 + eta_sym)

    @pytest.mark.parametrize("kind", list(DeformedKind))
    def test_factorial_ratio(self, kind):
        """n! / (n-1)! = (n)."""
        assert check_factorial_ratio(kind, 6).passed

    def test_negative_factorial(self):
        with pytest.raises(ValueError):
            deformed_factorial(-1, DeformedKind.Q)
