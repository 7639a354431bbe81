"""
Unit tests for truncated deformed series.
"""
from fractions import Fraction

import pytest

from defcalc.domain.exceptions import DenominatorVanishes, InvalidSpecialization, ZeroLowerPochhammer
from defcalc.domain.models import DeformedKind
from defcalc.services.domain.deformed_functions import (
    SeriesSpec,
    check_exp_recursion,
    check_matched_parameters,
    exp_series,
    hypergeometric_series,
    specialize_series,
)
from defcalc.services.domain.deformed_numbers import DeformationParams


# ============================================================
# Exponentials
# ============================================================

class TestExponential:
    """Tests for sum x^n / (n)!."""

    def test_classical(self):
        """The classical exponential has coefficients 1/n!."""
        series = exp_series(DeformedKind.CLASSICAL, order=4)
        assert list(series.coefficients) == [1, 1, Fraction(1, 2), Fraction(1, 6), Fraction(1, 24)]

    def test_q_exponential(self, q_sym):
        """Coefficient 3 of the q-exponential is 1/((1+q)(1+q+q^2))."""
        series = exp_series(DeformedKind.Q, order=3)
        assert len(series) == 4
        assert series[2] == 1 / (1 + q_sym)
        assert series[3] == 1 / ((1 + q_sym) * (1 + q_sym + q_sym ** 2))

    @pytest.mark.parametrize("kind", [DeformedKind.Q, DeformedKind.ETA, DeformedKind.Q_ETA])
    def test_recursion(self, kind):
        """c_n (n) = c_(n-1)."""
        assert check_exp_recursion(kind, 6).passed

    def test_negative_order(self):
        with pytest.raises(ValueError):
            exp_series(DeformedKind.Q, order=-1)

    def test_vanishing_number(self):
        """q = -1 zeroes (2)_q."""
        with pytest.raises(DenominatorVanishes, match=r"\(2\)_q"):
            exp_series(DeformedKind.Q, DeformationParams(q=Fraction(-1)), order=3)


# ============================================================
# Hypergeometric Series
# ============================================================

class TestHypergeometric:
    """Tests for truncated hypergeometric series."""

    def test_single_upper_one(self):
        """With a = (1) and no lower parameters every coefficient is 1."""
        series = hypergeometric_series(SeriesSpec((1,), (), DeformedKind.CLASSICAL, 5))
        assert list(series.coefficients) == [1] * 6

    @pytest.mark.parametrize("kind", [DeformedKind.Q, DeformedKind.ETA, DeformedKind.Q_ETA])
    def test_matched_parameters(self, kind):
        """Equal upper and lower lists give the exponential."""
        assert check_matched_parameters(kind, (2, 3), 5).passed

    def test_vanishing_lower_factor(self):
        """b = -1 reaches the factor (0) at k = 2."""
        with pytest.raises(ZeroLowerPochhammer):
            hypergeometric_series(SeriesSpec((1,), (-1,), DeformedKind.CLASSICAL, 3))

    def test_vanishing_factorial(self):
        """The (k)! in the denominator also vanishes at q = -1."""
        with pytest.raises(DenominatorVanishes):
            hypergeometric_series(SeriesSpec((1,), (), DeformedKind.Q, 3), DeformationParams(q=Fraction(-1)))

    def test_spec_parameters(self):
        spec = SeriesSpec((2,), (3,), DeformedKind.Q_ETA, 4)
        assert spec.as_parameters() == {"a": [2], "b": [3], "kind": "qeta", "order": 4}


# ============================================================
# Specializations
# ============================================================

class TestSeriesSpecialization:
    """Tests for coefficient-wise specialization of series."""

    @pytest.mark.parametrize("target", [DeformedKind.Q, DeformedKind.ETA, DeformedKind.CLASSICAL])
    def test_exponential(self, target):
        """The combined exponential specializes to each simpler kind."""
        report = specialize_series(SeriesSpec((), (), DeformedKind.Q_ETA, 6), target)
        assert report.passed
        assert report.check_name == f"series.specialize.qeta_to_{target.value}"

    @pytest.mark.parametrize("upper,lower", [((2,), (3,)), ((1, 2), (4,))])
    def test_hypergeometric_to_eta(self, upper, lower):
        """q -> 1 of the combined series is the eta series."""
        assert specialize_series(SeriesSpec(upper, lower, DeformedKind.Q_ETA, 5), DeformedKind.ETA).passed

    def test_invalid_target(self):
        """eta is not a specialization of the q deformation."""
        with pytest.raises(InvalidSpecialization):
            specialize_series(SeriesSpec((), (), DeformedKind.Q, 3), DeformedKind.ETA)
