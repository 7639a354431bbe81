"""
Unit tests for the (q, eta)-quantum plane.

Tests cover:
- Normal ordering by rewriting
- Closed-form multiplication
- Confluence and specialization coherence
- The functional equation f1(x+y) = f2(y) f3(x)
"""
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from defcalc.services.domain.deformed_numbers import DeformationParams
from defcalc.services.domain.quantum_plane import (
    PlaneAlgebra,
    PlanePolynomial,
    RewriteStrategy,
    check_algebra_consistency,
    check_confluence,
    check_specialization_coherence,
    inversions,
    normal_order,
    power_of_sum,
    solve_functional_equation,
)

words = st.text(alphabet="xy", max_size=6)


# ============================================================
# Normal Ordering
# ============================================================

class TestNormalOrder:
    """Tests for rewriting xy -> q yx + eta yy."""

    def test_single_rewrite(self, q_sym, eta_sym):
        """xy -> q yx + eta y^2."""
        assert normal_order("xy") == PlanePolynomial({(1, 1): q_sym, (2, 0): eta_sym})

    def test_normal_word_is_fixed(self):
        """yx is already normal."""
        assert normal_order("yx") == PlanePolynomial({(1, 1): 1})

    def test_three_letters(self, q_sym, eta_sym):
        """xyy -> q^2 y^2 x + eta (1+q) y^3."""
        expected = PlanePolynomial({(2, 1): q_sym ** 2, (3, 0): eta_sym * (1 + q_sym)})
        assert normal_order("xyy") == expected

    def test_square_of_sum(self, q_sym, eta_sym):
        """(x + y)^2 = x^2 + (1+q) yx + (1+eta) y^2."""
        expected = PlanePolynomial({(0, 2): 1, (1, 1): 1 + q_sym, (2, 0): 1 + eta_sym})
        assert power_of_sum(2) == expected

    def test_strategies_agree(self):
        assert normal_order("xxyy", strategy=RewriteStrategy.LEFTMOST) == normal_order(
            "xxyy", strategy=RewriteStrategy.RIGHTMOST
        )

    def test_invalid_letter(self):
        """Only x and y are letters of the plane."""
        with pytest.raises(ValueError):
            normal_order("xz")

    def test_inversions(self):
        assert inversions("xxy") == 2
        assert inversions("yxx") == 0

    def test_commutative_specialization(self):
        """q = 1, eta = 0 sorts the word."""
        params = DeformationParams(q=Fraction(1), eta=Fraction(0))
        assert normal_order("xyxy", params) == PlanePolynomial({(2, 2): 1})

    @settings(max_examples=30, deadline=None)
    @given(words)
    def test_rewriting_matches_multiplication(self, word):
        """Both evaluators produce the same normal form."""
        left = normal_order(word, strategy=RewriteStrategy.LEFTMOST)
        right = normal_order(word, strategy=RewriteStrategy.RIGHTMOST)
        assert left == right
        assert left == PlaneAlgebra().word(word)

    def test_multiply_normal_forms(self):
        """x * y in normal form is the rewritten word xy."""
        algebra = PlaneAlgebra()
        x = PlanePolynomial({(0, 1): 1})
        y = PlanePolynomial({(1, 0): 1})
        assert algebra.multiply(x, y) == normal_order("xy")
        assert algebra.multiply(y, x) == PlanePolynomial({(1, 1): 1})
        assert algebra.multiply(algebra.word("xy"), x) == normal_order("xyx")


# ============================================================
# Plane Checks
# ============================================================

class TestPlaneChecks:
    """Tests for the aggregate plane checks."""

    def test_confluence(self):
        report = check_confluence(words=40, seed=1, max_length=6)
        assert report.passed
        assert report.parameters["seed"] == 1

    def test_specialization_coherence(self):
        """Manin, Jordanian and commutative planes are recovered."""
        report = check_specialization_coherence(4)
        assert report.passed
        assert report.details == {"words": 31}

    def test_algebra_consistency(self, concrete_params):
        assert check_algebra_consistency(4, concrete_params).passed


# ============================================================
# Functional Equation
# ============================================================

class TestFunctionalEquation:
    """Tests for the degree-by-degree solve of f1(x+y) = f2(y) f3(x)."""

    def test_symbolic(self):
        """f2 is the combined exponential; f1 and f3 are q-exponentials."""
        report = solve_functional_equation(degree=3)
        assert report.passed
        matches = report.details["matches"]
        assert matches["f2"]["qeta"]
        assert matches["f1"]["q"]
        assert matches["f3"]["q"]
        assert not matches["f1"]["qeta"]

    def test_coefficient_table(self):
        """The table lists one row per degree, starting from constant terms 1."""
        report = solve_functional_equation(degree=2)
        table = report.details["coefficients"]
        assert [row["n"] for row in table] == [0, 1, 2]
        assert table[0] == {"n": 0, "f1": "1", "f2": "1", "f3": "1"}
        assert table[1]["f2"] == "1"

    def test_concrete_parameters(self, concrete_params):
        assert solve_functional_equation(concrete_params, degree=4).passed

    def test_degree_must_be_positive(self):
        with pytest.raises(ValueError):
            solve_functional_equation(degree=0)
