"""
Unit tests for the KZ and dynamical (DD) operators.

Tests cover:
- Operator construction and argument validation
- Agreement of the two rational-trigonometric constructions
- Flatness and compatibility of the rational family
- Exactness policy and seeded sample points
"""
from fractions import Fraction

import pytest

from defcalc.domain.exceptions import InvalidIndex, InvalidSite
from defcalc.domain.linear_map import LinearMap
from defcalc.domain.models import CheckMode, Construction, OperatorKind
from defcalc.domain.symbols import kappa
from defcalc.services.domain import gl_rep
from defcalc.services.domain.kz_dd import (
    Identity,
    KZContext,
    OperatorParams,
    build_dd,
    build_kz,
    check_identity,
    check_rt_linearity,
    default_mode,
    dd_family,
    kz_family,
    sample_points,
)

POINT = {"z1": 0, "z2": 1, "lambda1": 0, "lambda2": 0, "kappa": 1, "hbar": 1, "eta": 1}


def _triple() -> KZContext:
    return KZContext(gl_rep.tensor_power(gl_rep.vector_rep(2), 3))


# ============================================================
# Parameters and Contexts
# ============================================================

class TestContext:
    """Tests for OperatorParams and KZContext."""

    def test_default_variables(self, kz_pair):
        assert kz_pair.position_vars == ("z1", "z2")
        assert kz_pair.dynamical_vars == ("lambda1", "lambda2")
        assert set(kz_pair.variables()) == {"z1", "z2", "lambda1", "lambda2", "kappa", "hbar", "eta"}

    @pytest.mark.parametrize("field", ["kappa", "hbar"])
    def test_nonzero_parameters(self, field):
        """kappa and hbar must be nonzero."""
        with pytest.raises(ValueError):
            OperatorParams(**{field: Fraction(0)})

    def test_concrete_parameters(self):
        params = OperatorParams(kappa=Fraction(2), hbar=Fraction(1), eta=Fraction(-1, 2))
        assert params.symbols() == ()
        assert params.as_parameters() == {"kappa": "2", "hbar": "1", "eta": "-1/2"}

    def test_variable_count_validated(self, vector_pair):
        with pytest.raises(ValueError):
            KZContext(vector_pair, OperatorParams(), position_vars=("z1",))


# ============================================================
# Construction
# ============================================================

class TestConstruction:
    """Tests for building single operators."""

    def test_rational_kz_leading_term(self, kz_pair):
        """The derivative coefficient is kappa times the identity."""
        op = build_kz(OperatorKind.RATIONAL, 1, kz_pair)
        assert op.order == 1
        assert op.coefficient((("z1", 1),)) == LinearMap.identity(4).scale(kappa())

    def test_rational_kz_at_point(self, kz_pair):
        """At z = (0, 1), lambda = 0 the potential of KZ_1 is the flip."""
        op = build_kz(OperatorKind.RATIONAL, 1, kz_pair).evaluate(POINT)
        assert op.coefficient(()) == gl_rep.flip_operator(2)

    def test_trigonometric_kz_leading_term(self, kz_pair):
        op = build_kz(OperatorKind.TRIGONOMETRIC, 2, kz_pair).evaluate({**POINT, "z2": 3})
        assert op.coefficient((("z2", 1),)) == LinearMap.identity(4).scale(3)

    def test_rt_constructions_agree(self, kz_pair):
        """hbar t + eta r equals the substituted trigonometric operator."""
        direct = build_dd(OperatorKind.RATIONAL_TRIGONOMETRIC, 1, kz_pair, Construction.DIRECT)
        substituted = build_dd(OperatorKind.RATIONAL_TRIGONOMETRIC, 1, kz_pair, Construction.SUBSTITUTION)
        assert direct == substituted

    def test_invalid_site(self, kz_pair):
        with pytest.raises(InvalidSite):
            build_kz(OperatorKind.RATIONAL, 3, kz_pair)

    def test_invalid_index(self, kz_pair):
        with pytest.raises(InvalidIndex):
            build_dd(OperatorKind.TRIGONOMETRIC, 0, kz_pair)

    def test_families(self, kz_pair):
        assert len(kz_family(OperatorKind.RATIONAL, kz_pair)) == 2
        assert len(dd_family(OperatorKind.TRIGONOMETRIC, kz_pair)) == 2


# ============================================================
# Identities
# ============================================================

class TestIdentities:
    """Tests for check_identity and the rt linearity check."""

    @pytest.mark.parametrize("which", [Identity.KZ_DECOMPOSITION, Identity.DD_DECOMPOSITION])
    def test_rt_decomposition(self, which, kz_pair, exact_mode):
        report = check_identity(which, OperatorKind.RATIONAL_TRIGONOMETRIC, kz_pair, exact_mode)
        assert report.passed
        assert report.check_name == f"kz.{which}"

    def test_rt_decomposition_symmetric_module(self, symmetric_pair, exact_mode):
        ctx = KZContext(symmetric_pair)
        assert check_identity(Identity.KZ_DECOMPOSITION, OperatorKind.RATIONAL_TRIGONOMETRIC, ctx, exact_mode).passed

    def test_rt_linearity(self, kz_pair):
        assert check_rt_linearity(kz_pair).passed

    def test_rational_flatness_exact(self, kz_pair, exact_mode):
        """Rational KZ operators commute pairwise, as do rational DD operators."""
        report = check_identity(Identity.FLATNESS, OperatorKind.RATIONAL, kz_pair, exact_mode)
        assert report.passed
        assert report.check_name == "kz.flatness.r"

    def test_rational_flatness_probabilistic(self, probabilistic_mode):
        report = check_identity(Identity.FLATNESS, OperatorKind.RATIONAL, _triple(), probabilistic_mode)
        assert report.passed
        assert report.parameters["seed"] == 11
        assert report.details["points"] == 2

    @pytest.mark.parametrize("kind", [OperatorKind.TRIGONOMETRIC, OperatorKind.RATIONAL_TRIGONOMETRIC])
    def test_trigonometric_flatness_probabilistic(self, kind, probabilistic_mode):
        """The t and rt families are flat on three tensor factors."""
        report = check_identity(Identity.FLATNESS, kind, _triple(), probabilistic_mode)
        assert report.passed
        assert report.check_name == f"kz.flatness.{kind.value}"

    def test_rational_compatibility(self, kz_pair, exact_mode):
        """Every rational KZ operator commutes with every rational DD operator."""
        assert check_identity(Identity.COMPAT, OperatorKind.RATIONAL, kz_pair, exact_mode).passed

    def test_unknown_identity(self, kz_pair):
        with pytest.raises(ValueError):
            check_identity("associativity", OperatorKind.RATIONAL, kz_pair)


# ============================================================
# Modes and Sampling
# ============================================================

class TestSampling:
    """Tests for the exactness policy and sample points."""

    def test_default_mode(self, kz_pair):
        assert default_mode(kz_pair).mode is CheckMode.EXACT
        assert default_mode(_triple(), seed=5).mode is CheckMode.PROBABILISTIC

    def test_points_are_seeded(self, kz_pair, probabilistic_mode):
        ops = kz_family(OperatorKind.RATIONAL, kz_pair)
        first = sample_points(kz_pair, ops, probabilistic_mode)
        second = sample_points(kz_pair, ops, probabilistic_mode)
        assert first == second
        assert len(first) == probabilistic_mode.trials

    def test_points_keep_positions_distinct(self, kz_pair, probabilistic_mode):
        ops = kz_family(OperatorKind.RATIONAL, kz_pair)
        for point in sample_points(kz_pair, ops, probabilistic_mode):
            assert point["z1"] != point["z2"]
            assert point["lambda1"] != point["lambda2"]
