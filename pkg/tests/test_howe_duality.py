"""
Unit tests for the polynomial duality model.

Tests cover:
- Model basis, strata and polarization operators
- Mutual commutation of the two algebras
- KZ / DD identification residuals per operator kind
"""
from fractions import Fraction

import pytest

from defcalc.domain.models import CheckStatus, OperatorKind
from defcalc.services.domain import howe_duality
from defcalc.services.domain.kz_dd import OperatorParams


# ============================================================
# Model
# ============================================================

class TestPolynomialModel:
    """Tests for the truncated polynomial space."""

    def test_basis(self, small_model):
        assert small_model.dim == 5
        assert small_model.basis_labels() == ["1", "x11", "x12", "x21", "x22"]
        assert [len(indices) for _, indices in small_model.strata()] == [1, 4]

    def test_stratum_dimension(self):
        model = howe_duality.build_model(2, 2, 3)
        assert [model.stratum_dimension(k) for k in range(4)] == [1, 4, 10, 20]

    def test_polarization(self, small_model):
        """e_12 in slot 1 is x11 d/dx12: it sends x12 to x11."""
        matrix = small_model.gl_m.slot_generator((1, 2), 1)
        assert matrix == small_model.polarization(1, 1, 1, 2)
        assert matrix[1, 2] == 1
        assert len(list(matrix.entries())) == 1

    def test_sides(self, small_model):
        assert small_model.gl_m.describe() == {"M": 2, "N": 2, "dim": 5, "model": "gl_M", "degree": 1}
        with pytest.raises(ValueError):
            howe_duality.ModelRealization(small_model, "gl_K")

    def test_gl_m_side_is_never_swapped(self, small_model):
        with pytest.raises(ValueError):
            howe_duality.model_context(small_model, OperatorParams(), "gl_M", swapped=True)

    def test_invalid_model(self):
        with pytest.raises(ValueError):
            howe_duality.build_model(0, 2, 1)

    @pytest.mark.parametrize("degree", [1, 2])
    def test_structure(self, degree):
        model = howe_duality.build_model(2, 2, degree)
        assert howe_duality.check_mutual_commutation(model).passed
        assert howe_duality.check_strata(model).passed


# ============================================================
# Identification Residuals
# ============================================================

class TestDuality:
    """Tests for check_duality and its reports."""

    def test_rational_identification(self, exact_mode):
        """Rational KZ and DD operators match across the duality."""
        model = howe_duality.build_model(2, 2, 2)
        report = howe_duality.check_duality(OperatorKind.RATIONAL, model, OperatorParams(), exact_mode)
        assert report.vanishes
        assert report.block_diagonal
        assert [entry.label for entry in report.entries] == ["kz_dd.1", "kz_dd.2", "dd_kz.1", "dd_kz.2"]
        assert all(check.passed for check in report.to_checks())

    def test_rational_identification_single_slot(self, exact_mode):
        model = howe_duality.build_model(1, 3, 2)
        assert howe_duality.check_duality(OperatorKind.RATIONAL, model, OperatorParams(), exact_mode).vanishes

    def test_trigonometric_residual(self, exact_mode):
        """The trigonometric identification leaves a nonzero residual above degree 0."""
        model = howe_duality.build_model(1, 2, 2)
        report = howe_duality.check_duality(OperatorKind.TRIGONOMETRIC, model, OperatorParams(), exact_mode)
        assert not report.vanishes
        assert all(entry.strata[0] is CheckStatus.PASS for entry in report.entries)

        strict = {c.check_name: c for c in report.to_checks(strict=True)}
        assert strict["duality.t.identification"].status is CheckStatus.FAIL
        assert strict["duality.t.identification"].witness["residuals"]

        recorded = {c.check_name: c for c in report.to_checks(strict=False)}
        assert recorded["duality.t.residuals"].passed
        assert recorded["duality.t.residuals"].details["residual_zero"] is False

    def test_rt_linearity(self, exact_mode):
        """The rt residual is hbar times the t residual plus eta times the r residual."""
        model = howe_duality.build_model(1, 2, 1)
        report = howe_duality.check_duality(
            OperatorKind.RATIONAL_TRIGONOMETRIC, model, OperatorParams(), exact_mode
        )
        assert report.linearity is not None
        assert report.linearity.passed
        assert report.linearity.details["r_zero"] is True
        assert "duality.rt_linearity" in [c.check_name for c in report.to_checks(strict=False)]

    def test_probabilistic(self, probabilistic_mode):
        model = howe_duality.build_model(2, 2, 1)
        params = OperatorParams(kappa=Fraction(3))
        report = howe_duality.check_duality(OperatorKind.RATIONAL, model, params, probabilistic_mode)
        assert report.vanishes
        assert report.to_json()["residual_zero"] is True

    def test_realizations_match_for_rational_kind(self, small_model):
        """The gl_M KZ operator at site 1 is the swapped gl_N DD operator for index 1."""
        kz = howe_duality.realize_kz_on_model(OperatorKind.RATIONAL, 1, small_model)
        dd = howe_duality.realize_dd_on_model(OperatorKind.RATIONAL, 1, small_model, swapped=True)
        assert kz.dim == small_model.dim
        assert kz == dd
