"""
Unit tests for exact matrices and matrix-valued differential operators.
"""
from fractions import Fraction

import pytest

from defcalc.domain.diff_op import DiffOp, op_commutator, op_compose
from defcalc.domain.linear_map import LinearMap, commutator
from defcalc.domain.scalars import symbol


@pytest.fixture
def d_z() -> DiffOp:
    """d/dz1 on a 2-dimensional space."""
    return DiffOp.derivation("z1", LinearMap.identity(2))


@pytest.fixture
def mult_z() -> DiffOp:
    """Multiplication by z1."""
    return DiffOp.from_matrix(LinearMap.identity(2).scale(symbol("z1")))


# ============================================================
# Linear Maps
# ============================================================

class TestLinearMap:
    """Tests for exact sparse matrices."""

    def test_from_dense(self):
        matrix = LinearMap.from_dense([[1, 0], [Fraction(1, 2), 3]])
        assert matrix.dense() == [[1, 0], [Fraction(1, 2), 3]]
        assert list(matrix.entries()) == [((0, 0), 1), ((1, 0), Fraction(1, 2)), ((1, 1), 3)]

    def test_matrix_unit_commutator(self):
        """[E_01, E_10] = E_00 - E_11."""
        e01 = LinearMap.elementary(2, 0, 1)
        e10 = LinearMap.elementary(2, 1, 0)
        assert commutator(e01, e10) == LinearMap.from_dense([[1, 0], [0, -1]])

    def test_kron(self):
        """Outer index is the left factor."""
        product = LinearMap.elementary(2, 0, 1).kron(LinearMap.identity(2))
        assert product[0, 2] == 1 and product[1, 3] == 1
        assert len(list(product.entries())) == 2

    def test_entries_are_calculus_aware(self):
        z = symbol("z1")
        matrix = LinearMap.from_dense([[z ** 2, 0], [0, 1]])
        assert matrix.derivative("z1") == LinearMap.from_dense([[2 * z, 0], [0, 0]])
        assert matrix.evaluate({"z1": 3}).diagonal() == [9, 1]

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            LinearMap(2, 2, {(2, 0): 1})


# ============================================================
# Differential Operators
# ============================================================

class TestDiffOp:
    """Tests for composition by the Leibniz rule."""

    def test_order(self, d_z, mult_z):
        assert d_z.order == 1
        assert mult_z.order == 0
        assert DiffOp.zero(2).order == -1

    def test_compose_moves_derivative(self, d_z, mult_z):
        """d o z = z d + 1."""
        expected = DiffOp.derivation("z1", LinearMap.identity(2).scale(symbol("z1"))) + DiffOp.from_matrix(
            LinearMap.identity(2)
        )
        assert op_compose(d_z, mult_z) == expected
        assert d_z @ mult_z == expected

    def test_canonical_commutator(self, d_z, mult_z):
        """[d, z] = 1."""
        assert op_commutator(d_z, mult_z) == DiffOp.from_matrix(LinearMap.identity(2))

    def test_commutator_at_point(self, d_z, mult_z):
        assert op_commutator(d_z, mult_z, at={"z1": 5}) == DiffOp.from_matrix(LinearMap.identity(2))

    def test_pole_coefficient(self, d_z):
        """d o 1/(z1-z2) picks up -1/(z1-z2)^2."""
        gap = symbol("z1") - symbol("z2")
        pole = DiffOp.from_matrix(LinearMap.identity(2).scale(1 / gap))
        composed = op_compose(d_z, pole)
        assert composed.coefficient(()) == LinearMap.identity(2).scale(-1 / gap ** 2)

    def test_substitute_and_evaluate(self, mult_z):
        shifted = mult_z.substitute({"z1": symbol("z1") + 1})
        assert shifted.evaluate({"z1": 2}) == DiffOp.from_matrix(LinearMap.identity(2).scale(3))

    def test_to_json(self, d_z, mult_z):
        data = (d_z @ mult_z).to_json()
        assert data["dim"] == 2
        assert sorted(term["derivative"] for term in data["terms"]) == ["1", "d_z1"]

    def test_dimension_mismatch(self, d_z):
        with pytest.raises(ValueError):
            op_compose(d_z, DiffOp.from_matrix(LinearMap.identity(3)))
        with pytest.raises(ValueError):
            DiffOp(2, {(): LinearMap.identity(3)})
