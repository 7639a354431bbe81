"""
Matrix-valued differential operators.

A DiffOp is a finite sum  sum_alpha A_alpha * d^alpha  where alpha is a
derivative monomial over the differentiation variables and A_alpha is a
square LinearMap whose entries are rational functions. Operators act on
vector-valued functions, so composition moves derivatives past
coefficients by the Leibniz rule.
"""
import logging
from typing import Iterator, Mapping, Optional

from defcalc.domain.linear_map import LinearMap
from defcalc.utils.monomials import (
    ONE,
    Monomial,
    grlex_key,
    make_monomial,
    monomial_div,
    monomial_mul,
    sub_multi_indices,
    sort_variables,
)

logger = logging.getLogger(__name__)


def _derive(matrix: LinearMap, gamma: Monomial) -> LinearMap:
    for var, exp in gamma:
        for _ in range(exp):
            matrix = matrix.derivative(var)
    return matrix


def derivative_to_string(monomial: Monomial) -> str:
    """Render a derivative monomial, e.g. ``d_z1^2*d_lambda1``; order zero is ``1``."""
    if not monomial:
        return "1"
    return "*".join(f"d_{v}" if e == 1 else f"d_{v}^{e}" for v, e in monomial)


class DiffOp:
    """Immutable matrix-valued differential operator on a fixed-dimensional space."""

    __slots__ = ("dim", "_terms")

    def __init__(self, dim: int, terms: Optional[Mapping[Monomial, LinearMap]] = None):
        cleaned: dict[Monomial, LinearMap] = {}
        for monomial, matrix in (terms or {}).items():
            if matrix.shape != (dim, dim):
                raise ValueError(f"coefficient of shape {matrix.shape} in a {dim}-dimensional operator")
            key = make_monomial(dict(monomial))
            if key in cleaned:
                matrix = cleaned[key] + matrix
            if matrix.is_zero:
                cleaned.pop(key, None)
            else:
                cleaned[key] = matrix
        self.dim = dim
        self._terms = cleaned

    @classmethod
    def zero(cls, dim: int) -> "DiffOp":
        return cls(dim)

    @classmethod
    def from_matrix(cls, matrix: LinearMap) -> "DiffOp":
        """Order-zero operator: multiplication by a matrix."""
        return cls(matrix.rows, {ONE: matrix})

    @classmethod
    def derivation(cls, var: str, coefficient: LinearMap) -> "DiffOp":
        """coefficient * d/d(var)."""
        return cls(coefficient.rows, {((var, 1),): coefficient})

    # ------------------------------------------------------------------
    # Views
    # ------------------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, LinearMap]:
        return dict(self._terms)

    def coefficient(self, monomial: Monomial) -> LinearMap:
        return self._terms.get(make_monomial(dict(monomial)), LinearMap.zero(self.dim))

    def items(self) -> Iterator[tuple[Monomial, LinearMap]]:
        """Terms with the highest-order derivatives first."""
        for monomial in sorted(self._terms, key=grlex_key):
            yield monomial, self._terms[monomial]

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def order(self) -> int:
        return max((sum(e for _, e in m) for m in self._terms), default=-1)

    @property
    def variables(self) -> tuple[str, ...]:
        """Symbols occurring in the coefficient matrices."""
        return sort_variables(v for matrix in self._terms.values() for v in matrix.variables)

    # ------------------------------------------------------------------
    # Algebra
    # ------------------------------------------------------------------

    def _check_dim(self, other: "DiffOp") -> None:
        if self.dim != other.dim:
            raise ValueError(f"operators on spaces of dimension {self.dim} and {other.dim}")

    def __add__(self, other: "DiffOp") -> "DiffOp":
        if not isinstance(other, DiffOp):
            return NotImplemented
        self._check_dim(other)
        terms = dict(self._terms)
        for monomial, matrix in other._terms.items():
            terms[monomial] = terms[monomial] + matrix if monomial in terms else matrix
        return DiffOp(self.dim, terms)

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "DiffOp":
        return self.scale(-1)

    def scale(self, factor) -> "DiffOp":
        return DiffOp(self.dim, {m: matrix.scale(factor) for m, matrix in self._terms.items()})

    def __mul__(self, factor) -> "DiffOp":
        if isinstance(factor, (DiffOp, LinearMap)):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def __matmul__(self, other: "DiffOp") -> "DiffOp":
        if not isinstance(other, DiffOp):
            return NotImplemented
        return op_compose(self, other)

    # ------------------------------------------------------------------
    # Coefficient maps
    # ------------------------------------------------------------------

    def evaluate(self, assignment: Mapping[str, object]) -> "DiffOp":
        """Evaluate every coefficient at a rational point (derivatives stay formal)."""
        return DiffOp(self.dim, {m: matrix.evaluate(assignment) for m, matrix in self._terms.items()})

    def partial_evaluate(self, assignment: Mapping[str, object]) -> "DiffOp":
        return DiffOp(self.dim, {m: matrix.partial_evaluate(assignment) for m, matrix in self._terms.items()})

    def substitute(self, mapping: Mapping[str, object]) -> "DiffOp":
        """
        Substitute scalars for symbols in the coefficients.

        Derivative monomials are left untouched; callers only substitute
        maps with unit Jacobian on the differentiation variables.
        """
        return DiffOp(self.dim, {m: matrix.substitute(mapping) for m, matrix in self._terms.items()})

    def restrict(self, indices) -> "DiffOp":
        return DiffOp(len(indices), {m: matrix.restrict(indices) for m, matrix in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.dim == other.dim and (self - other).is_zero

    __hash__ = None

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "terms": [
                {"derivative": derivative_to_string(m), "matrix": matrix.to_json()}
                for m, matrix in self.items()
            ],
        }

    def __repr__(self) -> str:
        parts = ", ".join(derivative_to_string(m) for m, _ in self.items())
        return f"DiffOp(dim={self.dim}, terms=[{parts}])"


def op_compose(a: DiffOp, b: DiffOp, at: Optional[Mapping[str, object]] = None) -> DiffOp:
    """
    Composition a o b in the algebra of differential operators.

    d^alpha o B = sum_{gamma <= alpha} C(alpha, gamma) (d^gamma B) d^(alpha - gamma)

    Args:
        a: Left operator
        b: Right operator
        at: Optional rational point; when given, coefficients are evaluated
            there after the exact derivatives are taken, so the result has
            rational matrices

    Returns:
        The composed operator
    """
    a._check_dim(b)
    terms: dict[Monomial, LinearMap] = {}
    derived: dict[tuple[Monomial, Monomial], LinearMap] = {}

    def derived_coefficient(beta: Monomial, gamma: Monomial) -> LinearMap:
        key = (beta, gamma)
        if key not in derived:
            matrix = _derive(b._terms[beta], gamma)
            derived[key] = matrix.evaluate(at) if at is not None else matrix
        return derived[key]

    for alpha, left in a._terms.items():
        left = left.evaluate(at) if at is not None else left
        for gamma, weight in sub_multi_indices(alpha):
            rest = monomial_div(alpha, gamma)
            for beta in b._terms:
                right = derived_coefficient(beta, gamma)
                if right.is_zero:
                    continue
                product = left @ right
                if product.is_zero:
                    continue
                key = monomial_mul(rest, beta)
                contribution = product.scale(weight)
                terms[key] = terms[key] + contribution if key in terms else contribution
    return DiffOp(a.dim, terms)


def op_commutator(a: DiffOp, b: DiffOp, at: Optional[Mapping[str, object]] = None) -> DiffOp:
    """[a, b] = a o b - b o a, optionally evaluated at a point."""
    return op_compose(a, b, at) - op_compose(b, a, at)
