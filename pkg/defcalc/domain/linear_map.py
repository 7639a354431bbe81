"""
Sparse exact matrices over the scalar field.

A LinearMap stores its nonzero entries row by row. Entries are Scalars:
Fractions for the representation matrices, rational functions once
positions, dynamical variables or parameters enter.
"""
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Optional, Sequence

from defcalc.domain.scalars import (
    Scalar,
    collapse,
    format_scalar,
    scalar_derivative,
    scalar_evaluate,
    scalar_partial_evaluate,
    scalar_substitute,
    scalar_variables,
)
from defcalc.utils.monomials import sort_variables


class LinearMap:
    """Immutable rows x cols matrix with exact entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Optional[Mapping[tuple[int, int], object]] = None):
        """
        Build a matrix from a (row, col) -> value mapping (0-based indices).

        Zero entries are dropped.
        """
        data: dict[int, dict[int, Scalar]] = {}
        for (r, c), value in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside a {rows}x{cols} matrix")
            value = collapse(value)
            if value != 0:
                data.setdefault(r, {})[c] = value
        self.rows = rows
        self.cols = cols
        self._data = data

    @classmethod
    def _wrap(cls, rows: int, cols: int, data: dict[int, dict[int, Scalar]]) -> "LinearMap":
        matrix = object.__new__(cls)
        matrix.rows = rows
        matrix.cols = cols
        matrix._data = {r: row for r, row in data.items() if row}
        return matrix

    @classmethod
    def zero(cls, rows: int, cols: Optional[int] = None) -> "LinearMap":
        return cls._wrap(rows, rows if cols is None else cols, {})

    @classmethod
    def identity(cls, dim: int) -> "LinearMap":
        return cls._wrap(dim, dim, {i: {i: Fraction(1)} for i in range(dim)})

    @classmethod
    def elementary(cls, dim: int, row: int, col: int) -> "LinearMap":
        """Matrix unit with a single 1 at (row, col), 0-based."""
        return cls._wrap(dim, dim, {row: {col: Fraction(1)}})

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[object]]) -> "LinearMap":
        height = len(rows)
        width = len(rows[0]) if rows else 0
        return cls(height, width, {(r, c): v for r, row in enumerate(rows) for c, v in enumerate(row)})

    # ------------------------------------------------------------------
    # Views
    # ------------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_zero(self) -> bool:
        return not self._data

    def __getitem__(self, index: tuple[int, int]) -> Scalar:
        r, c = index
        return self._data.get(r, {}).get(c, Fraction(0))

    def entries(self) -> Iterator[tuple[tuple[int, int], Scalar]]:
        """Nonzero entries in row-major order."""
        for r in sorted(self._data):
            row = self._data[r]
            for c in sorted(row):
                yield (r, c), row[c]

    def dense(self) -> list[list[Scalar]]:
        return [[self[r, c] for c in range(self.cols)] for r in range(self.rows)]

    def diagonal(self) -> list[Scalar]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    @property
    def variables(self) -> tuple[str, ...]:
        return sort_variables(v for _, value in self.entries() for v in scalar_variables(value))

    # ------------------------------------------------------------------
    # Linear algebra
    # ------------------------------------------------------------------

    def _check_same_shape(self, other: "LinearMap") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def _combine(self, other: "LinearMap", sign: int) -> "LinearMap":
        self._check_same_shape(other)
        data = {r: dict(row) for r, row in self._data.items()}
        for r, row in other._data.items():
            target = data.setdefault(r, {})
            for c, value in row.items():
                updated = collapse(target.get(c, 0) + sign * value)
                if updated == 0:
                    target.pop(c, None)
                else:
                    target[c] = updated
        return LinearMap._wrap(self.rows, self.cols, data)

    def __add__(self, other: "LinearMap") -> "LinearMap":
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self._combine(other, 1)

    def __sub__(self, other: "LinearMap") -> "LinearMap":
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self._combine(other, -1)

    def __neg__(self) -> "LinearMap":
        return self.scale(-1)

    def scale(self, factor) -> "LinearMap":
        """Multiply every entry by a scalar."""
        factor = collapse(factor)
        if factor == 0:
            return LinearMap.zero(self.rows, self.cols)
        if factor == 1:
            return self
        data = {r: {c: collapse(value * factor) for c, value in row.items()} for r, row in self._data.items()}
        return LinearMap._wrap(self.rows, self.cols, data)

    def __mul__(self, factor) -> "LinearMap":
        if isinstance(factor, LinearMap):
            return NotImplemented
        return self.scale(factor)

    __rmul__ = __mul__

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        if not isinstance(other, LinearMap):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        data: dict[int, dict[int, Scalar]] = {}
        for r, row in self._data.items():
            target: dict[int, Scalar] = {}
            for k, left in row.items():
                right_row = other._data.get(k)
                if not right_row:
                    continue
                for c, right in right_row.items():
                    target[c] = target.get(c, 0) + left * right
            cleaned = {c: collapse(v) for c, v in target.items()}
            cleaned = {c: v for c, v in cleaned.items() if v != 0}
            if cleaned:
                data[r] = cleaned
        return LinearMap._wrap(self.rows, other.cols, data)

    def kron(self, other: "LinearMap") -> "LinearMap":
        """Kronecker product, with ``self`` as the outer (slower) index."""
        data: dict[int, dict[int, Scalar]] = {}
        for r1, row1 in self._data.items():
            for r2, row2 in other._data.items():
                target = data.setdefault(r1 * other.rows + r2, {})
                for c1, v1 in row1.items():
                    for c2, v2 in row2.items():
                        target[c1 * other.cols + c2] = collapse(v1 * v2)
        return LinearMap._wrap(self.rows * other.rows, self.cols * other.cols, data)

    def restrict(self, indices: Sequence[int]) -> "LinearMap":
        """Principal submatrix on the given basis indices."""
        position = {index: k for k, index in enumerate(indices)}
        data = {}
        for r in indices:
            row = self._data.get(r)
            if not row:
                continue
            picked = {position[c]: v for c, v in row.items() if c in position}
            if picked:
                data[position[r]] = picked
        return LinearMap._wrap(len(indices), len(indices), data)

    def preserves(self, indices: Iterable[int]) -> bool:
        """Whether the span of the given basis vectors is invariant."""
        block = set(indices)
        return all(r in block for r, row in self._data.items() for c in row if c in block)

    # ------------------------------------------------------------------
    # Entry-wise calculus
    # ------------------------------------------------------------------

    def map_entries(self, fn: Callable[[Scalar], object]) -> "LinearMap":
        data = {}
        for r, row in self._data.items():
            mapped = {c: collapse(fn(v)) for c, v in row.items()}
            mapped = {c: v for c, v in mapped.items() if v != 0}
            if mapped:
                data[r] = mapped
        return LinearMap._wrap(self.rows, self.cols, data)

    def derivative(self, var: str) -> "LinearMap":
        return self.map_entries(lambda v: scalar_derivative(v, var))

    def evaluate(self, assignment: Mapping[str, object]) -> "LinearMap":
        return self.map_entries(lambda v: scalar_evaluate(v, assignment))

    def partial_evaluate(self, assignment: Mapping[str, object]) -> "LinearMap":
        return self.map_entries(lambda v: scalar_partial_evaluate(v, assignment))

    def substitute(self, mapping: Mapping[str, object]) -> "LinearMap":
        return self.map_entries(lambda v: scalar_substitute(v, mapping))

    # ------------------------------------------------------------------
    # Comparison and serialization
    # ------------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.shape == other.shape and (self - other).is_zero

    __hash__ = None

    def to_json(self) -> dict:
        return {
            "shape": [self.rows, self.cols],
            "entries": [[r, c, format_scalar(v)] for (r, c), v in self.entries()],
        }

    def __repr__(self) -> str:
        return f"LinearMap({self.rows}x{self.cols}, nnz={sum(len(row) for row in self._data.values())})"


def commutator(a: LinearMap, b: LinearMap) -> LinearMap:
    """[a, b] = ab - ba."""
    return a @ b - b @ a
