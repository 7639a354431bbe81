"""
Exact Gaussian elimination over the scalar field.

Systems are lists of ``(coefficients, rhs)`` rows where ``coefficients``
maps unknown names to scalars. Pivots are divided out exactly, so entries
stay in the rational-function field.
"""
import logging
from fractions import Fraction
from typing import Mapping, Sequence

from defcalc.domain.exceptions import NoSolution, UnderDetermined
from defcalc.domain.scalars import Scalar, collapse, format_scalar

logger = logging.getLogger(__name__)

Row = tuple[Mapping[str, Scalar], Scalar]

_RHS = "="


def _pivot_cost(value: Scalar) -> int:
    return len(format_scalar(value))


def _eliminate(row: dict[str, Scalar], pivot_row: dict[str, Scalar], column: str) -> dict[str, Scalar]:
    factor = row.get(column, 0)
    if factor == 0:
        return row
    reduced = dict(row)
    for name, value in pivot_row.items():
        updated = collapse(reduced.get(name, 0) - factor * value)
        if updated == 0:
            reduced.pop(name, None)
        else:
            reduced[name] = updated
    return reduced


def solve_linear_system(rows: Sequence[Row], unknowns: Sequence[str]) -> dict[str, Scalar]:
    """
    Solve a linear system exactly.

    Args:
        rows: Equations as (coefficient map, right-hand side)
        unknowns: Names of the unknowns, in column order

    Returns:
        The unique solution

    Raises:
        NoSolution: If the system is inconsistent
        UnderDetermined: If the solution set is a family; carries the
            particular solution (free unknowns set to 0) and a nullspace
            basis keyed by free unknown
    """
    columns = list(unknowns)
    pending: list[dict[str, Scalar]] = []
    for coefficients, rhs in rows:
        row = {name: collapse(value) for name, value in coefficients.items() if value != 0}
        if rhs != 0:
            row[_RHS] = collapse(rhs)
        pending.append(row)

    pivots: list[tuple[str, dict[str, Scalar]]] = []
    for column in columns:
        candidates = [i for i, row in enumerate(pending) if row.get(column, 0) != 0]
        if not candidates:
            continue
        index = min(candidates, key=lambda i: _pivot_cost(pending[i][column]))
        inverse = Fraction(1) / pending[index][column]
        pivot_row = {name: collapse(value * inverse) for name, value in pending[index].items()}
        pending = [_eliminate(row, pivot_row, column) for i, row in enumerate(pending) if i != index]
        pivots = [(c, _eliminate(row, pivot_row, column)) for c, row in pivots]
        pivots.append((column, pivot_row))

    for row in pending:
        if row.get(_RHS, 0) != 0:
            raise NoSolution(f"inconsistent equation 0 = {format_scalar(row[_RHS])}")

    solution: dict[str, Scalar] = {c: Fraction(0) for c in columns}
    for column, row in pivots:
        solution[column] = row.get(_RHS, Fraction(0))

    pivot_columns = {c for c, _ in pivots}
    free = [c for c in columns if c not in pivot_columns]
    if free:
        nullspace = {}
        for name in free:
            vector: dict[str, Scalar] = {c: Fraction(0) for c in columns}
            vector[name] = Fraction(1)
            for column, row in pivots:
                vector[column] = collapse(-row.get(name, Fraction(0)))
            nullspace[name] = vector
        logger.debug(f"System has {len(free)} free unknowns: {', '.join(free)}")
        raise UnderDetermined(
            f"solution family with free unknowns {', '.join(free)}",
            particular=solution,
            nullspace=nullspace,
        )
    return solution


def in_solution_family(
    candidate: Mapping[str, Scalar],
    particular: Mapping[str, Scalar],
    nullspace: Mapping[str, Mapping[str, Scalar]],
) -> bool:
    """
    Whether ``candidate`` lies in particular + span(nullspace).

    Each nullspace vector is 1 on its own free unknown and 0 on the other
    free unknowns, so the weights are read off the free unknowns.
    """
    combination: dict[str, Scalar] = dict(particular)
    for free, vector in nullspace.items():
        weight = candidate[free] - particular[free]
        for name, value in vector.items():
            combination[name] = combination[name] + weight * value
    return all(collapse(candidate[name] - combination[name]) == 0 for name in combination)
