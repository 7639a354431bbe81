"""
Sparse monomial helpers.

A monomial is a tuple of ``(variable, exponent)`` pairs with positive
exponents, sorted by the canonical variable order. The same shape is used
for polynomial monomials and for derivative monomials of differential
operators.
"""
import re
from functools import lru_cache
from math import comb
from typing import Iterator

Monomial = tuple[tuple[str, int], ...]

ONE: Monomial = ()

_DIGITS = re.compile(r"(\d+)")


@lru_cache(maxsize=None)
def variable_key(name: str) -> tuple:
    """
    Natural sort key for a symbol name, so that ``z2`` sorts before ``z10``.

    Args:
        name: Symbol name

    Returns:
        Tuple alternating text and integer chunks
    """
    parts = _DIGITS.split(name)
    return tuple(int(part) if i % 2 else part for i, part in enumerate(parts))


def sort_variables(names) -> tuple[str, ...]:
    """Return the names in canonical variable order, without duplicates."""
    return tuple(sorted(set(names), key=variable_key))


def make_monomial(exponents: dict[str, int]) -> Monomial:
    """Build a canonical monomial from a variable -> exponent mapping."""
    return tuple(
        sorted(((v, e) for v, e in exponents.items() if e), key=lambda item: variable_key(item[0]))
    )


@lru_cache(maxsize=65536)
def monomial_mul(m1: Monomial, m2: Monomial) -> Monomial:
    """Product of two monomials."""
    if not m1:
        return m2
    if not m2:
        return m1
    exponents = dict(m1)
    for var, exp in m2:
        exponents[var] = exponents.get(var, 0) + exp
    return make_monomial(exponents)


def monomial_div(m1: Monomial, m2: Monomial) -> Monomial | None:
    """
    Quotient ``m1 / m2`` if ``m2`` divides ``m1``.

    Returns:
        The quotient monomial, or None when m2 does not divide m1
    """
    if not m2:
        return m1
    exponents = dict(m1)
    for var, exp in m2:
        left = exponents.get(var, 0) - exp
        if left < 0:
            return None
        exponents[var] = left
    return make_monomial(exponents)


def monomial_gcd(m1: Monomial, m2: Monomial) -> Monomial:
    """Greatest common divisor of two monomials."""
    other = dict(m2)
    return make_monomial({v: min(e, other[v]) for v, e in m1 if v in other})


def monomial_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def monomial_exponent(m: Monomial, var: str) -> int:
    for v, e in m:
        if v == var:
            return e
    return 0


@lru_cache(maxsize=65536)
def grlex_key(m: Monomial) -> tuple:
    """
    Sort key placing monomials in descending graded lexicographic order.

    Sorting ascending by this key yields the leading monomial first. The
    lexicographic part compares the first variable (in canonical order)
    where exponents differ; the trailing ``(1,)`` sentinel makes a proper
    prefix sort after its extensions.

    Args:
        m: Monomial

    Returns:
        Comparable key
    """
    lex = tuple((0, variable_key(v), -e) for v, e in m) + ((1,),)
    return (-monomial_degree(m), lex)


def sub_multi_indices(m: Monomial) -> Iterator[tuple[Monomial, int]]:
    """
    Enumerate the monomials dividing ``m`` with their multi-binomial weights.

    Yields:
        (gamma, C(m, gamma)) for every gamma <= m componentwise
    """
    def walk(index: int, chosen: dict[str, int], weight: int):
        if index == len(m):
            yield make_monomial(chosen), weight
            return
        var, exp = m[index]
        for k in range(exp + 1):
            chosen[var] = k
            yield from walk(index + 1, chosen, weight * comb(exp, k))
        del chosen[var]

    yield from walk(0, {}, 1)


def monomial_to_string(m: Monomial) -> str:
    """Render a monomial as ``q^2*eta``; the empty monomial renders as ``1``."""
    if not m:
        return "1"
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
