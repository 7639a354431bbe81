"""
Names of the symbols used throughout the package.
"""
from defcalc.domain.scalars import RatFunc, symbol


class SymbolNames:
    """Canonical symbol names, also accepted verbatim on the command line."""

    Q = "q"
    ETA = "eta"
    HBAR = "hbar"
    KAPPA = "kappa"
    POSITION_PREFIX = "z"
    DYNAMICAL_PREFIX = "lambda"
    PLANE_X = "x"


def position_name(i: int) -> str:
    """Name of the i-th position variable (1-based)."""
    return f"{SymbolNames.POSITION_PREFIX}{i}"


def dynamical_name(a: int) -> str:
    """Name of the a-th dynamical variable (1-based)."""
    return f"{SymbolNames.DYNAMICAL_PREFIX}{a}"


def q() -> RatFunc:
    return symbol(SymbolNames.Q)


def eta() -> RatFunc:
    return symbol(SymbolNames.ETA)


def hbar() -> RatFunc:
    return symbol(SymbolNames.HBAR)


def kappa() -> RatFunc:
    return symbol(SymbolNames.KAPPA)
