"""
Shared pytest fixtures for all tests.

This module provides common fixtures including:
- Symbolic parameters (q, eta, kappa, hbar)
- Small gl_M tensor contexts and polynomial models
- Exact and probabilistic verification modes
- A command-line runner returning the parsed JSON report
"""
import json
from fractions import Fraction
from typing import Callable

import pytest

from defcalc.domain.models import CheckMode, VerificationMode
from defcalc.domain.scalars import RatFunc
from defcalc.domain.symbols import eta, q
from defcalc.main import run
from defcalc.services.domain import gl_rep, howe_duality
from defcalc.services.domain.deformed_numbers import DeformationParams
from defcalc.services.domain.kz_dd import KZContext, OperatorParams


# ============================================================
# Symbols and Parameters
# ============================================================

@pytest.fixture
def q_sym() -> RatFunc:
    return q()


@pytest.fixture
def eta_sym() -> RatFunc:
    return eta()


@pytest.fixture
def symbolic_params() -> DeformationParams:
    """Both deformation parameters left symbolic."""
    return DeformationParams()


@pytest.fixture
def concrete_params() -> DeformationParams:
    """A generic rational choice of q and eta."""
    return DeformationParams(q=Fraction(2), eta=Fraction(1, 3))


# ============================================================
# Representations and Operator Contexts
# ============================================================

@pytest.fixture
def vector_pair() -> gl_rep.TensorContext:
    """C^2 x C^2 as a gl_2 tensor context."""
    return gl_rep.tensor_power(gl_rep.vector_rep(2), 2)


@pytest.fixture
def symmetric_pair() -> gl_rep.TensorContext:
    """Sym^2(C^2) x Sym^2(C^2)."""
    return gl_rep.tensor_power(gl_rep.symmetric_power_rep(2, 2), 2)


@pytest.fixture
def kz_pair(vector_pair) -> KZContext:
    """Operator context on C^2 x C^2 with symbolic kappa, hbar, eta."""
    return KZContext(vector_pair, OperatorParams())


@pytest.fixture
def small_model() -> howe_duality.PolynomialModel:
    """N = 2, M = 2, truncated at degree 1."""
    return howe_duality.build_model(2, 2, 1)


# ============================================================
# Verification Modes
# ============================================================

@pytest.fixture
def exact_mode() -> VerificationMode:
    return VerificationMode(mode=CheckMode.EXACT)


@pytest.fixture
def probabilistic_mode() -> VerificationMode:
    return VerificationMode(mode=CheckMode.PROBABILISTIC, seed=11, trials=2)


# ============================================================
# Command Line
# ============================================================

@pytest.fixture
def cli(capsys) -> Callable[[list[str]], tuple[int, dict]]:
    """Run the command line and return (exit code, parsed report)."""
    def invoke(argv: list[str]) -> tuple[int, dict]:
        code = run(argv)
        out = capsys.readouterr().out
        return code, json.loads(out)
    return invoke
