"""
Error hierarchy for defcalc.

Every error carries the report status it maps to when a command fails
with it. Errors are raised by the domain layer and turned into reports by
the error handler middleware.
"""


class DefcalcError(Exception):
    """Base class for all defcalc errors."""

    status = "degenerate"

    def __init__(self, message: str, status: str | None = None):
        """
        Initialize the error with message and report status.

        Args:
            message: Error message
            status: Report status override ("degenerate" or "fail")
        """
        super().__init__(message)
        self.message = message
        if status is not None:
            self.status = status


# Exact scalars
class DivisionByZero(DefcalcError):
    """Division by the zero rational function."""


class PoleAtPoint(DefcalcError):
    """A denominator vanishes at the requested point."""


class DegenerateSample(DefcalcError):
    """No pole-free random sample point could be found."""


class UnassignedSymbol(DefcalcError):
    """An evaluation assignment does not cover every variable."""


# Deformations
class DenominatorVanishes(DefcalcError):
    """A concrete parameter choice zeroes a deformation denominator."""


class InexactDivision(DefcalcError):
    """A division that must be exact left a remainder (arithmetic bug)."""

    status = "fail"


class UndeformedShift(DefcalcError):
    """The shift map x' = x has a vanishing difference denominator."""


class ZeroLowerPochhammer(DefcalcError):
    """A lower hypergeometric Pochhammer factor vanishes."""


class InvalidSpecialization(DefcalcError):
    """The target kind is not a specialization of the source kind."""


# Linear systems
class NoSolution(DefcalcError):
    """An exact linear system is inconsistent."""

    status = "fail"


class UnderDetermined(DefcalcError):
    """An exact linear system has a solution family rather than one solution."""

    def __init__(self, message: str, particular=None, nullspace=None):
        super().__init__(message)
        self.particular = particular
        self.nullspace = nullspace or {}


# Representations and operators
class IndexOutOfRange(DefcalcError):
    """A tensor slot or generator index is out of range."""


class SameSlot(DefcalcError):
    """A two-tensor was requested on a single slot."""


class InvalidSite(DefcalcError):
    """A KZ site index is out of range."""


class InvalidIndex(DefcalcError):
    """A dynamical index is out of range."""


class RepresentationError(DefcalcError):
    """A constructed action violates the gl_M commutation relations."""

    status = "fail"


# Command line
class UsageError(DefcalcError):
    """Malformed command-line flags."""

    exit_code = 2
