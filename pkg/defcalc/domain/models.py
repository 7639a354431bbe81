"""
Domain models shared across the verification layers.

These models describe reports, modes and enumerations. They are plain
pydantic models with no dependency on the algebra implementation.
"""
from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, Field, model_validator


class CheckStatus(str, Enum):
    """Outcome of a single verification."""
    PASS = "pass"
    FAIL = "fail"
    DEGENERATE = "degenerate"


class CheckMode(str, Enum):
    """How an identity is decided."""
    EXACT = "exact"
    PROBABILISTIC = "probabilistic"


class DeformedKind(str, Enum):
    """The deformations of numbers, plus the undeformed case."""
    CLASSICAL = "classical"
    Q = "q"
    ETA = "eta"
    Q_ETA = "qeta"


class OperatorKind(str, Enum):
    """Rational, trigonometric and rational-trigonometric operator families."""
    RATIONAL = "r"
    TRIGONOMETRIC = "t"
    RATIONAL_TRIGONOMETRIC = "rt"


class Construction(str, Enum):
    """How a rational-trigonometric operator is assembled."""
    DIRECT = "direct"
    SUBSTITUTION = "substitution"


class VerificationMode(BaseModel):
    """Exactness mode together with the sampling parameters it needs."""
    mode: CheckMode = CheckMode.EXACT
    seed: int = 0
    trials: int = Field(default=5, ge=1)

    model_config = {"frozen": True}

    def as_parameters(self) -> dict[str, Any]:
        """Parameters recorded in every report produced under this mode."""
        if self.mode is CheckMode.EXACT:
            return {"mode": self.mode.value}
        return {"mode": self.mode.value, "seed": self.seed, "trials": self.trials}


class CheckReport(BaseModel):
    """Machine-readable outcome of one verification."""
    check_name: str = Field(description="Stable identifier of the check")
    parameters: dict[str, Any] = Field(
        default_factory=dict,
        description="Inputs of the check; rationals as 'p/q' strings, seeds as integers",
    )
    status: CheckStatus
    witness: Optional[dict[str, Any]] = Field(
        default=None,
        description="Counterexample or failure context",
    )
    details: Optional[dict[str, Any]] = Field(
        default=None,
        description="Observed values, e.g. both sides of an identity",
    )

    @model_validator(mode="after")
    def _failure_has_witness(self) -> "CheckReport":
        if self.status is CheckStatus.FAIL and self.witness is None:
            raise ValueError(f"failing check '{self.check_name}' must carry a witness")
        return self

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASS

    @classmethod
    def from_outcome(
        cls,
        check_name: str,
        ok: bool,
        parameters: Optional[dict[str, Any]] = None,
        witness: Optional[dict[str, Any]] = None,
        details: Optional[dict[str, Any]] = None,
    ) -> "CheckReport":
        """
        Build a pass/fail report from a boolean outcome.

        Args:
            check_name: Identifier of the check
            ok: Whether the identity held
            parameters: Check inputs
            witness: Counterexample, used only when the check failed
            details: Observations kept in both outcomes

        Returns:
            CheckReport instance
        """
        if ok:
            return cls(check_name=check_name, parameters=parameters or {},
                       status=CheckStatus.PASS, details=details)
        return cls(
            check_name=check_name,
            parameters=parameters or {},
            status=CheckStatus.FAIL,
            witness=witness or {"reason": "identity does not hold"},
            details=details,
        )


def overall_status(reports: list[CheckReport]) -> CheckStatus:
    """Aggregate status: pass iff every check passes, fail dominates degenerate."""
    statuses = {r.status for r in reports}
    if CheckStatus.FAIL in statuses:
        return CheckStatus.FAIL
    if CheckStatus.DEGENERATE in statuses:
        return CheckStatus.DEGENERATE
    return CheckStatus.PASS
