"""
Command response models using Pydantic.
"""
from typing import Any, Optional

from pydantic import BaseModel, Field

from defcalc.domain.models import CheckReport, CheckStatus, overall_status
from defcalc.infrastructure.report_constants import ExitCodes


class ErrorBody(BaseModel):
    """Error description attached to a response that could not run."""
    error: str = Field(description="Error class or category")
    detail: str = Field(description="Human-readable message")


class CommandResponse(BaseModel):
    """Everything a subcommand produced: its result payload and its checks."""
    command: str = Field(description="Subcommand path, e.g. 'kz check'")
    result: Optional[Any] = Field(
        default=None,
        description="Command-specific payload; values are strings or nested JSON",
    )
    checks: list[CheckReport] = Field(default_factory=list)
    error: Optional[ErrorBody] = None
    usage_error: bool = Field(default=False, description="Flags were malformed")

    @property
    def status(self) -> CheckStatus:
        if self.usage_error:
            return CheckStatus.FAIL
        return overall_status(self.checks)

    @property
    def exit_code(self) -> int:
        if self.usage_error:
            return ExitCodes.USAGE
        return ExitCodes.PASS if self.status is CheckStatus.PASS else ExitCodes.FAILURE

    class Config:
        json_schema_extra = {
            "example": {
                "command": "num",
                "result": {"input": {"kind": "qeta", "z": 2}, "value": "(1+q)/(1+eta)"},
                "checks": [],
            }
        }
