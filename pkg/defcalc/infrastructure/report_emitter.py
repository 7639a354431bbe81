"""
Deterministic JSON report emission.

The document layout is fixed: schema, command, result, checks (sorted by
check name, then by serialized parameters), status. Keys inside nested
objects are sorted, so identical inputs give byte-identical output.
"""
import json
import logging
import sys
from typing import Any, Iterable, Optional, TextIO

from defcalc.cli.models.responses import CommandResponse
from defcalc.domain.models import CheckReport, overall_status
from defcalc.infrastructure.report_constants import ReportSchema

logger = logging.getLogger(__name__)


def _canonical(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _canonical(value[k]) for k in sorted(value, key=str)}
    if isinstance(value, (list, tuple)):
        return [_canonical(v) for v in value]
    return value


def serialize_check(report: CheckReport) -> dict[str, Any]:
    data = report.model_dump(mode="json", exclude_none=True)
    ordered = {"check_name": data.pop("check_name"), "status": data.pop("status")}
    ordered.update({k: _canonical(v) for k, v in sorted(data.items())})
    return ordered


def sort_checks(checks: Iterable[CheckReport]) -> list[dict[str, Any]]:
    serialized = [serialize_check(c) for c in checks]
    return sorted(serialized, key=lambda c: (c["check_name"], json.dumps(c.get("parameters", {}), sort_keys=True)))


def build_document(command: str, checks: Iterable[CheckReport], result: Any = None,
                   error: Optional[dict[str, Any]] = None, status: Optional[str] = None) -> dict[str, Any]:
    checks = list(checks)
    document = {
        ReportSchema.SCHEMA: ReportSchema.VERSION,
        ReportSchema.COMMAND: command,
        ReportSchema.RESULT: _canonical(result),
        ReportSchema.CHECKS: sort_checks(checks),
        ReportSchema.STATUS: status or overall_status(checks).value,
    }
    if error is not None:
        document[ReportSchema.ERROR] = _canonical(error)
    return document


def emit_report(results: Iterable[CheckReport], command: str = "suite", result: Any = None) -> str:
    """
    Serialize check reports to the JSON report document.

    An empty result set yields ``"checks": []`` with status pass.
    """
    return json.dumps(build_document(command, results, result),
                      indent=ReportSchema.JSON_INDENT, ensure_ascii=False)


class ReportEmitter:
    """Writes command responses to a stream (stdout by default)."""

    def __init__(self, stream: Optional[TextIO] = None):
        self.stream = stream

    def render(self, response: CommandResponse) -> str:
        document = build_document(
            response.command,
            response.checks,
            response.result,
            error=response.error.model_dump() if response.error else None,
            status=response.status.value,
        )
        return json.dumps(document, indent=ReportSchema.JSON_INDENT, ensure_ascii=False)

    def emit(self, response: CommandResponse) -> str:
        text = self.render(response)
        stream = self.stream or sys.stdout
        stream.write(text + "\n")
        stream.flush()
        logger.debug(f"Emitted report for {response.command} with {len(response.checks)} checks")
        return text
