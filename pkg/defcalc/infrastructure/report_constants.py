"""
Report schema constants.

Everything the report emitter writes that a downstream consumer may key on
lives here, so a schema bump touches a single module.
"""


class ReportSchema:
    """Top-level report document layout."""

    VERSION = "defcalc/1"

    # Field names of the emitted document
    SCHEMA = "schema"
    COMMAND = "command"
    RESULT = "result"
    CHECKS = "checks"
    STATUS = "status"
    ERROR = "error"

    JSON_INDENT = 2


class ExitCodes:
    """Process exit codes."""

    PASS = 0
    FAILURE = 1
    USAGE = 2


class Subcommands:
    """Names of the command-line subcommands."""

    NUM = "num"
    SERIES = "series"
    DIFFOP = "diffop"
    PLANE = "plane"
    GL = "gl"
    KZ = "kz"
    DUALITY = "duality"
    SUITE = "suite"

    ALL = (NUM, SERIES, DIFFOP, PLANE, GL, KZ, DUALITY, SUITE)
