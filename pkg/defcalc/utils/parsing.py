"""
Parsing of command-line flag values.

Scalar flags accept a rational ("3", "-1/2") or the literal name of the
symbol they stand for ("q", "eta", "hbar", "kappa") to request symbolic mode.
"""
import re
from fractions import Fraction

from defcalc.domain.exceptions import UsageError
from defcalc.domain.scalars import Scalar, parse_rational, symbol
from defcalc.domain.symbols import SymbolNames, dynamical_name, position_name

SYMBOLIC_FLAGS = (SymbolNames.Q, SymbolNames.ETA, SymbolNames.HBAR, SymbolNames.KAPPA)

_MODULE = re.compile(r"^(vector|sym:(\d+))$")


def parse_rational_flag(text: str, flag: str) -> Fraction:
    try:
        return parse_rational(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise UsageError(f"{flag}: expected a rational like 3 or -1/2, got {text!r}") from e


def parse_scalar_flag(text: str | None, name: str, flag: str) -> Scalar:
    """A rational, or the symbol ``name`` itself when the flag is omitted or names it."""
    if text is None or text.strip() == name:
        return symbol(name)
    if text.strip() in SYMBOLIC_FLAGS:
        raise UsageError(f"{flag}: symbol {text!r} cannot stand for {name}")
    return parse_rational_flag(text, flag)


def parse_rational_list(text: str, flag: str) -> list[Fraction]:
    """Comma-separated rationals, e.g. ``"1,0,-1/2"``."""
    if not text.strip():
        raise UsageError(f"{flag}: empty list")
    return [parse_rational_flag(part, flag) for part in text.split(",")]


def parse_int_list(text: str | None, flag: str) -> tuple[int, ...]:
    if text is None or not text.strip():
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as e:
        raise UsageError(f"{flag}: expected comma-separated integers, got {text!r}") from e


def parse_module(text: str) -> str:
    """``vector`` or ``sym:k``."""
    if not _MODULE.match(text.strip()):
        raise UsageError(f"--module: expected vector or sym:k, got {text!r}")
    return text.strip()


def parse_assignment(text: str, n_slots: int, rank: int) -> dict[str, Fraction]:
    """
    Parse an evaluation point like ``"z=0,1;lambda=0,0;kappa=1"``.

    ``z`` and ``lambda`` take one value per slot / per Cartan index and expand
    to z1..zN and lambda1..lambdaM; any other key names a single symbol.
    """
    assignment: dict[str, Fraction] = {}
    for group in filter(None, (g.strip() for g in text.split(";"))):
        if "=" not in group:
            raise UsageError(f"--eval: expected name=value, got {group!r}")
        key, _, values = group.partition("=")
        key = key.strip()
        parsed = parse_rational_list(values, "--eval")
        if key == SymbolNames.POSITION_PREFIX:
            if len(parsed) != n_slots:
                raise UsageError(f"--eval: z needs {n_slots} values, got {len(parsed)}")
            assignment.update({position_name(i + 1): v for i, v in enumerate(parsed)})
        elif key == SymbolNames.DYNAMICAL_PREFIX:
            if len(parsed) != rank:
                raise UsageError(f"--eval: lambda needs {rank} values, got {len(parsed)}")
            assignment.update({dynamical_name(a + 1): v for a, v in enumerate(parsed)})
        else:
            if len(parsed) != 1:
                raise UsageError(f"--eval: {key} takes a single value")
            assignment[key] = parsed[0]
    return assignment
