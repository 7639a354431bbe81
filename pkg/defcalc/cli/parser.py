"""
Argument parser for the ``defcalc`` command line.
"""
import argparse
from typing import NoReturn

from defcalc.domain.exceptions import UsageError
from defcalc.domain.models import Construction, DeformedKind, OperatorKind
from defcalc.infrastructure.report_constants import Subcommands
from defcalc.services.domain.kz_dd import Identity
from defcalc.services.domain.quantum_plane import RewriteStrategy


class DefcalcArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


def _kinds(enum) -> list[str]:
    return [member.value for member in enum]


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _add_deformation_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--q", default=None, help="Rational value of q, or 'q' for symbolic (default)")
    parser.add_argument("--eta", default=None, help="Rational value of eta, or 'eta' for symbolic (default)")


def _add_operator_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--kappa", default=None, help="Rational value of kappa, or 'kappa' (default)")
    parser.add_argument("--hbar", default=None, help="Rational value of hbar, or 'hbar' (default)")
    parser.add_argument("--eta", default=None, help="Rational value of eta, or 'eta' (default)")


def _add_size_flags(parser: argparse.ArgumentParser, module: bool = True) -> None:
    parser.add_argument("--M", dest="rank", type=int, default=2, help="Rank M of gl_M")
    parser.add_argument("--N", dest="n_slots", type=int, default=2, help="Number of tensor factors N")
    if module:
        parser.add_argument("--module", default="vector", help="vector or sym:k")


def _add_sampling_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=None, help="PRNG seed (default from settings)")
    parser.add_argument("--trials", type=_positive_int, default=None, help="Probabilistic trials")
    exactness = parser.add_mutually_exclusive_group()
    exactness.add_argument("--exact", dest="exact", action="store_const", const=True, default=None,
                           help="Force exact symbolic expansion")
    exactness.add_argument("--probabilistic", dest="exact", action="store_const", const=False,
                           help="Force evaluation at seeded random points")


def build_parser() -> DefcalcArgumentParser:
    parser = DefcalcArgumentParser(
        prog="defcalc",
        description="Exact verification of deformed numbers, calculus, series, "
                    "the (q, eta)-plane and KZ / DD operators.",
    )
    parser.add_argument("--log-level", default=None, help="Logging level for stderr diagnostics")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=DefcalcArgumentParser)

    num = sub.add_parser(Subcommands.NUM, help="Deformed number (z)_kind")
    num.add_argument("--kind", choices=_kinds(DeformedKind), required=True)
    num.add_argument("--z", type=int, required=True)
    _add_deformation_flags(num)

    series = sub.add_parser(Subcommands.SERIES, help="Truncated exponential or hypergeometric series")
    series.add_argument("which", choices=["exp", "hyp"])
    series.add_argument("--kind", choices=_kinds(DeformedKind), default=DeformedKind.Q_ETA.value)
    series.add_argument("--order", type=int, default=8)
    series.add_argument("--a", default=None, help="Upper parameters, e.g. 2,3")
    series.add_argument("--b", default=None, help="Lower parameters, e.g. 4")
    series.add_argument("--specialize", choices=_kinds(DeformedKind), default=None,
                        help="Also verify the specialization to this kind")
    _add_deformation_flags(series)

    diffop = sub.add_parser(Subcommands.DIFFOP, help="Deformed derivative of a polynomial")
    diffop.add_argument("--poly", required=True, help="Coefficients c0,c1,... in increasing degree")
    diffop.add_argument("--scale", default="q", help="Multiplicative part of the shift, or 'q'")
    diffop.add_argument("--shift", default="eta", help="Additive part of the shift, or 'eta'")

    plane = sub.add_parser(Subcommands.PLANE, help="The (q, eta)-quantum plane")
    plane_sub = plane.add_subparsers(dest="plane_command", required=True, parser_class=DefcalcArgumentParser)
    normal = plane_sub.add_parser("normal-order", help="Normal form of a word over {x, y}")
    normal.add_argument("--word", required=True)
    normal.add_argument("--strategy", choices=_kinds(RewriteStrategy), default=RewriteStrategy.LEFTMOST.value)
    _add_deformation_flags(normal)
    funceq = plane_sub.add_parser("funceq", help="Solve f1(x+y) = f2(y) f3(x) degree by degree")
    funceq.add_argument("--degree", type=int, default=6)
    _add_deformation_flags(funceq)
    confluence = plane_sub.add_parser("confluence", help="Rewriting strategies agree on random words")
    confluence.add_argument("--words", type=int, default=200)
    confluence.add_argument("--length", type=int, default=8)
    confluence.add_argument("--seed", type=int, default=None)
    _add_deformation_flags(confluence)

    gl = sub.add_parser(Subcommands.GL, help="gl_M representation checks")
    gl_sub = gl.add_subparsers(dest="gl_command", required=True, parser_class=DefcalcArgumentParser)
    gl_check = gl_sub.add_parser("check")
    _add_size_flags(gl_check)

    kz = sub.add_parser(Subcommands.KZ, help="KZ and DD operators")
    kz_sub = kz.add_subparsers(dest="kz_command", required=True, parser_class=DefcalcArgumentParser)
    build = kz_sub.add_parser("build", help="Dump an operator as derivative monomial -> matrix")
    build.add_argument("--family", choices=["kz", "dd"], default="kz")
    build.add_argument("--kind", choices=_kinds(OperatorKind), required=True)
    build.add_argument("--site", "--index", dest="index", type=int, default=1,
                       help="KZ site i or DD index a (1-based)")
    build.add_argument("--construction", choices=_kinds(Construction), default=Construction.DIRECT.value)
    build.add_argument("--eval", dest="point", default=None, help='e.g. "z=0,1;lambda=0,0;kappa=1"')
    _add_size_flags(build)
    _add_operator_flags(build)
    check = kz_sub.add_parser("check", help="Decide an operator identity")
    check.add_argument("--which", choices=list(Identity.ALL), required=True)
    check.add_argument("--kind", choices=_kinds(OperatorKind), default=OperatorKind.RATIONAL.value)
    _add_size_flags(check)
    _add_operator_flags(check)
    _add_sampling_flags(check)

    duality = sub.add_parser(Subcommands.DUALITY, help="KZ / DD duality on the polynomial model")
    duality.add_argument("--kind", choices=_kinds(OperatorKind), required=True)
    _add_size_flags(duality, module=False)
    duality.add_argument("--degree", type=int, default=2)
    duality.add_argument("--record", action="store_true",
                         help="Record nonzero residuals as observations instead of failing")
    _add_operator_flags(duality)
    _add_sampling_flags(duality)

    suite = sub.add_parser(Subcommands.SUITE, help="Run the verification suite")
    selection = suite.add_mutually_exclusive_group(required=True)
    selection.add_argument("--all", action="store_true")
    selection.add_argument("--only", action="append", default=None, help="Check-name prefix (repeatable)")
    suite.add_argument("--seed", type=int, default=None)
    suite.add_argument("--trials", type=_positive_int, default=None)
    return parser


def parse_args(argv: list[str]) -> argparse.Namespace:
    return build_parser().parse_args(argv)
