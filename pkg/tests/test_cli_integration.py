"""
Integration tests for the defcalc command line.

Each test runs a full command through parsing, the error handler and the
report emitter, then inspects the exit code and the JSON document.
"""
import pytest

from defcalc.cli.parser import parse_args
from defcalc.main import command_path, run


# ============================================================
# Numbers, Series and Difference Operators
# ============================================================

class TestNumberCommands:
    """Tests for num, series and diffop."""

    def test_num_symbolic(self, cli):
        """(2)_qeta = (1+q)/(1+eta)."""
        code, report = cli(["num", "--kind", "qeta", "--z", "2"])
        assert code == 0
        assert report["schema"] == "defcalc/1"
        assert report["command"] == "num"
        assert report["result"]["value"] == "(1+q)/(1+eta)"
        assert report["status"] == "pass"

    def test_num_concrete(self, cli):
        code, report = cli(["num", "--kind", "eta", "--z", "2", "--eta", "1/3"])
        assert code == 0
        assert report["result"]["value"] == "3/2"

    def test_num_vanishing_denominator(self, cli):
        """eta = -1 zeroes 1 + eta(z-1) at z = 2."""
        code, report = cli(["num", "--kind", "eta", "--z", "2", "--eta", "-1"])
        assert code == 1
        assert report["status"] == "degenerate"
        assert report["checks"][0]["check_name"] == "num.error"

    def test_series_exp(self, cli):
        code, report = cli(["series", "exp", "--order", "4", "--specialize", "q"])
        assert code == 0
        assert report["command"] == "series exp"
        assert len(report["checks"]) == 2

    def test_series_hyp(self, cli):
        code, report = cli(["series", "hyp", "--a", "2", "--b", "3", "--order", "3"])
        assert code == 0
        assert report["result"]["input"]["series"] == "hyp"

    def test_series_vanishing_number(self, cli):
        """q = -1 zeroes (2)_q in the exponential."""
        code, report = cli(["series", "exp", "--kind", "q", "--q", "-1", "--order", "3"])
        assert code == 1
        assert report["status"] == "degenerate"
        assert report["checks"][0]["witness"]["error"] == "DenominatorVanishes"

    def test_series_order_limit(self, cli):
        code, report = cli(["series", "exp", "--order", "99"])
        assert code == 2
        assert report["error"]["error"] == "usage"

    def test_diffop(self, cli):
        """D x^2 = (1+q) x + eta for x' = qx + eta."""
        code, report = cli(["diffop", "--poly", "0,0,1"])
        assert code == 0
        assert report["result"]["output"] == ["eta", "1+q"]


# ============================================================
# Plane and gl_M
# ============================================================

class TestStructureCommands:
    """Tests for plane and gl subcommands."""

    def test_normal_order(self, cli):
        code, report = cli(["plane", "normal-order", "--word", "xy", "--q", "2", "--eta", "1"])
        assert code == 0
        assert report["command"] == "plane normal-order"

    def test_bad_word(self, cli):
        code, _ = cli(["plane", "normal-order", "--word", "xz"])
        assert code == 2

    def test_funceq(self, cli):
        code, report = cli(["plane", "funceq", "--degree", "3"])
        assert code == 0
        assert [row["n"] for row in report["result"]["coefficients"]] == [0, 1, 2, 3]

    def test_confluence(self, cli):
        code, _ = cli(["plane", "confluence", "--words", "20", "--length", "5", "--seed", "3"])
        assert code == 0

    def test_gl_check(self, cli):
        code, report = cli(["gl", "check", "--M", "2", "--N", "2"])
        assert code == 0
        assert report["result"]["dim"] == 4
        assert "gl.omega_flip" in [c["check_name"] for c in report["checks"]]


# ============================================================
# KZ / DD and Duality
# ============================================================

class TestOperatorCommands:
    """Tests for kz and duality."""

    def test_kz_decomposition(self, cli):
        code, report = cli(["kz", "check", "--which", "kz_decomposition", "--kind", "rt"])
        assert code == 0
        assert report["command"] == "kz check"

    def test_kz_flatness_probabilistic(self, cli):
        code, report = cli(["kz", "check", "--which", "flatness", "--kind", "r",
                            "--N", "3", "--probabilistic", "--trials", "2"])
        assert code == 0
        check = report["checks"][0]
        assert check["parameters"]["mode"] == "probabilistic"
        assert check["parameters"]["seed"] == 7

    def test_kz_build(self, cli):
        code, report = cli(["kz", "build", "--kind", "r", "--site", "1",
                            "--eval", "z=0,1;lambda=0,0;kappa=1;hbar=1;eta=1"])
        assert code == 0
        assert report["result"]["operator"]
        assert report["checks"] == []

    def test_size_limit(self, cli):
        code, report = cli(["kz", "check", "--which", "kz_decomposition", "--M", "9"])
        assert code == 2
        assert report["status"] == "fail"

    def test_zero_kappa(self, cli):
        code, _ = cli(["kz", "check", "--which", "compat", "--kappa", "0"])
        assert code == 2

    @pytest.mark.parametrize("argv", [
        ["kz", "check", "--which", "flatness", "--trials", "0"],
        ["suite", "--only", "numbers", "--trials", "-1"],
    ])
    def test_nonpositive_trials(self, cli, argv):
        code, report = cli(argv)
        assert code == 2
        assert report["error"]["error"] == "usage"

    def test_rational_duality(self, cli):
        code, report = cli(["duality", "--kind", "r", "--M", "2", "--N", "2", "--degree", "1"])
        assert code == 0
        assert report["result"]["residual_zero"] is True

    def test_trigonometric_duality_strict(self, cli):
        """The nonzero trigonometric residual fails unless recorded."""
        code, report = cli(["duality", "--kind", "t", "--M", "2", "--N", "1", "--degree", "2"])
        assert code == 1
        assert report["status"] == "fail"

    def test_trigonometric_duality_recorded(self, cli):
        code, report = cli(["duality", "--kind", "t", "--M", "2", "--N", "1", "--degree", "2", "--record"])
        assert code == 0
        assert report["result"]["residual_zero"] is False


# ============================================================
# Suite and Usage
# ============================================================

class TestSuiteAndUsage:
    """Tests for suite determinism and malformed invocations."""

    def test_suite_numbers(self, cli):
        code, report = cli(["suite", "--only", "numbers"])
        assert code == 0
        assert report["result"] == {"only": ["numbers"], "seed": 7, "trials": 5}
        assert report["checks"]

    def test_suite_is_deterministic(self, cli):
        """Two runs with the same seed emit the same document."""
        argv = ["suite", "--only", "numbers", "--seed", "3"]
        assert cli(argv) == cli(argv)

    def test_suite_needs_selection(self, cli):
        code, _ = cli(["suite"])
        assert code == 2

    @pytest.mark.parametrize("argv", [[], ["num", "--kind", "zeta", "--z", "2"], ["num", "--kind", "q"]])
    def test_usage_errors(self, cli, argv):
        code, report = cli(argv)
        assert code == 2
        assert report["command"] == "defcalc"
        assert report["checks"] == []

    def test_run_returns_exit_code(self, capsys):
        assert run(["num", "--kind", "classical", "--z", "5"]) == 0
        assert '"value": "5"' in capsys.readouterr().out

    def test_command_path(self):
        assert command_path(parse_args(["gl", "check"])) == "gl check"
        assert command_path(parse_args(["num", "--kind", "q", "--z", "1"])) == "num"
