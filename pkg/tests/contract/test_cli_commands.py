"""Contract tests for the louvre commands: options, output and exit codes."""

import json
from pathlib import Path

import pandas as pd  # type: ignore[import-untyped]
import stim
from click.testing import CliRunner

from louvre.cli import cli_group
from tests.fixtures import get_fixture_path, read_fixture

BB18 = str(get_fixture_path("bb18.code"))
BB72 = str(get_fixture_path("bb72.code"))
TORIC = str(get_fixture_path("toric3.code"))

ADVERSARIAL_TABLE = """\
scheme: regular
A: 1, y, xy
B: 1, x, xy
phase: 1 | 1 | 2 | 2 | 2 | 3 | 3 | 3
X: A1 | A2 | B1 | B2 | B3 | A3 | - | -
Z: - | A3 | - | B2 | B3 | A2 | A1 | B1
"""


class TestBuildCommand:
    """Test the build command."""

    def test_parameters(self, runner: CliRunner) -> None:
        """Test the [[n, k]] summary."""
        result = runner.invoke(cli_group, ["build", "--code", BB18])

        assert result.exit_code == 0
        assert "parameters: [[18,4]]" in result.output

    def test_distance(self, runner: CliRunner) -> None:
        """Test the brute-force distance of a small code."""
        result = runner.invoke(cli_group, ["build", "--code", BB18, "--distance"])

        assert result.exit_code == 0
        assert "distance: 4" in result.output

    def test_json(self, runner: CliRunner) -> None:
        """Test the JSON document."""
        result = runner.invoke(
            cli_group, ["build", "--code", BB72, "--format", "json"]
        )

        assert result.exit_code == 0
        document = json.loads(result.output)
        assert document["schema"] == 1
        assert (document["n"], document["k"]) == (72, 12)

    def test_product(self, runner: CliRunner) -> None:
        """Test La-Cross parameters from a classical seed."""
        result = runner.invoke(cli_group, ["build", "--product", "7", "3"])

        assert result.exit_code == 0
        assert "parameters: [[65,9]] (open)" in result.output

    def test_bad_product(self, runner: CliRunner) -> None:
        """Test that an impossible seed is an input error."""
        result = runner.invoke(cli_group, ["build", "--product", "3", "4"])

        assert result.exit_code == 2
        assert "Error:" in result.output

    def test_missing_code_file(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test that a missing code file is an input error."""
        missing = str(tmp_path / "absent.code")

        result = runner.invoke(cli_group, ["build", "--code", missing])

        assert result.exit_code == 2
        assert "Error:" in result.output

    def test_needs_an_input(self, runner: CliRunner) -> None:
        """Test that build needs --code or --product."""
        result = runner.invoke(cli_group, ["build"])

        assert result.exit_code == 2
        assert "Pass --code or --product" in result.output

    def test_bad_code_file(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test that parse errors exit with the input code."""
        code_file = tmp_path / "broken.code"
        code_file.write_text("l=3\nm=3\nA=1+q\nB=1+x\n")

        result = runner.invoke(cli_group, ["build", "--code", str(code_file)])

        assert result.exit_code == 2
        assert "Error:" in result.output


class TestScheduleCommand:
    """Test the schedule command."""

    def test_table_output(self, runner: CliRunner) -> None:
        """Test that the text output is the instruction table."""
        result = runner.invoke(
            cli_group, ["schedule", "--code", BB18, "--scheme", "l7"]
        )

        assert result.exit_code == 0
        assert result.output == read_fixture("bb18_l7.table")

    def test_out_file_round_trips(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test that a written table is read back by --table."""
        table = tmp_path / "l8.table"

        written = runner.invoke(
            cli_group,
            ["schedule", "--code", BB18, "--scheme", "l8", "--out", str(table)],
        )
        reread = runner.invoke(
            cli_group, ["schedule", "--code", BB18, "--table", str(table)]
        )

        assert written.exit_code == 0
        assert table.read_text() == read_fixture("bb18_l8.table")
        assert reread.exit_code == 0
        assert reread.output == read_fixture("bb18_l8.table")

    def test_grid(self, runner: CliRunner) -> None:
        """Test the aligned grid view."""
        result = runner.invoke(
            cli_group, ["schedule", "--code", BB18, "--scheme", "l7", "--grid"]
        )

        assert result.exit_code == 0
        assert "B1:CXSWAP" in result.output
        assert "L7/P3" in result.output

    def test_json(self, runner: CliRunner) -> None:
        """Test the schedule document."""
        result = runner.invoke(
            cli_group,
            ["schedule", "--code", BB72, "--scheme", "l8", "--format", "json"],
        )

        assert result.exit_code == 0
        document = json.loads(result.output)
        assert document["scheme"] == "l8"
        assert document["depth"] == 8

    def test_routed_scheme_needs_table_or_search(self, runner: CliRunner) -> None:
        """Test that l7r without a table or --search is an input error."""
        result = runner.invoke(
            cli_group, ["schedule", "--code", BB18, "--scheme", "l7r"]
        )

        assert result.exit_code == 2
        assert "no closed-form builder" in result.output

    def test_table_scheme_mismatch(self, runner: CliRunner) -> None:
        """Test that --scheme must agree with the table."""
        table = str(get_fixture_path("bb18_l8.table"))

        result = runner.invoke(
            cli_group,
            ["schedule", "--code", BB18, "--scheme", "l7", "--table", table],
        )

        assert result.exit_code == 2
        assert "holds a l8 schedule" in result.output

    def test_needs_scheme_or_table(self, runner: CliRunner) -> None:
        """Test that one of --scheme and --table is required."""
        result = runner.invoke(cli_group, ["schedule", "--code", BB18])

        assert result.exit_code == 2
        assert "Pass --scheme or --table" in result.output

    def test_unknown_scheme(self, runner: CliRunner) -> None:
        """Test that click rejects unknown scheme names."""
        result = runner.invoke(
            cli_group, ["schedule", "--code", BB18, "--scheme", "l9"]
        )

        assert result.exit_code == 2
        assert "Invalid value" in result.output


class TestVerifyCommand:
    """Test the verify command."""

    def test_pass(self, runner: CliRunner) -> None:
        """Test a passing Louvre-8 schedule."""
        result = runner.invoke(cli_group, ["verify", "--code", BB18, "--scheme", "l8"])

        assert result.exit_code == 0
        assert result.output.startswith("PASS: l8 on [[18,4,4]]")

    def test_json(self, runner: CliRunner) -> None:
        """Test the verification document."""
        result = runner.invoke(
            cli_group,
            ["verify", "--code", BB18, "--scheme", "l7", "--format", "json"],
        )

        assert result.exit_code == 0
        document = json.loads(result.output)
        assert document["passed"] is True
        assert document["restoration_ok"] is True

    def test_adversarial_fails(self, runner: CliRunner) -> None:
        """Test that a failing check exits with code 1."""
        result = runner.invoke(cli_group, ["verify", "--code", BB18, "--adversarial"])

        assert result.exit_code == 1
        assert "FAIL" in result.output
        assert "commutation_ok: FAILED" in result.output

    def test_adversarial_needs_weight_six(self, runner: CliRunner) -> None:
        """Test that the adversarial order is an input error on the toric code."""
        result = runner.invoke(
            cli_group, ["verify", "--code", TORIC, "--adversarial"]
        )

        assert result.exit_code == 2

    def test_coupler_length_limit(self, runner: CliRunner) -> None:
        """Test that a length violation is reported as a failed check."""
        result = runner.invoke(
            cli_group,
            [
                "verify",
                "--code",
                BB72,
                "--scheme",
                "regular",
                "--max-coupler-length",
                "3",
            ],
        )

        assert result.exit_code == 1
        assert "structural_ok: FAILED" in result.output

    def test_bad_absent_site(self, runner: CliRunner) -> None:
        """Test that an off-torus site is an input error."""
        result = runner.invoke(
            cli_group,
            ["verify", "--code", BB18, "--scheme", "l7", "--absent", "9,9,X"],
        )

        assert result.exit_code == 2
        assert "outside the 3x3 torus" in result.output


class TestMetricsCommand:
    """Test the metrics command."""

    def test_pair_and_reference(self, runner: CliRunner) -> None:
        """Test degree, distance and the published values."""
        result = runner.invoke(
            cli_group, ["metrics", "--code", BB18, "--scheme", "l7"]
        )

        assert result.exit_code == 0
        assert result.output.splitlines()[0] == "4.5, 7.5"
        assert "reference: 4.5, 7.5" in result.output

    def test_extra_couplers(self, runner: CliRunner) -> None:
        """Test couplers added around an absent data qubit."""
        result = runner.invoke(
            cli_group,
            [
                "metrics",
                "--code",
                BB18,
                "--scheme",
                "l7",
                "--absent",
                "0,0,L",
                "--strategy",
                "extra-couplers",
            ],
        )

        assert result.exit_code == 0
        assert "extra couplers: 2" in result.output

    def test_comparison_matrix_export(
        self, runner: CliRunner, tmp_path: Path
    ) -> None:
        """Test the matrix over the closed-form schemes and its export."""
        export = tmp_path / "matrix.csv"

        result = runner.invoke(
            cli_group,
            [
                "metrics",
                "--code",
                BB18,
                "--code",
                BB72,
                "--all-schemes",
                "--export",
                str(export),
            ],
        )

        assert result.exit_code == 0
        assert "regular (ref)" in result.output
        frame = pd.read_csv(export, keep_default_na=False)
        assert frame["code"].tolist() == ["[[18,4,4]]", "[[72,12,6]]"]
        assert frame["l8"].tolist()[0] == "4, 6"
        assert frame["l8 (ref)"].tolist() == ["4, 6", "4, 12"]
        assert "l7r" not in frame.columns

    def test_several_codes_need_matrix(self, runner: CliRunner) -> None:
        """Test that several codes only make sense with --all-schemes."""
        result = runner.invoke(
            cli_group,
            ["metrics", "--code", BB18, "--code", BB72, "--scheme", "l7"],
        )

        assert result.exit_code == 2
        assert "--all-schemes" in result.output


class TestRouteCommand:
    """Test the route command."""

    def test_route(self, runner: CliRunner) -> None:
        """Test a complete routing with the path dump."""
        result = runner.invoke(
            cli_group,
            ["route", "--code", TORIC, "--scheme", "regular", "--paths"],
            env={"LOUVRE_MAX_TIERS": "200"},
        )

        assert result.exit_code == 0
        assert result.output.startswith("tiers: ")
        assert "invalid:" not in result.output
        assert any(line.startswith("tier ") for line in result.output.splitlines())

    def test_json(self, runner: CliRunner) -> None:
        """Test the routing document."""
        result = runner.invoke(
            cli_group,
            ["route", "--code", TORIC, "--scheme", "regular", "--format", "json"],
            env={"LOUVRE_MAX_TIERS": "200"},
        )

        assert result.exit_code == 0
        document = json.loads(result.output)
        assert document["complete"] is True
        assert document["errors"] == []


class TestEmitCommand:
    """Test the emit command."""

    def test_noiseless_circuit(self, runner: CliRunner) -> None:
        """Test that the output parses as a stim circuit."""
        result = runner.invoke(
            cli_group,
            [
                "emit",
                "--code",
                BB18,
                "--scheme",
                "l7",
                "--rounds",
                "2",
                "--noise-p",
                "0",
            ],
        )

        assert result.exit_code == 0
        circuit = stim.Circuit(result.output)
        assert circuit.num_detectors == 36
        assert circuit.num_observables == 4

    def test_out_file(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test writing the circuit to a file."""
        out = tmp_path / "bb18.stim"

        result = runner.invoke(
            cli_group,
            [
                "emit",
                "--code",
                BB18,
                "--scheme",
                "l8",
                "--rounds",
                "1",
                "--out",
                str(out),
            ],
        )

        assert result.exit_code == 0
        assert stim.Circuit(out.read_text()).num_detectors == 18

    def test_failing_table(self, runner: CliRunner, tmp_path: Path) -> None:
        """Test that a schedule failing verification exits with code 1."""
        table = tmp_path / "adversarial.table"
        table.write_text(ADVERSARIAL_TABLE)

        result = runner.invoke(
            cli_group, ["emit", "--code", BB18, "--table", str(table)]
        )

        assert result.exit_code == 1
        assert "FAIL" in result.output

    def test_bad_noise(self, runner: CliRunner) -> None:
        """Test that an out-of-range noise probability is an input error."""
        result = runner.invoke(
            cli_group,
            ["emit", "--code", BB18, "--scheme", "l7", "--noise-p", "0.5"],
        )

        assert result.exit_code == 2
        assert "scales past 1" in result.output
