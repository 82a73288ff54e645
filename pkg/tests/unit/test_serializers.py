"""Tests for report documents, tables and dataframe files."""

import json
from pathlib import Path

import pandas as pd  # type: ignore[import-untyped]
import pytest

from louvre.models.routing import RoutingReport
from louvre.models.schedule import Scheme
from louvre.models.verification import VerificationReport
from louvre.parsers.code_parser import CodeParser
from louvre.serializers.dataframe import export_matrix
from louvre.serializers.instruction_table import format_grid
from louvre.serializers.report import (
    code_document,
    format_code_text,
    format_metrics_text,
    format_routing_text,
    format_verification_text,
    metrics_document,
    to_json,
)
from louvre.services.metrics_service import MetricsService
from louvre.services.schedule_service import ScheduleService
from tests.fixtures import get_fixture_path


class TestReports:
    """Test text and JSON report rendering."""

    def test_json_carries_schema(self) -> None:
        """Test the schema version key."""
        assert json.loads(to_json({"passed": True})) == {"schema": 1, "passed": True}

    def test_code_summary(self) -> None:
        """Test the build summary of the [[18,4,4]] code."""
        code = CodeParser.parse_code_file(str(get_fixture_path("bb18.code")))

        text = format_code_text(code, 18, 4)
        document = code_document(code, 18, 4)

        assert "parameters: [[18,4]]" in text
        assert "grid: 6x6, 36 qubits" in text
        assert document["n_qubits"] == 36
        assert document["A"] == "1+y+xy"

    def test_verification_text(self) -> None:
        """Test the verdict line and located diagnostics."""
        report = VerificationReport(
            scheme="l7", code="[[18,4,4]]", commutation_ok=False
        )
        report.add("commutation", "odd overlap", layer=2, qubit="Z(0,0)")

        lines = format_verification_text(report).splitlines()

        assert lines[0] == "FAIL: l7 on [[18,4,4]]"
        assert "  commutation_ok: FAILED" in lines
        assert lines[-1] == "  [commutation] layer 3, Z(0,0): odd overlap"
        assert report.to_dict()["diagnostics"][0]["layer"] == 3

    def test_metrics_with_reference(self) -> None:
        """Test metrics text and document beside published values."""
        code = CodeParser.parse_code_file(str(get_fixture_path("bb18.code")))
        schedule = ScheduleService.build_louvre7(code)
        report = MetricsService.metrics_report(
            MetricsService.extract_couplers(schedule), Scheme.L7, schedule.code
        )
        reference = MetricsService.reference("[[18,4,4]]", Scheme.L7)

        text = format_metrics_text(report, reference)
        document = metrics_document(report, reference)

        assert text.splitlines()[0] == "4.5, 7.5"
        assert "  reference: 4.5, 7.5" in text
        assert document["predicted_degree"] == "4.5"
        assert document["reference"] == {"avg_degree": "4.5", "avg_distance": "7.5"}

    def test_routing_text_without_paths(self) -> None:
        """Test the routing summary of an empty report."""
        text = format_routing_text(RoutingReport(tiers=1))

        assert text.splitlines()[0] == "tiers: 1"
        assert "  avg length: 0" in text


class TestGrid:
    """Test the aligned instruction grid."""

    def test_rows(self) -> None:
        """Test one column per layer."""
        code = CodeParser.parse_code_file(str(get_fixture_path("bb18.code")))

        lines = format_grid(ScheduleService.build_louvre7(code)).splitlines()

        phases = [1, 1, 2, 2, 2, 3, 3]
        assert lines[0].split() == [
            f"L{k}/P{p}" for k, p in enumerate(phases, start=1)
        ]
        assert lines[1].split() == [
            "X", "A1", "A2", "B2", "B3", "B1:CXSWAP", "A3", "-"
        ]


class TestMatrixExport:
    """Test comparison-matrix files."""

    @pytest.fixture
    def frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [{"code": "[[18,4,4]]", "l7": "4.5, 7.5", "l7r": ""}]
        ).set_index("code")

    def test_csv_keeps_empty_cells(self, frame: pd.DataFrame, tmp_path: Path) -> None:
        """Test that the index is a column and blank cells stay blank."""
        path = tmp_path / "matrix.csv"

        export_matrix(frame, str(path), "csv")
        loaded = pd.read_csv(path, keep_default_na=False)

        assert list(loaded.columns) == ["code", "l7", "l7r"]
        assert loaded.loc[0, "l7r"] == ""

    def test_json_metadata(self, frame: pd.DataFrame, tmp_path: Path) -> None:
        """Test that JSON output carries the schema and metadata."""
        path = tmp_path / "matrix.json"

        export_matrix(frame, str(path), "json", {"seed": 0})
        document = json.loads(path.read_text())

        assert document["schema"] == 1
        assert document["metadata"] == {"seed": 0}
        assert document["data"] == [
            {"code": "[[18,4,4]]", "l7": "4.5, 7.5", "l7r": ""}
        ]

    def test_pickle(self, frame: pd.DataFrame, tmp_path: Path) -> None:
        """Test that pickles keep the index."""
        path = tmp_path / "matrix.pkl"

        export_matrix(frame, str(path), "pickle")
        loaded = pd.read_pickle(path)

        pd.testing.assert_frame_equal(loaded["df"], frame)
        assert loaded["metadata"] == {}

    def test_unsupported_format(self, frame: pd.DataFrame, tmp_path: Path) -> None:
        """Test that unknown formats are rejected."""
        with pytest.raises(ValueError, match="Unsupported format: xml"):
            export_matrix(frame, str(tmp_path / "m.xml"), "xml")
