"""Tests for coupler extraction and degree/distance metrics."""

from fractions import Fraction

import pytest

from louvre.models.code import CodeSpec, GridPos, Role
from louvre.models.coupler import Coupler, format_fraction
from louvre.models.schedule import Scheme
from louvre.parsers.code_parser import CodeParser
from louvre.parsers.table_parser import TableParser
from louvre.services.metrics_service import MetricsService
from louvre.services.schedule_service import ScheduleService
from tests.fixtures import get_fixture_path


def load(name: str) -> CodeSpec:
    return CodeParser.parse_code_file(str(get_fixture_path(name)))


def report_for(code: CodeSpec, scheme: Scheme):  # type: ignore[no-untyped-def]
    schedule = ScheduleService.build(code, scheme)
    graph = MetricsService.extract_couplers(schedule)
    return MetricsService.metrics_report(graph, scheme, schedule.code)


class TestFormatting:
    """Test exact fraction rendering."""

    @pytest.mark.parametrize(
        ("value", "expected"),
        [
            (Fraction(6), "6"),
            (Fraction(9, 2), "4.5"),
            (Fraction(33, 2), "16.5"),
            (Fraction(7, 3), "7/3"),
        ],
    )
    def test_format_fraction(self, value: Fraction, expected: str) -> None:
        """Test integers, halves and other fractions."""
        assert format_fraction(value) == expected


class TestCouplerModel:
    """Test the coupler value type."""

    def test_endpoints_are_ordered(self) -> None:
        """Test that couplers are undirected."""
        a, b = GridPos(3, 1), GridPos(0, 1)

        assert Coupler(a, b, 3) == Coupler(b, a, 3)
        assert Coupler(a, b, 3).a == b

    def test_rejects_loops(self) -> None:
        """Test that both endpoints must differ."""
        with pytest.raises(ValueError, match="must differ"):
            Coupler(GridPos(0, 0), GridPos(0, 0), 1)


class TestMetrics:
    """Test degree and distance on the [[18,4,4]] code."""

    @pytest.mark.parametrize(
        ("scheme", "pair"),
        [
            (Scheme.REGULAR, "6, 10"),
            (Scheme.L7, "4.5, 7.5"),
            (Scheme.L8, "4, 6"),
        ],
    )
    def test_bb18_pairs(self, scheme: Scheme, pair: str) -> None:
        """Test the published degree and distance of each scheme."""
        assert report_for(load("bb18.code"), scheme).pair() == pair

    def test_regular_counts(self) -> None:
        """Test coupler and qubit counts of the regular schedule."""
        report = report_for(load("bb18.code"), Scheme.REGULAR)

        assert report.n_couplers == 108
        assert report.n_qubits == 36
        assert report.role_degree[Role.X] == Fraction(6)
        assert report.required_terms[Role.Z] == ["A1", "A2", "A3", "B1", "B2", "B3"]

    def test_bb72_regular_distance(self) -> None:
        """Test the sum of base interaction lengths of the [[72,12,6]] code."""
        report = report_for(load("bb72.code"), Scheme.REGULAR)

        assert report.pair() == "6, 22"
        assert report.length_histogram == {1: 144, 3: 144, 7: 144}

    @pytest.mark.parametrize(
        "fixture",
        [
            "bb18.code",
            "bb72.code",
            "lacross72.code",
            "gb72_8_9.code",
            "gb72_8_10.code",
            "gb96.code",
            "gb128.code",
        ],
    )
    @pytest.mark.parametrize("scheme", [Scheme.REGULAR, Scheme.L7, Scheme.L8])
    def test_degree_matches_formula(self, fixture: str, scheme: Scheme) -> None:
        """Test that the measured degree equals the closed form on every code."""
        report = report_for(load(fixture), scheme)

        assert report.predicted_degree is not None
        assert report.avg_degree == report.predicted_degree

    def test_lacross_l7r_table(self) -> None:
        """Test that every coupler of the La-Cross Louvre-7R table is short."""
        code = load("lacross72.code")
        schedule = TableParser.parse_table_file(
            str(get_fixture_path("lacross72_l7r.table")), code
        )

        graph = MetricsService.extract_couplers(schedule)
        report = MetricsService.metrics_report(graph, Scheme.L7R, code)

        assert report.pair() == "3.5, 3.5"
        assert report.length_histogram == {1: 252}
        assert report.predicted_degree is None

    def test_to_networkx(self) -> None:
        """Test the networkx view of a coupler graph."""
        schedule = ScheduleService.build_louvre8(load("bb18.code"))
        graph = MetricsService.extract_couplers(schedule)

        nx_graph = graph.to_networkx()

        assert nx_graph.number_of_edges() == len(graph)
        assert nx_graph.number_of_nodes() == 36


class TestPredictedDegree:
    """Test the closed-form degree formulas."""

    @pytest.mark.parametrize(
        ("scheme", "n_a", "n_b", "expected"),
        [
            (Scheme.REGULAR, 3, 3, Fraction(6)),
            (Scheme.L7, 3, 3, Fraction(9, 2)),
            (Scheme.L8, 3, 3, Fraction(4)),
            (Scheme.L7, 6, 2, Fraction(5)),
            (Scheme.L8, 2, 6, Fraction(5)),
            (Scheme.L8R, 3, 3, None),
        ],
    )
    def test_formula(
        self, scheme: Scheme, n_a: int, n_b: int, expected: Fraction
    ) -> None:
        """Test each formula."""
        assert MetricsService.predicted_degree(scheme, n_a, n_b) == expected

    def test_empty_polynomial(self) -> None:
        """Test that both polynomials need terms."""
        with pytest.raises(ValueError, match="at least one term"):
            MetricsService.predicted_degree(Scheme.L7, 0, 3)


class TestReferenceValues:
    """Test the published comparison values."""

    def test_lookup_by_bracketed_name(self) -> None:
        """Test that [[n,k,d]] names find their row."""
        assert MetricsService.reference("[[72,12,6]]", Scheme.L8) == (
            Fraction(4),
            Fraction(12),
        )
        assert MetricsService.reference("toric-3", Scheme.L8) is None

    def test_blank_distance(self) -> None:
        """Test that blank published distances read not specified."""
        cell = MetricsService.reference_cell("[[72,8,10]]", Scheme.L7)

        assert cell == "6, not specified"

    def test_comparison_matrix(self) -> None:
        """Test the codes-by-schemes matrix."""
        bb18 = load("bb18.code")
        reports = {
            "[[18,4,4]]": {
                Scheme.REGULAR: report_for(bb18, Scheme.REGULAR),
                Scheme.L7: None,
            },
            "toric-3": {
                Scheme.REGULAR: report_for(load("toric3.code"), Scheme.REGULAR)
            },
        }

        frame = MetricsService.comparison_matrix(reports)

        assert list(frame.columns) == ["regular", "regular (ref)", "l7", "l7 (ref)"]
        assert frame.loc["[[18,4,4]]", "regular"] == "6, 10"
        assert frame.loc["[[18,4,4]]", "l7"] == "n/a"
        assert frame.loc["[[18,4,4]]", "l7 (ref)"] == "4.5, 7.5"
        assert frame.loc["toric-3", "l7"] == ""
        assert frame.loc["toric-3", "regular"].startswith("4, ")
        assert frame.loc["toric-3", "regular (ref)"] == ""
