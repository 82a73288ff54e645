"""Integration tests for the ordering search."""

from fractions import Fraction

from louvre.models.code import CodeSpec
from louvre.models.schedule import Scheme
from louvre.parsers.code_parser import CodeParser
from louvre.services.metrics_service import MetricsService
from louvre.services.ordering_service import OrderingService
from louvre.services.verification_service import VerificationService
from tests.fixtures import get_fixture_path


def load(name: str) -> CodeSpec:
    return CodeParser.parse_code_file(str(get_fixture_path(name)))


class TestLouvre7RSearch:
    """Test the exhaustive Louvre-7R search on the La-Cross code."""

    def test_finds_seven_layer_nearest_neighbour_schedule(self) -> None:
        """Test that the search lands on the depth-7 table with (3.5, 3.5)."""
        code = load("lacross72.code")

        schedule = OrderingService.optimize_ordering(
            code, Scheme.L7R, budget_seconds=600
        )
        report = MetricsService.metrics_report(
            MetricsService.extract_couplers(schedule), Scheme.L7R, schedule.code
        )

        assert schedule.scheme is Scheme.L7R
        assert schedule.metadata["searched"] == "4608"
        assert schedule.depth == 7
        assert report.avg_degree == Fraction(7, 2)
        assert report.avg_distance == Fraction(7, 2)
        assert set(report.length_histogram) == {1}
        assert VerificationService.verify_commutation(schedule).ok
