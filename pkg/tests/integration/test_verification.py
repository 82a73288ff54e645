"""Integration tests for the verification suite."""

import pytest

from louvre.models.code import CodeSpec
from louvre.models.schedule import Scheme
from louvre.parsers.code_parser import CodeParser
from louvre.parsers.table_parser import TableParser
from louvre.services.metrics_service import MetricsService
from louvre.services.ordering_service import OrderingService
from louvre.services.schedule_service import ScheduleService
from louvre.services.verification_service import VerificationService
from tests.fixtures import get_fixture_path


def load(name: str) -> CodeSpec:
    return CodeParser.parse_code_file(str(get_fixture_path(name)))


# Code and scheme pairs with published metrics.
PUBLISHED_PAIRS = [
    ("bb18.code", Scheme.REGULAR),
    ("bb18.code", Scheme.L7),
    ("bb18.code", Scheme.L8),
    ("bb72.code", Scheme.REGULAR),
    ("bb72.code", Scheme.L7),
    ("bb72.code", Scheme.L8),
    ("lacross72.code", Scheme.REGULAR),
    ("lacross72.code", Scheme.L7),
    ("lacross72.code", Scheme.L8),
    ("gb72_8_9.code", Scheme.L7),
    ("gb96.code", Scheme.L7),
    ("gb96.code", Scheme.L8),
    ("gb128.code", Scheme.L7),
    ("gb128.code", Scheme.L8),
]


class TestGeneratedSchedules:
    """Test that the closed-form builders produce valid rounds."""

    @pytest.mark.parametrize(("fixture", "scheme"), PUBLISHED_PAIRS)
    def test_published_pairs_pass(self, fixture: str, scheme: Scheme) -> None:
        """Test every check on each code with published metrics."""
        schedule = ScheduleService.build(load(fixture), scheme)

        report = VerificationService.verify_syndromes(schedule)

        assert report.passed, report.failure_messages()
        assert report.counts["layers"] == schedule.depth
        assert report.counts["faults_injected"] == 2 * schedule.code.n_data

    def test_reversed_round_restores(self) -> None:
        """Test that a Louvre-7 round and its reverse bring qubits home."""
        schedule = ScheduleService.build_louvre7(load("bb18.code"))

        assert VerificationService.verify_restoration(
            schedule, schedule.reversed_round()
        )

    def test_commutation_counts_pairs(self) -> None:
        """Test that every overlapping check pair is examined."""
        schedule = ScheduleService.build_louvre8(load("bb18.code"))

        result = VerificationService.verify_commutation(schedule)

        assert result.ok
        assert result.pairs_checked > 0
        assert result.odd_pairs == []


class TestTables:
    """Test verification of hand-written tables."""

    def test_lacross_louvre7r(self) -> None:
        """Test the nearest-neighbour La-Cross Louvre-7R table."""
        code = load("lacross72.code")
        schedule = TableParser.parse_table_file(
            str(get_fixture_path("lacross72_l7r.table")), code
        )

        report = VerificationService.verify_syndromes(schedule)
        metrics = MetricsService.metrics_report(
            MetricsService.extract_couplers(schedule), schedule.scheme, code
        )

        assert report.passed, report.failure_messages()
        assert metrics.pair() == "3.5, 3.5"

    def test_bb72_louvre8r_table(self) -> None:
        """Test the reduced-distance Louvre-8R table of the [[72,12,6]] code."""
        schedule = TableParser.parse_table_file(
            str(get_fixture_path("bb72_l8r.table")), load("bb72.code")
        )

        report = VerificationService.verify_syndromes(schedule)

        assert schedule.scheme is Scheme.L8R
        assert report.passed, report.failure_messages()
        assert report.restoration_ok


class TestSearchedSchedules:
    """Test verification of schedules picked by the ordering search."""

    def test_bb72_louvre7r(self) -> None:
        """Test the best Louvre-7R order found for the [[72,12,6]] code."""
        schedule = OrderingService.optimize_ordering(
            load("bb72.code"), Scheme.L7R, budget_seconds=600
        )

        report = VerificationService.verify_syndromes(schedule)

        assert schedule.scheme is Scheme.L7R
        assert report.passed, report.failure_messages()


class TestVerdictAgreement:
    """Test that the overlap count and the stabilizer simulation agree."""

    @pytest.mark.parametrize("fixture", ["bb18.code", "bb72.code"])
    def test_adversarial_order(self, fixture: str) -> None:
        """Test that both checks reject the fixed non-commuting order."""
        schedule = VerificationService.adversarial_schedule(load(fixture))

        commutation = VerificationService.verify_commutation(schedule)
        problem = VerificationService.check_determinism(schedule)

        assert not commutation.ok
        assert problem is not None
        assert "Z-basis memory" in problem

    @pytest.mark.parametrize("scheme", [Scheme.REGULAR, Scheme.L7, Scheme.L8])
    def test_valid_orders(self, scheme: Scheme) -> None:
        """Test that both checks accept the closed-form schedules."""
        schedule = ScheduleService.build(load("bb72.code"), scheme)

        assert VerificationService.verify_commutation(schedule).ok
        assert VerificationService.check_determinism(schedule) is None


class TestFailures:
    """Test that broken schedules are caught and explained."""

    def test_adversarial_order_fails_commutation(self) -> None:
        """Test the fixed non-commuting order on a weight-6 code."""
        schedule = VerificationService.adversarial_schedule(load("bb18.code"))

        report = VerificationService.verify_syndromes(schedule)

        assert not report.passed
        assert not report.commutation_ok
        assert report.structural_ok
        assert any(d.check == "commutation" for d in report.diagnostics)

    def test_adversarial_needs_weight_six(self) -> None:
        """Test that the adversarial order is refused for other weights."""
        with pytest.raises(ValueError, match="weight-6"):
            VerificationService.adversarial_schedule(load("toric3.code"))

    def test_length_limit_is_structural(self) -> None:
        """Test that a coupler-length violation fails every later check."""
        schedule = ScheduleService.build_regular(load("bb72.code"))

        report = VerificationService.verify_syndromes(
            schedule, max_coupler_length=3
        )

        assert not report.structural_ok
        assert not report.passed
        assert not any(
            ok for name, ok in report.flags().items() if name != "coverage_ok"
        )
        assert "above the limit 3" in report.failure_messages()[0]
