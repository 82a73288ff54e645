"""Integration tests for multi-tier routing of schedule coupler graphs."""

import pytest

from louvre.models.code import CodeSpec
from louvre.models.routing import RoutingReport
from louvre.models.schedule import Scheme
from louvre.parsers.code_parser import CodeParser
from louvre.services.metrics_service import MetricsService
from louvre.services.router_service import RouterService, chip_adjacent
from louvre.services.schedule_service import ScheduleService
from tests.fixtures import get_fixture_path


def load(name: str) -> CodeSpec:
    return CodeParser.parse_code_file(str(get_fixture_path(name)))


class TestRouting:
    """Test routing complete coupler graphs."""

    @pytest.mark.parametrize(
        ("fixture", "scheme"),
        [("toric3.code", Scheme.REGULAR), ("bb18.code", Scheme.L8)],
    )
    def test_routes_every_coupler(self, fixture: str, scheme: Scheme) -> None:
        """Test that every long coupler gets a valid path."""
        graph = MetricsService.extract_couplers(
            ScheduleService.build(load(fixture), scheme)
        )

        report = RouterService.route_multitier(graph, max_tiers=200)

        assert report.complete
        assert len(report.direct) + report.n_long == len(graph)
        assert all(chip_adjacent(c) for c in report.direct)
        assert sum(report.routed_per_tier.values()) == len(graph)
        assert RouterService.routing_errors(report) == []

    def test_seeded_routing_is_reproducible(self) -> None:
        """Test that one seed always gives the same paths."""
        graph = MetricsService.extract_couplers(
            ScheduleService.build_louvre7(load("bb18.code"))
        )

        first = RouterService.route_multitier(graph, seed=7, max_tiers=200)
        second = RouterService.route_multitier(graph, seed=7, max_tiers=200)

        assert first.paths == second.paths
        assert first.tiers == second.tiers
        assert first.tsvs == second.tsvs


ROUTED_CODES = ["bb72.code", "gb72_8_9.code", "gb96.code", "gb128.code"]


def route(fixture: str, scheme: Scheme) -> tuple[int, RoutingReport]:
    graph = MetricsService.extract_couplers(
        ScheduleService.build(load(fixture), scheme)
    )
    return len(graph), RouterService.route_multitier(graph, seed=3, max_tiers=200)


class TestTierComparison:
    """Test routing costs of the closed-form schemes on larger codes."""

    @pytest.mark.parametrize("fixture", ROUTED_CODES)
    @pytest.mark.parametrize("scheme", [Scheme.REGULAR, Scheme.L7, Scheme.L8])
    def test_every_coupler_is_placed_once(self, fixture: str, scheme: Scheme) -> None:
        """Test completeness and that no coupler is lost or duplicated."""
        n_couplers, report = route(fixture, scheme)

        assert report.complete
        assert len(report.direct) + report.n_long == n_couplers
        assert sum(report.routed_per_tier.values()) == n_couplers
        assert len({path.coupler for path in report.paths}) == report.n_long
        assert RouterService.routing_errors(report) == []

    @pytest.mark.parametrize("fixture", ROUTED_CODES)
    @pytest.mark.parametrize("scheme", [Scheme.L7, Scheme.L8])
    def test_louvre_needs_no_more_tiers(self, fixture: str, scheme: Scheme) -> None:
        """Test that swap-routed schemes never add tiers over the regular one."""
        _, regular = route(fixture, Scheme.REGULAR)
        _, louvre = route(fixture, scheme)

        assert louvre.tiers <= regular.tiers
