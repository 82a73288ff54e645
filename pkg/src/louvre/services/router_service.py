"""Router service: place couplers on a stacked multi-tier chip."""

import heapq
import logging
import math
from collections import defaultdict

import numpy as np

from ..exceptions import RoutingError
from ..models.code import GridPos
from ..models.coupler import Coupler, CouplerGraph
from ..models.routing import Cell, RoutedPath, RoutingReport, TierGrid

logger = logging.getLogger(__name__)

DEFAULT_BUMP_PENALTY = 3
DEFAULT_MAX_LAYER_SWITCHES = 10
DEFAULT_MAX_TIERS = 32

_STEPS = ((1, 0), (-1, 0), (0, 1), (0, -1))


def chip_adjacent(coupler: Coupler) -> bool:
    """True if the endpoints are neighbours on the finite chip."""
    return abs(coupler.a.col - coupler.b.col) + abs(coupler.a.row - coupler.b.row) == 1


def chip_length(coupler: Coupler) -> float:
    """Straight-line length on the chip, ignoring periodic images."""
    return math.hypot(coupler.a.col - coupler.b.col, coupler.a.row - coupler.b.row)


def _site(pos: GridPos, width: int) -> int:
    return pos.row * width + pos.col


def a_star(
    grid: TierGrid,
    start: Cell,
    goal: Cell,
    endpoints: frozenset[Cell],
    bump_penalty: int = DEFAULT_BUMP_PENALTY,
    max_layer_switches: int = DEFAULT_MAX_LAYER_SWITCHES,
) -> list[Cell]:
    """Cheapest path between two cells of one tier.

    Steps cost 1 and layer switches ``bump_penalty``; at most
    ``max_layer_switches`` switches are allowed. Only free cells and the two
    endpoint cells may be entered.

    Args:
        grid: Tier occupancy
        start: First cell
        goal: Last cell
        endpoints: Cells the path may enter although they are reserved
        bump_penalty: Cost of a layer switch
        max_layer_switches: Cap on layer switches

    Returns:
        The cells from start to goal, or an empty list if none exists
    """
    gx, gy, _ = goal

    def heuristic(cell: Cell) -> int:
        return abs(cell[0] - gx) + abs(cell[1] - gy)

    State = tuple[int, int, int, int]
    begin: State = (*start, 0)
    g_score: dict[State, int] = {begin: 0}
    came_from: dict[State, State] = {}
    open_set = [(heuristic(start), start[2], start, 0, 0)]

    while open_set:
        _, _, cell, switches, cost = heapq.heappop(open_set)
        state = (*cell, switches)
        if cost > g_score.get(state, math.inf):
            continue
        if cell == goal:
            path = [cell]
            while state in came_from:
                state = came_from[state]
                path.append(state[:3])
            path.reverse()
            return path

        col, row, layer = cell
        moves: list[tuple[Cell, int, int]] = [
            ((col + dc, row + dr, layer), 1, switches) for dc, dr in _STEPS
        ]
        if switches < max_layer_switches:
            moves.append(((col, row, 1 - layer), bump_penalty, switches + 1))
        for neighbor, step_cost, used in moves:
            if not grid.in_bounds(neighbor[0], neighbor[1]):
                continue
            if neighbor not in endpoints and not grid.is_free(neighbor):
                continue
            tentative = cost + step_cost
            key = (*neighbor, used)
            if tentative < g_score.get(key, math.inf):
                g_score[key] = tentative
                came_from[key] = state
                heapq.heappush(
                    open_set,
                    (
                        tentative + heuristic(neighbor),
                        neighbor[2],
                        neighbor,
                        used,
                        tentative,
                    ),
                )
    return []


class RouterService:
    """Service for first-tier placement and multi-tier routing."""

    @staticmethod
    def place_first_tier(graph: CouplerGraph) -> tuple[list[Coupler], list[Coupler]]:
        """Split couplers into those tier 1 realizes directly and the rest.

        Qubits sit at their grid coordinates on a square grid, so only
        chip-adjacent couplers are direct; torus-wrapping edges are long.
        """
        direct = sorted(c for c in graph.couplers if chip_adjacent(c))
        long = sorted(c for c in graph.couplers if not chip_adjacent(c))
        logger.info(
            "Tier 1 holds %d couplers, %d left to route", len(direct), len(long)
        )
        return direct, long

    @staticmethod
    def routing_order(couplers: list[Coupler], seed: int = 0) -> list[Coupler]:
        """Ascending straight-line length; equal lengths in seeded order."""
        rng = np.random.default_rng(seed)
        shuffled = [couplers[k] for k in rng.permutation(len(couplers))]
        return sorted(shuffled, key=chip_length)

    @staticmethod
    def route_multitier(
        graph: CouplerGraph,
        seed: int = 0,
        bump_penalty: int = DEFAULT_BUMP_PENALTY,
        max_layer_switches: int = DEFAULT_MAX_LAYER_SWITCHES,
        max_tiers: int = DEFAULT_MAX_TIERS,
    ) -> RoutingReport:
        """Route the long couplers of a graph tier by tier.

        Each tier starts from a fresh ``[width, height, 2]`` grid. A qubit
        gets a replica on layer 0 of a tier only once a path ends there;
        until then its cell is an ordinary waypoint. Couplers whose qubit
        cells are already crossed, or that find no path, are deferred to
        the next tier.

        Args:
            graph: Coupler graph to realize
            seed: Seed for ordering couplers of equal length
            bump_penalty: A* cost of a layer switch
            max_layer_switches: Cap on layer switches per path
            max_tiers: Give up beyond this many tiers

        Returns:
            Report with paths, TSVs and any couplers left unrouted

        Raises:
            RoutingError: If a coupler cannot be routed even on a fresh tier
        """
        direct, long = RouterService.place_first_tier(graph)
        report = RoutingReport(
            tiers=1, direct=direct, width=graph.width, height=graph.height
        )
        report.routed_per_tier[1] = len(direct)
        pending = RouterService.routing_order(long, seed)
        index_of = {coupler: k for k, coupler in enumerate(long)}
        highest: dict[tuple[int, int], int] = defaultdict(lambda: 1)
        tier = 1

        while pending:
            tier += 1
            if tier > max_tiers:
                report.failures = [
                    f"{coupler} not routed within {max_tiers} tiers"
                    for coupler in pending
                ]
                logger.error("%d couplers left after %d tiers", len(pending), max_tiers)
                break
            grid = TierGrid(index=tier, width=graph.width, height=graph.height)
            deferred = []
            routed = 0
            for coupler in pending:
                start = (coupler.a.col, coupler.a.row, 0)
                goal = (coupler.b.col, coupler.b.row, 0)
                owners = {
                    cell: len(long) + _site(pos, graph.width)
                    for cell, pos in ((start, coupler.a), (goal, coupler.b))
                }
                if any(
                    grid.in_bounds(cell[0], cell[1])
                    and not grid.is_free(cell, owner)
                    for cell, owner in owners.items()
                ):
                    # a wire already runs over one of its qubits on this tier
                    deferred.append(coupler)
                    continue
                cells = a_star(
                    grid,
                    start,
                    goal,
                    endpoints=frozenset((start, goal)),
                    bump_penalty=bump_penalty,
                    max_layer_switches=max_layer_switches,
                )
                if not cells:
                    if routed == 0 and not deferred:
                        raise RoutingError(
                            f"Coupler {coupler} cannot be routed on an empty tier"
                        )
                    deferred.append(coupler)
                    continue
                grid.claim(list(cells[1:-1]), index_of[coupler])
                for cell, owner in owners.items():
                    grid.reserve(cell, owner)
                report.paths.append(RoutedPath(coupler, tier, tuple(cells)))
                for pos in (coupler.a, coupler.b):
                    highest[(pos.col, pos.row)] = tier
                routed += 1

            report.routed_per_tier[tier] = routed
            report.tiers = tier
            logger.info(
                "Tier %d: routed %d couplers, deferred %d", tier, routed, len(deferred)
            )
            pending = deferred

        report.tsvs = {pos: level - 1 for pos, level in sorted(highest.items())}
        return report

    @staticmethod
    def routing_errors(
        report: RoutingReport,
        max_layer_switches: int = DEFAULT_MAX_LAYER_SWITCHES,
    ) -> list[str]:
        """Problems with a set of routed paths; empty when they are valid."""
        errors = []
        used: dict[tuple[int, Cell], RoutedPath] = {}
        replicas: dict[int, set[Cell]] = defaultdict(set)
        for path in report.paths:
            replicas[path.tier].update({path.cells[0], path.cells[-1]})

        for path in report.paths:
            ends = {path.cells[0], path.cells[-1]}
            expected = {
                (path.coupler.a.col, path.coupler.a.row, 0),
                (path.coupler.b.col, path.coupler.b.row, 0),
            }
            if ends != expected:
                errors.append(f"{path.coupler}: path does not end on its qubits")
            if path.bumps > max_layer_switches:
                errors.append(
                    f"{path.coupler}: {path.bumps} layer switches exceed "
                    f"{max_layer_switches}"
                )
            for a, b in zip(path.cells, path.cells[1:]):
                step = abs(a[0] - b[0]) + abs(a[1] - b[1])
                switch = a[2] != b[2]
                if (switch and step != 0) or (not switch and step != 1):
                    errors.append(f"{path.coupler}: illegal step {a} -> {b}")
                    break
            for cell in path.cells:
                if not (
                    0 <= cell[0] < report.width
                    and 0 <= cell[1] < report.height
                    and cell[2] in (0, 1)
                ):
                    errors.append(f"{path.coupler}: cell {cell} is off the grid")
                    break
            for cell in path.cells[1:-1]:
                if cell in replicas[path.tier]:
                    errors.append(
                        f"{path.coupler}: crosses a qubit replica at {cell} "
                        f"on tier {path.tier}"
                    )
                    continue
                other = used.get((path.tier, cell))
                if other is not None:
                    errors.append(
                        f"{path.coupler} and {other.coupler} share {cell} "
                        f"on tier {path.tier}"
                    )
                used[(path.tier, cell)] = path
        return errors

    @staticmethod
    def validate_routing(
        report: RoutingReport,
        max_layer_switches: int = DEFAULT_MAX_LAYER_SWITCHES,
    ) -> bool:
        """True if no two paths collide and every path is legal."""
        return not RouterService.routing_errors(report, max_layer_switches)

