"""Ordering search for the routed schemes (Louvre-7R, Louvre-8R, CXSWAP-only)."""

import itertools
import logging
import time
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from ..exceptions import OrderingError, ScheduleError
from ..models.code import ANCILLA_ROLES, CodeSpec, Role
from ..models.configuration import ALL_ROLES
from ..models.schedule import (
    GateKind,
    PlannedStep,
    RoundPlan,
    Schedule,
    Scheme,
    SwapSplit,
    Term,
)
from .code_service import CodeService
from .metrics_service import MetricsService
from .schedule_service import ScheduleService
from .tracker_service import TrackerService
from .verification_service import VerificationService

logger = logging.getLogger(__name__)

SEARCHED_SCHEMES = (Scheme.L7R, Scheme.L8R, Scheme.CXSWAP_ONLY)
DEFAULT_CANDIDATE_CAP = 50_000

Vector = tuple[int, int]
CouplerKey = tuple[Vector, Vector]
RankKey = tuple[int, Fraction, int, tuple[str, ...]]

_CORNERS: dict[Role, Vector] = {
    Role.X: (0, 0),
    Role.R: (1, 0),
    Role.L: (0, 1),
    Role.Z: (1, 1),
}


@dataclass(frozen=True)
class CandidateScore:
    """Cost of one candidate computed on a single unit cell."""

    feasible: bool
    depth: int
    avg_distance: Fraction
    avg_degree: Fraction
    n_classes: int
    odd_pairs: int = 0
    reason: str = ""

    def key(self) -> tuple[int, Fraction, int]:
        return self.depth, self.avg_distance, self.n_classes


class UnitEvaluator:
    """Evaluates a schedule on the unit cell at the origin.

    Without absent sites every sublattice moves as a whole, so one offset per
    role describes the configuration and couplers fall into translation
    classes. The cost of a schedule is the cost of its classes.
    """

    def __init__(self, code: CodeSpec) -> None:
        """Precompute base interaction vectors and commutation shifts."""
        self.code = code
        self.width, self.height = code.width, code.height
        self.delta: dict[tuple[Role, Term], Vector] = {}
        self.unit_shift: dict[tuple[Role, Term], Vector] = {}
        for role in ANCILLA_ROLES:
            for label in ("A", "B"):
                for index, mono in enumerate(code.polynomial(label)):
                    term = Term(label, index)
                    self.delta[(role, term)] = CodeService.base_delta(
                        code, role, label, index
                    )
                    sign = 1 if role is Role.Z else -1
                    self.unit_shift[(role, term)] = (sign * mono.a, sign * mono.b)

    def _wrap(self, vector: Vector) -> Vector:
        return vector[0] % self.width, vector[1] % self.height

    def _key(self, anchor: Vector, d: Vector) -> CouplerKey:
        a = (anchor[0] % 2, anchor[1] % 2)
        far = ((anchor[0] + d[0]) % 2, (anchor[1] + d[1]) % 2)
        return min((a, self._wrap(d)), (far, self._wrap((-d[0], -d[1]))))

    def couplers(self, schedule: Schedule) -> Optional[dict[CouplerKey, int]]:
        """Coupler classes with their lengths, or ``None`` on a collision."""
        offsets = {role: (0, 0) for role in ALL_ROLES}
        classes: dict[CouplerKey, int] = {}

        def apply(role: Role, term: Term, record: bool, moves: bool) -> None:
            data_role = CodeService.partner_role(role, term.label)
            base = self.delta[(role, term)]
            off_r, off_d = offsets[role], offsets[data_role]
            d = (base[0] + off_d[0] - off_r[0], base[1] + off_d[1] - off_r[1])
            if record:
                corner = _CORNERS[role]
                anchor = (corner[0] + off_r[0], corner[1] + off_r[1])
                classes[self._key(anchor, d)] = CodeService.torus_length(
                    d[0], d[1], self.width, self.height
                )
            if moves:
                offsets[role] = (off_r[0] + d[0], off_r[1] + d[1])
                offsets[data_role] = (off_d[0] - d[0], off_d[1] - d[1])

        for swap in schedule.init:
            apply(swap.role, swap.term, record=False, moves=True)
        for layer in schedule.layers:
            for role in ANCILLA_ROLES:
                cell = layer.cell(role)
                if cell.term is not None:
                    apply(role, cell.term, record=True, moves=cell.gate.is_routing)
            parities = {
                ((c[0] + offsets[r][0]) % 2, (c[1] + offsets[r][1]) % 2)
                for r, c in _CORNERS.items()
            }
            if len(parities) != len(ALL_ROLES):
                return None
        return classes

    def odd_pairs(self, schedule: Schedule) -> int:
        """Number of Z checks meeting X(0,0) on an odd number of X-first qubits."""
        times: dict[tuple[Role, Term], int] = {}
        for number, layer in enumerate(schedule.layers):
            for role in ANCILLA_ROLES:
                cell = layer.cell(role)
                if cell.interacts and cell.term is not None:
                    times.setdefault((role, cell.term), number)
        m, l = self.code.m, self.code.l  # noqa: E741
        x_first: dict[Vector, int] = {}
        for (role, tx), time_x in times.items():
            if role is not Role.X:
                continue
            data_role = CodeService.partner_role(Role.X, tx.label)
            qx = self.unit_shift[(Role.X, tx)]
            for (other, tz), time_z in times.items():
                if other is not Role.Z:
                    continue
                if CodeService.partner_role(Role.Z, tz.label) is not data_role:
                    continue
                sz = self.unit_shift[(Role.Z, tz)]
                v = ((qx[0] - sz[0]) % m, (qx[1] - sz[1]) % l)
                x_first[v] = x_first.get(v, 0) + int(time_x < time_z)
        return sum(1 for count in x_first.values() if count % 2)

    def score(self, schedule: Schedule) -> CandidateScore:
        """Cost and feasibility of a schedule."""
        for number, layer in enumerate(schedule.layers):
            x_term, z_term = layer.x.term, layer.z.term
            if x_term is not None and z_term is not None:
                if CodeService.partner_role(
                    Role.X, x_term.label
                ) is CodeService.partner_role(Role.Z, z_term.label):
                    return _infeasible(f"layer {number + 1} shares a data sublattice")
        odd = self.odd_pairs(schedule)
        if odd:
            return _infeasible("odd check overlap", odd)
        classes = self.couplers(schedule)
        if classes is None:
            return _infeasible("qubits collide")
        return CandidateScore(
            feasible=True,
            depth=schedule.depth,
            avg_distance=Fraction(sum(classes.values()), 2),
            avg_degree=Fraction(len(classes), 2),
            n_classes=len(classes),
        )


def _infeasible(reason: str, odd_pairs: int = 0) -> CandidateScore:
    return CandidateScore(
        feasible=False,
        depth=0,
        avg_distance=Fraction(0),
        avg_degree=Fraction(0),
        n_classes=0,
        odd_pairs=odd_pairs,
        reason=reason,
    )


def _signature(schedule: Schedule) -> tuple[str, ...]:
    return tuple(
        f"{layer.x.term}:{layer.x.gate.value}/{layer.z.term}:{layer.z.gate.value}"
        for layer in schedule.layers
    )


class OrderingService:
    """Service for searching round plans of the routed schemes."""

    @staticmethod
    def shifted_vector(vector: Vector, routed: Vector) -> Vector:
        """Interaction vector after the ancilla routed along ``routed``.

        Both the ancilla and the data sublattice it swapped with move, so the
        vector to any later partner shrinks by twice the routed vector.
        """
        return vector[0] - 2 * routed[0], vector[1] - 2 * routed[1]

    @staticmethod
    def _a_options(
        code: CodeSpec, all_cxswap: bool
    ) -> list[tuple[tuple[PlannedStep, ...], int]]:
        a_terms = [Term("A", k) for k in range(code.n_a)]
        flag_sets = (
            [tuple([True] * code.n_a)]
            if all_cxswap
            else list(itertools.product((False, True), repeat=code.n_a))
        )
        options = []
        for order in itertools.permutations(a_terms):
            for flags in flag_sets:
                steps = tuple(
                    PlannedStep(t, GateKind.CXSWAP if f else GateKind.CNOT)
                    for t, f in zip(order, flags)
                )
                for split in range(code.n_a + 1):
                    options.append((steps, split))
        return options

    @staticmethod
    def _b_options(
        code: CodeSpec, all_cxswap: bool, odd_parity: bool
    ) -> list[tuple[PlannedStep, ...]]:
        b_terms = [Term("B", k) for k in range(code.n_b)]
        flag_sets = (
            [tuple([True] * code.n_b)]
            if all_cxswap
            else list(itertools.product((False, True), repeat=code.n_b))
        )
        if odd_parity:
            flag_sets = [flags for flags in flag_sets if sum(flags) % 2 == 1]
        return [
            tuple(
                PlannedStep(t, GateKind.CXSWAP if f else GateKind.CNOT)
                for t, f in zip(order, flags)
            )
            for order in itertools.permutations(b_terms)
            for flags in flag_sets
        ]

    @staticmethod
    def _swap_options(
        code: CodeSpec, b_sequence: Sequence[PlannedStep], max_swap_layers: int
    ) -> list[tuple[Optional[Term], tuple[SwapSplit, ...]]]:
        options: list[tuple[Optional[Term], tuple[SwapSplit, ...]]] = []
        if max_swap_layers < 1:
            return [(None, ())]
        sections = ScheduleService.sections(b_sequence)
        per_section = []
        for number, section in enumerate(sections):
            terms = [step.term for step in section]
            subsets = [
                frozenset(combo)
                for size in range(len(terms) + 1)
                for combo in itertools.combinations(terms, size)
            ]
            per_section.append([SwapSplit(number, subset) for subset in subsets])
        for count in range(1, max_swap_layers + 1):
            for chosen in itertools.combinations(range(len(sections)), count):
                for splits in itertools.product(*(per_section[k] for k in chosen)):
                    for k in range(code.n_a):
                        options.append((Term("A", k), tuple(splits)))
        return options

    @staticmethod
    def candidate_plans(
        code: CodeSpec,
        scheme: Scheme,
        max_swap_layers: int = 1,
        cap: int = DEFAULT_CANDIDATE_CAP,
        seed: int = 0,
    ) -> Iterator[RoundPlan]:
        """Round plans of a searched scheme.

        All plans are produced in a fixed order while there are at most
        ``cap`` of them; otherwise ``cap`` plans are drawn with the seed.
        """
        all_cxswap = scheme is Scheme.CXSWAP_ONLY
        if scheme is Scheme.L7R:
            max_swap_layers = 0
        elif scheme is Scheme.CXSWAP_ONLY:
            max_swap_layers = max(max_swap_layers, 2)
        default_gate = GateKind.CXSWAP if all_cxswap else GateKind.CNOT

        a_options = OrderingService._a_options(code, all_cxswap)
        b_options = OrderingService._b_options(code, all_cxswap, not all_cxswap)
        swap_options = [
            OrderingService._swap_options(code, b_seq, max_swap_layers)
            for b_seq in b_options
        ]
        sizes = [len(options) for options in swap_options]
        total = len(a_options) * sum(sizes)
        logger.info("%s search space: %d round plans", scheme.value, total)

        def plan(a_idx: int, b_idx: int, s_idx: int) -> RoundPlan:
            steps, split = a_options[a_idx]
            swap_term, splits = swap_options[b_idx][s_idx]
            return RoundPlan(
                z_sequence=steps,
                split=split,
                b_sequence=b_options[b_idx],
                swap_term=swap_term,
                swap_splits=splits,
                default_gate=default_gate,
            )

        if total <= cap:
            for b_idx, size in enumerate(sizes):
                for s_idx in range(size):
                    for a_idx in range(len(a_options)):
                        yield plan(a_idx, b_idx, s_idx)
            return

        rng = np.random.default_rng(seed)
        weights = np.array(sizes, dtype=float) / sum(sizes)
        for _ in range(cap):
            b_idx = int(rng.choice(len(b_options), p=weights))
            s_idx = int(rng.integers(sizes[b_idx]))
            a_idx = int(rng.integers(len(a_options)))
            yield plan(a_idx, b_idx, s_idx)

    @staticmethod
    def optimize_ordering(
        code: CodeSpec,
        scheme: Scheme,
        budget_seconds: float = 60.0,
        seed: int = 0,
        max_swap_layers: int = 1,
        cap: int = DEFAULT_CANDIDATE_CAP,
    ) -> Schedule:
        """Search the cheapest feasible schedule of a routed scheme.

        Candidates are ranked by depth, then by average coupler distance, then
        by the number of couplers, then by their layer order. The winner is
        re-checked on the full lattice.

        Args:
            code: The code; transposed first if B has more terms than A
            scheme: ``l7r``, ``l8r`` or ``cxswap-only``
            budget_seconds: Wall-clock limit; the best schedule so far is kept
            seed: Seed for sampling large search spaces
            max_swap_layers: SWAP layers allowed in Louvre-8R
            cap: Largest search space enumerated exhaustively

        Returns:
            The best schedule found

        Raises:
            OrderingError: If no candidate is feasible
        """
        if scheme not in SEARCHED_SCHEMES:
            raise OrderingError(
                f"Scheme {scheme.value} is built directly, not searched"
            )
        code, transposed = ScheduleService.orient(code)
        evaluator = UnitEvaluator(code)
        deadline = time.monotonic() + budget_seconds

        best: Optional[tuple[RankKey, Schedule]] = None
        closest: Optional[CandidateScore] = None
        tried = 0
        for plan in OrderingService.candidate_plans(
            code, scheme, max_swap_layers, cap, seed
        ):
            if time.monotonic() > deadline:
                logger.warning("Search budget of %.0f s exhausted", budget_seconds)
                break
            tried += 1
            try:
                schedule = ScheduleService.from_plan(code, plan, scheme, transposed)
            except ScheduleError:
                continue
            score = evaluator.score(schedule)
            if not score.feasible:
                if score.odd_pairs and (
                    closest is None or score.odd_pairs < closest.odd_pairs
                ):
                    closest = score
                continue
            rank = (*score.key(), _signature(schedule))
            if best is None or rank < best[0]:
                best = (rank, schedule)
                logger.debug(
                    "Candidate %d: degree %s, distance %s",
                    tried,
                    score.avg_degree,
                    score.avg_distance,
                )

        if best is None:
            gap = (
                f"; the closest candidate leaves {closest.odd_pairs} odd check pairs"
                if closest is not None
                else ""
            )
            raise OrderingError(
                f"No feasible {scheme.value} schedule among {tried} candidates{gap}"
            )

        schedule = best[1]
        TrackerService.run(schedule)
        commutation = VerificationService.verify_commutation(schedule)
        if not commutation.ok:
            raise OrderingError(
                f"Search result fails the full commutation check on {code.label()}"
            )
        report = MetricsService.metrics_report(
            MetricsService.extract_couplers(schedule), scheme, code
        )
        metadata = dict(schedule.metadata)
        metadata.update(
            {
                "searched": str(tried),
                "degree": str(report.avg_degree),
                "distance": str(report.avg_distance),
            }
        )
        logger.info(
            "Best %s schedule after %d candidates: %s",
            scheme.value,
            tried,
            report.pair(),
        )
        return Schedule(
            code=schedule.code,
            scheme=schedule.scheme,
            layers=schedule.layers,
            init=schedule.init,
            default_gate=schedule.default_gate,
            transposed=schedule.transposed,
            metadata=metadata,
        )
