"""Schedule construction for the regular, Louvre-7 and Louvre-8 schemes."""

import logging
import math
from collections.abc import Iterable, Sequence
from typing import Optional

from ..exceptions import ScheduleError
from ..models.code import ANCILLA_ROLES, CodeSpec
from ..models.schedule import (
    IDLE,
    GateKind,
    InitSwap,
    InstructionCell,
    Layer,
    PlannedStep,
    RoundPlan,
    Schedule,
    Scheme,
    SwapSplit,
    Term,
)
from .code_service import CodeService

logger = logging.getLogger(__name__)


def _terms(label: str, indices: Iterable[int]) -> list[Term]:
    return [Term(label, index) for index in indices]


def _pad_left(cells: list[InstructionCell], size: int) -> list[InstructionCell]:
    return [IDLE] * (size - len(cells)) + cells


def _pad_right(cells: list[InstructionCell], size: int) -> list[InstructionCell]:
    return cells + [IDLE] * (size - len(cells))


class ScheduleService:
    """Service for building global instruction tables."""

    @staticmethod
    def default_f_x(code: CodeSpec) -> list[Term]:
        """First ceil(n_a / 2) A terms."""
        return _terms("A", range(math.ceil(code.n_a / 2)))

    @staticmethod
    def split_partition(
        code: CodeSpec,
        f_x: Optional[Sequence[Term]],
        f_z: Optional[Sequence[Term]] = None,
    ) -> tuple[list[Term], list[Term]]:
        """Complete and validate an F_x / F_z partition of the A terms.

        Raises:
            ScheduleError: If the two sets overlap or miss an A term
        """
        all_a = _terms("A", range(code.n_a))
        f_x = list(f_x) if f_x is not None else ScheduleService.default_f_x(code)
        if f_z is None:
            f_z = [term for term in all_a if term not in f_x]
        f_z = list(f_z)
        if any(term.label != "A" for term in (*f_x, *f_z)):
            raise ScheduleError("F_x and F_z may only hold A terms")
        if set(f_x) & set(f_z):
            raise ScheduleError("F_x and F_z must be disjoint")
        if sorted(set(f_x) | set(f_z)) != all_a or len(f_x) + len(f_z) != code.n_a:
            raise ScheduleError("F_x and F_z must cover every A term exactly once")
        return f_x, f_z

    @staticmethod
    def build_regular(
        code: CodeSpec,
        f_x: Optional[Sequence[Term]] = None,
        f_z: Optional[Sequence[Term]] = None,
    ) -> Schedule:
        """Three-phase CNOT-only schedule.

        Args:
            code: The code
            f_x: A terms X meets in Phase 1 (default: first half)
            f_z: A terms Z meets in Phase 1 (default: the rest)

        Returns:
            Schedule of depth 2 * max(|F_x|, |F_z|) + n_b
        """
        f_x, f_z = ScheduleService.split_partition(code, f_x, f_z)
        plan = RoundPlan(
            z_sequence=tuple(PlannedStep(t) for t in (*f_z, *reversed(f_x))),
            split=len(f_z),
            b_sequence=tuple(PlannedStep(t) for t in _terms("B", range(code.n_b))),
        )
        return ScheduleService.from_plan(
            code, plan, Scheme.REGULAR, metadata=_partition_metadata(f_x, f_z)
        )

    @staticmethod
    def orient(code: CodeSpec) -> tuple[CodeSpec, bool]:
        """Transpose the code when B has more terms than A."""
        if code.n_a < code.n_b:
            logger.info("Transposing code so that A holds the longer polynomial")
            return CodeService.transpose(code), True
        return code, False

    @staticmethod
    def build_louvre7(
        code: CodeSpec,
        b1: Optional[int] = None,
        f_x: Optional[Sequence[Term]] = None,
        f_z: Optional[Sequence[Term]] = None,
    ) -> Schedule:
        """Louvre-7: the last Phase-2 layer is a CXSWAP with B1.

        Args:
            code: The code; transposed first if B has more terms than A
            b1: Zero-based index of the B term to route with (default: shortest)
            f_x: A terms X meets in Phase 1 (after relabeling)
            f_z: A terms Z meets in Phase 1

        Returns:
            Schedule with B1 relabeled to the front of B

        Raises:
            ScheduleError: If ``b1`` is not a B term
        """
        code, transposed = ScheduleService.orient(code)
        if b1 is None:
            b1 = CodeService.shortest_term(code, "B")
        if not 0 <= b1 < code.n_b:
            raise ScheduleError(f"B1 choice {b1 + 1} is not a term of B")
        code = CodeService.relabel(code, 0, b1)

        f_x, f_z = ScheduleService.split_partition(code, f_x, f_z)
        b_rest = _terms("B", range(1, code.n_b))
        plan = RoundPlan(
            z_sequence=tuple(PlannedStep(t) for t in (*f_z, *reversed(f_x))),
            split=len(f_z),
            b_sequence=(
                *(PlannedStep(t) for t in b_rest),
                PlannedStep(Term("B", 0), GateKind.CXSWAP),
            ),
        )
        metadata = _partition_metadata(f_x, f_z)
        metadata["B1"] = code.B[0].format()
        return ScheduleService.from_plan(
            code, plan, Scheme.L7, transposed=transposed, metadata=metadata
        )

    @staticmethod
    def build_louvre8(
        code: CodeSpec,
        a1: Optional[int] = None,
        b1: Optional[int] = None,
        g_x: Optional[Sequence[Term]] = None,
        f_x: Optional[Sequence[Term]] = None,
        f_z: Optional[Sequence[Term]] = None,
    ) -> Schedule:
        """Louvre-8: Phase 2 split by a SWAP layer on A1, then CXSWAP on B1.

        Args:
            code: The code; transposed first if B has more terms than A
            a1: Zero-based index of the SWAP term in A (default: shortest)
            b1: Zero-based index of the CXSWAP term in B (default: shortest)
            g_x: B terms (other than B1) X meets before the SWAP layer
            f_x: A terms X meets in Phase 1 (after relabeling)
            f_z: A terms Z meets in Phase 1

        Returns:
            Schedule with A1 and B1 relabeled to the front

        Raises:
            ScheduleError: On invalid term choices or partitions
        """
        code, transposed = ScheduleService.orient(code)
        if a1 is None:
            a1 = CodeService.shortest_term(code, "A")
        if b1 is None:
            b1 = CodeService.shortest_term(code, "B")
        if not 0 <= a1 < code.n_a:
            raise ScheduleError(f"A1 choice {a1 + 1} is not a term of A")
        if not 0 <= b1 < code.n_b:
            raise ScheduleError(f"B1 choice {b1 + 1} is not a term of B")
        code = CodeService.relabel(code, a1, b1)
        a_one = Term("A", 0)

        f_x, f_z = ScheduleService.split_partition(code, f_x, f_z)
        # A1 goes last in the Phase-1 sequence of the class that owns it.
        x_phase1 = [t for t in f_x if t != a_one] + ([a_one] if a_one in f_x else [])
        z_phase1 = [t for t in f_z if t != a_one] + ([a_one] if a_one in f_z else [])

        b_rest = _terms("B", range(1, code.n_b))
        if g_x is None:
            g_x = b_rest[: math.ceil(len(b_rest) / 2)]
        if any(term not in b_rest for term in g_x):
            raise ScheduleError("G_x must be a subset of B without B1")

        b_sequence = (
            *(PlannedStep(t) for t in b_rest),
            PlannedStep(Term("B", 0), GateKind.CXSWAP),
        )
        plan = RoundPlan(
            z_sequence=tuple(
                PlannedStep(t) for t in (*z_phase1, *reversed(x_phase1))
            ),
            split=len(z_phase1),
            b_sequence=b_sequence,
            swap_term=a_one,
            swap_splits=(SwapSplit(0, frozenset(g_x)),),
        )
        metadata = _partition_metadata(f_x, f_z)
        metadata.update(
            {
                "A1": code.A[0].format(),
                "B1": code.B[0].format(),
                "G_x": ",".join(str(t) for t in g_x),
                "G_z": ",".join(str(t) for t in b_rest if t not in g_x),
            }
        )
        return ScheduleService.from_plan(
            code, plan, Scheme.L8, transposed=transposed, metadata=metadata
        )

    @staticmethod
    def sections(steps: Sequence[PlannedStep]) -> list[list[PlannedStep]]:
        """Split a B sequence into non-routing runs and single routing steps."""
        result: list[list[PlannedStep]] = []
        run: list[PlannedStep] = []
        for step in steps:
            if step.gate.is_routing:
                if run:
                    result.append(run)
                    run = []
                result.append([step])
            else:
                run.append(step)
        if run:
            result.append(run)
        return result

    @staticmethod
    def validate_plan(code: CodeSpec, plan: RoundPlan) -> list[str]:
        """Return the problems that keep a plan from covering every term once."""
        errors = []
        z_terms = [step.term for step in plan.z_sequence]
        if sorted(z_terms) != _terms("A", range(code.n_a)):
            errors.append("Z sequence must hold every A term exactly once")
        b_terms = [step.term for step in plan.b_sequence]
        if sorted(b_terms) != _terms("B", range(code.n_b)):
            errors.append("B sequence must hold every B term exactly once")
        steps = (*plan.z_sequence, *plan.b_sequence)
        if any(step.gate is GateKind.SWAP for step in steps):
            errors.append("Plan steps must interact (CNOT or CXSWAP)")
        sections = ScheduleService.sections(plan.b_sequence)
        for split in plan.swap_splits:
            if not 0 <= split.section < len(sections):
                errors.append(f"SWAP layer refers to missing section {split.section}")
                continue
            members = {step.term for step in sections[split.section]}
            if not split.x_first <= members:
                errors.append(
                    f"SWAP split of section {split.section} names terms outside it"
                )
        if plan.swap_term is not None and plan.swap_term.label != "A":
            errors.append("SWAP layers must use an A term")
        return errors

    @staticmethod
    def from_plan(
        code: CodeSpec,
        plan: RoundPlan,
        scheme: Scheme,
        transposed: bool = False,
        metadata: Optional[dict[str, str]] = None,
    ) -> Schedule:
        """Lay a round plan out as layers.

        Phase-1 sequences are right-aligned, Phase-3 sequences left-aligned and
        the Phase-2 segments between SWAP layers left-aligned.

        Raises:
            ScheduleError: If the plan does not cover the code's terms
        """
        errors = ScheduleService.validate_plan(code, plan)
        if errors:
            raise ScheduleError("; ".join(errors))

        z1 = [step.cell() for step in plan.z_sequence[: plan.split]]
        z3 = [step.cell() for step in plan.z_sequence[plan.split :]]
        x1 = list(reversed(z3))
        x3 = list(reversed(z1))

        layers: list[Layer] = []
        p1 = max(len(x1), len(z1))
        for x_cell, z_cell in zip(_pad_left(x1, p1), _pad_left(z1, p1)):
            layers.append(Layer(x_cell, z_cell, 1))

        layers.extend(ScheduleService._phase_two(plan))

        if len(plan.swap_splits) % 2 == 1 and plan.swap_term is not None:
            x3 = _restore(x3, plan.swap_term)
            z3 = _restore(z3, plan.swap_term)
        p3 = max(len(x3), len(z3))
        for x_cell, z_cell in zip(_pad_right(x3, p3), _pad_right(z3, p3)):
            layers.append(Layer(x_cell, z_cell, 3))

        layers = [
            layer for layer in layers if not (layer.x.is_idle and layer.z.is_idle)
        ]
        init = ScheduleService.derive_init(layers)
        schedule = Schedule(
            code=code,
            scheme=scheme,
            layers=tuple(layers),
            init=init,
            default_gate=plan.default_gate,
            transposed=transposed,
            metadata=dict(metadata or {}),
        )
        logger.debug("Built %s schedule of depth %d", scheme.value, schedule.depth)
        return schedule

    @staticmethod
    def _phase_two(plan: RoundPlan) -> list[Layer]:
        splits = {split.section: split for split in plan.swap_splits}
        x_segments: list[list[InstructionCell]] = [[]]
        z_segments: list[list[InstructionCell]] = [[]]
        for number, section in enumerate(ScheduleService.sections(plan.b_sequence)):
            split = splits.get(number)
            if split is None:
                x_segments[-1].extend(step.cell() for step in section)
                z_segments[-1].extend(step.cell() for step in section)
                continue
            x_part = [s.cell() for s in section if s.term in split.x_first]
            z_part = [s.cell() for s in section if s.term not in split.x_first]
            x_segments[-1].extend(x_part)
            z_segments[-1].extend(z_part)
            x_segments.append(list(z_part))
            z_segments.append(list(x_part))

        assert plan.swap_term is not None or len(x_segments) == 1  # nosec B101
        layers: list[Layer] = []
        for number, (x_seg, z_seg) in enumerate(zip(x_segments, z_segments)):
            if number > 0 and plan.swap_term is not None:
                swap = InstructionCell(plan.swap_term, GateKind.SWAP)
                layers.append(Layer(swap, swap, 2))
            size = max(len(x_seg), len(z_seg))
            for x_cell, z_cell in zip(_pad_right(x_seg, size), _pad_right(z_seg, size)):
                layers.append(Layer(x_cell, z_cell, 2))
        return layers

    @staticmethod
    def derive_init(layers: Sequence[Layer]) -> tuple[InitSwap, ...]:
        """Bookkeeping swaps that make Phase 2 start from the base layout.

        Phase-1 routing cells are replayed as SWAPs in reverse layer order.
        """
        swaps: list[InitSwap] = []
        for layer in reversed([layer for layer in layers if layer.phase == 1]):
            for role in ANCILLA_ROLES:
                cell = layer.cell(role)
                if cell.is_routing and cell.term is not None:
                    swaps.append(InitSwap(role, cell.term))
        return tuple(swaps)

    @staticmethod
    def term_coverage_errors(schedule: Schedule) -> list[str]:
        """Check that each class meets every term once through a CNOT."""
        errors = []
        expected = sorted(
            _terms("A", range(schedule.code.n_a))
            + _terms("B", range(schedule.code.n_b))
        )
        for role in ANCILLA_ROLES:
            met = sorted(
                layer.cell(role).term  # type: ignore[type-var]
                for layer in schedule.layers
                if layer.cell(role).interacts
            )
            if met != expected:
                missing = [str(t) for t in expected if t not in met]
                extra = sorted({str(t) for t in met if met.count(t) > 1})
                details = []
                if missing:
                    details.append(f"missing {', '.join(missing)}")
                if extra:
                    details.append(f"repeated {', '.join(extra)}")
                errors.append(f"{role.value} ancillas: " + "; ".join(details))
        return errors

    @staticmethod
    def build(code: CodeSpec, scheme: Scheme) -> Schedule:
        """Build a schedule with default choices for a closed-form scheme.

        Raises:
            ScheduleError: For schemes that need a table or a search
        """
        if scheme is Scheme.REGULAR:
            return ScheduleService.build_regular(code)
        if scheme is Scheme.L7:
            return ScheduleService.build_louvre7(code)
        if scheme is Scheme.L8:
            return ScheduleService.build_louvre8(code)
        raise ScheduleError(
            f"Scheme {scheme.value} has no closed-form builder; "
            "supply an instruction table or run the ordering search"
        )


def _restore(cells: list[InstructionCell], swap_term: Term) -> list[InstructionCell]:
    """Open Phase 3 with the layer that undoes the SWAP on ``swap_term``."""
    if cells and cells[0].term == swap_term:
        first = cells[0]
        merged = GateKind.CXSWAP if first.gate is GateKind.CNOT else GateKind.CNOT
        return [InstructionCell(swap_term, merged), *cells[1:]]
    return [InstructionCell(swap_term, GateKind.SWAP), *cells]


def _partition_metadata(f_x: Sequence[Term], f_z: Sequence[Term]) -> dict[str, str]:
    return {
        "F_x": ",".join(str(t) for t in f_x),
        "F_z": ",".join(str(t) for t in f_z),
    }
