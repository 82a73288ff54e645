"""Tracker service: follow every qubit through the layers of a round."""

import logging
from typing import Optional

import numpy as np

from ..exceptions import StructuralError
from ..models.code import ANCILLA_ROLES, CodeSpec, QubitId, Role
from ..models.configuration import (
    ALL_ROLES,
    ConfigurationState,
    PhysicalGate,
    PhysicalOp,
    SiteAdaptation,
    TrackRecord,
)
from ..models.schedule import GateKind, InstructionCell, Schedule, Term
from .code_service import CodeService

logger = logging.getLogger(__name__)


def _swap_rows(
    state: ConfigurationState,
    role: Role,
    data_role: Role,
    units: np.ndarray,
    partners: np.ndarray,
) -> None:
    """Exchange the sites of ancillas ``units`` and data ``partners``."""
    if units.size == 0:
        return
    anc = state.positions[role]
    data = state.positions[data_role]
    moved = anc[units].copy()
    anc[units] = data[partners]
    data[partners] = moved


class TrackerService:
    """Service for qubit configurations and the physical gates they imply."""

    @staticmethod
    def initial_state(
        schedule: Schedule, adaptation: Optional[SiteAdaptation] = None
    ) -> ConfigurationState:
        """Base layout with the schedule's bookkeeping swaps applied."""
        adaptation = adaptation or SiteAdaptation()
        state = ConfigurationState.base(schedule.code, adaptation)
        for swap in schedule.init:
            data_role = CodeService.partner_role(swap.role, swap.term.label)
            partners = CodeService.partner_units(
                schedule.code, swap.role, swap.term.label, swap.term.index
            )
            both = state.present[swap.role] & state.present[data_role][partners]
            units = np.flatnonzero(both)
            _swap_rows(state, swap.role, data_role, units, partners[units])
        return state

    @staticmethod
    def run(
        schedule: Schedule,
        adaptation: Optional[SiteAdaptation] = None,
        start: Optional[ConfigurationState] = None,
        max_coupler_length: Optional[int] = None,
    ) -> TrackRecord:
        """Track one round and expand it into physical gates.

        Args:
            schedule: Global instruction table
            adaptation: Absent-site view of the lattice (default: complete)
            start: Configuration to start from (default: the schedule's initial
                configuration)
            max_coupler_length: Reject gates longer than this torus distance

        Returns:
            States at every layer boundary and the gates of every layer

        Raises:
            StructuralError: If X and Z share a data sublattice in one layer,
                two qubits land on one site or a gate is too long
        """
        code = schedule.code
        adaptation = adaptation or SiteAdaptation()
        state = (
            start.copy()
            if start is not None
            else TrackerService.initial_state(schedule, adaptation)
        )
        active = {role: adaptation.code_mask(code, role) for role in ALL_ROLES}
        record = TrackRecord(states=[state.copy()], layers=[])

        for number, layer in enumerate(schedule.layers):
            used_data: dict[Role, Role] = {}
            gates: list[PhysicalGate] = []
            moves: list[tuple[Role, Role, np.ndarray, np.ndarray]] = []
            for role in ANCILLA_ROLES:
                cell = layer.cell(role)
                if cell.term is None:
                    continue
                data_role = CodeService.partner_role(role, cell.term.label)
                if data_role in used_data:
                    raise StructuralError(
                        f"Layer {number + 1}: X and Z ancillas both act on the "
                        f"{data_role.value} sublattice",
                        layer=number,
                    )
                used_data[data_role] = role
                partners = CodeService.partner_units(
                    code, role, cell.term.label, cell.term.index
                )
                layer_gates, units = TrackerService._expand_cell(
                    schedule, state, active, record, role, cell, partners
                )
                gates.extend(layer_gates)
                if cell.gate.is_routing:
                    moves.append((role, data_role, units, partners[units]))

            if max_coupler_length is not None:
                TrackerService._check_lengths(code, gates, max_coupler_length, number)
            for role, data_role, units, partners in moves:
                _swap_rows(state, role, data_role, units, partners)
            TrackerService._check_collisions(state, number)
            record.layers.append(gates)
            record.states.append(state.copy())
            logger.debug("Layer %d: %d gates", number + 1, len(gates))
        return record

    @staticmethod
    def _expand_cell(
        schedule: Schedule,
        state: ConfigurationState,
        active: dict[Role, np.ndarray],
        record: TrackRecord,
        role: Role,
        cell: InstructionCell,
        partners: np.ndarray,
    ) -> tuple[list[PhysicalGate], np.ndarray]:
        """Gates of one class in one layer, plus the ancilla units that move."""
        code = schedule.code
        assert cell.term is not None  # nosec B101
        term: Term = cell.term
        data_role = CodeService.partner_role(role, term.label)
        reachable = state.present[role] & state.present[data_role][partners]
        interacts = active[role] & active[data_role][partners] & cell.gate.has_cnot
        routing = cell.gate.is_routing

        if cell.gate is GateKind.CXSWAP:
            lost = reachable & ~interacts
            idle = lost & ~active[role]
            record.idle_swaps += int(np.count_nonzero(idle))
            record.padding_swaps += int(np.count_nonzero(lost & active[role]))

        gates = []
        for unit in np.flatnonzero(reachable & (interacts | routing)):
            ancilla = QubitId(int(unit % code.m), int(unit // code.m), role)
            partner = int(partners[unit])
            data = QubitId(partner % code.m, partner // code.m, data_role)
            if interacts[unit] and routing:
                op = PhysicalOp.SWAPCX if schedule.reversed else PhysicalOp.CXSWAP
            elif interacts[unit]:
                op = PhysicalOp.CX
            else:
                op = PhysicalOp.SWAP
            control, target = (ancilla, data) if role is Role.X else (data, ancilla)
            gates.append(
                PhysicalGate(
                    op=op,
                    control=control,
                    target=target,
                    control_pos=state.position(control),
                    target_pos=state.position(target),
                    role=role,
                    term=term,
                )
            )
        units = np.flatnonzero(reachable) if routing else np.zeros(0, dtype=np.int64)
        return gates, units

    @staticmethod
    def _check_lengths(
        code: CodeSpec, gates: list[PhysicalGate], limit: int, number: int
    ) -> None:
        for gate in gates:
            length = CodeService.torus_distance(
                gate.control_pos, gate.target_pos, code.width, code.height
            )
            if length > limit:
                raise StructuralError(
                    f"Layer {number + 1}: {gate.control}-{gate.target} needs a "
                    f"coupler of length {length}, above the limit {limit}",
                    layer=number,
                )

    @staticmethod
    def _check_collisions(state: ConfigurationState, number: int) -> None:
        height = state.code.height
        keys = np.concatenate(
            [
                state.positions[role][state.present[role]] @ np.array([height, 1])
                for role in ALL_ROLES
            ]
        )
        if np.unique(keys).size != keys.size:
            first, second, pos = state.collisions()[0]
            raise StructuralError(
                f"Layer {number + 1}: {first} and {second} both occupy {pos}",
                layer=number,
            )

    @staticmethod
    def track_configuration(
        schedule: Schedule,
        adaptation: Optional[SiteAdaptation] = None,
        start: Optional[ConfigurationState] = None,
    ) -> list[ConfigurationState]:
        """Configurations at every layer boundary, initial state first."""
        return TrackerService.run(schedule, adaptation, start).states

    @staticmethod
    def round_schedules(schedule: Schedule, rounds: int) -> list[Schedule]:
        """Forward and reversed rounds alternating; non-routing schemes repeat."""
        if rounds < 1:
            raise ValueError(f"Need at least one round, got {rounds}")
        backward = schedule.reversed_round() if schedule.has_routing else schedule
        return [schedule if r % 2 == 0 else backward for r in range(rounds)]

    @staticmethod
    def track_rounds(
        schedule: Schedule,
        rounds: int,
        adaptation: Optional[SiteAdaptation] = None,
    ) -> list[TrackRecord]:
        """Track consecutive rounds, each starting where the last one ended."""
        records: list[TrackRecord] = []
        state: Optional[ConfigurationState] = None
        for current in TrackerService.round_schedules(schedule, rounds):
            record = TrackerService.run(current, adaptation, start=state)
            records.append(record)
            state = record.final
        return records

