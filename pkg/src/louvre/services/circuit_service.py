"""Circuit service: expand schedules into noisy stim memory experiments."""

import logging
from collections import defaultdict
from typing import Optional

import numpy as np
import stim

from ..exceptions import CircuitEmissionError, VerificationFailedError
from ..models.code import CheckMatrices, CodeSpec, GridPos, QubitId
from ..models.configuration import (
    ConfigurationState,
    PhysicalOp,
    SiteAdaptation,
    TrackRecord,
)
from ..models.noise import NoiseParams
from ..models.schedule import Schedule
from ..utils import gf2
from .absent_service import AbsentService
from .code_service import CodeService
from .tracker_service import TrackerService

logger = logging.getLogger(__name__)


class CircuitBuilder:
    """Appends resets, gate layers, measurements and detectors to a circuit.

    Registers are grid sites (``row * width + col``); a register holds
    whichever qubit currently sits on that site.
    """

    def __init__(
        self,
        code: CodeSpec,
        matrices: CheckMatrices,
        noise: NoiseParams,
        adaptation: Optional[SiteAdaptation] = None,
        memory_basis: str = "Z",
    ) -> None:
        """Prepare bookkeeping for one experiment."""
        self.code = code
        self.matrices = matrices
        self.noise = noise
        self.adaptation = adaptation or SiteAdaptation()
        self.memory_basis = memory_basis
        self.circuit = stim.Circuit()
        self.measurements = 0
        self.last: dict[QubitId, int] = {}

    def register(self, pos: GridPos) -> int:
        return pos.row * self.code.width + pos.col

    def take(self) -> stim.Circuit:
        """Hand over the circuit built so far and start a new one."""
        circuit, self.circuit = self.circuit, stim.Circuit()
        return circuit

    def _noise(self, name: str, targets: list[int], p: float) -> None:
        if p > 0 and targets:
            self.circuit.append(name, targets, p)

    def _present_registers(self, state: ConfigurationState) -> list[int]:
        return sorted(self.register(pos) for _, pos in state.occupied_sites())

    def qubit_coords(self, state: ConfigurationState) -> None:
        for _, pos in sorted(state.occupied_sites(), key=lambda item: item[1]):
            self.circuit.append(
                "QUBIT_COORDS", [self.register(pos)], [pos.col, pos.row]
            )

    def reset_data(self, state: ConfigurationState) -> None:
        """Prepare every code data qubit in the memory basis."""
        regs = [self.register(state.position(q)) for q in self.matrices.data]
        if self.memory_basis == "Z":
            self.circuit.append("R", regs)
            self._noise("X_ERROR", regs, self.noise.reset_flip)
        else:
            self.circuit.append("RX", regs)
            self._noise("Z_ERROR", regs, self.noise.reset_flip)
        others = sorted(set(self._present_registers(state)) - set(regs))
        self._noise("DEPOLARIZE1", others, self.noise.readout_idle)
        self.circuit.append("TICK")

    def round(self, record: TrackRecord, number: int, detectors: bool = True) -> None:
        """One syndrome-extraction round: reset, gate layers, measure."""
        start, end = record.initial, record.final
        x_regs = [self.register(start.position(q)) for q in self.matrices.x_checks]
        z_regs = [self.register(start.position(q)) for q in self.matrices.z_checks]
        present = self._present_registers(start)

        self.circuit.append("RX", x_regs)
        self.circuit.append("R", z_regs)
        self._noise("Z_ERROR", x_regs, self.noise.reset_flip)
        self._noise("X_ERROR", z_regs, self.noise.reset_flip)
        busy = set(x_regs) | set(z_regs)
        idle = [r for r in present if r not in busy]
        self._noise("DEPOLARIZE1", idle, self.noise.readout_idle)
        self.circuit.append("TICK")

        for layer in record.layers:
            self._gate_layer(layer, present)

        x_regs = [self.register(end.position(q)) for q in self.matrices.x_checks]
        z_regs = [self.register(end.position(q)) for q in self.matrices.z_checks]
        self._noise("Z_ERROR", x_regs, self.noise.measure_flip)
        self._noise("X_ERROR", z_regs, self.noise.measure_flip)
        self.circuit.append("MX", x_regs)
        self.circuit.append("M", z_regs)
        busy = set(x_regs) | set(z_regs)
        idle = [r for r in present if r not in busy]
        self._noise("DEPOLARIZE1", idle, self.noise.readout_idle)

        checks = list(self.matrices.x_checks) + list(self.matrices.z_checks)
        first = self.measurements
        self.measurements += len(checks)
        for offset, check in enumerate(checks):
            index = first + offset
            if detectors:
                self._round_detector(check, index, number)
            self.last[check] = index
        self.circuit.append("TICK")

    def _gate_layer(self, layer: list, present: list[int]) -> None:
        by_op: dict[PhysicalOp, list[int]] = defaultdict(list)
        for gate in layer:
            if gate.op is PhysicalOp.SWAPCX:
                pair = (gate.control_after, gate.target_after)
            else:
                pair = (gate.control_pos, gate.target_pos)
            by_op[gate.op].extend(self.register(pos) for pos in pair)
        touched: set[int] = set()
        for op in PhysicalOp:
            if by_op[op]:
                self.circuit.append(op.value, by_op[op])
                touched.update(by_op[op])
        interacting = by_op[PhysicalOp.CX] + by_op[PhysicalOp.CXSWAP]
        interacting += by_op[PhysicalOp.SWAPCX]
        self._noise("DEPOLARIZE2", interacting, self.noise.two_qubit)
        self._noise("DEPOLARIZE2", by_op[PhysicalOp.SWAP], self.noise.swap)
        idle = [r for r in present if r not in touched]
        self._noise("DEPOLARIZE1", idle, self.noise.gate_idle)
        self.circuit.append("TICK")

    def _round_detector(self, check: QubitId, index: int, number: int) -> None:
        home = CodeService.qubit_position(check)
        coords = [home.col, home.row, number]
        targets = [stim.target_rec(index - self.measurements)]
        if check in self.last:
            targets.append(stim.target_rec(self.last[check] - self.measurements))
        elif check.role.value != self.memory_basis:
            return
        self.circuit.append("DETECTOR", targets, coords)

    def measure_data(self, state: ConfigurationState, number: int) -> None:
        """Measure the data, close the memory-basis checks and the logicals."""
        regs = [self.register(state.position(q)) for q in self.matrices.data]
        if self.memory_basis == "Z":
            self._noise("X_ERROR", regs, self.noise.measure_flip)
            self.circuit.append("M", regs)
            checks, rows = self.matrices.z_checks, self.matrices.hz
        else:
            self._noise("Z_ERROR", regs, self.noise.measure_flip)
            self.circuit.append("MX", regs)
            checks, rows = self.matrices.x_checks, self.matrices.hx
        first = self.measurements
        self.measurements += len(regs)

        for check, row in zip(checks, rows):
            targets = [
                stim.target_rec(first + int(c) - self.measurements)
                for c in np.flatnonzero(row)
            ]
            if check in self.last:
                targets.append(stim.target_rec(self.last[check] - self.measurements))
            home = CodeService.qubit_position(check)
            self.circuit.append("DETECTOR", targets, [home.col, home.row, number])

        logical_x, logical_z = gf2.logical_bases(self.matrices.hx, self.matrices.hz)
        logicals = logical_z if self.memory_basis == "Z" else logical_x
        for k, row in enumerate(logicals):
            targets = [
                stim.target_rec(first + int(c) - self.measurements)
                for c in np.flatnonzero(row)
            ]
            self.circuit.append("OBSERVABLE_INCLUDE", targets, k)


class CircuitService:
    """Service for noise-annotated memory-experiment circuits."""

    @staticmethod
    def emit_circuit(
        schedule: Schedule,
        rounds: int = 6,
        noise: Optional[NoiseParams] = None,
        adaptation: Optional[SiteAdaptation] = None,
        memory_basis: str = "Z",
        verify: bool = True,
    ) -> stim.Circuit:
        """Build a memory experiment repeating the schedule.

        Routing schemes alternate forward and reversed rounds. The first round
        checks only memory-basis stabilizers; later rounds compare every check
        with its previous outcome; the final data measurement closes the
        memory-basis checks and defines one observable per logical qubit.

        Args:
            schedule: The schedule
            rounds: Number of syndrome-extraction rounds
            noise: SI1000 noise parameters (default: p = 0.001)
            adaptation: Absent-site view of the lattice
            memory_basis: ``"Z"`` or ``"X"``
            verify: Run the verification suite first

        Returns:
            The stim circuit

        Raises:
            CircuitEmissionError: On invalid parameters
            VerificationFailedError: If ``verify`` is set and the schedule fails
        """
        if rounds < 1:
            raise CircuitEmissionError(f"Need at least one round, got {rounds}")
        if memory_basis not in ("X", "Z"):
            raise CircuitEmissionError(
                f"Memory basis must be X or Z, got {memory_basis!r}"
            )
        if schedule.code.boundary != "periodic":
            raise CircuitEmissionError("Circuits need a periodic code")
        noise = noise or NoiseParams()
        if verify:
            from .verification_service import VerificationService

            report = VerificationService.verify_syndromes(schedule, adaptation)
            if not report.passed:
                raise VerificationFailedError(report)

        records = TrackerService.track_rounds(schedule, rounds, adaptation)
        builder = CircuitService.builder(schedule, noise, adaptation, memory_basis)
        builder.qubit_coords(records[0].initial)
        builder.reset_data(records[0].initial)
        for number, record in enumerate(records):
            builder.round(record, number)
        builder.measure_data(records[-1].final, rounds)
        logger.info(
            "Emitted %d rounds of %s with %d detectors",
            rounds,
            schedule.scheme.value,
            builder.circuit.num_detectors,
        )
        return builder.circuit

    @staticmethod
    def builder(
        schedule: Schedule,
        noise: NoiseParams,
        adaptation: Optional[SiteAdaptation] = None,
        memory_basis: str = "Z",
    ) -> CircuitBuilder:
        """A builder bound to the (adapted) code of a schedule."""
        adaptation = adaptation or SiteAdaptation()
        matrices = AbsentService.check_matrices(schedule.code, adaptation)
        return CircuitBuilder(schedule.code, matrices, noise, adaptation, memory_basis)
