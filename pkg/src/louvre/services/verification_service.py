"""Verification service: prove a schedule measures the code it claims to."""

import logging
from typing import Optional

import numpy as np
import stim

from ..exceptions import StructuralError
from ..models.code import CodeSpec, QubitId, Role
from ..models.configuration import ALL_ROLES, SiteAdaptation, TrackRecord
from ..models.noise import NoiseParams
from ..models.schedule import (
    GateKind,
    InstructionCell,
    Layer,
    Schedule,
    Scheme,
    Term,
)
from ..models.verification import CommutationResult, VerificationReport
from ..utils import gf2
from .absent_service import AbsentService
from .circuit_service import CircuitService
from .code_service import CodeService
from .schedule_service import ScheduleService
from .tracker_service import TrackerService

logger = logging.getLogger(__name__)


def _interaction_layers(schedule: Schedule, role: Role) -> dict[Term, int]:
    """Layer index at which a class meets each term through a CNOT."""
    times: dict[Term, int] = {}
    for number, layer in enumerate(schedule.layers):
        cell = layer.cell(role)
        if cell.interacts and cell.term is not None:
            times.setdefault(cell.term, number)
    return times


def _qubit_index(code: CodeSpec, qubit: QubitId) -> int:
    return ALL_ROLES.index(qubit.role) * code.n_units + qubit.unit(code.m)


class VerificationService:
    """Service for the combinatorial and stabilizer-simulation checks."""

    @staticmethod
    def verify_commutation(
        schedule: Schedule, adaptation: Optional[SiteAdaptation] = None
    ) -> CommutationResult:
        """Check that every overlapping X/Z check pair is met in an even order.

        For each pair of checks sharing data qubits, count the shared qubits
        the X check reaches before the Z check. The measured operators
        commute with the code exactly when every count is even.
        """
        code = schedule.code
        adaptation = adaptation or SiteAdaptation()
        x_times = _interaction_layers(schedule, Role.X)
        z_times = _interaction_layers(schedule, Role.Z)
        x_active = adaptation.code_mask(code, Role.X)
        z_active = adaptation.code_mask(code, Role.Z)
        n = code.n_units
        overlap = np.zeros((n, n), dtype=np.int64)
        x_first = np.zeros((n, n), dtype=np.int64)
        units = np.arange(n)

        for tx, time_x in x_times.items():
            data_role = CodeService.partner_role(Role.X, tx.label)
            data_ok = adaptation.code_mask(code, data_role)
            x_partners = CodeService.partner_units(code, Role.X, tx.label, tx.index)
            for tz, time_z in z_times.items():
                if CodeService.partner_role(Role.Z, tz.label) is not data_role:
                    continue
                z_partners = CodeService.partner_units(code, Role.Z, tz.label, tz.index)
                inverse = np.empty(n, dtype=np.int64)
                inverse[z_partners] = units
                v = inverse[x_partners]
                keep = x_active & z_active[v] & data_ok[x_partners]
                np.add.at(overlap, (units[keep], v[keep]), 1)
                if time_x < time_z:
                    np.add.at(x_first, (units[keep], v[keep]), 1)

        pairs = np.argwhere(overlap > 0)
        odd = np.argwhere((x_first % 2 == 1) & (overlap > 0))
        odd_pairs = [
            (
                str(QubitId(int(u % code.m), int(u // code.m), Role.X)),
                str(QubitId(int(v % code.m), int(v // code.m), Role.Z)),
                int(x_first[u, v]),
            )
            for u, v in odd
        ]
        return CommutationResult(
            ok=not odd_pairs, pairs_checked=len(pairs), odd_pairs=odd_pairs
        )

    @staticmethod
    def check_determinism(
        schedule: Schedule, adaptation: Optional[SiteAdaptation] = None
    ) -> Optional[str]:
        """Build a noiseless two-round circuit and ask stim for its error model.

        Returns:
            ``None`` if every detector and observable is deterministic,
            otherwise stim's complaint
        """
        for basis in ("Z", "X"):
            circuit = CircuitService.emit_circuit(
                schedule,
                rounds=2,
                noise=NoiseParams(p=0.0),
                adaptation=adaptation,
                memory_basis=basis,
                verify=False,
            )
            try:
                circuit.detector_error_model()
            except ValueError as err:
                first = str(err).strip().splitlines()[0]
                return f"{basis}-basis memory: {first}"
        return None

    @staticmethod
    def single_fault_mismatches(
        schedule: Schedule,
        adaptation: Optional[SiteAdaptation] = None,
        seed: int = 0,
    ) -> tuple[int, list[str]]:
        """Inject X and Z on each data qubit between two rounds.

        An X error must flip exactly the Z checks of its column and a Z error
        exactly the X checks.

        Returns:
            Number of faults tried and a description of every mismatch
        """
        adaptation = adaptation or SiteAdaptation()
        records = TrackerService.track_rounds(schedule, 2, adaptation)
        builder = CircuitService.builder(schedule, NoiseParams(p=0.0), adaptation)
        matrices = builder.matrices
        builder.reset_data(records[0].initial)
        builder.round(records[0], 0, detectors=False)
        prefix = builder.take()
        builder.round(records[1], 1, detectors=False)
        second = builder.take()

        sim = stim.TableauSimulator(seed=seed)
        sim.do(prefix)
        n_x = len(matrices.x_checks)
        n_checks = n_x + len(matrices.z_checks)

        def outcomes(pauli: Optional[str], register: int) -> np.ndarray:
            branch = sim.copy()
            if pauli == "X":
                branch.x(register)
            elif pauli == "Z":
                branch.z(register)
            branch.do(second)
            record = branch.current_measurement_record()
            return np.array(record[-n_checks:], dtype=bool)

        clean = outcomes(None, 0)
        mismatches = []
        tried = 0
        for column, data in enumerate(matrices.data):
            register = builder.register(records[0].final.position(data))
            for pauli, rows, offset in (
                ("X", matrices.hz, n_x),
                ("Z", matrices.hx, 0),
            ):
                tried += 1
                expected = np.zeros(n_checks, dtype=bool)
                expected[offset : offset + rows.shape[0]] = rows[:, column] == 1
                flipped = outcomes(pauli, register) ^ clean
                if not np.array_equal(flipped, expected):
                    mismatches.append(
                        f"{pauli} error on {data} flips "
                        f"{int(flipped.sum())} checks, expected "
                        f"{int(expected.sum())}"
                    )
        return tried, mismatches

    @staticmethod
    def logical_leaks(
        schedule: Schedule, adaptation: Optional[SiteAdaptation] = None
    ) -> list[str]:
        """Propagate the logical operators through two rounds of CNOTs.

        Gates act on qubit identities, so SWAPs drop out. Each logical must
        come back unchanged with nothing left on any ancilla.
        """
        code = schedule.code
        adaptation = adaptation or SiteAdaptation()
        matrices = AbsentService.check_matrices(code, adaptation)
        logical_x, logical_z = gf2.logical_bases(matrices.hx, matrices.hz)
        size = len(ALL_ROLES) * code.n_units
        columns = [_qubit_index(code, q) for q in matrices.data]

        def embed(rows: np.ndarray) -> np.ndarray:
            full = np.zeros((rows.shape[0], size), dtype=np.uint8)
            full[:, columns] = rows
            return full

        x_frame, z_frame = embed(logical_x), embed(logical_z)
        expected_x, expected_z = x_frame.copy(), z_frame.copy()
        records = TrackerService.track_rounds(schedule, 2, adaptation)
        for record in records:
            for gate in record.gates():
                if not gate.op.has_cnot:
                    continue
                c = _qubit_index(code, gate.control)
                t = _qubit_index(code, gate.target)
                x_frame[:, t] ^= x_frame[:, c]
                z_frame[:, c] ^= z_frame[:, t]

        leaks = []
        for kind, frame, expected in (
            ("X", x_frame, expected_x),
            ("Z", z_frame, expected_z),
        ):
            for k in np.flatnonzero(np.any(frame != expected, axis=1)):
                leaks.append(f"logical {kind}{k + 1} is changed by the round")
        return leaks

    @staticmethod
    def verify_restoration(
        forward: Schedule,
        backward: Schedule,
        adaptation: Optional[SiteAdaptation] = None,
    ) -> bool:
        """True if the reversed round brings every qubit back home."""
        first = TrackerService.run(forward, adaptation)
        second = TrackerService.run(backward, adaptation, start=first.final)
        return second.final.same_layout(first.initial)

    @staticmethod
    def verify_syndromes(
        schedule: Schedule,
        adaptation: Optional[SiteAdaptation] = None,
        seed: int = 0,
        max_coupler_length: Optional[int] = None,
    ) -> VerificationReport:
        """Run the full verification suite.

        Args:
            schedule: Schedule to check
            adaptation: Absent-site view of the lattice
            seed: Seed for the tableau simulator
            max_coupler_length: Optional limit on gate length

        Returns:
            Report with one flag per check and diagnostics for every failure
        """
        adaptation = adaptation or SiteAdaptation()
        report = VerificationReport(
            scheme=schedule.scheme.value, code=schedule.code.label()
        )
        try:
            records: list[TrackRecord] = []
            for current in TrackerService.round_schedules(schedule, 2):
                start = records[-1].final if records else None
                records.append(
                    TrackerService.run(current, adaptation, start, max_coupler_length)
                )
        except StructuralError as err:
            report.structural_ok = False
            report.add("structural", str(err), err.layer)
            for flag in (
                "commutation_ok",
                "syndromes_deterministic",
                "single_fault_detection_ok",
                "logicals_preserved",
                "restoration_ok",
            ):
                setattr(report, flag, False)
            logger.warning("Structural check failed: %s", err)
            return report

        for message in ScheduleService.term_coverage_errors(schedule):
            report.coverage_ok = False
            report.add("coverage", message)

        commutation = VerificationService.verify_commutation(schedule, adaptation)
        report.commutation_ok = commutation.ok
        report.counts["check_pairs"] = commutation.pairs_checked
        for x_check, z_check, count in commutation.odd_pairs:
            report.add(
                "commutation",
                f"{x_check} precedes {z_check} on {count} shared qubits",
            )

        if schedule.code.boundary == "periodic":
            problem = VerificationService.check_determinism(schedule, adaptation)
            if problem is not None:
                report.syndromes_deterministic = False
                report.add("determinism", problem)

            tried, mismatches = VerificationService.single_fault_mismatches(
                schedule, adaptation, seed
            )
            report.counts["faults_injected"] = tried
            if mismatches:
                report.single_fault_detection_ok = False
                for message in mismatches:
                    report.add("single-fault", message)

            leaks = VerificationService.logical_leaks(schedule, adaptation)
            if leaks:
                report.logicals_preserved = False
                for message in leaks:
                    report.add("logicals", message)

        if schedule.has_routing:
            backward = schedule.reversed_round()
            if not VerificationService.verify_restoration(
                schedule, backward, adaptation
            ):
                report.restoration_ok = False
                report.add(
                    "restoration", "the reversed round leaves qubits off their sites"
                )

        report.counts["layers"] = schedule.depth
        report.counts["gates"] = sum(len(r.gates()) for r in records)
        logger.info(
            "Verification of %s on %s %s",
            schedule.scheme.value,
            schedule.code.label(),
            "passed" if report.passed else "failed",
        )
        return report

    @staticmethod
    def adversarial_schedule(code: CodeSpec) -> Schedule:
        """A regular-looking order that breaks commutation on weight-6 codes.

        X meets A1 A2 B1 B2 B3 A3 while Z meets A3 B2 B3 A2 A1 B1.
        """
        if code.n_a != 3 or code.n_b != 3:
            raise ValueError("The adversarial order is defined for weight-6 codes")
        a1, a2, a3 = (Term("A", k) for k in range(3))
        b1, b2, b3 = (Term("B", k) for k in range(3))
        x_seq = [a1, a2, b1, b2, b3, a3, None, None]
        z_seq = [None, a3, None, b2, b3, a2, a1, b1]
        phases = [1, 1, 2, 2, 2, 3, 3, 3]

        def cell(term: Optional[Term]) -> InstructionCell:
            return InstructionCell(term, GateKind.CNOT)

        layers = tuple(
            Layer(x=cell(x), z=cell(z), phase=phase)
            for x, z, phase in zip(x_seq, z_seq, phases)
        )
        return Schedule(code=code, scheme=Scheme.REGULAR, layers=layers)
