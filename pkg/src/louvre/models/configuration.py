"""Configuration model: where every qubit sits as a round progresses."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .code import CodeSpec, GridPos, QubitId, Role
from .coupler import Coupler
from .schedule import AbsentSiteMap, Schedule, Strategy, Term

ALL_ROLES = (Role.X, Role.R, Role.L, Role.Z)


class PhysicalOp(str, Enum):
    """Gate as emitted on physical sites."""

    CX = "CX"
    SWAP = "SWAP"
    CXSWAP = "CXSWAP"
    SWAPCX = "SWAPCX"

    @property
    def moves(self) -> bool:
        return self is not PhysicalOp.CX

    @property
    def has_cnot(self) -> bool:
        return self is not PhysicalOp.SWAP


@dataclass(frozen=True)
class PhysicalGate:
    """One two-qubit gate between a control and a target qubit.

    Positions are taken before the gate; moving gates exchange them.
    """

    op: PhysicalOp
    control: QubitId
    target: QubitId
    control_pos: GridPos
    target_pos: GridPos
    role: Role
    term: Term

    @property
    def ancilla(self) -> QubitId:
        return self.control if self.control.role.is_ancilla else self.target

    @property
    def control_after(self) -> GridPos:
        return self.target_pos if self.op.moves else self.control_pos

    @property
    def target_after(self) -> GridPos:
        return self.control_pos if self.op.moves else self.target_pos

    def sites(self) -> frozenset[GridPos]:
        """Unordered pair of sites the gate acts on."""
        return frozenset((self.control_pos, self.target_pos))


@dataclass(frozen=True)
class SiteAdaptation:
    """Which qubits exist on the chip and which take part in the code.

    ``missing`` sites have no hardware at all. ``removed_data`` are data
    qubits outside the code and ``inactive_checks`` are ancillas that measure
    nothing; both may still be present and follow the routing.
    """

    absent: AbsentSiteMap = field(default_factory=AbsentSiteMap)
    missing: frozenset[QubitId] = frozenset()
    removed_data: frozenset[QubitId] = frozenset()
    inactive_checks: frozenset[QubitId] = frozenset()
    truncated_checks: frozenset[QubitId] = frozenset()

    @property
    def is_complete(self) -> bool:
        return not (self.missing or self.removed_data or self.inactive_checks)

    @property
    def strategy(self) -> Strategy:
        return self.absent.strategy

    def is_present(self, qubit: QubitId) -> bool:
        return qubit not in self.missing

    def in_code(self, qubit: QubitId) -> bool:
        """True for active checks and data qubits of the adapted code."""
        if qubit.role.is_ancilla:
            return qubit not in self.inactive_checks and qubit not in self.missing
        return qubit not in self.removed_data

    def presence_mask(self, code: CodeSpec, role: Role) -> np.ndarray:
        """Boolean presence per unit, in flattened unit order."""
        mask = np.ones(code.n_units, dtype=bool)
        for qubit in self.missing:
            if qubit.role is role:
                mask[qubit.unit(code.m)] = False
        return mask

    def code_mask(self, code: CodeSpec, role: Role) -> np.ndarray:
        """Boolean code membership per unit, in flattened unit order."""
        mask = self.presence_mask(code, role)
        excluded = self.inactive_checks if role.is_ancilla else self.removed_data
        for qubit in excluded:
            if qubit.role is role:
                mask[qubit.unit(code.m)] = False
        return mask


@dataclass
class ConfigurationState:
    """Positions of every qubit at one layer boundary.

    ``positions[role]`` holds one ``(col, row)`` row per unit in flattened
    unit order; rows of missing qubits are kept but never move.
    """

    code: CodeSpec
    positions: dict[Role, np.ndarray]
    present: dict[Role, np.ndarray]

    @classmethod
    def base(
        cls, code: CodeSpec, adaptation: Optional[SiteAdaptation] = None
    ) -> "ConfigurationState":
        """The base layout, every qubit at its home site."""
        adaptation = adaptation or SiteAdaptation()
        units = np.arange(code.n_units)
        i, j = units % code.m, units // code.m
        corners = {Role.X: (0, 0), Role.R: (1, 0), Role.L: (0, 1), Role.Z: (1, 1)}
        positions = {
            role: np.stack([2 * i + dc, 2 * j + dr], axis=1).astype(np.int64)
            for role, (dc, dr) in corners.items()
        }
        present = {
            role: adaptation.presence_mask(code, role) for role in ALL_ROLES
        }
        return cls(code=code, positions=positions, present=present)

    def copy(self) -> "ConfigurationState":
        return ConfigurationState(
            code=self.code,
            positions={role: arr.copy() for role, arr in self.positions.items()},
            present={role: arr.copy() for role, arr in self.present.items()},
        )

    def position(self, qubit: QubitId) -> GridPos:
        """Current site of a qubit."""
        col, row = self.positions[qubit.role][qubit.unit(self.code.m)]
        return GridPos(int(col), int(row))

    def occupied_sites(self) -> list[tuple[QubitId, GridPos]]:
        """Present qubits with their sites, in role then unit order."""
        result = []
        for role in ALL_ROLES:
            for unit in np.flatnonzero(self.present[role]):
                qubit = QubitId(int(unit % self.code.m), int(unit // self.code.m), role)
                result.append((qubit, self.position(qubit)))
        return result

    def collisions(self) -> list[tuple[QubitId, QubitId, GridPos]]:
        """Pairs of present qubits sharing a site."""
        seen: dict[GridPos, QubitId] = {}
        clashes = []
        for qubit, pos in self.occupied_sites():
            if pos in seen:
                clashes.append((seen[pos], qubit, pos))
            else:
                seen[pos] = qubit
        return clashes

    @property
    def offsets(self) -> dict[Role, Optional[tuple[int, int]]]:
        """Shared displacement of each sublattice in grid steps.

        ``None`` marks a sublattice whose present qubits moved unevenly.
        """
        home = ConfigurationState.base(self.code)
        width, height = self.code.width, self.code.height
        result: dict[Role, Optional[tuple[int, int]]] = {}
        for role in ALL_ROLES:
            mask = self.present[role]
            delta = self.positions[role][mask] - home.positions[role][mask]
            if delta.size == 0:
                result[role] = (0, 0)
                continue
            dc = _symmetric(delta[:, 0], width)
            dr = _symmetric(delta[:, 1], height)
            if np.all(dc == dc[0]) and np.all(dr == dr[0]):
                result[role] = (int(dc[0]), int(dr[0]))
            else:
                result[role] = None
        return result

    def same_layout(self, other: "ConfigurationState") -> bool:
        """True if every qubit sits on the same site in both states."""
        return all(
            np.array_equal(self.positions[role], other.positions[role])
            for role in ALL_ROLES
        )


def _symmetric(values: np.ndarray, size: int) -> np.ndarray:
    """Map displacements into the range (-size/2, size/2]."""
    wrapped = np.mod(values, size)
    return np.where(wrapped > size // 2, wrapped - size, wrapped)


@dataclass
class TrackRecord:
    """Result of tracking one round."""

    states: list[ConfigurationState]
    layers: list[list[PhysicalGate]]
    padding_swaps: int = 0
    idle_swaps: int = 0

    @property
    def initial(self) -> ConfigurationState:
        return self.states[0]

    @property
    def final(self) -> ConfigurationState:
        return self.states[-1]

    def gates(self) -> list[PhysicalGate]:
        """All gates of the round in layer order."""
        return [gate for layer in self.layers for gate in layer]

    def gates_for(self, role: Role) -> list[PhysicalGate]:
        return [gate for gate in self.gates() if gate.role is role]


@dataclass
class AdaptedSchedule:
    """A schedule run on a lattice with absent sites."""

    schedule: Schedule
    adaptation: SiteAdaptation
    extra_couplers: list[Coupler] = field(default_factory=list)
    padding_swaps: int = 0
    idle_swaps: int = 0
