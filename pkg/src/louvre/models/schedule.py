"""Schedule model for louvre: gate-instruction tables and round plans."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .code import ANCILLA_ROLES, CodeSpec, QubitId, Role


class GateKind(str, Enum):
    """Two-qubit gate applied by a cell."""

    CNOT = "CNOT"
    SWAP = "SWAP"
    CXSWAP = "CXSWAP"

    @property
    def is_routing(self) -> bool:
        """True if the gate moves qubits."""
        return self is not GateKind.CNOT

    @property
    def has_cnot(self) -> bool:
        """True if the gate carries a CNOT interaction."""
        return self is not GateKind.SWAP


class Scheme(str, Enum):
    """Syndrome-extraction scheme tag."""

    REGULAR = "regular"
    L7 = "l7"
    L7R = "l7r"
    L8 = "l8"
    L8R = "l8r"
    CXSWAP_ONLY = "cxswap-only"

    @property
    def needs_table_or_search(self) -> bool:
        """Schemes without a closed-form builder."""
        return self in (Scheme.L7R, Scheme.L8R, Scheme.CXSWAP_ONLY)


@dataclass(frozen=True, order=True)
class Term:
    """Reference to term ``index`` (zero-based) of polynomial ``label``."""

    label: str
    index: int

    def __post_init__(self) -> None:
        """Validate the term reference."""
        if self.label not in ("A", "B"):
            raise ValueError(f"Term label must be 'A' or 'B', got {self.label!r}")
        if self.index < 0:
            raise ValueError(f"Term index must be non-negative, got {self.index}")

    def __str__(self) -> str:
        return f"{self.label}{self.index + 1}"

    @classmethod
    def parse(cls, text: str) -> "Term":
        """Parse ``A3`` style labels (one-based)."""
        text = text.strip()
        if len(text) < 2 or text[0] not in "AB" or not text[1:].isdigit():
            raise ValueError(f"Unknown term label {text!r}")
        number = int(text[1:])
        if number < 1:
            raise ValueError(f"Unknown term label {text!r}")
        return cls(text[0], number - 1)


@dataclass(frozen=True)
class InstructionCell:
    """What one ancilla class does in one layer."""

    term: Optional[Term] = None
    gate: GateKind = GateKind.CNOT

    @property
    def is_idle(self) -> bool:
        return self.term is None

    @property
    def is_routing(self) -> bool:
        return self.term is not None and self.gate.is_routing

    @property
    def interacts(self) -> bool:
        """True if the cell carries a CNOT with its partner."""
        return self.term is not None and self.gate.has_cnot


IDLE = InstructionCell()


@dataclass(frozen=True)
class Layer:
    """One layer of the global instruction table."""

    x: InstructionCell
    z: InstructionCell
    phase: int

    def __post_init__(self) -> None:
        """Validate the phase number."""
        if self.phase not in (1, 2, 3):
            raise ValueError(f"Phase must be 1, 2 or 3, got {self.phase}")

    def cell(self, role: Role) -> InstructionCell:
        """Cell of an ancilla class."""
        if role is Role.X:
            return self.x
        if role is Role.Z:
            return self.z
        raise ValueError(f"{role.value} is not an ancilla class")


@dataclass(frozen=True)
class InitSwap:
    """Bookkeeping swap applied to the base layout before the round."""

    role: Role
    term: Term

    def __str__(self) -> str:
        return f"{self.role.value}:{self.term}"


@dataclass(frozen=True)
class Schedule:
    """A global gate-instruction table for one syndrome-extraction round."""

    code: CodeSpec
    scheme: Scheme
    layers: tuple[Layer, ...]
    init: tuple[InitSwap, ...] = ()
    default_gate: GateKind = GateKind.CNOT
    reversed: bool = False
    transposed: bool = False
    metadata: dict[str, str] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        """Validate layer structure and term references."""
        if not self.layers:
            raise ValueError("Schedule must have at least one layer")
        phases = [layer.phase for layer in self.layers]
        expected = sorted(phases, reverse=self.reversed)
        if phases != expected:
            raise ValueError(f"Phases must be ordered, got {phases}")
        for number, layer in enumerate(self.layers, start=1):
            for role in ANCILLA_ROLES:
                term = layer.cell(role).term
                if term is not None and term.index >= len(
                    self.code.polynomial(term.label)
                ):
                    raise ValueError(
                        f"Layer {number}: {role.value} references {term}, "
                        f"which is not a term of the code"
                    )

    @property
    def depth(self) -> int:
        """Number of two-qubit layers."""
        return len(self.layers)

    @property
    def has_routing(self) -> bool:
        """True if any layer moves qubits."""
        return any(
            layer.cell(role).is_routing
            for layer in self.layers
            for role in ANCILLA_ROLES
        )

    def phase_one_terms(self, role: Role) -> list[Term]:
        """A terms a class meets in Phase 1 (its F set)."""
        terms = []
        for layer in self.layers:
            cell = layer.cell(role)
            if layer.phase == 1 and cell.interacts and cell.term is not None:
                terms.append(cell.term)
        return terms

    def reversed_round(self) -> "Schedule":
        """The same instructions played backwards.

        Each routing gate undoes its forward motion; a CXSWAP runs as
        SWAP followed by CNOT on the same coupler.
        """
        return Schedule(
            code=self.code,
            scheme=self.scheme,
            layers=tuple(reversed(self.layers)),
            init=(),
            default_gate=self.default_gate,
            reversed=not self.reversed,
            transposed=self.transposed,
            metadata=dict(self.metadata),
        )


@dataclass(frozen=True)
class PlannedStep:
    """A term together with the gate used to meet it."""

    term: Term
    gate: GateKind = GateKind.CNOT

    def cell(self) -> InstructionCell:
        return InstructionCell(self.term, self.gate)


@dataclass(frozen=True)
class SwapSplit:
    """A SWAP layer placed inside one section of the B sequence.

    X meets ``x_first`` before the SWAP and the rest after it; Z does the
    opposite.
    """

    section: int
    x_first: frozenset[Term] = frozenset()


@dataclass(frozen=True)
class RoundPlan:
    """Compact description of a three-phase round.

    Z meets ``z_sequence[:split]`` in Phase 1 and the rest in Phase 3; X
    mirrors it. Both classes share ``b_sequence`` in Phase 2.
    """

    z_sequence: tuple[PlannedStep, ...]
    split: int
    b_sequence: tuple[PlannedStep, ...]
    swap_term: Optional[Term] = None
    swap_splits: tuple[SwapSplit, ...] = ()
    default_gate: GateKind = GateKind.CNOT

    def __post_init__(self) -> None:
        """Validate the plan shape."""
        if not 0 <= self.split <= len(self.z_sequence):
            raise ValueError(
                f"Split {self.split} outside 0..{len(self.z_sequence)}"
            )
        if self.swap_splits and self.swap_term is None:
            raise ValueError("SWAP layers need a swap term")
        sections = [split.section for split in self.swap_splits]
        if len(set(sections)) != len(sections):
            raise ValueError("At most one SWAP layer per section")


class Strategy(str, Enum):
    """How missing sites are handled."""

    PADDING = "padding"
    EXTRA_COUPLERS = "extra-couplers"


@dataclass(frozen=True)
class AbsentSiteMap:
    """Sites missing from the code and the adaptation strategy."""

    sites: frozenset[QubitId] = frozenset()
    strategy: Strategy = Strategy.PADDING
    drop_checks: Role = Role.X

    def __post_init__(self) -> None:
        """Validate the check type dropped around absent data."""
        if not self.drop_checks.is_ancilla:
            raise ValueError("drop_checks must be X or Z")

    @property
    def is_empty(self) -> bool:
        return not self.sites
