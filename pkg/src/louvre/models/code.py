"""Code model for louvre: polynomials, torus geometry and qubit identities."""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class Role(str, Enum):
    """Qubit role inside a basic unit."""

    L = "L"
    R = "R"
    X = "X"
    Z = "Z"

    @property
    def is_ancilla(self) -> bool:
        """Return True for the X and Z measurement qubits."""
        return self in (Role.X, Role.Z)


ANCILLA_ROLES = (Role.X, Role.Z)
DATA_ROLES = (Role.L, Role.R)


@dataclass(frozen=True, order=True)
class Monomial:
    """A term x^a y^b; a counts columns, b counts rows."""

    a: int
    b: int

    def reduced(self, l: int, m: int) -> "Monomial":  # noqa: E741
        """Reduce exponents onto the torus (x mod m, y mod l)."""
        return Monomial(self.a % m, self.b % l)

    def format(self) -> str:
        """Render in the usual notation, e.g. ``x^3y^5``."""
        if self.a == 0 and self.b == 0:
            return "1"
        parts = []
        if self.a:
            parts.append("x" if self.a == 1 else f"x^{self.a}")
        if self.b:
            parts.append("y" if self.b == 1 else f"y^{self.b}")
        return "".join(parts)


@dataclass(frozen=True)
class GeneratingPolynomial:
    """Ordered list of distinct monomials; the order defines term labels."""

    terms: tuple[Monomial, ...]

    def __post_init__(self) -> None:
        """Validate the polynomial after initialization."""
        if not self.terms:
            raise ValueError("Generating polynomial must have at least one term")
        if len(set(self.terms)) != len(self.terms):
            raise ValueError("Generating polynomial terms must be distinct")

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, index: int) -> Monomial:
        return self.terms[index]

    def format(self) -> str:
        """Render as ``1+y+xy``."""
        return "+".join(term.format() for term in self.terms)


@dataclass(frozen=True)
class CodeSpec:
    """A generalized-bicycle code on an l-row by m-column torus of basic units."""

    l: int  # noqa: E741
    m: int
    A: GeneratingPolynomial  # noqa: N815
    B: GeneratingPolynomial  # noqa: N815
    name: str = ""
    boundary: str = "periodic"

    def __post_init__(self) -> None:
        """Validate the code after initialization."""
        if self.l < 1 or self.m < 1 or self.l * self.m < 2:
            raise ValueError(
                f"Torus must hold at least two units (got l={self.l}, m={self.m})"
            )
        if self.boundary not in ("periodic", "open"):
            raise ValueError(
                f"Invalid boundary {self.boundary!r}: expected 'periodic' or 'open'"
            )
        for label, poly in (("A", self.A), ("B", self.B)):
            for term in poly.terms:
                if not (0 <= term.a < self.m and 0 <= term.b < self.l):
                    raise ValueError(
                        f"Term {term.format()} of {label} is not reduced "
                        f"modulo (m={self.m}, l={self.l})"
                    )

    @property
    def n_units(self) -> int:
        """Number of basic units."""
        return self.l * self.m

    @property
    def n_data(self) -> int:
        """Number of data qubits."""
        return 2 * self.n_units

    @property
    def n_qubits(self) -> int:
        """Number of physical qubits, ancillas included."""
        return 4 * self.n_units

    @property
    def width(self) -> int:
        """Grid columns."""
        return 2 * self.m

    @property
    def height(self) -> int:
        """Grid rows."""
        return 2 * self.l

    @property
    def n_a(self) -> int:
        return len(self.A)

    @property
    def n_b(self) -> int:
        return len(self.B)

    def polynomial(self, label: str) -> GeneratingPolynomial:
        """Return A or B by label."""
        if label == "A":
            return self.A
        if label == "B":
            return self.B
        raise ValueError(f"Unknown polynomial label: {label!r}")

    def label(self) -> str:
        """Short human label used in reports."""
        if self.name:
            return self.name
        return f"l={self.l},m={self.m},A={self.A.format()},B={self.B.format()}"


@dataclass(frozen=True, order=True)
class QubitId:
    """A qubit by unit column i, unit row j and role."""

    i: int
    j: int
    role: Role

    def unit(self, m: int) -> int:
        """Flattened unit index used for matrix columns and rows."""
        return self.j * m + self.i

    def __str__(self) -> str:
        return f"{self.role.value}({self.i},{self.j})"


@dataclass(frozen=True, order=True)
class GridPos:
    """A site on the 2m x 2l grid."""

    col: int
    row: int

    def __str__(self) -> str:
        return f"({self.col},{self.row})"


@dataclass
class CheckMatrices:
    """Binary check matrices, one row per active check, one column per data qubit."""

    hx: np.ndarray
    hz: np.ndarray
    x_checks: list[QubitId] = field(default_factory=list)
    z_checks: list[QubitId] = field(default_factory=list)
    data: list[QubitId] = field(default_factory=list)

    def __post_init__(self) -> None:
        """Validate the matrix shapes."""
        if self.hx.ndim != 2 or self.hz.ndim != 2:
            raise ValueError("Check matrices must be two-dimensional")
        if self.hx.shape[1] != self.hz.shape[1]:
            raise ValueError(
                f"Hx and Hz disagree on qubit count: "
                f"{self.hx.shape[1]} != {self.hz.shape[1]}"
            )

    @property
    def n(self) -> int:
        return int(self.hx.shape[1])
