"""Coupler graph and metrics models."""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import networkx as nx

from .code import GridPos, Role
from .schedule import Scheme, Term


@dataclass(frozen=True, order=True)
class Coupler:
    """Undirected physical edge between two grid sites."""

    a: GridPos
    b: GridPos
    length: int

    def __post_init__(self) -> None:
        """Validate endpoints and length."""
        if self.a == self.b:
            raise ValueError(f"Coupler endpoints must differ, got {self.a} twice")
        if self.length < 1:
            raise ValueError(f"Coupler length must be at least 1, got {self.length}")
        if self.b < self.a:
            first, second = self.b, self.a
            object.__setattr__(self, "a", first)
            object.__setattr__(self, "b", second)

    @property
    def is_long(self) -> bool:
        """True for couplers longer than a nearest-neighbour step."""
        return self.length > 1

    def __str__(self) -> str:
        return f"{self.a}-{self.b} (length {self.length})"


@dataclass
class CouplerGraph:
    """Couplers required by a schedule plus who first needed them."""

    width: int
    height: int
    n_qubits: int
    couplers: set[Coupler] = field(default_factory=set)
    first_use: dict[Coupler, tuple[Role, Term]] = field(default_factory=dict)

    def add(self, coupler: Coupler, role: Role, term: Term) -> None:
        """Record a coupler; the first class to use it keeps the attribution."""
        self.couplers.add(coupler)
        self.first_use.setdefault(coupler, (role, term))

    def __len__(self) -> int:
        return len(self.couplers)

    def __contains__(self, coupler: object) -> bool:
        return coupler in self.couplers

    def to_networkx(self) -> nx.Graph:
        """Adjacency as a networkx graph keyed by ``(col, row)`` tuples."""
        graph = nx.Graph()
        for coupler in sorted(self.couplers):
            graph.add_edge(
                (coupler.a.col, coupler.a.row),
                (coupler.b.col, coupler.b.row),
                length=coupler.length,
            )
        return graph

    def degree_of(self, pos: GridPos) -> int:
        return sum(1 for c in self.couplers if pos in (c.a, c.b))

    def difference(self, other: "CouplerGraph") -> list[Coupler]:
        """Couplers of this graph that ``other`` lacks."""
        return sorted(self.couplers - other.couplers)

    def terms_by_role(self) -> dict[Role, set[Term]]:
        """Terms whose couplers each ancilla class installs first."""
        result: dict[Role, set[Term]] = {Role.X: set(), Role.Z: set()}
        for role, term in self.first_use.values():
            result[role].add(term)
        return result

    def length_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(c.length for c in self.couplers).items()))


@dataclass(frozen=True)
class MetricsReport:
    """Average degree and average total interaction distance per qubit."""

    avg_degree: Fraction
    avg_distance: Fraction
    n_couplers: int
    n_qubits: int
    role_degree: dict[Role, Fraction] = field(default_factory=dict, compare=False)
    role_distance: dict[Role, Fraction] = field(default_factory=dict, compare=False)
    length_histogram: dict[int, int] = field(default_factory=dict, compare=False)
    required_terms: dict[Role, list[str]] = field(default_factory=dict, compare=False)
    scheme: Optional[Scheme] = None
    predicted_degree: Optional[Fraction] = None

    def pair(self) -> str:
        """Render as ``degree, distance`` using the shortest exact decimal."""
        degree = format_fraction(self.avg_degree)
        return f"{degree}, {format_fraction(self.avg_distance)}"


def format_fraction(value: Fraction) -> str:
    """Halves and integers print as decimals; anything else as ``p/q``."""
    if value.denominator == 1:
        return str(value.numerator)
    if value.denominator in (2, 4, 5, 8, 10):
        return f"{float(value):g}"
    return f"{value.numerator}/{value.denominator}"
