"""Multi-tier routing models."""

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .coupler import Coupler

# A routing cell: column, row and layer (0 or 1) inside one tier.
Cell = tuple[int, int, int]


@dataclass
class TierGrid:
    """Occupancy of one tier: a [width, height, 2] grid of cells."""

    index: int
    width: int
    height: int
    occupancy: np.ndarray = field(init=False)

    def __post_init__(self) -> None:
        """Allocate an empty occupancy grid (-1 marks a free cell)."""
        if self.width < 1 or self.height < 1:
            raise ValueError("Tier grid needs positive width and height")
        self.occupancy = np.full((self.width, self.height, 2), -1, dtype=np.int64)

    def in_bounds(self, col: int, row: int) -> bool:
        return 0 <= col < self.width and 0 <= row < self.height

    def is_free(self, cell: Cell, owner: int = -1) -> bool:
        """True if the cell is free or already belongs to ``owner``."""
        value = int(self.occupancy[cell])
        return value == -1 or (owner >= 0 and value == owner)

    def claim(self, cells: list[Cell], owner: int) -> None:
        for cell in cells:
            self.occupancy[cell] = owner

    def reserve(self, cell: Cell, owner: int) -> None:
        """Pin an endpoint cell to a qubit replica."""
        self.occupancy[cell] = owner


@dataclass(frozen=True)
class RoutedPath:
    """A coupler drawn as a chain of cells inside one tier."""

    coupler: Coupler
    tier: int
    cells: tuple[Cell, ...]

    def __post_init__(self) -> None:
        """Validate that the path is not empty."""
        if not self.cells:
            raise ValueError("Routed path needs at least one cell")

    @property
    def bumps(self) -> int:
        """Layer switches (bump bonds) along the path."""
        return sum(1 for a, b in zip(self.cells, self.cells[1:]) if a[2] != b[2])

    @property
    def length(self) -> int:
        """In-plane steps along the path."""
        return sum(1 for a, b in zip(self.cells, self.cells[1:]) if a[2] == b[2])

    def format(self) -> str:
        """Path dump line: ``tier t: (c,r,layer) -> ... ;``."""
        body = " -> ".join(f"({c},{r},{layer})" for c, r, layer in self.cells)
        return f"tier {self.tier}: {body} ;"


@dataclass
class RoutingReport:
    """Hardware cost of placing a coupler graph on stacked tiers."""

    tiers: int
    paths: list[RoutedPath] = field(default_factory=list)
    direct: list[Coupler] = field(default_factory=list)
    tsvs: dict[tuple[int, int], int] = field(default_factory=dict)
    routed_per_tier: dict[int, int] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)
    width: int = 0
    height: int = 0

    @property
    def n_long(self) -> int:
        return len(self.paths)

    @property
    def avg_length(self) -> Fraction:
        """Mean in-plane length of routed couplers."""
        if not self.paths:
            return Fraction(0)
        return Fraction(sum(p.length for p in self.paths), len(self.paths))

    @property
    def bumps_per_coupler(self) -> Fraction:
        if not self.paths:
            return Fraction(0)
        return Fraction(sum(p.bumps for p in self.paths), len(self.paths))

    @property
    def tsvs_per_coupler(self) -> Fraction:
        """Through-silicon vias charged to each routed coupler."""
        if not self.paths:
            return Fraction(0)
        return Fraction(sum(self.tsvs.values()), len(self.paths))

    @property
    def complete(self) -> bool:
        return not self.failures
