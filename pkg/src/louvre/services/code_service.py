"""Code service: layout, stabilizer shapes and check matrices."""

import itertools
import logging
from typing import Optional

import numpy as np

from ..models.code import (
    CheckMatrices,
    CodeSpec,
    GeneratingPolynomial,
    GridPos,
    Monomial,
    QubitId,
    Role,
)
from ..utils import gf2

logger = logging.getLogger(__name__)

# Corner of each role inside a basic unit, as (col, row) offsets.
_CORNERS = {
    Role.X: (0, 0),
    Role.R: (1, 0),
    Role.L: (0, 1),
    Role.Z: (1, 1),
}
_ROLE_AT_CORNER = {corner: role for role, corner in _CORNERS.items()}

# Data role touched by (ancilla class, polynomial) and the sign of the unit shift.
_PARTNER_RULES = {
    (Role.Z, "A"): (Role.R, 1),
    (Role.Z, "B"): (Role.L, 1),
    (Role.X, "A"): (Role.L, -1),
    (Role.X, "B"): (Role.R, -1),
}


class CodeService:
    """Service for the geometry and algebra of generalized-bicycle codes."""

    @staticmethod
    def qubit_position(qubit: QubitId) -> GridPos:
        """Grid site of a qubit in the base layout.

        Unit (i, j) covers columns 2i, 2i+1 and rows 2j, 2j+1 with X bottom-left,
        R bottom-right, L top-left and Z top-right.
        """
        dc, dr = _CORNERS[qubit.role]
        return GridPos(2 * qubit.i + dc, 2 * qubit.j + dr)

    @staticmethod
    def qubit_at(code: CodeSpec, pos: GridPos) -> QubitId:
        """Qubit whose base-layout site is ``pos`` (torus-wrapped)."""
        col, row = pos.col % code.width, pos.row % code.height
        role = _ROLE_AT_CORNER[(col % 2, row % 2)]
        return QubitId(col // 2, row // 2, role)

    @staticmethod
    def all_qubits(code: CodeSpec, role: Role) -> list[QubitId]:
        """All qubits of a role, ordered by flattened unit index."""
        return [QubitId(i, j, role) for j in range(code.l) for i in range(code.m)]

    @staticmethod
    def partner(
        code: CodeSpec, ancilla: QubitId, label: str, index: int
    ) -> QubitId:
        """Data qubit an ancilla meets through term ``index`` of polynomial ``label``.

        Args:
            code: The code
            ancilla: X or Z ancilla
            label: ``"A"`` or ``"B"``
            index: Zero-based term index

        Returns:
            The partner data qubit

        Raises:
            ValueError: If ``ancilla`` is a data qubit
        """
        if not ancilla.role.is_ancilla:
            raise ValueError(f"{ancilla} is a data qubit, not an ancilla")
        role, sign = _PARTNER_RULES[(ancilla.role, label)]
        term = code.polynomial(label)[index]
        return QubitId(
            (ancilla.i + sign * term.a) % code.m,
            (ancilla.j + sign * term.b) % code.l,
            role,
        )

    @staticmethod
    def partner_units(code: CodeSpec, role: Role, label: str, index: int) -> np.ndarray:
        """Vectorized partner lookup: flattened partner unit for every ancilla unit."""
        _, sign = _PARTNER_RULES[(role, label)]
        term = code.polynomial(label)[index]
        units = np.arange(code.n_units)
        i, j = units % code.m, units // code.m
        return ((j + sign * term.b) % code.l) * code.m + (i + sign * term.a) % code.m

    @staticmethod
    def partner_role(role: Role, label: str) -> Role:
        """Data role met by an ancilla class through a polynomial."""
        return _PARTNER_RULES[(role, label)][0]

    @staticmethod
    def stabilizer_support(code: CodeSpec, ancilla: QubitId) -> frozenset[QubitId]:
        """Data qubits measured by an ancilla.

        Raises:
            ValueError: If ``ancilla`` is an L or R qubit
        """
        if not ancilla.role.is_ancilla:
            raise ValueError(
                f"Stabilizer support is defined for X/Z ancillas, got {ancilla}"
            )
        return frozenset(
            CodeService.partner(code, ancilla, label, index)
            for label in ("A", "B")
            for index in range(len(code.polynomial(label)))
        )

    @staticmethod
    def data_column(code: CodeSpec, qubit: QubitId) -> int:
        """Column of a data qubit in the check matrices (L block, then R block)."""
        offset = 0 if qubit.role is Role.L else code.n_units
        return offset + qubit.unit(code.m)

    @staticmethod
    def data_qubits(code: CodeSpec) -> list[QubitId]:
        """Data qubits in check-matrix column order."""
        return CodeService.all_qubits(code, Role.L) + CodeService.all_qubits(
            code, Role.R
        )

    @staticmethod
    def check_matrices(code: CodeSpec) -> CheckMatrices:
        """Build Hx and Hz; open-boundary codes use the hypergraph product.

        Args:
            code: The code

        Returns:
            Check matrices whose rows follow flattened ancilla units
        """
        if code.boundary == "open":
            return CodeService._hypergraph_product_matrices(code)

        hx = np.zeros((code.n_units, code.n_data), dtype=np.uint8)
        hz = np.zeros((code.n_units, code.n_data), dtype=np.uint8)
        for role, matrix in ((Role.X, hx), (Role.Z, hz)):
            for ancilla in CodeService.all_qubits(code, role):
                row = ancilla.unit(code.m)
                for qubit in CodeService.stabilizer_support(code, ancilla):
                    matrix[row, CodeService.data_column(code, qubit)] = 1
        return CheckMatrices(
            hx=hx,
            hz=hz,
            x_checks=CodeService.all_qubits(code, Role.X),
            z_checks=CodeService.all_qubits(code, Role.Z),
            data=CodeService.data_qubits(code),
        )

    @staticmethod
    def seed_matrix(poly: GeneratingPolynomial, length: int, symbol: str) -> np.ndarray:
        """Open-boundary classical check matrix: sliding windows of the polynomial.

        Args:
            poly: Polynomial in a single variable
            length: Number of classical bits
            symbol: ``"x"`` or ``"y"``

        Returns:
            Matrix with ``length - degree`` rows

        Raises:
            ValueError: If the polynomial uses the other variable
        """
        if symbol == "x":
            if any(term.b for term in poly.terms):
                raise ValueError("Open boundary needs B to be a polynomial in x only")
            exponents = sorted(term.a for term in poly.terms)
        else:
            if any(term.a for term in poly.terms):
                raise ValueError("Open boundary needs A to be a polynomial in y only")
            exponents = sorted(term.b for term in poly.terms)
        degree = exponents[-1]
        rows = length - degree
        if rows < 1:
            raise ValueError(f"Seed length {length} is too short for degree {degree}")
        matrix = np.zeros((rows, length), dtype=np.uint8)
        for r in range(rows):
            for e in exponents:
                matrix[r, r + e] = 1
        return matrix

    @staticmethod
    def _hypergraph_product_matrices(code: CodeSpec) -> CheckMatrices:
        h1 = CodeService.seed_matrix(code.B, code.m, "x")
        h2 = CodeService.seed_matrix(code.A, code.l, "y")
        r1, n1 = h1.shape
        r2, n2 = h2.shape

        def eye(size: int) -> np.ndarray:
            return np.eye(size, dtype=np.uint8)

        hx = np.hstack([np.kron(h1, eye(n2)), np.kron(eye(r1), h2.T)])
        hz = np.hstack([np.kron(eye(n1), h2), np.kron(h1.T, eye(r2))])
        return CheckMatrices(hx=hx.astype(np.uint8), hz=hz.astype(np.uint8))

    @staticmethod
    def compute_k(code: CodeSpec, matrices: Optional[CheckMatrices] = None) -> int:
        """Number of logical qubits, n - rank(Hx) - rank(Hz) over GF(2)."""
        if matrices is None:
            matrices = CodeService.check_matrices(code)
        return matrices.n - gf2.rank(matrices.hx) - gf2.rank(matrices.hz)

    @staticmethod
    def hypergraph_product_params(
        seed_n: int, seed_k: int, boundary: str = "open"
    ) -> tuple[int, int]:
        """Parameters of the La-Cross code grown from a classical [n1, k1] seed.

        Args:
            seed_n: Seed code length n1
            seed_k: Seed code dimension k1
            boundary: ``"open"`` (hypergraph product) or ``"periodic"``

        Returns:
            ``(n, k)`` of the quantum code

        Raises:
            ValueError: On non-positive inputs or k1 > n1
        """
        if seed_n <= 0 or seed_k <= 0:
            raise ValueError("Seed parameters must be positive")
        if seed_k > seed_n:
            raise ValueError("Seed dimension cannot exceed seed length")
        if boundary == "periodic":
            return 2 * seed_n**2, 2 * seed_k**2
        if boundary == "open":
            return seed_n**2 + (seed_n - seed_k) ** 2, seed_k**2
        raise ValueError(f"Invalid boundary: {boundary!r}")

    @staticmethod
    def transpose(code: CodeSpec) -> CodeSpec:
        """Exchange A with B, x with y and l with m (a diagonal mirror of the grid)."""

        def swap(poly: GeneratingPolynomial) -> GeneratingPolynomial:
            return GeneratingPolynomial(tuple(Monomial(t.b, t.a) for t in poly.terms))

        return CodeSpec(
            l=code.m,
            m=code.l,
            A=swap(code.B),
            B=swap(code.A),
            name=code.name,
            boundary=code.boundary,
        )

    @staticmethod
    def relabel(code: CodeSpec, a_first: int = 0, b_first: int = 0) -> CodeSpec:
        """Move the chosen terms to label 1, keeping the written order of the rest."""

        def front(poly: GeneratingPolynomial, index: int) -> GeneratingPolynomial:
            terms = list(poly.terms)
            chosen = terms.pop(index)
            return GeneratingPolynomial((chosen, *terms))

        return CodeSpec(
            l=code.l,
            m=code.m,
            A=front(code.A, a_first),
            B=front(code.B, b_first),
            name=code.name,
            boundary=code.boundary,
        )

    @staticmethod
    def base_delta(
        code: CodeSpec, role: Role, label: str, index: int
    ) -> tuple[int, int]:
        """Grid vector from an ancilla to its partner in the base layout."""
        ancilla = QubitId(0, 0, role)
        start = CodeService.qubit_position(ancilla)
        term = code.polynomial(label)[index]
        _, sign = _PARTNER_RULES[(role, label)]
        partner_role = CodeService.partner_role(role, label)
        end = CodeService.qubit_position(
            QubitId(sign * term.a, sign * term.b, partner_role)
        )
        return end.col - start.col, end.row - start.row

    @staticmethod
    def torus_length(dc: int, dr: int, width: int, height: int) -> int:
        """L1 length of a grid vector, minimized over periodic images."""
        dc, dr = dc % width, dr % height
        return min(dc, width - dc) + min(dr, height - dr)

    @staticmethod
    def torus_distance(a: GridPos, b: GridPos, width: int, height: int) -> int:
        """L1 distance between two sites on the torus."""
        return CodeService.torus_length(b.col - a.col, b.row - a.row, width, height)

    @staticmethod
    def term_length(code: CodeSpec, label: str, index: int) -> int:
        """Base interaction length of a term; X and Z ancillas agree."""
        dc, dr = CodeService.base_delta(code, Role.Z, label, index)
        return CodeService.torus_length(dc, dr, code.width, code.height)

    @staticmethod
    def shortest_term(code: CodeSpec, label: str) -> int:
        """Index of the shortest term; written order breaks ties."""
        poly = code.polynomial(label)
        lengths = [CodeService.term_length(code, label, k) for k in range(len(poly))]
        return lengths.index(min(lengths))

    @staticmethod
    def code_distance(code: CodeSpec, max_qubits: int = 20) -> int:
        """Minimum logical weight by exhaustive search over small codes.

        Raises:
            ValueError: If the code has more than ``max_qubits`` data qubits
        """
        matrices = CodeService.check_matrices(code)
        n = matrices.n
        if n > max_qubits:
            raise ValueError(f"Brute-force distance is limited to n <= {max_qubits}")
        best = n
        for checks, others in ((matrices.hz, matrices.hx), (matrices.hx, matrices.hz)):
            stabilizer_rank = gf2.rank(others)
            for weight in range(1, best):
                found = False
                for support in itertools.combinations(range(n), weight):
                    vec = np.zeros(n, dtype=np.uint8)
                    vec[list(support)] = 1
                    if np.any(checks.dot(vec) % 2):
                        continue
                    if gf2.rank(np.vstack([others, vec])) > stabilizer_rank:
                        best, found = weight, True
                        break
                if found:
                    break
        logger.debug("Brute-force distance of %s is %d", code.label(), best)
        return best
