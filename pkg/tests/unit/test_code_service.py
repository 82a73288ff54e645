"""Tests for code geometry, check matrices and parameters."""

import numpy as np
import pytest

from louvre.models.code import CodeSpec, GridPos, QubitId, Role
from louvre.parsers.code_parser import CodeParser
from louvre.services.code_service import CodeService
from tests.fixtures import get_fixture_path


def load(name: str) -> CodeSpec:
    return CodeParser.parse_code_file(str(get_fixture_path(name)))


class TestLayout:
    """Test the basic-unit layout."""

    @pytest.mark.parametrize(
        ("role", "expected"),
        [
            (Role.X, GridPos(4, 2)),
            (Role.R, GridPos(5, 2)),
            (Role.L, GridPos(4, 3)),
            (Role.Z, GridPos(5, 3)),
        ],
    )
    def test_qubit_position(self, role: Role, expected: GridPos) -> None:
        """Test the corner of each role inside unit (2, 1)."""
        assert CodeService.qubit_position(QubitId(2, 1, role)) == expected

    def test_qubit_at_wraps(self) -> None:
        """Test that sites wrap around the torus."""
        code = load("bb18.code")

        assert CodeService.qubit_at(code, GridPos(7, -1)) == QubitId(0, 2, Role.Z)

    def test_partner_directions(self) -> None:
        """Test the sign convention of Z and X partners."""
        code = load("bb72.code")
        z = QubitId(0, 0, Role.Z)
        x = QubitId(0, 0, Role.X)

        # A3 = x^3
        assert CodeService.partner(code, z, "A", 2) == QubitId(3, 0, Role.R)
        assert CodeService.partner(code, x, "A", 2) == QubitId(3, 0, Role.L)
        # B1 = y^3
        assert CodeService.partner(code, z, "B", 0) == QubitId(0, 3, Role.L)
        assert CodeService.partner(code, x, "B", 0) == QubitId(0, 3, Role.R)

    def test_partner_rejects_data(self) -> None:
        """Test that data qubits have no partners."""
        code = load("bb18.code")

        with pytest.raises(ValueError, match="data qubit"):
            CodeService.partner(code, QubitId(0, 0, Role.L), "A", 0)

    def test_partner_units_match_partner(self) -> None:
        """Test the vectorized lookup against the scalar one."""
        code = load("gb72_8_9.code")
        units = CodeService.partner_units(code, Role.X, "B", 4)

        for ancilla in CodeService.all_qubits(code, Role.X):
            expected = CodeService.partner(code, ancilla, "B", 4)
            assert units[ancilla.unit(code.m)] == expected.unit(code.m)

    def test_stabilizer_weight(self) -> None:
        """Test that each check touches n_a + n_b data qubits."""
        code = load("gb72_8_9.code")

        support = CodeService.stabilizer_support(code, QubitId(1, 2, Role.Z))

        assert len(support) == 8


class TestInteractionLengths:
    """Test base interaction vectors and lengths."""

    def test_term_lengths(self) -> None:
        """Test the base lengths of the [[72,12,6]] terms."""
        code = load("bb72.code")

        assert [CodeService.term_length(code, "A", k) for k in range(3)] == [1, 3, 7]
        assert [CodeService.term_length(code, "B", k) for k in range(3)] == [7, 1, 3]

    def test_shortest_term_ties_break_by_order(self) -> None:
        """Test that the first of equally short terms wins."""
        code = load("bb18.code")

        assert CodeService.shortest_term(code, "A") == 0
        assert CodeService.shortest_term(code, "B") == 0

    def test_torus_length_uses_periodic_images(self) -> None:
        """Test that long vectors wrap the short way."""
        assert CodeService.torus_length(11, -1, 12, 12) == 2
        assert CodeService.torus_distance(GridPos(0, 0), GridPos(6, 6), 12, 12) == 12


class TestCheckMatrices:
    """Test check matrices and code parameters."""

    @pytest.mark.parametrize(
        ("fixture", "k"),
        [
            ("toric3.code", 2),
            ("bb18.code", 4),
            ("bb72.code", 12),
            ("lacross72.code", 8),
        ],
    )
    def test_logical_qubits(self, fixture: str, k: int) -> None:
        """Test k = n - rank(Hx) - rank(Hz)."""
        assert CodeService.compute_k(load(fixture)) == k

    def test_checks_commute(self) -> None:
        """Test that Hx Hz^T vanishes over GF(2)."""
        matrices = CodeService.check_matrices(load("bb72.code"))

        assert not np.any(matrices.hx.astype(int) @ matrices.hz.T.astype(int) % 2)
        assert matrices.hx.shape == (36, 72)
        assert set(matrices.hx.sum(axis=1)) == {6}

    def test_open_boundary(self) -> None:
        """Test the hypergraph-product matrices of an open La-Cross code."""
        code = load("lacross_open.code")
        matrices = CodeService.check_matrices(code)

        assert matrices.n == 65
        assert CodeService.compute_k(code, matrices) == 9
        assert not np.any(matrices.hx.astype(int) @ matrices.hz.T.astype(int) % 2)

    def test_open_boundary_needs_single_variable(self) -> None:
        """Test that open boundaries need A in y and B in x."""
        code = CodeParser.parse_code_text(
            "l=6\nm=6\nA=1+y+xy\nB=1+x\nboundary=open\n"
        )

        with pytest.raises(ValueError, match="A to be a polynomial in y only"):
            CodeService.check_matrices(code)

    @pytest.mark.parametrize(
        ("n1", "k1", "boundary", "expected"),
        [
            (7, 3, "open", (65, 9)),
            (6, 2, "periodic", (72, 8)),
            (16, 4, "open", (400, 16)),
        ],
    )
    def test_hypergraph_product_params(
        self, n1: int, k1: int, boundary: str, expected: tuple[int, int]
    ) -> None:
        """Test La-Cross parameters grown from a classical seed."""
        assert CodeService.hypergraph_product_params(n1, k1, boundary) == expected

    def test_hypergraph_product_params_invalid(self) -> None:
        """Test that k1 may not exceed n1."""
        with pytest.raises(ValueError, match="cannot exceed"):
            CodeService.hypergraph_product_params(3, 4)

    def test_code_distance_small(self) -> None:
        """Test the brute-force distance of small codes."""
        assert CodeService.code_distance(load("toric3.code")) == 3
        assert CodeService.code_distance(load("bb18.code")) == 4

    def test_code_distance_limit(self) -> None:
        """Test that large codes are refused."""
        with pytest.raises(ValueError, match="limited"):
            CodeService.code_distance(load("bb72.code"))


class TestTransforms:
    """Test transposition and relabeling."""

    def test_transpose(self) -> None:
        """Test that transposition swaps A with B and x with y."""
        code = load("gb72_8_9.code")

        mirrored = CodeService.transpose(code)

        assert (mirrored.l, mirrored.m) == (4, 9)
        assert mirrored.A.format() == "1+y+x^6+xy^3+x^7y+x^5y^3"
        assert mirrored.B.format() == "1+x"
        assert CodeService.compute_k(mirrored) == CodeService.compute_k(code)

    def test_relabel(self) -> None:
        """Test that chosen terms move to the front."""
        code = load("bb72.code")

        relabeled = CodeService.relabel(code, a_first=2, b_first=1)

        assert relabeled.A.format() == "x^3+y+y^2"
        assert relabeled.B.format() == "x+y^3+x^2"
