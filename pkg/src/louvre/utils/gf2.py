"""GF(2) linear algebra helpers built on galois."""

import galois
import numpy as np

GF2 = galois.GF2


def rank(matrix: np.ndarray) -> int:
    """Rank of a binary matrix over GF(2)."""
    if matrix.size == 0:
        return 0
    return int(np.linalg.matrix_rank(GF2(np.asarray(matrix, dtype=np.uint8) % 2)))


def null_space(matrix: np.ndarray) -> np.ndarray:
    """Basis (as rows) of the right null space over GF(2)."""
    arr = np.asarray(matrix, dtype=np.uint8) % 2
    if arr.shape[0] == 0:
        return np.eye(arr.shape[1], dtype=np.uint8)
    basis = GF2(arr).null_space()
    return np.asarray(basis, dtype=np.uint8).reshape(-1, arr.shape[1])


def complement_basis(candidates: np.ndarray, span: np.ndarray) -> np.ndarray:
    """Pick rows of ``candidates`` independent of ``span`` and of each other.

    Args:
        candidates: Rows to choose from
        span: Rows already spanned

    Returns:
        Selected rows, greedily in candidate order
    """
    chosen: list[np.ndarray] = []
    stack = np.asarray(span, dtype=np.uint8) % 2
    current = rank(stack)
    for row in np.asarray(candidates, dtype=np.uint8):
        trial = np.vstack([stack, row[np.newaxis, :]]) if stack.size else row[None, :]
        trial_rank = rank(trial)
        if trial_rank > current:
            chosen.append(row)
            stack, current = trial, trial_rank
    width = candidates.shape[1] if candidates.ndim == 2 else span.shape[1]
    if not chosen:
        return np.zeros((0, width), dtype=np.uint8)
    return np.array(chosen, dtype=np.uint8)


def logical_bases(hx: np.ndarray, hz: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """X- and Z-type logical operator bases of a CSS code.

    X logicals commute with every Z check and lie outside the X-check row
    space; Z logicals likewise with the roles exchanged.

    Args:
        hx: X-check matrix
        hz: Z-check matrix

    Returns:
        ``(logical_x, logical_z)`` with k rows each
    """
    logical_x = complement_basis(null_space(hz), hx)
    logical_z = complement_basis(null_space(hx), hz)
    return logical_x, logical_z
