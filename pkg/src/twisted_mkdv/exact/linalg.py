"""Exact Gaussian elimination over Q or over the dual numbers."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..errors import InconsistentSystemError
from .dual import is_unit


def _row_reduce(rows: list[list], ncols: int) -> list[int]:
    """In-place reduced row echelon form; returns pivot columns.

    Pivots are chosen among invertible entries only, which over the dual
    numbers means a nonzero value part.
    """
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if is_unit(rows[i][col]):
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [c * inv for c in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return pivots


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list:
    """Solve ``matrix @ sol == rhs`` exactly.

    Overdetermined systems are fine as long as they are consistent. Free
    variables, if any, are set to zero. Raises InconsistentSystemError when
    some equation cannot be met.
    """
    ncols = len(matrix[0]) if matrix else 0
    rows = [list(row) + [b] for row, b in zip(matrix, rhs)]
    pivots = _row_reduce(rows, ncols)
    for row in rows[len(pivots):]:
        if any(c != 0 for c in row):
            raise InconsistentSystemError("linear system has no solution")
    sol = [Fraction(0)] * ncols
    for i, col in enumerate(pivots):
        sol[col] = rows[i][ncols]
    return sol


def nullspace(matrix: Sequence[Sequence[Fraction]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel over Q."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    rows = [list(row) for row in matrix]
    pivots = _row_reduce(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for i, col in enumerate(pivots):
            vec[col] = -rows[i][f]
        basis.append(vec)
    return basis


def rank(matrix: Sequence[Sequence[Fraction]]) -> int:
    if not matrix:
        return 0
    rows = [list(row) for row in matrix]
    return len(_row_reduce(rows, len(rows[0])))
