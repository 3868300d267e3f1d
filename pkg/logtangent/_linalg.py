"""
Exact linear algebra over the rationals.

Matrices are plain numpy arrays of ``dtype=object`` holding
:class:`fractions.Fraction` entries, so every elimination is exact.
"""
import logging
from fractions import Fraction
from typing import Iterable
from typing import Optional
from typing import Sequence

import numpy

LOGGER = logging.getLogger(__name__)

MatrixQ = numpy.ndarray


def as_matrix(rows: Iterable[Sequence], cols: Optional[int] = None) -> MatrixQ:
    """
    Build an exact rational matrix from nested sequences of numbers.

    Args:
        rows: iterable of rows; entries are anything ``Fraction`` accepts.
        cols: column count, only needed to build a matrix without rows.

    Returns:
        2-dimensional object array of Fractions.
    """
    rows = [[Fraction(value) for value in row] for row in rows]
    if not rows:
        return zeros(0, cols or 0)
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise ValueError("all rows of a matrix must have the same length")
    matrix = zeros(len(rows), width)
    for index, row in enumerate(rows):
        matrix[index, :] = row
    return matrix


def zeros(rows: int, cols: int) -> MatrixQ:
    matrix = numpy.empty((rows, cols), dtype=object)
    matrix.fill(Fraction(0))
    return matrix


def identity(size: int) -> MatrixQ:
    matrix = zeros(size, size)
    for index in range(size):
        matrix[index, index] = Fraction(1)
    return matrix


def rref(matrix: MatrixQ) -> tuple[MatrixQ, tuple[int, ...]]:
    """
    Reduced row echelon form by full rational Gauss-Jordan elimination.

    Returns:
        the reduced matrix (a copy) and the tuple of pivot column indices.
    """
    reduced = numpy.array(matrix, dtype=object, copy=True)
    if reduced.ndim != 2:
        raise TypeError(f"expected a 2-dimensional matrix, got shape {reduced.shape}")
    nrows, ncols = reduced.shape
    pivots = []
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        candidates = [r for r in range(row, nrows) if reduced[r, col] != 0]
        if not candidates:
            continue
        pivot_row = candidates[0]
        if pivot_row != row:
            reduced[[row, pivot_row], :] = reduced[[pivot_row, row], :]
        reduced[row, :] = reduced[row, :] / reduced[row, col]
        factors = reduced[:, col].copy()
        factors[row] = Fraction(0)
        nonzero = [r for r in range(nrows) if factors[r] != 0]
        for r in nonzero:
            reduced[r, :] = reduced[r, :] - factors[r] * reduced[row, :]
        pivots.append(col)
        row += 1
    return reduced, tuple(pivots)


def rank(matrix: MatrixQ) -> int:
    if matrix.size == 0:
        return 0
    return len(rref(matrix)[1])


def nullspace(matrix: MatrixQ) -> MatrixQ:
    """
    Basis of the right nullspace, one basis vector per column.

    The basis is the canonical one read off the reduced row echelon form:
    each free column contributes the vector with a 1 in that position.
    """
    ncols = matrix.shape[1]
    if matrix.shape[0] == 0:
        return identity(ncols)
    reduced, pivots = rref(matrix)
    free = [col for col in range(ncols) if col not in pivots]
    basis = zeros(ncols, len(free))
    for index, col in enumerate(free):
        basis[col, index] = Fraction(1)
        for pivot_index, pivot_col in enumerate(pivots):
            basis[pivot_col, index] = -reduced[pivot_index, col]
    return basis


def solve(matrix: MatrixQ, vector: Sequence) -> Optional[numpy.ndarray]:
    """
    One exact solution x of ``matrix @ x = vector``, or None if inconsistent.

    Free variables are set to zero.
    """
    nrows, ncols = matrix.shape
    augmented = zeros(nrows, ncols + 1)
    augmented[:, :ncols] = matrix
    augmented[:, ncols] = [Fraction(value) for value in vector]
    reduced, pivots = rref(augmented)
    if ncols in pivots:
        return None
    solution = numpy.array([Fraction(0)] * ncols, dtype=object)
    for pivot_index, pivot_col in enumerate(pivots):
        solution[pivot_col] = reduced[pivot_index, ncols]
    return solution


def determinant(matrix: MatrixQ) -> Fraction:
    size = matrix.shape[0]
    if matrix.shape != (size, size):
        raise ValueError(f"determinant needs a square matrix, got {matrix.shape}")
    work = numpy.array(matrix, dtype=object, copy=True)
    result = Fraction(1)
    for col in range(size):
        candidates = [r for r in range(col, size) if work[r, col] != 0]
        if not candidates:
            return Fraction(0)
        pivot_row = candidates[0]
        if pivot_row != col:
            work[[col, pivot_row], :] = work[[pivot_row, col], :]
            result = -result
        pivot = work[col, col]
        result *= pivot
        for r in range(col + 1, size):
            if work[r, col] != 0:
                work[r, :] = work[r, :] - (work[r, col] / pivot) * work[col, :]
    return Fraction(result)


def span_contains(basis_rows: MatrixQ, vector: Sequence) -> bool:
    """
    True if ``vector`` lies in the row space of ``basis_rows``.
    """
    if basis_rows.shape[0] == 0:
        return all(Fraction(value) == 0 for value in vector)
    stacked = numpy.vstack([basis_rows, as_matrix([vector])])
    return rank(stacked) == rank(basis_rows)
