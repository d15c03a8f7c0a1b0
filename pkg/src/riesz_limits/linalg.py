"""Exact rational Gaussian elimination: solving, kernels, row spaces.

Matrices are tuples of row tuples of Fractions.  Everything here is an
independent computation path from the canonical-form homomorphism
algebra in :mod:`riesz_limits.hom`; tests play the two against each
other.
"""

from __future__ import annotations

from fractions import Fraction

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]


def _as_rows(matrix) -> list[list[Fraction]]:
    return [[Fraction(x) for x in row] for row in matrix]


def rref(matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    rows = _as_rows(matrix)
    if not rows:
        return (), []
    n_cols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return tuple(tuple(row) for row in rows), pivots


def solve(matrix, rhs) -> Vector | None:
    """One exact solution of ``matrix @ x = rhs``, or None if inconsistent."""
    rows = _as_rows(matrix)
    if not rows:
        return ()
    n_cols = len(rows[0])
    b = [Fraction(x) for x in rhs]
    augmented = [row + [bv] for row, bv in zip(rows, b)]
    reduced, pivots = rref(augmented)
    for row in reduced:
        if all(x == 0 for x in row[:n_cols]) and row[n_cols] != 0:
            return None
    x = [Fraction(0)] * n_cols
    for r, c in enumerate(pivots):
        if c == n_cols:
            return None
        x[c] = reduced[r][n_cols]
    return tuple(x)


def kernel_basis(matrix) -> list[Vector]:
    """Basis of the null space of the matrix."""
    rows = _as_rows(matrix)
    if not rows:
        return []
    n_cols = len(rows[0])
    reduced, pivots = rref(matrix)
    free = [c for c in range(n_cols) if c not in pivots]
    basis: list[Vector] = []
    for fc in free:
        v = [Fraction(0)] * n_cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -reduced[r][fc]
        basis.append(tuple(v))
    return basis


def in_row_space(matrix, vector) -> bool:
    """True iff ``vector`` is a linear combination of the matrix rows."""
    transposed = tuple(zip(*matrix)) if matrix else ()
    if not transposed:
        return all(Fraction(x) == 0 for x in vector)
    return solve(transposed, vector) is not None


def matmul(a, b) -> Matrix:
    rows_a = _as_rows(a)
    rows_b = _as_rows(b)
    if not rows_a or not rows_b:
        return ()
    return tuple(
        tuple(sum((ra[k] * rows_b[k][j] for k in range(len(rows_b))), Fraction(0)) for j in range(len(rows_b[0])))
        for ra in rows_a
    )


def mat_vec(matrix, vector) -> Vector:
    rows = _as_rows(matrix)
    x = [Fraction(v) for v in vector]
    return tuple(sum((row[j] * x[j] for j in range(len(x))), Fraction(0)) for row in rows)
