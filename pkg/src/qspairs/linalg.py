"""Dense exact linear algebra over a field given by CycNum-like elements.

Matrices are lists of lists.  Entries need +, -, *, inverse(), is_zero().
Sizes here are small (Gram matrices per degree), so plain Gaussian
elimination with exact division is the right tool.
"""

from __future__ import annotations


def rref(matrix, one):
    """Reduced row echelon form.

    Returns (rows, pivot_cols).  ``one`` is the multiplicative identity of
    the entry field (needed to build eliminated rows exactly).
    """
    rows = [list(r) for r in matrix]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivot_cols = []
    r = 0
    for col in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if not rows[i][col].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][col].inverse()
        rows[r] = [inv * x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivot_cols.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivot_cols


def rank(matrix, one):
    return len(rref(matrix, one)[1])


def right_kernel(matrix, one, zero):
    """Basis of {v : matrix @ v = 0}, one vector per free column."""
    if not matrix:
        return []
    R, pivots = rref(matrix, one)
    ncols = len(matrix[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for r, pc in enumerate(pivots):
            v[pc] = -R[r][fc]
        basis.append(v)
    return basis


def invert(matrix, one, zero):
    """Inverse of a square matrix; raises ValueError if singular."""
    m = len(matrix)
    aug = [list(row) + [one if i == j else zero for j in range(m)]
           for i, row in enumerate(matrix)]
    R, pivots = rref(aug, one)
    if pivots[:m] != list(range(m)):
        raise ValueError("matrix is singular")
    return [row[m:] for row in R[:m]]


def solve_right(matrix, rhs, one, zero):
    """One solution x of matrix @ x = rhs, or None if inconsistent."""
    m = len(matrix)
    ncols = len(matrix[0]) if m else 0
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    R, pivots = rref(aug, one)
    if ncols in pivots:
        return None
    x = [zero] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = R[r][ncols]
    return x
