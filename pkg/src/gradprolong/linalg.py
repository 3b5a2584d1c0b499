"""Dense Gaussian elimination over Fractions.

Only meant for the small systems that appear per fine edge (a dozen unknowns
at most), so no pivoting strategy beyond "first nonzero".
"""
from fractions import Fraction


def row_reduce(matrix):
    """Reduced row echelon form of a copy of ``matrix``; returns ``(rref, pivot_columns)``."""
    a = [[Fraction(x) for x in row] for row in matrix]
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot = next((k for k in range(r, n_rows) if a[k][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for k in range(n_rows):
            if k != r and a[k][c] != 0:
                f = a[k][c]
                a[k] = [x - f * y for x, y in zip(a[k], a[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return a, pivots


def rank(matrix) -> int:
    return len(row_reduce(matrix)[1])


def solve(matrix, rhs):
    """One exact solution of ``matrix @ x == rhs`` (free variables set to 0), or None."""
    n_cols = len(matrix[0]) if matrix else 0
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    if not aug:
        return []
    reduced, pivots = row_reduce(aug)
    if n_cols in pivots:
        return None
    x = [Fraction(0)] * n_cols
    for r, c in enumerate(pivots):
        x[c] = reduced[r][n_cols]
    return x
