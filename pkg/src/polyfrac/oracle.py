"""Independent brute-force references used to cross-check the fast paths.

Nothing here is shared with the inversion code: determinants come from
one-step fraction-free elimination (with a cofactor-expansion fallback on a
zero pivot), adjugates from the plain cofactor transpose.  Slow and simple on
purpose.
"""

from __future__ import annotations

from .polymatrix import PolyMatrix
from .polyring import Poly


def bareiss_det(a: PolyMatrix) -> Poly:
    """Exact determinant by fraction-free one-step elimination.

    Every internal division is exact.  A zero leading pivot triggers a full
    cofactor expansion instead of a row swap, keeping signs unambiguous.
    """
    n = a.n
    if n == 1:
        return a.rows[0][0]
    m = [list(row) for row in a.rows]
    prev = Poly.one(a.vars)
    for k in range(n - 1):
        pivot = m[k][k]
        if pivot.is_zero():
            return cofactor_det(a)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]).div_exact(prev)
        prev = pivot
    return m[n - 1][n - 1]


def cofactor_det(a: PolyMatrix) -> Poly:
    """Determinant by first-row cofactor expansion (factorial cost)."""
    n = a.n
    if n == 1:
        return a.rows[0][0]
    if n == 2:
        return a.rows[0][0] * a.rows[1][1] - a.rows[0][1] * a.rows[1][0]
    total = Poly.zero(a.vars)
    for j in range(n):
        entry = a.rows[0][j]
        if entry.is_zero():
            continue
        minor = PolyMatrix([
            [row[c] for c in range(n) if c != j] for row in a.rows[1:]
        ])
        term = entry * cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def cofactor_adjugate(a: PolyMatrix) -> PolyMatrix:
    """Adjugate as the transposed cofactor matrix; limited to n <= 6."""
    n = a.n
    if n > 6:
        raise ValueError(f"cofactor adjugate oracle is limited to n <= 6, got {n}")
    if n == 1:
        return PolyMatrix([[Poly.one(a.vars)]])
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = PolyMatrix([
                [a.rows[r][c] for c in range(n) if c != j]
                for r in range(n)
                if r != i
            ])
            cof = cofactor_det(minor)
            adj[j][i] = cof if (i + j) % 2 == 0 else -cof
    return PolyMatrix(adj)


def principal_minor_det(a: PolyMatrix, k: int) -> Poly:
    """Determinant of the upper-left k-by-k submatrix; k = 0 gives 1."""
    if k < 0 or k > a.n:
        raise ValueError(f"minor size {k} out of range for matrix of size {a.n}")
    if k == 0:
        return Poly.one(a.vars)
    return bareiss_det(PolyMatrix([row[:k] for row in a.rows[:k]]))
