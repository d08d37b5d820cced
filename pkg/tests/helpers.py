"""Independent oracle constructions shared across the test suite.

Everything here avoids the code paths under test: matrix products use the
schoolbook rule, adjugates come from signed minors, and determinants from the
elimination oracle.
"""

from __future__ import annotations

from fractions import Fraction

from polyfrac import Poly, PolyMatrix, bareiss_det, mul_naive, normalized


def minor_adjugate(a: PolyMatrix) -> PolyMatrix:
    """Adjugate via signed minor determinants; valid for any size.

    Complements the cofactor-transpose oracle, whose factorial cost caps it
    at size 6.
    """
    n = a.n
    if n == 1:
        return PolyMatrix([[Poly.one(a.vars)]])
    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = PolyMatrix(
                [[a.rows[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            )
            d = bareiss_det(minor)
            rows[j][i] = d if (i + j) % 2 == 0 else -d
    return PolyMatrix(rows)


def raw_schur(m: PolyMatrix, adj11: PolyMatrix, det11: Poly) -> PolyMatrix:
    """det11*M22 - M21*adj11*M12 built with the schoolbook product only."""
    _, m12, m21, m22 = m.quadrants()
    return det11 * m22 - mul_naive(mul_naive(m21, adj11), m12)


def unit_equal(p: Poly, q: Poly) -> bool:
    """Equality up to sign (the only units of the integer coefficient ring)."""
    return normalized(p) == normalized(q)


def eval_matrix(m: PolyMatrix, point) -> list:
    return [[Fraction(e.evaluate(point)) for e in row] for row in m.rows]


def frac_mat_mul(a: list, b: list) -> list:
    n = len(a)
    return [
        [sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)]
        for i in range(n)
    ]


def frac_mat_scale(c: Fraction, a: list) -> list:
    return [[c * x for x in row] for row in a]


def frac_mat_sub(a: list, b: list) -> list:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]
