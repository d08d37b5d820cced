"""Polynomial matrix multiplication: schoolbook and Strassen-Winograd.

The recursive variant uses Winograd's 7-multiply / 15-add schedule and falls
back to the schoolbook product at or below a configurable cutoff size.  Both
variants are exact and produce identical matrices; the counters exist so the
profiler can observe the 7-vs-8 recursion structure.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .polymatrix import PolyMatrix, SizeMismatchError


class MulVariant(Enum):
    NAIVE_ONLY = "naive"
    STRASSEN_WINOGRAD = "strassen-winograd"


@dataclass(frozen=True)
class MulConfig:
    """Multiplication strategy: sizes <= cutoff use the schoolbook product."""

    cutoff: int = 2
    variant: MulVariant = MulVariant.STRASSEN_WINOGRAD

    def __post_init__(self):
        if self.cutoff < 1:
            raise ValueError("cutoff must be >= 1")


@dataclass
class MulCounters:
    """Instrumentation: scalar polynomial products and spawned block products."""

    scalar_muls: int = 0
    block_products: int = 0


def mul_naive(a: PolyMatrix, b: PolyMatrix, counters: MulCounters | None = None) -> PolyMatrix:
    """Schoolbook product: C[i,j] = sum_k A[i,k] * B[k,j]."""
    a._check_size(b)
    n = a.n
    zero_row = [None] * n
    rows = []
    for i in range(n):
        row = list(zero_row)
        for j in range(n):
            acc = a.rows[i][0] * b.rows[0][j]
            for k in range(1, n):
                acc = acc + a.rows[i][k] * b.rows[k][j]
            row[j] = acc
        rows.append(row)
    if counters is not None:
        counters.scalar_muls += n * n * n
    return PolyMatrix(rows)


def mul(
    a: PolyMatrix,
    b: PolyMatrix,
    cfg: MulConfig = MulConfig(),
    counters: MulCounters | None = None,
) -> PolyMatrix:
    """Exact product under the configured strategy; equals mul_naive always."""
    a._check_size(b)
    if cfg.variant is MulVariant.NAIVE_ONLY or a.n <= cfg.cutoff:
        return mul_naive(a, b, counters)
    n = a.n
    if n & (n - 1):
        raise SizeMismatchError(
            f"recursive multiplication needs a power-of-two size, got {n}"
        )
    return _winograd(a, b, cfg, counters)


def _winograd(a: PolyMatrix, b: PolyMatrix, cfg: MulConfig, counters: MulCounters | None) -> PolyMatrix:
    a11, a12, a21, a22 = a.quadrants()
    b11, b12, b21, b22 = b.quadrants()

    s1 = a21 + a22
    s2 = s1 - a11
    s3 = a11 - a21
    s4 = a12 - s2
    t1 = b12 - b11
    t2 = b22 - t1
    t3 = b22 - b12
    t4 = t2 - b21

    if counters is not None:
        counters.block_products += 7
    p1 = mul(a11, b11, cfg, counters)
    p2 = mul(a12, b21, cfg, counters)
    p3 = mul(s4, b22, cfg, counters)
    p4 = mul(a22, t4, cfg, counters)
    p5 = mul(s1, t1, cfg, counters)
    p6 = mul(s2, t2, cfg, counters)
    p7 = mul(s3, t3, cfg, counters)

    u1 = p1 + p6
    u2 = u1 + p7
    u3 = u1 + p5

    c11 = p1 + p2
    c12 = u3 + p3
    c21 = u2 - p4
    c22 = u2 + p5
    return PolyMatrix.join(c11, c12, c21, c22)
