"""Systematic matrix-content prediction and GCD-based content extraction.

A recursion-tree node is identified by an OpPath: the sequence of block
operations (take the upper-left quadrant, or form the fraction-free Schur
complement) applied left-to-right from the root matrix.  For nodes whose most
recent operation is the Schur step, the content every generic input is
guaranteed to carry is a power of a principal-minor determinant of the root;
this module computes those predictions and, independently, extracts actual
content by accumulating pairwise GCDs with optional early termination at the
predicted degree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Optional

from .oracle import principal_minor_det
from .polymatrix import PolyMatrix
from .polyring import Poly, gcd, normalized

A11 = "A11"
DELTA = "DELTA"

_OPS = (A11, DELTA)


class ZeroMatrixError(ValueError):
    """Content of an all-zero matrix is undefined."""


@dataclass(frozen=True)
class OpPath:
    """Block-operation sequence from the root matrix, first operation first."""

    ops: tuple = ()

    def __post_init__(self):
        for op in self.ops:
            if op not in _OPS:
                raise ValueError(f"unknown operation {op!r}")

    @classmethod
    def of(cls, *ops: str) -> "OpPath":
        return cls(tuple(ops))

    def child(self, op: str) -> "OpPath":
        return OpPath(self.ops + (op,))

    def __len__(self):
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    @property
    def delta_count(self) -> int:
        return sum(1 for op in self.ops if op == DELTA)

    @property
    def last(self) -> Optional[str]:
        return self.ops[-1] if self.ops else None

    def strip_leading_a11(self) -> tuple:
        """(number of leading A11 ops, remaining path).

        Leading quadrant operations only shrink the effective root: the node
        is unchanged if the root is replaced by its principal submatrix, so
        every prediction first normalizes the path this way.
        """
        k = 0
        while k < len(self.ops) and self.ops[k] == A11:
            k += 1
        return k, OpPath(self.ops[k:])

    def is_pure_delta(self) -> bool:
        """True when the path consists of Schur steps only (after stripping)."""
        _, rest = self.strip_leading_a11()
        return len(rest) > 0 and all(op == DELTA for op in rest)

    def to_json(self) -> list:
        return list(self.ops)

    def __str__(self):
        return "[" + ",".join(self.ops) + "]" if self.ops else "[root]"


@dataclass(frozen=True)
class ContentPrediction:
    """Predicted systematic content: Det(root upper-left minor)^power.

    minor_size 0 (equivalently power 0) encodes the trivial content 1.
    predicted_degree is in units of d for uniform-degree-d inputs, i.e.
    minor_size * power.
    """

    minor_size: int
    power: int
    predicted_degree: int

    @property
    def is_trivial(self) -> bool:
        return self.minor_size == 0 or self.power == 0

    def polynomial(self, root: PolyMatrix) -> Poly:
        """Materialize the predicted content from the root matrix."""
        if self.is_trivial:
            return Poly.one(root.vars)
        return principal_minor_det(root, self.minor_size) ** self.power

    def to_json(self) -> dict:
        return {
            "minor_size": self.minor_size,
            "power": self.power,
            "predicted_degree": self.predicted_degree,
        }


TRIVIAL_CONTENT = ContentPrediction(0, 0, 0)


def _log2_exact(n: int) -> int:
    if n < 1 or n & (n - 1):
        raise ValueError(f"{n} is not a power of two")
    return n.bit_length() - 1


def predict_delta_content(i: int, n: int) -> ContentPrediction:
    """Content of the i-th matrix along the pure Schur-complement spine.

    Valid for 0 <= i <= log2(n) - 2 (the spine matrix has size >= 2); i = 0
    is the trivial content.
    """
    log_n = _log2_exact(n)
    if i < 0 or i > log_n - 2:
        raise ValueError(f"spine index {i} out of range for size {n}")
    if i == 0:
        return TRIVIAL_CONTENT
    minor_size = ((2**i - 1) * n) // 2**i
    power = n // 2 ** (i + 1)
    return ContentPrediction(minor_size, power, minor_size * power)


def predict_adj_content(i: int, n: int) -> ContentPrediction:
    """Content of the adjugate computed from a content-1 spine matrix.

    Valid for 0 <= i <= log2(n) - 2; the last index is the size-2 adjugate,
    which is a plain cofactor transpose and has trivial content.
    """
    log_n = _log2_exact(n)
    if i < 0 or i > log_n - 2:
        raise ValueError(f"adjugate index {i} out of range for size {n}")
    if i == log_n - 2:
        return TRIVIAL_CONTENT
    minor_size = ((2 ** (i + 1) - 1) * n) // 2 ** (i + 1)
    power = n // 2 ** (i + 1) - 2
    return ContentPrediction(minor_size, power, minor_size * power)


def predict_mixed_content(path: OpPath | Iterable, n: int) -> ContentPrediction:
    """Content of the node reached by an arbitrary operation path.

    A node produced directly by a quadrant step is an unmodified submatrix of
    a content-1 matrix and has trivial content.  Otherwise leading quadrant
    steps shrink the effective root, and the remaining path of length k with
    i Schur steps before the final one gives content
    Det(root_{1..(2^i - 1) n'/2^i})^(n'/2^k), n' the shrunk root size.

    Pure all-Schur paths reproduce predict_delta_content.
    """
    if not isinstance(path, OpPath):
        path = OpPath(tuple(path))
    log_n = _log2_exact(n)
    if len(path) > log_n - 1:
        raise ValueError(f"path of length {len(path)} too deep for root size {n}")
    if path.last != DELTA:
        return TRIVIAL_CONTENT
    shift, rest = path.strip_leading_a11()
    n_eff = n >> shift
    i = rest.delta_count - 1
    if i == 0:
        return TRIVIAL_CONTENT
    minor_size = ((2**i - 1) * n_eff) // 2**i
    power = n_eff // 2 ** len(rest)
    return ContentPrediction(minor_size, power, minor_size * power)


def adj_prediction_for_path(path: OpPath, n: int) -> Optional[ContentPrediction]:
    """Prediction for the adjugate received at a Schur-complement node.

    Returns None when the node is a genuinely mixed case, for which no
    closed-form content is known; extraction then proceeds empirically.
    """
    if path.last != DELTA:
        raise ValueError("adjugates are predicted only at Schur-complement nodes")
    shift, rest = path.strip_leading_a11()
    n_eff = n >> shift
    adj_size = n_eff >> len(rest)
    if adj_size == 2:
        return TRIVIAL_CONTENT
    if all(op == DELTA for op in rest):
        return predict_adj_content(len(rest) - 1, n_eff)
    return None


def extract_content(
    m: PolyMatrix,
    expected_degree: Optional[int] = None,
    seed: int = 0,
):
    """Accumulated GCD of the entries, visited in a seeded random order.

    The first GCD pairs the two entries with the largest degree difference;
    the rest fold in shuffled order.  When expected_degree is given, the scan
    stops as soon as the running GCD reaches exactly that degree.  If the
    degree is never reached the full scan has happened anyway, which is the
    fallback behaviour for non-uniform inputs.

    Returns (normalized content, number of GCD invocations).
    """
    if m.n < 2:
        raise ValueError("matrix content needs size >= 2")
    entries = [e for row in m.rows for e in row if not e.is_zero()]
    if not entries:
        raise ZeroMatrixError("the zero matrix has no content")
    if len(entries) == 1:
        return normalized(entries[0]), 0

    rng = random.Random(seed)
    rng.shuffle(entries)
    hi = max(range(len(entries)), key=lambda k: (entries[k].total_degree(), -k))
    lo = min(
        (k for k in range(len(entries)) if k != hi),
        key=lambda k: (entries[k].total_degree(), k),
    )
    first, second = entries[hi], entries[lo]
    rest = [e for k, e in enumerate(entries) if k not in (hi, lo)]

    g = gcd(first, second)
    count = 1
    for e in rest:
        if g.is_one():
            break
        if expected_degree is not None and g.total_degree() == expected_degree:
            break
        g = gcd(g, e)
        count += 1
    return normalized(g), count


def gcd_budget(n: int):
    """(minimum, worst_case) number of content GCDs for a full inversion.

    minimum counts one GCD per cancellable node: 3n/4 - log2(n) - 1.
    worst_case assumes pairwise GCDs of every entry of every intermediate
    matrix: (4/3)(2n^2 - 9n + 4).
    """
    log_n = _log2_exact(n)
    if n < 8:
        raise ValueError("budget formulas apply to sizes >= 8")
    minimum = (3 * n) // 4 - log_n - 1
    worst_numer = 4 * (2 * n * n - 9 * n + 4)
    if worst_numer % 3:
        raise AssertionError("worst-case budget is not an integer")
    return minimum, worst_numer // 3
