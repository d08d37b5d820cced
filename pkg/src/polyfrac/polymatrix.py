"""Dense square matrices of polynomials, quadrant views, pair arithmetic,
padding/trimming, and exact scalar division.

A ScaledMatrix is the pair (M, c) carrying a matrix and a nonzero scalar
denominator; its semantic value is M/c.  Pair addition and multiplication
work exactly like rational arithmetic with common denominators and never
simplify, preserving the fraction-free cost model.
"""

from __future__ import annotations

from enum import Enum
from typing import Sequence

from .polyring import Degree, NEG_INF, Poly


class SizeMismatchError(ValueError):
    """Matrix operands have incompatible sizes."""


class OddSizeError(ValueError):
    """Quadrant views require an even matrix size."""


def _coerce_scalar(vars: tuple, value) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, int):
        return Poly.const(vars, value)
    raise TypeError(f"expected Poly or int, got {type(value).__name__}")


class PolyMatrix:
    """Immutable n-by-n matrix of Poly entries sharing one ring."""

    __slots__ = ("vars", "n", "rows")

    def __init__(self, rows: Sequence[Sequence[Poly]]):
        rows = tuple(tuple(row) for row in rows)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise SizeMismatchError("matrix must be square and non-empty")
        vars = rows[0][0].vars
        for row in rows:
            for entry in row:
                if not isinstance(entry, Poly):
                    raise TypeError("matrix entries must be Poly")
                if entry.vars != vars:
                    raise SizeMismatchError("matrix entries must share one ring")
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMatrix is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, vars: Sequence[str], n: int) -> "PolyMatrix":
        one = Poly.one(vars)
        zero = Poly.zero(vars)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, vars: Sequence[str], n: int) -> "PolyMatrix":
        zero = Poly.zero(vars)
        return cls([[zero] * n for _ in range(n)])

    @classmethod
    def from_strings(cls, vars: Sequence[str], entries: Sequence[Sequence[str]]) -> "PolyMatrix":
        from .polyring import parse

        return cls([[parse(s, vars) for s in row] for row in entries])

    # -- structure ---------------------------------------------------------

    def __getitem__(self, key):
        i, j = key
        return self.rows[i][j]

    def quadrants(self):
        """Split into the four equal quadrants (A11, A12, A21, A22)."""
        if self.n % 2:
            raise OddSizeError(f"cannot quarter a matrix of odd size {self.n}")
        h = self.n // 2
        a11 = PolyMatrix([row[:h] for row in self.rows[:h]])
        a12 = PolyMatrix([row[h:] for row in self.rows[:h]])
        a21 = PolyMatrix([row[:h] for row in self.rows[h:]])
        a22 = PolyMatrix([row[h:] for row in self.rows[h:]])
        return a11, a12, a21, a22

    @classmethod
    def join(cls, a11: "PolyMatrix", a12: "PolyMatrix", a21: "PolyMatrix", a22: "PolyMatrix") -> "PolyMatrix":
        h = a11.n
        if not (a12.n == a21.n == a22.n == h):
            raise SizeMismatchError("quadrants must have equal sizes")
        rows = [a11.rows[i] + a12.rows[i] for i in range(h)]
        rows += [a21.rows[i] + a22.rows[i] for i in range(h)]
        return cls(rows)

    def max_degree(self) -> Degree:
        """Largest entry total degree; NEG_INF for the zero matrix."""
        best: Degree = NEG_INF
        for row in self.rows:
            for entry in row:
                d = entry.total_degree()
                if best < d:
                    best = d
        return best

    def is_zero(self) -> bool:
        return all(entry.is_zero() for row in self.rows for entry in row)

    # -- arithmetic --------------------------------------------------------

    def _check_size(self, other: "PolyMatrix") -> None:
        if self.n != other.n or self.vars != other.vars:
            raise SizeMismatchError("matrix size or ring mismatch")

    def __add__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        self._check_size(other)
        return PolyMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __sub__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        self._check_size(other)
        return PolyMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)]
        )

    def __neg__(self):
        return PolyMatrix([[-a for a in row] for row in self.rows])

    def __rmul__(self, scalar):
        c = _coerce_scalar(self.vars, scalar)
        return PolyMatrix([[c * a for a in row] for row in self.rows])

    def __mul__(self, scalar):
        if isinstance(scalar, PolyMatrix):
            return NotImplemented
        return self.__rmul__(scalar)

    def div_exact(self, scalar) -> "PolyMatrix":
        """Entrywise exact division by a nonzero scalar polynomial.

        Raises NotDivisibleError if any entry is not exactly divisible; a
        failure here means a predicted content was wrong, so it must abort.
        """
        c = _coerce_scalar(self.vars, scalar)
        return PolyMatrix([[a.div_exact(c) for a in row] for row in self.rows])

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.vars == other.vars and self.rows == other.rows

    def __str__(self):
        return "[" + "; ".join(", ".join(str(e) for e in row) for row in self.rows) + "]"

    def __repr__(self):
        return f"PolyMatrix({self.n}x{self.n} over {self.vars})"

    # -- JSON wire format ----------------------------------------------------

    def to_json_dict(self) -> dict:
        """{"vars": [...], "n": int, "entries": [[poly-string, ...], ...]}"""
        return {
            "vars": list(self.vars),
            "n": self.n,
            "entries": [[str(e) for e in row] for row in self.rows],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "PolyMatrix":
        from .polyring import parse

        vars = tuple(obj["vars"])
        entries = obj["entries"]
        n = int(obj["n"])
        if len(entries) != n or any(len(row) != n for row in entries):
            raise SizeMismatchError("entries grid does not match declared size")
        return cls([[parse(s, vars) for s in row] for row in entries])


class ScaledMatrix:
    """Pair (mat, denom) whose semantic value is mat/denom, denom nonzero."""

    __slots__ = ("mat", "denom")

    def __init__(self, mat: PolyMatrix, denom):
        denom = _coerce_scalar(mat.vars, denom)
        if denom.is_zero():
            raise ZeroDivisionError("ScaledMatrix denominator must be nonzero")
        object.__setattr__(self, "mat", mat)
        object.__setattr__(self, "denom", denom)

    def __setattr__(self, name, value):
        raise AttributeError("ScaledMatrix is immutable")

    def semantically_equal(self, other: "ScaledMatrix") -> bool:
        """Cross-multiplication equality: self.mat*other.denom == other.mat*self.denom."""
        return other.denom * self.mat == self.denom * other.mat

    def __repr__(self):
        return f"ScaledMatrix({self.mat.n}x{self.mat.n}, denom={self.denom})"


def pair_mul(p: ScaledMatrix, q: ScaledMatrix, cfg=None, counters=None) -> ScaledMatrix:
    """(M1, c1) * (M2, c2) = (M1*M2, c1*c2); the matrix product uses fastmul."""
    from .fastmul import MulConfig, mul

    cfg = cfg or MulConfig()
    return ScaledMatrix(mul(p.mat, q.mat, cfg, counters), p.denom * q.denom)


def pair_add(p: ScaledMatrix, q: ScaledMatrix) -> ScaledMatrix:
    """(M1, c1) + (M2, c2) = (c2*M1 + c1*M2, c1*c2), with no simplification."""
    p.mat._check_size(q.mat)
    return ScaledMatrix(q.denom * p.mat + p.denom * q.mat, p.denom * q.denom)


class PadMode(Enum):
    UPPER_LEFT = "upper-left"
    LOWER_RIGHT = "lower-right"


def next_power_of_two(n: int) -> int:
    p = 1
    while p < n:
        p <<= 1
    return p


def pad(a: PolyMatrix, target: int, mode: PadMode = PadMode.UPPER_LEFT) -> PolyMatrix:
    """Embed a into a target-size matrix with unit rows/columns of the identity.

    The new rows and columns sit at the top-left (UPPER_LEFT) or bottom-right
    (LOWER_RIGHT) of the result; the determinant is preserved either way.
    """
    if target < a.n:
        raise SizeMismatchError(f"pad target {target} smaller than matrix size {a.n}")
    if target == a.n:
        return a
    p = target - a.n
    one = Poly.one(a.vars)
    zero = Poly.zero(a.vars)
    rows = []
    if mode is PadMode.UPPER_LEFT:
        for i in range(p):
            rows.append([one if j == i else zero for j in range(target)])
        for i in range(a.n):
            rows.append([zero] * p + list(a.rows[i]))
    else:
        for i in range(a.n):
            rows.append(list(a.rows[i]) + [zero] * p)
        for i in range(p):
            rows.append([zero] * (a.n + i) + [one] + [zero] * (p - i - 1))
    return PolyMatrix(rows)


def trim_adjugate(b_padded: PolyMatrix, original_n: int, mode: PadMode) -> PolyMatrix:
    """Extract the adjugate of the unpadded input from an inverted padded matrix.

    The adjugate of the padded block-diagonal matrix carries the original
    adjugate in the block complementary to the padding, so UPPER_LEFT padding
    trims the lower-right corner and LOWER_RIGHT padding the upper-left one.
    """
    if original_n > b_padded.n:
        raise SizeMismatchError("original size exceeds padded size")
    if original_n == b_padded.n:
        return b_padded
    if mode is PadMode.UPPER_LEFT:
        p = b_padded.n - original_n
        return PolyMatrix([row[p:] for row in b_padded.rows[p:]])
    return PolyMatrix([row[:original_n] for row in b_padded.rows[:original_n]])
