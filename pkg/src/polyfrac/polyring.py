"""Sparse multivariate polynomial arithmetic over arbitrary-precision integers.

A polynomial over ``Z[x_1, ..., x_m]`` is stored as a mapping from exponent
tuples (one non-negative integer per variable) to nonzero integer
coefficients.  All arithmetic is exact; there is no floating point anywhere.

Terms are ordered graded-lexicographically: higher total degree first, ties
broken by lexicographic comparison of the exponent tuple.  Printing and
parsing use that canonical order, so ``parse(str(p), p.vars) == p`` holds
bit-exactly.

The degree of the zero polynomial is the module-level sentinel ``NEG_INF``,
which orders below every integer but is not itself a number.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator, Mapping, Sequence, Union

Monomial = tuple  # exponent tuple, one entry per ring variable


class _NegativeInfinity:
    """Degree of the zero polynomial; compares below every integer."""

    __slots__ = ()

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __repr__(self):
        return "-inf"


NEG_INF = _NegativeInfinity()

Degree = Union[int, _NegativeInfinity]


class RingMismatchError(ValueError):
    """Operands live in polynomial rings with different variable lists."""


class NotDivisibleError(ArithmeticError):
    """An exact division failed.

    In the inversion pipeline this signals a violated content prediction or
    corrupted input; callers must abort, never truncate.  ``path`` carries the
    recursion-tree location when the failure happened inside an inversion.
    """

    def __init__(self, message: str, path: tuple = ()):
        super().__init__(message)
        self.path = path


class ParseError(ValueError):
    """A polynomial string did not match the input grammar."""


def _grlex_key(mono: Monomial):
    return (sum(mono), mono)


class Poly:
    """Immutable sparse polynomial with integer coefficients.

    ``vars`` is the tuple of variable names declaring the ring; ``terms``
    maps exponent tuples to nonzero coefficients.  Instances are never
    mutated after construction and are safe to share between threads.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[Monomial, int]):
        vars = tuple(vars)
        m = len(vars)
        clean = {}
        for mono, coeff in terms.items():
            if coeff == 0:
                continue
            mono = tuple(mono)
            if len(mono) != m or any(e < 0 for e in mono):
                raise ValueError(f"bad exponent tuple {mono!r} for {m} variables")
            clean[mono] = coeff
        object.__setattr__(self, "vars", vars)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "Poly":
        return cls(vars, {})

    @classmethod
    def const(cls, vars: Sequence[str], value: int) -> "Poly":
        return cls(vars, {(0,) * len(vars): int(value)})

    @classmethod
    def one(cls, vars: Sequence[str]) -> "Poly":
        return cls.const(vars, 1)

    @classmethod
    def variable(cls, vars: Sequence[str], name: str) -> "Poly":
        vars = tuple(vars)
        if name not in vars:
            raise ValueError(f"unknown variable {name!r} in ring {vars}")
        mono = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, {mono: 1})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * len(self.vars): 1}

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in mono) for mono in self.terms)

    def constant_value(self) -> int:
        """Value of a constant polynomial (0 for the zero polynomial)."""
        if not self.terms:
            return 0
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self) -> Degree:
        """Maximum term degree; NEG_INF for the zero polynomial."""
        if not self.terms:
            return NEG_INF
        return max(sum(mono) for mono in self.terms)

    def sorted_terms(self) -> list:
        """Terms in graded-lex descending order (the canonical order)."""
        return sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)

    def leading_term(self) -> tuple:
        """(monomial, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        mono = max(self.terms, key=_grlex_key)
        return mono, self.terms[mono]

    def leading_coefficient(self) -> int:
        return self.leading_term()[1]

    # -- arithmetic --------------------------------------------------------

    def _check_ring(self, other: "Poly") -> None:
        if self.vars != other.vars:
            raise RingMismatchError(f"ring mismatch: {self.vars} vs {other.vars}")

    def __add__(self, other):
        if isinstance(other, int):
            other = Poly.const(self.vars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_ring(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            c = out.get(mono, 0) + coeff
            if c:
                out[mono] = c
            else:
                out.pop(mono, None)
        return Poly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = Poly.const(self.vars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return Poly.zero(self.vars)
            return Poly(self.vars, {m: c * other for m, c in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        self._check_ring(other)
        if not self.terms or not other.terms:
            return Poly.zero(self.vars)
        out: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mono = tuple(x + y for x, y in zip(ma, mb))
                c = out.get(mono, 0) + ca * cb
                if c:
                    out[mono] = c
                else:
                    del out[mono]
        return Poly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, power: int):
        if not isinstance(power, int) or power < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.one(self.vars)
        base = self
        while power:
            if power & 1:
                result = result * base
            power >>= 1
            if power:
                base = base * base
        return result

    def div_exact(self, divisor: "Poly") -> "Poly":
        """Exact quotient self / divisor in the polynomial ring.

        Raises NotDivisibleError unless divisor divides self exactly; never
        returns a truncated result.
        """
        if isinstance(divisor, int):
            divisor = Poly.const(self.vars, divisor)
        self._check_ring(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self
        mono_b, coeff_b = divisor.leading_term()
        rem = dict(self.terms)
        quo: dict = {}
        while rem:
            mono_r = max(rem, key=_grlex_key)
            coeff_r = rem[mono_r]
            dm = tuple(a - b for a, b in zip(mono_r, mono_b))
            if any(e < 0 for e in dm) or coeff_r % coeff_b != 0:
                raise NotDivisibleError(
                    f"({self}) is not divisible by ({divisor})"
                )
            qc = coeff_r // coeff_b
            quo[dm] = quo.get(dm, 0) + qc
            for mb, cb in divisor.terms.items():
                mono = tuple(x + y for x, y in zip(dm, mb))
                c = rem.get(mono, 0) - qc * cb
                if c:
                    rem[mono] = c
                else:
                    rem.pop(mono, None)
        return Poly(self.vars, quo)

    def divides(self, other: "Poly") -> bool:
        try:
            other.div_exact(self)
            return True
        except NotDivisibleError:
            return False

    def evaluate(self, point: Sequence[int]) -> int:
        """Exact value at an integer point (one value per ring variable)."""
        if len(point) != len(self.vars):
            raise ValueError("point arity does not match variable count")
        total = 0
        for mono, coeff in self.terms.items():
            term = coeff
            for value, exp in zip(point, mono):
                if exp:
                    term *= value**exp
            total += term
        return total

    # -- comparisons and printing ------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.vars, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, (mono, coeff) in enumerate(self.sorted_terms()):
            factors = []
            for name, exp in zip(self.vars, mono):
                if exp == 1:
                    factors.append(name)
                elif exp > 1:
                    factors.append(f"{name}^{exp}")
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            if i == 0:
                parts.append(f"-{body}" if coeff < 0 else body)
            else:
                parts.append(f" - {body}" if coeff < 0 else f" + {body}")
        return "".join(parts)

    def __repr__(self):
        return f"Poly({self.vars!r}, {self!s})"


# -- gcd ---------------------------------------------------------------------


def normalized(p: Poly) -> Poly:
    """Sign-canonical representative: graded-lex leading coefficient positive."""
    if p.is_zero() or p.leading_coefficient() > 0:
        return p
    return -p


def gcd(a: Poly, b: Poly) -> Poly:
    """Greatest common divisor, normalized to positive leading coefficient.

    Uses the classical content / primitive-part split with primitive
    pseudo-remainder sequences, treating the last variable as the main one
    and recursing on the coefficients.  gcd(p, 0) is the normalized p.
    """
    a._check_ring(b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    if a.is_zero():
        return normalized(b)
    if b.is_zero():
        return normalized(a)
    return normalized(_gcd_at(a, b, len(a.vars) - 1))


def _degree_in(p: Poly, v: int) -> int:
    return max((mono[v] for mono in p.terms), default=0)


def _coefficient_wrt(p: Poly, v: int, k: int) -> Poly:
    """Coefficient of x_v^k: a polynomial with the v-th exponent zeroed."""
    out = {}
    for mono, coeff in p.terms.items():
        if mono[v] == k:
            key = mono[:v] + (0,) + mono[v + 1 :]
            out[key] = coeff
    return Poly(p.vars, out)

def _shift_in(p: Poly, v: int, k: int) -> Poly:
    return Poly(p.vars, {m[:v] + (m[v] + k,) + m[v + 1 :]: c for m, c in p.terms.items()})


def _content_wrt(p: Poly, v: int) -> Poly:
    """GCD of the x_v-coefficients (a polynomial not involving x_v .. x_m)."""
    coeffs = [_coefficient_wrt(p, v, k) for k in range(_degree_in(p, v) + 1)]
    coeffs = [c for c in coeffs if not c.is_zero()]
    g = coeffs[0]
    for c in coeffs[1:]:
        if g.is_constant() and abs(g.constant_value()) == 1:
            break
        g = _gcd_at(g, c, v - 1)
    return normalized(g)


def _pseudo_rem(f: Poly, g: Poly, v: int) -> Poly:
    """Pseudo-remainder of f by g with respect to x_v (deg_v(g) >= 1)."""
    dg = _degree_in(g, v)
    lc_g = _coefficient_wrt(g, v, dg)
    r = f
    while not r.is_zero():
        dr = _degree_in(r, v)
        if dr < dg:
            break
        lc_r = _coefficient_wrt(r, v, dr)
        r = lc_g * r - _shift_in(lc_r * g, v, dr - dg)
    return r


def _gcd_at(a: Poly, b: Poly, v: int) -> Poly:
    # Invariant: neither operand involves variables with index > v.
    while v >= 0 and _degree_in(a, v) == 0 and _degree_in(b, v) == 0:
        v -= 1
    if v < 0:
        return Poly.const(a.vars, math.gcd(a.constant_value(), b.constant_value()))
    cont_a = _content_wrt(a, v)
    cont_b = _content_wrt(b, v)
    cont_g = _gcd_at(cont_a, cont_b, v - 1)
    f = a.div_exact(cont_a)
    g = b.div_exact(cont_b)
    if _degree_in(f, v) < _degree_in(g, v):
        f, g = g, f
    while True:
        if g.is_zero():
            break
        if _degree_in(g, v) == 0:
            # A nonzero primitive remainder free of x_v: primitive parts are coprime.
            f = Poly.one(a.vars)
            break
        r = _pseudo_rem(f, g, v)
        f = g
        g = r if r.is_zero() else r.div_exact(_content_wrt(r, v))
    return cont_g * f


# -- parsing -----------------------------------------------------------------

_TOKEN_OPS = set("+-*^()")


def _tokenize(text: str) -> list:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in _TOKEN_OPS:
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(int(text[i:j]))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(text[i:j])
            i = j
        else:
            raise ParseError(f"unexpected character {ch!r} at position {i}")
    return tokens


class _Parser:
    def __init__(self, tokens: list, vars: tuple):
        self.tokens = tokens
        self.pos = 0
        self.vars = vars

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expr(self) -> Poly:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.next() == "-" else 1
        result = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.next()
            t = self.term()
            result = result + t if op == "+" else result - t
        return result

    def term(self) -> Poly:
        result = self.factor()
        while self.peek() == "*":
            self.next()
            result = result * self.factor()
        return result

    def factor(self) -> Poly:
        base = self.atom()
        if self.peek() == "^":
            self.next()
            exp = self.next()
            if not isinstance(exp, int):
                raise ParseError("exponent must be a non-negative integer literal")
            base = base**exp
        return base

    def atom(self) -> Poly:
        tok = self.next()
        if tok is None:
            raise ParseError("unexpected end of input")
        if isinstance(tok, int):
            return Poly.const(self.vars, tok)
        if tok == "(":
            inner = self.expr()
            if self.next() != ")":
                raise ParseError("missing closing parenthesis")
            return inner
        if isinstance(tok, str) and tok not in _TOKEN_OPS:
            if tok not in self.vars:
                raise ParseError(f"unknown variable {tok!r} (ring has {self.vars})")
            return Poly.variable(self.vars, tok)
        raise ParseError(f"unexpected token {tok!r}")


def parse(text: str, vars: Sequence[str]) -> Poly:
    """Parse a polynomial string over the given ring.

    Grammar: integer literals, declared variable names and ``+ - * ^`` with
    conventional precedence plus parentheses, e.g. ``"x^2*y - 3*x + 1"``.
    """
    parser = _Parser(_tokenize(text), tuple(vars))
    result = parser.expr()
    if parser.peek() is not None:
        raise ParseError(f"trailing input at token {parser.peek()!r}")
    return result
