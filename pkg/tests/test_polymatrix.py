import json
import random
from fractions import Fraction

import pytest

from helpers import eval_matrix, frac_mat_mul, frac_mat_scale, frac_mat_sub
from polyfrac import (
    NEG_INF,
    NotDivisibleError,
    OddSizeError,
    PadMode,
    Poly,
    PolyMatrix,
    ScaledMatrix,
    SizeMismatchError,
    bareiss_det,
    cofactor_adjugate,
    pad,
    pair_add,
    pair_mul,
    parse,
    trim_adjugate,
)
from polyfrac.cli import random_matrix

VARS = ("x", "y")


def test_quadrants_of_identity():
    i4 = PolyMatrix.identity(VARS, 4)
    a11, a12, a21, a22 = i4.quadrants()
    assert a11 == PolyMatrix.identity(VARS, 2)
    assert a22 == PolyMatrix.identity(VARS, 2)
    assert a12.is_zero() and a21.is_zero()


def test_join_inverts_quadrants():
    a = random_matrix(8, 2, 1, seed=4)
    assert PolyMatrix.join(*a.quadrants()) == a


def test_quadrants_of_2x2_are_scalar_blocks():
    a = random_matrix(2, 1, 1, seed=0)
    blocks = a.quadrants()
    assert all(b.n == 1 for b in blocks)
    assert blocks[0].rows[0][0] == a.rows[0][0]


def test_quadrants_odd_size_rejected():
    with pytest.raises(OddSizeError):
        random_matrix(3, 1, 1, seed=0).quadrants()


def test_entrywise_arithmetic():
    a = random_matrix(3, 2, 1, seed=1)
    assert a + PolyMatrix.zeros(VARS, 3) == a
    assert (a - a).is_zero()
    c = parse("x + 1", VARS)
    scaled = c * PolyMatrix.identity(VARS, 2)
    assert scaled.rows[0][0] == c and scaled.rows[0][1].is_zero()
    with pytest.raises(SizeMismatchError):
        a + PolyMatrix.identity(VARS, 2)


def test_max_degree():
    a = random_matrix(3, 1, 2, seed=2)
    assert a.max_degree() == 2
    assert PolyMatrix.zeros(VARS, 2).max_degree() is NEG_INF


# -- pair arithmetic -------------------------------------------------------------


def test_pair_mul_identity_both_sides():
    m = random_matrix(2, 2, 1, seed=3)
    c = parse("x*y + 1", VARS)
    ident = ScaledMatrix(PolyMatrix.identity(VARS, 2), 1)
    p = ScaledMatrix(m, c)
    for result in (pair_mul(ident, p), pair_mul(p, ident)):
        assert result.mat == m and result.denom == c


def test_pair_mul_scaled_identities():
    x = parse("x", VARS)
    y = parse("y", VARS)
    two_i = 2 * PolyMatrix.identity(VARS, 2)
    three_i = 3 * PolyMatrix.identity(VARS, 2)
    result = pair_mul(ScaledMatrix(two_i, x), ScaledMatrix(three_i, y))
    assert result.mat == 6 * PolyMatrix.identity(VARS, 2)
    assert result.denom == x * y


def test_pair_add_zero_and_constants():
    m = random_matrix(2, 2, 1, seed=5)
    c = parse("x + 2", VARS)
    zero = ScaledMatrix(PolyMatrix.zeros(VARS, 2), 1)
    result = pair_add(ScaledMatrix(m, c), zero)
    assert result.mat == m and result.denom == c

    i2 = PolyMatrix.identity(VARS, 2)
    summed = pair_add(ScaledMatrix(i2, 2), ScaledMatrix(i2, 3))
    assert summed.mat == 5 * i2 and summed.denom == Poly.const(VARS, 6)


def test_pair_semantics_under_evaluation():
    # value(p+q) = value(p)+value(q) and value(p*q) = value(p)*value(q)
    a = random_matrix(2, 2, 1, seed=6)
    b = random_matrix(2, 2, 1, seed=7)
    x = parse("x", VARS)
    y = parse("y + 1", VARS)
    p, q = ScaledMatrix(a, x), ScaledMatrix(b, y)
    rng = random.Random(8)
    checked = 0
    while checked < 5:
        pt = (rng.randint(1, 20), rng.randint(1, 20))
        dx, dy = Fraction(x.evaluate(pt)), Fraction(y.evaluate(pt))
        if dx == 0 or dy == 0:
            continue
        val_p = frac_mat_scale(1 / dx, eval_matrix(a, pt))
        val_q = frac_mat_scale(1 / dy, eval_matrix(b, pt))
        s = pair_add(p, q)
        val_s = frac_mat_scale(Fraction(1, s.denom.evaluate(pt)), eval_matrix(s.mat, pt))
        assert val_s == frac_mat_sub(val_p, frac_mat_scale(-1, val_q))
        m = pair_mul(p, q)
        val_m = frac_mat_scale(Fraction(1, m.denom.evaluate(pt)), eval_matrix(m.mat, pt))
        assert val_m == frac_mat_mul(val_p, val_q)
        checked += 1


def test_scaled_matrix_rejects_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        ScaledMatrix(PolyMatrix.identity(VARS, 2), 0)


def test_scaled_matrix_cross_multiplication_equality():
    m = random_matrix(2, 2, 1, seed=9)
    c = parse("x + 1", VARS)
    assert ScaledMatrix(m, c).semantically_equal(ScaledMatrix(c * m, c * c))
    assert not ScaledMatrix(m, c).semantically_equal(ScaledMatrix(m, c + 1))


# -- exact scalar division --------------------------------------------------------


def test_div_exact_entrywise():
    c = parse("x + 1", VARS)
    m = c * PolyMatrix.identity(VARS, 2)
    assert m.div_exact(c) == PolyMatrix.identity(VARS, 2)
    a = random_matrix(2, 2, 1, seed=10)
    assert a.div_exact(1) == a


def test_div_exact_recovers_adjugate_scaling():
    # Adj(c*A) = c^(n-1)*Adj(A), so dividing back by c^(n-1) recovers Adj(A).
    a = random_matrix(3, 2, 1, seed=11)
    c = parse("x + y", VARS)
    scaled_adj = cofactor_adjugate(c * a)
    assert scaled_adj.div_exact(c**2) == cofactor_adjugate(a)


def test_div_exact_aborts_on_wrong_content():
    a = random_matrix(2, 2, 1, seed=12)
    with pytest.raises(NotDivisibleError):
        a.div_exact(parse("x^3 + 5", VARS))


# -- padding and trimming ----------------------------------------------------------


def test_pad_lower_right_is_block_diagonal():
    a = random_matrix(3, 1, 1, seed=13)
    padded = pad(a, 4, PadMode.LOWER_RIGHT)
    assert padded.n == 4
    assert PolyMatrix([row[:3] for row in padded.rows[:3]]) == a
    assert padded.rows[3][3].is_one()
    assert all(padded.rows[3][j].is_zero() for j in range(3))
    assert all(padded.rows[i][3].is_zero() for i in range(3))


def test_pad_preserves_determinant():
    a = random_matrix(5, 1, 1, seed=14)
    det = bareiss_det(a)
    for mode in PadMode:
        assert bareiss_det(pad(a, 8, mode)) == det


def test_pad_noop_and_bad_target():
    a = random_matrix(4, 1, 1, seed=15)
    assert pad(a, 4) == a
    with pytest.raises(SizeMismatchError):
        pad(a, 2)


def test_trim_identity_padding():
    vars = ("x",)
    i3 = PolyMatrix.identity(vars, 3)
    for mode in PadMode:
        padded = pad(i3, 4, mode)
        adj = cofactor_adjugate(padded)
        assert trim_adjugate(adj, 3, mode) == i3


def test_trim_matches_cofactor_oracle():
    a = random_matrix(3, 1, 1, seed=16)
    expected = cofactor_adjugate(a)
    for mode in PadMode:
        adj = cofactor_adjugate(pad(a, 4, mode))
        assert trim_adjugate(adj, 3, mode) == expected


def test_both_pad_modes_trim_to_same_adjugate():
    a = random_matrix(5, 1, 1, seed=17)
    trimmed = []
    for mode in PadMode:
        adj = cofactor_adjugate(pad(a, 6, mode))
        trimmed.append(trim_adjugate(adj, 5, mode))
    assert trimmed[0] == trimmed[1]


# -- JSON ---------------------------------------------------------------------------


def test_json_roundtrip_is_bit_exact():
    a = random_matrix(3, 2, 2, seed=18)
    blob = json.dumps(a.to_json_dict())
    assert PolyMatrix.from_json_dict(json.loads(blob)) == a


def test_json_rejects_ragged_grid():
    with pytest.raises(SizeMismatchError):
        PolyMatrix.from_json_dict({"vars": ["x"], "n": 2, "entries": [["1"], ["1", "2"]]})
