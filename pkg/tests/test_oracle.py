import pytest

from polyfrac import (
    Poly,
    PolyMatrix,
    bareiss_det,
    cofactor_adjugate,
    cofactor_det,
    mul_naive,
    parse,
    principal_minor_det,
)
from polyfrac.cli import random_matrix


def test_det_of_identity():
    for n in (1, 2, 4, 5):
        assert bareiss_det(PolyMatrix.identity(("x",), n)).is_one()


def test_det_2x2_fixture():
    a = PolyMatrix.from_strings(("x", "y"), [["x", "y"], ["1", "x"]])
    assert bareiss_det(a) == parse("x^2 - y", ("x", "y"))


def test_cross_oracle_agreement():
    a = random_matrix(4, 2, 1, seed=1)
    assert bareiss_det(a) == cofactor_det(a)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_bareiss_equals_cofactor_up_to_5(n):
    for seed in range(4):
        a = random_matrix(n, 1, 1, seed=seed)
        assert bareiss_det(a) == cofactor_det(a)


def test_det_multiplicativity():
    a = random_matrix(3, 1, 1, seed=7)
    b = random_matrix(3, 1, 1, seed=8)
    assert bareiss_det(mul_naive(a, b)) == bareiss_det(a) * bareiss_det(b)


def test_zero_pivot_falls_back():
    a = PolyMatrix.from_strings(("x",), [["0", "1", "2"], ["1", "x", "0"], ["3", "0", "x"]])
    assert bareiss_det(a) == cofactor_det(a)
    assert not bareiss_det(a).is_zero()


def test_adjugate_of_identity():
    i3 = PolyMatrix.identity(("x",), 3)
    assert cofactor_adjugate(i3) == i3


def test_adjugate_2x2_swap_negate():
    a = PolyMatrix.from_strings(("x", "y"), [["x", "y"], ["1", "x"]])
    assert cofactor_adjugate(a) == PolyMatrix.from_strings(
        ("x", "y"), [["x", "-y"], ["-1", "x"]]
    )


def test_adjugate_identity_equation():
    a = random_matrix(4, 2, 1, seed=2)
    adj = cofactor_adjugate(a)
    det = bareiss_det(a)
    ident = PolyMatrix.identity(a.vars, 4)
    assert mul_naive(a, adj) == det * ident
    assert mul_naive(adj, a) == det * ident


def test_adjugate_size_limit():
    with pytest.raises(ValueError):
        cofactor_adjugate(random_matrix(7, 1, 1, seed=0))


def test_principal_minor_dets():
    a = PolyMatrix.from_strings(
        ("x", "y"), [["x", "y", "1"], ["1", "x", "0"], ["2", "0", "y"]]
    )
    assert principal_minor_det(a, 0) == Poly.one(("x", "y"))
    assert principal_minor_det(a, 3) == bareiss_det(a)
    assert principal_minor_det(a, 2) == parse("x^2 - y", ("x", "y"))
    with pytest.raises(ValueError):
        principal_minor_det(a, 4)
