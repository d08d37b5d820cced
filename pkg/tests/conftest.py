import pytest

from polyfrac import Poly


@pytest.fixture
def xy():
    vars = ("x", "y")
    return Poly.variable(vars, "x"), Poly.variable(vars, "y")
