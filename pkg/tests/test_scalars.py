from fractions import Fraction

import pytest

from fockbench.scalars import (
    GaussianRational,
    close,
    scalar_from_json,
    scalar_to_json,
    to_backend,
)


def test_gaussian_arithmetic_is_exact():
    i = GaussianRational(0, 1)
    assert i * i == -1
    x = GaussianRational(Fraction(1, 3), Fraction(-2, 7))
    assert (x / x) == 1
    assert x - x == 0
    assert x.conjugate() * x == x.abs_sq()
    assert not GaussianRational()


def test_mixing_with_float_is_refused():
    with pytest.raises(TypeError):
        GaussianRational(1) + 0.5


def test_equality_with_builtin_numbers():
    assert GaussianRational(2) == 2
    assert GaussianRational(Fraction(1, 2)) == Fraction(1, 2)
    assert GaussianRational(1, 1) == complex(1, 1)
    assert hash(GaussianRational(3)) == hash(3)


def test_to_backend():
    assert to_backend("3/4", "exact") == GaussianRational(Fraction(3, 4))
    assert to_backend(2, "float") == 2 + 0j
    with pytest.raises(TypeError):
        to_backend(0.1, "exact")


@pytest.mark.parametrize("value, expected", [
    (GaussianRational(3), 3),
    (GaussianRational(Fraction(1, 2)), "1/2"),
    (GaussianRational(0, -1), {"re": 0, "im": -1}),
    (Fraction(5, 3), "5/3"),
    (2.5 + 0j, 2.5),
])
def test_scalar_json(value, expected):
    assert scalar_to_json(value) == expected
    assert scalar_from_json(expected) == value


def test_close_relative_tolerance():
    assert close(1e6, 1e6 + 1e-7)
    assert not close(1.0, 1.0 + 1e-9)
    assert close(Fraction(1, 3), GaussianRational(Fraction(1, 3)))
