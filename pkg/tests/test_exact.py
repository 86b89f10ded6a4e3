"""Gaussian-rational scalar arithmetic."""

from fractions import Fraction

import numpy as np
import pytest

from fockop import GaussianRational


def test_from_complex_is_lossless():
    zs = [0.1 + 0.3j, -2.5j, 1 / 3, np.pi + 0j, 2**-52 + 2**40j]
    for z in zs:
        g = GaussianRational.from_complex(complex(z))
        assert complex(g) == complex(z)


def test_field_operations():
    a = GaussianRational(Fraction(1, 2), Fraction(3))
    b = GaussianRational(Fraction(-2), Fraction(1, 5))
    assert complex(a + b) == complex(a) + complex(b)
    assert complex(a - b) == complex(a) - complex(b)
    prod = a * b
    assert prod.re == Fraction(1, 2) * Fraction(-2) - Fraction(3) * Fraction(1, 5)
    assert complex(a / b) * complex(b) == pytest.approx(complex(a), abs=1e-15)
    # division is exact, not approximate
    assert (a / b) * b == a


def test_power_and_conjugate():
    a = GaussianRational(Fraction(0), Fraction(1))  # the imaginary unit
    assert a**4 == GaussianRational(Fraction(1), Fraction(0))
    assert a**0 == GaussianRational(Fraction(1), Fraction(0))
    assert a.conjugate() == GaussianRational(Fraction(0), Fraction(-1))
    with pytest.raises(ValueError):
        a ** (-1)


def test_mixed_int_and_fraction_coercion():
    a = GaussianRational(Fraction(1, 2), Fraction(0))
    assert a + 1 == GaussianRational(Fraction(3, 2), Fraction(0))
    assert 2 * a == GaussianRational(Fraction(1), Fraction(0))
    assert a - Fraction(1, 2) == GaussianRational(Fraction(0), Fraction(0))


def test_zero_division():
    a = GaussianRational(Fraction(1), Fraction(1))
    zero = GaussianRational(Fraction(0), Fraction(0))
    with pytest.raises(ZeroDivisionError):
        a / zero


def test_abs():
    a = GaussianRational(Fraction(3), Fraction(4))
    assert abs(a) == pytest.approx(5.0)
