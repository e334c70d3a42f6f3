from fractions import Fraction

import pytest
from hypothesis import given

from polyharm.rationals import GaussianRational, I, ONE

from conftest import gaussian_rationals, nonzero_gaussian_rationals


def test_construction_and_normalization():
    q = GaussianRational(Fraction(2, 4), Fraction(-6, 4))
    assert q.re == Fraction(1, 2)
    assert q.im == Fraction(-3, 2)
    assert not q.is_zero()
    assert GaussianRational().is_zero()


def test_imaginary_unit_squares_to_minus_one():
    assert I * I == GaussianRational(Fraction(-1))


@given(gaussian_rationals(), nonzero_gaussian_rationals())
def test_add_then_subtract_is_identity(a, b):
    assert (a + b) - b == a


@given(gaussian_rationals(), nonzero_gaussian_rationals())
def test_multiply_then_divide_is_identity(a, b):
    assert (a * b) / b == a


@given(gaussian_rationals())
def test_conjugation_is_an_involution(a):
    assert a.conjugate().conjugate() == a


@given(gaussian_rationals())
def test_squared_modulus_is_nonnegative_rational(a):
    n = a.abs2()
    assert isinstance(n, Fraction)
    assert n >= 0
    assert a.conjugate() * a == GaussianRational(n)


@given(nonzero_gaussian_rationals())
def test_reciprocal(a):
    assert ONE / a * a == ONE


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / GaussianRational()


def test_scalar_coercion_from_int_and_fraction():
    assert GaussianRational.coerce(3) == GaussianRational(Fraction(3))
    assert GaussianRational.coerce(Fraction(1, 2)).re == Fraction(1, 2)
    with pytest.raises(TypeError):
        GaussianRational.coerce(0.5)


def test_complex_conversion():
    assert complex(GaussianRational(Fraction(1, 2), Fraction(-3))) == 0.5 - 3j
