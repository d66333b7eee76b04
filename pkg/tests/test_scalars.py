"""Field axioms and exact behavior of the Gaussian rationals."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bdcoideal.scalars import GaussRational, I, MINUS_ONE, ONE, ZERO, gauss

rationals = st.fractions(max_denominator=50)
scalars = st.builds(GaussRational, rationals, rationals)


@given(scalars, scalars, scalars)
def test_addition_and_multiplication_associative(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)


@given(scalars, scalars, scalars)
def test_distributivity(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(scalars, scalars)
def test_commutativity(a, b):
    assert a + b == b + a
    assert a * b == b * a


@given(scalars)
def test_additive_and_multiplicative_inverse(a):
    assert a + (-a) == ZERO
    if not a.is_zero():
        assert a * a.inverse() == ONE


@given(scalars, scalars)
def test_conjugation_is_a_ring_map(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()


@given(scalars)
def test_conjugation_negates_imaginary_part_only(a):
    c = a.conjugate()
    assert c.re == a.re and c.im == -a.im
    assert c.conjugate() == a


def test_i_squares_to_minus_one():
    assert I * I == MINUS_ONE
    assert I.inverse() == -I


def test_division_by_zero_rejected():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_division_exact():
    a = gauss(Fraction(1, 2), Fraction(3, 4))
    b = gauss(Fraction(-2, 3), Fraction(5))
    assert (a / b) * b == a


@pytest.mark.parametrize("text,re,im", [
    ("3", 3, 0),
    ("-1/2", Fraction(-1, 2), 0),
    ("2i", 0, 2),
    ("i", 0, 1),
    ("-i", 0, -1),
    ("1/2-3/4i", Fraction(1, 2), Fraction(-3, 4)),
    ("-2/3+i", Fraction(-2, 3), 1),
])
def test_parse(text, re, im):
    assert GaussRational.from_string(text) == gauss(re, im)


@given(scalars)
def test_format_parse_roundtrip(a):
    assert GaussRational.from_string(str(a)) == a


def test_mixed_arithmetic_with_ints_and_fractions():
    assert gauss(1, 1) * 2 == gauss(2, 2)
    assert Fraction(1, 2) * gauss(2, 4) == gauss(1, 2)
    assert gauss(3) == 3
    assert 1 - gauss(0, 1) == gauss(1, -1)
