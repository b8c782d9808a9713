from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superfock.errors import DivisionByZero
from superfock.scalars import ExactScalar, I, ONE, SQRT2, parse_rational, pow_two

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)
scalars = st.builds(ExactScalar, rationals, rationals, rationals, rationals)


def test_basic_values():
    assert (ONE + I) * (ONE - I) == ExactScalar(2)
    assert SQRT2 * SQRT2 == ExactScalar(2)
    assert (ExactScalar(2) * SQRT2).inv() == SQRT2 * ExactScalar(Fraction(1, 4))


def test_inverse_of_zero_raises():
    with pytest.raises(DivisionByZero):
        ExactScalar(0).inv()


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@given(scalars)
def test_inverse(a):
    if not a.is_zero():
        assert a * a.inv() == ONE


@given(scalars, scalars)
def test_conjugations_are_ring_maps(a, b):
    assert (a * b).conj_i() == a.conj_i() * b.conj_i()
    assert (a + b).conj_i() == a.conj_i() + b.conj_i()
    assert (a * b).conj_sqrt2() == a.conj_sqrt2() * b.conj_sqrt2()
    assert (a + b).conj_sqrt2() == a.conj_sqrt2() + b.conj_sqrt2()
    assert a.conj_i().conj_i() == a
    assert a.conj_sqrt2().conj_sqrt2() == a


@given(scalars)
def test_json_roundtrip(a):
    assert ExactScalar.from_json(a.to_json()) == a


def test_pow_two():
    assert pow_two(Fraction(3)) == ExactScalar(8)
    assert pow_two(Fraction(-2)) == ExactScalar(Fraction(1, 4))
    assert pow_two(Fraction(-3, 2)) == SQRT2 * ExactScalar(Fraction(1, 4))
    assert pow_two(Fraction(1, 2)) == SQRT2
    assert pow_two(Fraction(-1, 2)) * pow_two(Fraction(-1, 2)) == ExactScalar(Fraction(1, 2))


def test_parse_rational_rejects_decimals():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    with pytest.raises(ValueError):
        parse_rational("0.75")
