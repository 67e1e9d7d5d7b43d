from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from galilei.scalars import GRat, I, ONE, ZERO, parse_grat


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)
grats = st.builds(GRat, rationals, rationals)


def test_basic_arithmetic():
    assert GRat(1, 2) * GRat(1, -2) == GRat(5)
    assert I * I == GRat(-1)
    assert (GRat(3) / GRat(2)).re == Fraction(3, 2)


def test_inverse_and_division():
    z = GRat(Fraction(2, 3), Fraction(-1, 5))
    assert z * z.inverse() == ONE
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_conjugate_and_abs_square():
    z = GRat(2, 3)
    assert z * z.conjugate() == GRat(13)


def test_powers():
    assert I ** 2 == GRat(-1)
    assert I ** -1 == -I
    assert GRat(2) ** -2 == GRat(Fraction(1, 4))


@given(grats, grats, grats)
def test_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert a + (b + c) == (a + b) + c
    if b:
        assert (a / b) * b == a


@given(grats)
def test_text_roundtrip(z):
    assert parse_grat(str(z)) == z


def test_parse_forms():
    assert parse_grat("3/4") == GRat(Fraction(3, 4))
    assert parse_grat("1/2+2/3*i") == GRat(Fraction(1, 2), Fraction(2, 3))
    assert parse_grat("-i") == -I
    with pytest.raises(ZeroDivisionError):
        parse_grat("3/0")
