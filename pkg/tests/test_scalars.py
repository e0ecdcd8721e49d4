from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from svalg.scalars import I, ONE, ZERO, GaussRat, as_rat, format_scalar, is_unit_modulus, parse_scalar, sign

fracs = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)
gauss = st.builds(GaussRat, fracs, fracs)


def test_i_squared():
    assert I * I == -1


def test_mixed_arithmetic():
    q = GaussRat(Fraction(1, 2), 3)
    assert q + 1 == GaussRat(Fraction(3, 2), 3)
    assert 2 * q == GaussRat(1, 6)
    assert Fraction(1, 2) - q == GaussRat(0, -3)
    assert q / 2 == GaussRat(Fraction(1, 4), Fraction(3, 2))


def test_inverse_and_zero_division():
    q = GaussRat(3, 4)
    assert q * q.inverse() == 1
    assert q.norm() == 25
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_negative_power():
    assert GaussRat(0, 2) ** -2 == GaussRat(Fraction(-1, 4))


def test_hash_matches_rationals():
    assert hash(GaussRat(3)) == hash(Fraction(3))
    assert {GaussRat(2): "x"}[Fraction(2)] == "x"


def test_immutable():
    with pytest.raises(AttributeError):
        ONE.re = 5


@pytest.mark.parametrize(
    "text,value",
    [
        ("3", GaussRat(3)),
        ("-1/2", GaussRat(Fraction(-1, 2))),
        ("1/2+1*i", GaussRat(Fraction(1, 2), 1)),
        ("i", I),
        ("-i", -I),
        ("12*i", GaussRat(0, 12)),
        ("(0/1+1/1*i)", I),
        ("3/5-4/5*i", GaussRat(Fraction(3, 5), Fraction(-4, 5))),
    ],
)
def test_parse(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("text", ["", "abc", "1/0", "1.5", "2 3", "3 i"])
def test_parse_rejects(text):
    with pytest.raises(ValueError):
        parse_scalar(text)


@given(gauss)
def test_format_round_trip(q):
    assert parse_scalar(format_scalar(q)) == q


@given(gauss, gauss, gauss)
def test_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a * b).norm() == a.norm() * b.norm()


def test_helpers():
    assert is_unit_modulus(parse_scalar("3/5+4/5*i"))
    assert not is_unit_modulus(GaussRat(1, 1))
    assert sign(Fraction(-2)) == -1
    with pytest.raises(ValueError):
        as_rat(I)
