from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from collatz_interval.dyadic import (
    HALF,
    ONE,
    ZERO,
    Dyadic,
    canonicalize,
    exact_quotient,
    fraction_digits,
    from_digits,
    make_dyadic,
    parse_dyadic,
    to_decimal,
)


@st.composite
def dyadics(draw, max_depth=40):
    depth = draw(st.integers(0, max_depth))
    num = draw(st.integers(0, 1 << depth))
    return Dyadic(num, depth)


def test_make_dyadic_examples():
    assert make_dyadic(13, 4).as_fraction() == Fraction(13, 16)
    assert float(make_dyadic(13, 4)) == 0.8125
    assert make_dyadic(0, 0).as_fraction() == 0
    x = make_dyadic(6, 4)
    assert (x.num, x.depth) == (6, 4)
    c = canonicalize(x)
    assert (c.num, c.depth) == (3, 3)


@pytest.mark.parametrize("num, depth", [(17, 4), (3, 1), (-1, 2), (1, -1)])
def test_make_dyadic_rejects(num, depth):
    with pytest.raises(ValueError):
        make_dyadic(num, depth)


@pytest.mark.parametrize("pair, expected", [
    ((6, 4), (3, 3)),
    ((13, 4), (13, 4)),
    ((8, 4), (1, 1)),
    ((0, 7), (0, 0)),
    ((16, 4), (1, 0)),
])
def test_canonicalize(pair, expected):
    c = canonicalize(Dyadic(*pair))
    assert (c.num, c.depth) == expected
    assert c.is_canonical()


def test_canonicalize_exhaustive_preserves_value():
    for depth in range(17):
        for num in range((1 << depth) + 1):
            x = Dyadic(num, depth)
            c = canonicalize(x)
            assert c.as_fraction() == Fraction(num, 1 << depth)
            assert c.is_canonical()


def test_ordering_matches_cross_multiplication():
    values = [Dyadic(n, d) for d in range(6) for n in range((1 << d) + 1)]
    for a in values:
        for b in values:
            lhs, rhs = a.num * (1 << b.depth), b.num * (1 << a.depth)
            assert (a < b) == (lhs < rhs)
            assert (a == b) == (lhs == rhs)


@given(dyadics(), dyadics())
def test_ordering_property(a, b):
    assert (a < b) == (a.as_fraction() < b.as_fraction())
    assert (a == b) == (a.as_fraction() == b.as_fraction())
    if a == b:
        assert hash(a) == hash(b)


@pytest.mark.parametrize("x, width, digits", [
    (Dyadic(13, 4), 4, [1, 1, 0, 1]),
    (HALF, 3, [1, 0, 0]),
    (ZERO, 2, [0, 0]),
    (Dyadic(6, 4), 5, [0, 1, 1, 0, 0]),
])
def test_fraction_digits(x, width, digits):
    assert fraction_digits(x, width) == digits


def test_fraction_digits_too_narrow():
    with pytest.raises(ValueError):
        fraction_digits(Dyadic(13, 4), 3)
    with pytest.raises(ValueError):
        fraction_digits(ONE, 4)


@given(dyadics())
def test_digits_round_trip(x):
    if x.is_one():
        return
    c = x.canonical()
    assert from_digits(fraction_digits(x, c.depth + 3)) == x


def test_exact_quotient():
    q = exact_quotient((HALF, Dyadic(1, 2)), (Dyadic(1, 2), Dyadic(1, 3)))
    assert q == 2
    q = exact_quotient((Dyadic(1, 4), Dyadic(13, 4)), (Dyadic(5, 3), Dyadic(7, 3)))
    assert q == 3
    a = Dyadic(3, 5)
    assert exact_quotient((a, a), (HALF, Dyadic(3, 2))) == 0
    with pytest.raises(ZeroDivisionError):
        exact_quotient((a, HALF), (HALF, Dyadic(2, 2)))


@pytest.mark.parametrize("x, text", [
    (Dyadic(13, 4), "0.8125"),
    (ZERO, "0"),
    (ONE, "1"),
    (Dyadic(1, 10), "0.0009765625"),
])
def test_to_decimal(x, text):
    assert to_decimal(x) == text


@given(dyadics(max_depth=60))
def test_to_decimal_is_exact(x):
    assert Fraction(to_decimal(x)) == x.as_fraction()


@pytest.mark.parametrize("text, value", [
    ("13/2^4", Fraction(13, 16)),
    ("13/16", Fraction(13, 16)),
    ("0.1101b", Fraction(13, 16)),
    (".11b", Fraction(3, 4)),
    ("0.75", Fraction(3, 4)),
    ("1", Fraction(1)),
    ("0", Fraction(0)),
])
def test_parse_dyadic(text, value):
    assert parse_dyadic(text).as_fraction() == value


@pytest.mark.parametrize("text", ["0.8", "1/3", "abc", "0.12b", "5/4", "-0.5"])
def test_parse_dyadic_rejects(text):
    with pytest.raises(ValueError):
        parse_dyadic(text)
