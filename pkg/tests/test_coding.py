from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from collatz_interval.coding import decode_h, encode_h, reverse_bits
from collatz_interval.dyadic import HALF, ONE, ZERO, Dyadic


def test_worked_example():
    x = encode_h(11)
    assert (x.num, x.depth) == (13, 4)
    assert float(x) == 0.8125


def test_cycle_points():
    assert encode_h(1) == HALF
    assert encode_h(2) == Dyadic(1, 2)
    assert encode_h(0) == ZERO


@pytest.mark.parametrize("x, m", [(Dyadic(13, 4), 11), (HALF, 1), (ZERO, 0), (Dyadic(26, 5), 11)])
def test_decode(x, m):
    assert decode_h(x) == m


def test_decode_rejects_one():
    with pytest.raises(ValueError):
        decode_h(ONE)
    with pytest.raises(ValueError):
        decode_h(Dyadic(8, 3))


def test_matches_digit_sum_oracle():
    for m in range(5000):
        assert encode_h(m).as_fraction() == oracle.h(m)


def test_parity_split_and_depth():
    for m in range(1, 1 << 14):
        x = encode_h(m)
        assert (m % 2 == 0) == (x < HALF)
        assert x.depth == m.bit_length()
        assert x.is_canonical()


def test_round_trip_all_canonical_up_to_depth_12():
    seen = set()
    for depth in range(1, 13):
        for num in range(1, 1 << depth, 2):
            m = decode_h(Dyadic(num, depth))
            assert m not in seen
            seen.add(m)
            y = encode_h(m)
            assert (y.num, y.depth) == (num, depth)
    # all naturals below 2^12 hit exactly once
    assert seen == set(range(1, 1 << 12))


@given(st.integers(min_value=0, max_value=2**512))
def test_round_trip_large(m):
    assert decode_h(encode_h(m)) == m


@given(st.integers(0, 2**64), st.integers(0, 70))
def test_reverse_bits_involution(v, width):
    v &= (1 << width) - 1
    assert reverse_bits(reverse_bits(v, width), width) == v


def test_value_is_below_one():
    for m in (1, 2**100 - 1, 12345):
        assert encode_h(m).as_fraction() < Fraction(1)
