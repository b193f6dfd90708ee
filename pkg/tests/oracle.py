"""Slow, independent reference routes used to freeze expected values.

Nothing here imports the package: coding goes through Fractions digit by
digit, and g is evaluated by inverting a lookup table of coded naturals.
"""

from fractions import Fraction


def h(m):
    """Digit-by-digit bit reversal, summing ``a_i * 2**-(i+1)``."""
    bits = bin(m)[2:][::-1] if m else ""
    return sum((Fraction(int(b), 2 ** (i + 1)) for i, b in enumerate(bits)), Fraction(0))


def T(m, q=3):
    if m % 2 == 0:
        v = Fraction(m, 2)
    else:
        v = Fraction(q * m + 1, 2)
    assert v.denominator == 1
    return int(v)


class GTable:
    """g on coded naturals below ``2**bits`` via table inversion."""

    def __init__(self, bits):
        self.inverse = {h(m): m for m in range(1 << bits)}

    def __call__(self, x, q=3):
        return h(T(self.inverse[x], q))


def orbit_until_repeat(m, step, limit=10**6):
    seen = []
    v = m
    while v not in seen:
        seen.append(v)
        v = step(v)
        if len(seen) > limit:
            raise RuntimeError("no repeat")
    return seen, seen.index(v)
