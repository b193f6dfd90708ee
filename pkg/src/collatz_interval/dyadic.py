"""Exact dyadic rationals ``num / 2**depth`` on the unit interval.

Every point the library touches (coded naturals, interval endpoints, map
values) is a dyadic, so everything here is plain integer arithmetic.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering

__all__ = [
    "Dyadic",
    "ZERO",
    "ONE",
    "HALF",
    "make_dyadic",
    "canonicalize",
    "fraction_digits",
    "from_digits",
    "exact_quotient",
    "to_decimal",
    "parse_dyadic",
]


@total_ordering
class Dyadic:
    """The value ``num / 2**depth`` with ``0 <= num <= 2**depth``.

    The stored pair need not be canonical; equality, ordering and hashing
    all go through the exact value.
    """

    __slots__ = ("num", "depth")

    def __init__(self, num: int, depth: int):
        if depth < 0 or num < 0:
            raise ValueError(f"negative dyadic component: ({num}, {depth})")
        if num > (1 << depth):
            raise ValueError(f"{num}/2^{depth} lies outside [0, 1]")
        self.num = num
        self.depth = depth

    @classmethod
    def _raw(cls, num: int, depth: int) -> Dyadic:
        # hot-path constructor for values already known to be in range
        self = object.__new__(cls)
        self.num = num
        self.depth = depth
        return self

    def canonical(self) -> Dyadic:
        num, depth = self.num, self.depth
        if num == 0:
            return ZERO
        if num & 1:
            return self
        tz = (num & -num).bit_length() - 1
        return Dyadic._raw(num >> tz, depth - tz)

    def is_canonical(self) -> bool:
        return self.num & 1 == 1 or (self.num == 0 and self.depth == 0)

    def _cmp_key(self, other: Dyadic) -> tuple[int, int]:
        d = max(self.depth, other.depth)
        return self.num << (d - self.depth), other.num << (d - other.depth)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dyadic):
            return NotImplemented
        a, b = self._cmp_key(other)
        return a == b

    def __lt__(self, other: Dyadic) -> bool:
        if not isinstance(other, Dyadic):
            return NotImplemented
        a, b = self._cmp_key(other)
        return a < b

    def __hash__(self) -> int:
        c = self.canonical()
        return hash((c.num, c.depth))

    def __repr__(self) -> str:
        return f"Dyadic({self.num}, {self.depth})"

    def __str__(self) -> str:
        return f"{self.num}/2^{self.depth}"

    def __float__(self) -> float:
        return self.num / (1 << self.depth)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.depth)

    def is_less_than_half(self) -> bool:
        return self.num == 0 or (self.depth > 0 and self.num < (1 << (self.depth - 1)))

    def is_one(self) -> bool:
        return self.num == (1 << self.depth)


ZERO = Dyadic(0, 0)
ONE = Dyadic(1, 0)
HALF = Dyadic(1, 1)


def make_dyadic(num: int, depth: int) -> Dyadic:
    """Build ``num / 2**depth``; raises ``ValueError`` outside ``[0, 1]``."""
    return Dyadic(num, depth)


def canonicalize(x: Dyadic) -> Dyadic:
    """Strip trailing zero fraction bits (``num`` odd, or ``0/2^0``)."""
    return x.canonical()


def fraction_digits(x: Dyadic, width: int) -> list[int]:
    """Binary fraction digits ``a0 .. a(width-1)`` of ``x``, zero padded on the right."""
    c = x.canonical()
    if c.is_one():
        raise ValueError("1 has no finite binary fraction expansion")
    if width < c.depth:
        raise ValueError(f"width {width} is shorter than canonical depth {c.depth}")
    if c.depth == 0:
        return [0] * width
    bits = format(c.num, f"0{c.depth}b")
    return [int(b) for b in bits] + [0] * (width - c.depth)


def from_digits(digits) -> Dyadic:
    """Canonical dyadic with the given binary fraction digits (0/1 only)."""
    digits = list(digits)
    if not digits:
        return ZERO
    num = 0
    for d in digits:
        if d not in (0, 1):
            raise ValueError(f"not a binary digit: {d!r}")
        num = (num << 1) | d
    return Dyadic._raw(num, len(digits)).canonical()


def exact_quotient(dy: tuple[Dyadic, Dyadic], dx: tuple[Dyadic, Dyadic]) -> Fraction:
    """Exact ``(y1 - y2) / (x1 - x2)`` as a reduced fraction."""
    (y1, y2), (x1, x2) = dy, dx
    ddx = x1.as_fraction() - x2.as_fraction()
    if ddx == 0:
        raise ZeroDivisionError("x values coincide")
    return (y1.as_fraction() - y2.as_fraction()) / ddx


def to_decimal(x: Dyadic) -> str:
    """Exact decimal rendering; every dyadic has a terminating expansion."""
    c = x.canonical()
    if c.depth == 0:
        return str(c.num)
    digits = str(c.num * 5 ** c.depth).rjust(c.depth, "0")
    return "0." + digits


_RATIO = re.compile(r"^\s*(\d+)\s*/\s*(?:2\^(\d+)|(\d+))\s*$")
_BINARY = re.compile(r"^\s*0?\.([01]*)b\s*$")


def parse_dyadic(text: str) -> Dyadic:
    """Parse ``k/2^n``, ``k/<power of two>``, ``0.<bits>b`` or an exact decimal."""
    m = _BINARY.match(text)
    if m:
        return from_digits(int(b) for b in m.group(1))
    m = _RATIO.match(text)
    if m:
        num = int(m.group(1))
        if m.group(2) is not None:
            return Dyadic(num, int(m.group(2)))
        den = int(m.group(3))
        if den <= 0 or den & (den - 1):
            raise ValueError(f"denominator {den} is not a power of two")
        return Dyadic(num, den.bit_length() - 1)
    try:
        frac = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not a dyadic literal: {text!r}") from None
    den = frac.denominator
    if frac < 0 or den & (den - 1):
        raise ValueError(f"{text!r} is not a dyadic rational in [0, 1]")
    return Dyadic(frac.numerator, den.bit_length() - 1)
