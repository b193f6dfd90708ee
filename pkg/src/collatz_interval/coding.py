"""Bit-reversal coding between naturals and canonical dyadics in [0, 1)."""

from __future__ import annotations

from .dyadic import ZERO, Dyadic

__all__ = ["encode_h", "decode_h", "reverse_bits"]


def reverse_bits(value: int, width: int) -> int:
    """Reverse the low ``width`` bits of ``value``."""
    if width == 0:
        return 0
    return int(format(value, f"0{width}b")[::-1], 2)


def encode_h(m: int) -> Dyadic:
    """Write ``m`` in binary, reverse it, and read the result as ``0.<bits>``.

    >>> encode_h(11)
    Dyadic(13, 4)
    """
    if m < 0:
        raise ValueError(f"negative natural: {m}")
    if m == 0:
        return ZERO
    s = bin(m)[2:]
    # leading bit of m becomes the last fraction digit, so num is odd
    return Dyadic._raw(int(s[::-1], 2), len(s))


def decode_h(x: Dyadic) -> int:
    """Inverse of :func:`encode_h`; ``x`` is canonicalized first.

    The value 1 would need the infinite string ``0.111...`` and is rejected.
    """
    c = x.canonical()
    if c.is_one():
        raise ValueError("1 codes no finite natural")
    if c.depth == 0:
        return 0
    return int(format(c.num, f"0{c.depth}b")[::-1], 2)
