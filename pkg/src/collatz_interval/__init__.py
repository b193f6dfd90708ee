"""Exact bit-reversal conjugate of the Collatz (and qx+1) map on [0, 1]."""

from .coding import decode_h, encode_h
from .conjugate import bernoulli_B, g, g2_symbolic, g_orbit
from .core import OrbitRecord, Verdict, bernoulli_f, orbit, step_T
from .dyadic import Dyadic, make_dyadic, parse_dyadic

__version__ = "0.1.0"

__all__ = [
    "Dyadic",
    "make_dyadic",
    "parse_dyadic",
    "encode_h",
    "decode_h",
    "step_T",
    "orbit",
    "bernoulli_f",
    "OrbitRecord",
    "Verdict",
    "g",
    "g2_symbolic",
    "bernoulli_B",
    "g_orbit",
]
