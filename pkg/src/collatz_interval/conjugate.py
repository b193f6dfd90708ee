"""The interval map g = h o T o h^-1 and its pointwise probes.

``g`` is evaluated by conjugation for every q. For q = 3 there is also a
digit-level route (:func:`g2_symbolic`) that never leaves fraction digits;
the two are kept independent so each checks the other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .coding import decode_h, encode_h
from .core import DEFAULT_MAX_STEPS, OrbitRecord, Verdict, check_q, iterate, step_T
from .dyadic import HALF, ZERO, Dyadic, exact_quotient, fraction_digits

__all__ = [
    "g",
    "g2_symbolic",
    "bernoulli_B",
    "g_orbit",
    "TWO_CYCLE",
    "QuotientReport",
    "quotient_scan",
    "cycle_expansion_product",
    "left_limit_probe",
    "DiagonalReport",
    "below_diagonal_scan",
    "grid",
]

TWO_CYCLE = (HALF, Dyadic(1, 2))


def _check_unit(x: Dyadic) -> None:
    if x.is_one():
        raise ValueError("g is defined on [0, 1); 1 codes no finite natural")


def g(x: Dyadic, q: int = 3) -> Dyadic:
    """Conjugate map: ``2x`` below 1/2, ``h(T(h^-1(x)))`` on [1/2, 1)."""
    _check_unit(x)
    x = x.canonical()
    if x.num == 0:
        return ZERO
    if x.is_less_than_half():
        return Dyadic._raw(x.num, x.depth - 1)
    return encode_h(step_T(decode_h(x), q))


def g2_symbolic(x: Dyadic) -> Dyadic:
    """Odd branch of g for q = 3 computed on fraction digits alone.

    For ``x = 0.1 a1 a2 ... an`` the generalized digit string is
    ``a1, a1+a2+1, a2+a3, ..., a(n-1)+an, an`` (missing ``a`` are 0). Digits
    above 1 are then resolved scanning left to right: fraction position j is
    integer bit j-1 of the reversed word, so carries travel toward later
    fraction positions.
    """
    _check_unit(x)
    x = x.canonical()
    if x.is_less_than_half():
        raise ValueError("g2_symbolic is only defined on [1/2, 1)")
    a = fraction_digits(x, x.depth)[1:]
    n = len(a)
    a = a + [0, 0]
    gen = [a[0], a[0] + a[1] + 1]
    for k in range(3, max(n + 1, 2) + 1):
        gen.append(a[k - 2] + a[k - 1])

    out = []
    carry = 0
    j = 0
    while j < len(gen) or carry:
        d = carry + (gen[j] if j < len(gen) else 0)
        out.append(d & 1)
        carry = d >> 1
        j += 1

    num = 0
    for b in out:
        num = (num << 1) | b
    return Dyadic._raw(num, len(out)).canonical()


def bernoulli_B(x: Dyadic) -> Dyadic:
    """Doubling map ``2x mod 1``: drops the first fraction digit."""
    _check_unit(x)
    x = x.canonical()
    if x.depth == 0:
        return ZERO
    half = 1 << (x.depth - 1)
    num = x.num - half if x.num >= half else x.num
    return Dyadic._raw(num, x.depth - 1).canonical()


def g_orbit(
    x: Dyadic,
    q: int = 3,
    max_steps: int = DEFAULT_MAX_STEPS,
    max_depth: int = 256,
) -> OrbitRecord:
    """Exact orbit of ``x`` under g.

    A value whose canonical depth exceeds ``max_depth`` ends the orbit with
    a cutoff verdict. ``peak`` is the value coding the largest natural.
    """
    _check_unit(x)
    check_q(q)
    return iterate(
        x.canonical(),
        lambda v: g(v, q),
        max_steps,
        exceeded=lambda v: v.depth > max_depth,
        bound_verdict=Verdict.CUTOFF,
        key=decode_h,
    )


def grid(lo_index: int, hi_index: int, depth: int):
    """Dyadics ``k / 2**depth`` for ``lo_index <= k < hi_index``."""
    for k in range(lo_index, hi_index):
        yield Dyadic._raw(k, depth).canonical()


@dataclass
class QuotientReport:
    depth: int
    q: int
    minimum: Fraction
    argmin: tuple[Dyadic, Dyadic]
    branch_minimum: dict = field(default_factory=dict)
    branch_maximum: dict = field(default_factory=dict)


def quotient_scan(depth: int, q: int = 3) -> QuotientReport:
    """Minimum absolute difference quotient of g over adjacent grid points.

    Pairs ``(k/2^d, (k+1)/2^d)`` are used only when both points lie in the
    same branch, [0, 1/2) or [1/2, 1). Ties go to the leftmost pair.
    """
    if depth < 2:
        raise ValueError("depth must be >= 2")
    check_q(q)
    size = 1 << depth
    half = size >> 1
    step = Fraction(1, size)
    values = [g(x, q).as_fraction() for x in grid(0, size, depth)]
    best = None
    branch_min: dict = {}
    branch_max: dict = {}
    for branch, (lo, hi) in (("g1", (0, half)), ("g2", (half, size))):
        for k in range(lo, hi - 1):
            r = abs(values[k + 1] - values[k]) / step
            if branch not in branch_min or r < branch_min[branch]:
                branch_min[branch] = r
            if branch not in branch_max or r > branch_max[branch]:
                branch_max[branch] = r
            if best is None or r < best[0]:
                best = (r, k)
    r, k = best
    pair = (Dyadic._raw(k, depth).canonical(), Dyadic._raw(k + 1, depth).canonical())
    return QuotientReport(depth, q, r, pair, branch_min, branch_max)


def cycle_expansion_product(depth: int) -> Fraction:
    """Product of one-sided quotients of g at 1/2 and 1/4 (q = 3).

    Each cycle point is paired with its nearest grid neighbour on the same
    branch: the right neighbour for 1/2, the left one for 1/4.
    """
    if depth < 3:
        raise ValueError("depth must be >= 3")
    x1, x2 = TWO_CYCLE
    right = Dyadic._raw((1 << (depth - 1)) + 1, depth)
    left = Dyadic._raw((1 << (depth - 2)) - 1, depth)
    at_half = exact_quotient((g(right), g(x1)), (right, x1))
    at_quarter = exact_quotient((g(x2), g(left)), (x2, left))
    return at_half * at_quarter


def left_limit_probe(x0: Dyadic, k_max: int) -> list[tuple[int, Dyadic, Dyadic]]:
    """Evaluate g (q = 3) on left approximants of ``x0``.

    ``x_k`` is ``x0`` with its final 1 digit replaced by 0 and ``k`` ones
    appended. Returns ``(k, x_k, g(x_k))``; ``x_k`` may fall into the g1
    branch, which callers can detect with ``x_k < 1/2``.
    """
    x0 = x0.canonical()
    if x0 < HALF or x0.is_one():
        raise ValueError("x0 must lie in [1/2, 1)")
    out = []
    base = x0.num - 1
    for k in range(1, k_max + 1):
        xk = Dyadic._raw((base << k) | ((1 << k) - 1), x0.depth + k)
        out.append((k, xk, g(xk)))
    return out


@dataclass
class DiagonalReport:
    depth: int
    q: int
    above: int
    on: int
    below: int
    violations: list


def below_diagonal_scan(depth: int, q: int = 3, keep: int = 50) -> DiagonalReport:
    """Classify g on [1/2, 1) against ``y = x`` over all points of depth <= ``depth``.

    ``violations`` lists (up to ``keep``) points with ``g(x) >= x``.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    check_q(q)
    size = 1 << depth
    above = on = below = 0
    violations = []
    for k in range(size >> 1, size):
        x = Dyadic._raw(k, depth).canonical()
        y = g(x, q)
        # compare y against k / 2^depth without leaving integers
        if y.depth >= depth:
            lhs, rhs = y.num, k << (y.depth - depth)
        else:
            lhs, rhs = y.num << (depth - y.depth), k
        if lhs > rhs:
            above += 1
        elif lhs == rhs:
            on += 1
        else:
            below += 1
            continue
        if len(violations) < keep:
            violations.append((x, y))
    return DiagonalReport(depth, q, above, on, below, violations)
