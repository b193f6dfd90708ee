"""Integer-side maps: the qx+1 step, orbits with cycle detection, the shift f."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Hashable, TypeVar

__all__ = [
    "Verdict",
    "OrbitRecord",
    "check_q",
    "step_T",
    "orbit",
    "iterate",
    "bernoulli_f",
    "DEFAULT_MAX_STEPS",
    "DEFAULT_MAGNITUDE_BOUND",
    "DEFAULT_STORE_LIMIT",
]

DEFAULT_MAX_STEPS = 10**5
DEFAULT_MAGNITUDE_BOUND = 2**256
DEFAULT_STORE_LIMIT = 10**4

V = TypeVar("V", bound=Hashable)


class Verdict(enum.Enum):
    CYCLE = "cycle"
    CUTOFF = "cutoff"
    MAGNITUDE = "magnitude"


@dataclass
class OrbitRecord:
    """Result of iterating a map from ``start``.

    ``trajectory`` holds the first ``store_limit + 1`` values (one map
    application between neighbours); past that only ``checkpoints`` are kept.
    ``steps`` counts map applications performed. For a cycle verdict it is
    the step at which a value first repeated, ``entry_step`` is the index of
    the first cycle member in the orbit and ``cycle`` lists the members in
    orbit order starting from the entry point.
    """

    start: object
    trajectory: list
    verdict: Verdict
    steps: int
    peak: object
    cycle: tuple = ()
    entry_step: int | None = None
    checkpoints: list = field(default_factory=list)


def check_q(q: int) -> int:
    if q < 3 or q % 2 == 0:
        raise ValueError(f"q must be an odd integer >= 3, got {q}")
    return q


def step_T(m: int, q: int = 3) -> int:
    """One step of ``m -> m/2`` (even) or ``m -> (q*m + 1)/2`` (odd)."""
    if m & 1:
        return (q * m + 1) >> 1
    return m >> 1


def bernoulli_f(m: int) -> int:
    """The shift ``m -> m // 2``, i.e. ``m/2`` or ``(m-1)/2`` by parity."""
    if m < 0:
        raise ValueError(f"negative natural: {m}")
    return m >> 1


def iterate(
    start: V,
    step: Callable[[V], V],
    max_steps: int,
    exceeded: Callable[[V], bool] | None = None,
    bound_verdict: Verdict = Verdict.MAGNITUDE,
    key: Callable[[V], object] | None = None,
    store_limit: int = DEFAULT_STORE_LIMIT,
) -> OrbitRecord:
    """Iterate ``step`` with exact cycle detection via a first-seen table.

    ``exceeded`` is checked on every new value; when it fires the record
    ends with ``bound_verdict``. ``key`` orders values for the peak.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    key = key or (lambda v: v)
    seen = {start: 0}
    trajectory = [start]
    checkpoints = []
    peak = start
    peak_key = key(start)
    value = start
    for n in range(1, max_steps + 1):
        value = step(value)
        first = seen.get(value)
        if first is not None:
            cycle = tuple(trajectory[first:n]) if n <= store_limit + 1 else ()
            if not cycle:
                cycle = _replay_cycle(value, step, n - first)
            return OrbitRecord(start, trajectory, Verdict.CYCLE, n, peak,
                               cycle, first, checkpoints)
        seen[value] = n
        k = key(value)
        if k > peak_key:
            peak, peak_key = value, k
        if n <= store_limit:
            trajectory.append(value)
        elif n % store_limit == 0:
            checkpoints.append((n, value))
        if exceeded is not None and exceeded(value):
            return OrbitRecord(start, trajectory, bound_verdict, n, peak,
                               checkpoints=checkpoints)
    return OrbitRecord(start, trajectory, Verdict.CUTOFF, max_steps, peak,
                       checkpoints=checkpoints)


def _replay_cycle(entry, step, length):
    members = [entry]
    for _ in range(length - 1):
        members.append(step(members[-1]))
    return tuple(members)


def orbit(
    m: int,
    q: int = 3,
    max_steps: int = DEFAULT_MAX_STEPS,
    magnitude_bound: int = DEFAULT_MAGNITUDE_BOUND,
    store_limit: int = DEFAULT_STORE_LIMIT,
) -> OrbitRecord:
    """Orbit of ``m`` under the qx+1 map.

    ``0`` is its own fixed point and comes back as a one-element cycle.

    >>> orbit(3).trajectory
    [3, 5, 8, 4, 2, 1]
    """
    if m < 0:
        raise ValueError(f"negative natural: {m}")
    check_q(q)
    return iterate(
        m,
        lambda v: step_T(v, q),
        max_steps,
        exceeded=lambda v: v > magnitude_bound,
        bound_verdict=Verdict.MAGNITUDE,
        store_limit=store_limit,
    )
