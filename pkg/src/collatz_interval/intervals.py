"""Dyadic partitions of [0, 1], their images under g, and transfer graphs.

Interval ``I_w`` at depth n (``w`` the n fraction digits of its left end)
holds exactly the coded naturals ``m == rev(w) (mod 2**n)``. Images are
computed on those residue classes, so they are exact at every depth.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .coding import reverse_bits
from .conjugate import g
from .core import check_q
from .dyadic import Dyadic, exact_quotient

__all__ = [
    "IntervalId",
    "interval_of",
    "residue_of_interval",
    "interval_of_residue",
    "image_intervals",
    "TransferGraph",
    "transfer_graph",
    "ConnectivityReport",
    "connectivity_report",
    "automaton_export",
    "SpanReport",
    "span_measurement",
    "SlopeReport",
    "slope_pattern_report",
    "MAX_GRAPH_DEPTH",
    "RESIDUE_NOTE",
]

MAX_GRAPH_DEPTH = 14

RESIDUE_NOTE = (
    "interval I_w holds the coded naturals m == rev(w) mod 2^n "
    "(e.g. I_10 <-> m == 1 mod 4, I_01 <-> m == 2 mod 4)"
)


@dataclass(frozen=True, order=True)
class IntervalId:
    depth: int
    index: int

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError(f"interval depth must be >= 1, got {self.depth}")
        if not 0 <= self.index < (1 << self.depth):
            raise ValueError(f"index {self.index} out of range at depth {self.depth}")

    @classmethod
    def from_label(cls, label: str) -> IntervalId:
        if not label or set(label) - {"0", "1"}:
            raise ValueError(f"bad interval label {label!r}")
        return cls(len(label), int(label, 2))

    @property
    def label(self) -> str:
        return format(self.index, f"0{self.depth}b")

    @property
    def lo(self) -> Dyadic:
        return Dyadic(self.index, self.depth).canonical()

    @property
    def hi(self) -> Dyadic:
        return Dyadic(self.index + 1, self.depth).canonical()

    @property
    def length(self) -> Fraction:
        return Fraction(1, 1 << self.depth)

    @property
    def branch(self) -> int:
        """0 for cells inside [0, 1/2) (the g1 side), 1 otherwise."""
        return self.index >> (self.depth - 1)

    def __str__(self) -> str:
        return f"I_{self.label}"


def interval_of(x: Dyadic, depth: int) -> IntervalId:
    """Half-open cell ``[k/2^n, (k+1)/2^n)`` containing ``x`` (x < 1)."""
    if x.is_one():
        raise ValueError("1 lies in no half-open cell")
    if x.depth >= depth:
        k = x.num >> (x.depth - depth)
    else:
        k = x.num << (depth - x.depth)
    return IntervalId(depth, k)


def residue_of_interval(interval: IntervalId) -> tuple[int, int]:
    """``(r, 2**n)`` with ``r`` the bit reversal of the label word."""
    return reverse_bits(interval.index, interval.depth), 1 << interval.depth


def interval_of_residue(r: int, depth: int) -> IntervalId:
    return IntervalId(depth, reverse_bits(r % (1 << depth), depth))


def image_intervals(interval: IntervalId, q: int = 3) -> tuple[IntervalId, IntervalId]:
    """The two cells met by g(I), ordered by index; they are siblings.

    Even residues ``r`` go to ``r/2 + 2^(n-1) t``; odd ones to
    ``(q r + 1)/2 + q 2^(n-1) t``. Either way the image is one class mod
    ``2^(n-1)``, which splits into two classes mod ``2^n``.
    """
    check_q(q)
    n = interval.depth
    r, _ = residue_of_interval(interval)
    s = (q * r + 1) >> 1 if r & 1 else r >> 1
    s &= (1 << (n - 1)) - 1
    a = interval_of_residue(s, n)
    b = interval_of_residue(s + (1 << (n - 1)), n)
    return (a, b) if a.index < b.index else (b, a)


@dataclass
class TransferGraph:
    depth: int
    q: int
    successors: list[tuple[int, int]]

    @property
    def size(self) -> int:
        return 1 << self.depth

    def nodes(self) -> list[IntervalId]:
        return [IntervalId(self.depth, k) for k in range(self.size)]

    def branch(self, k: int) -> int:
        return k >> (self.depth - 1)

    def label(self, k: int) -> str:
        return format(k, f"0{self.depth}b")

    def matrix(self) -> np.ndarray:
        m = np.zeros((self.size, self.size), dtype=np.uint8)
        for k, (a, b) in enumerate(self.successors):
            m[k, a] = 1
            m[k, b] = 1
        return m

    def relations(self) -> dict[str, tuple[str, str]]:
        return {self.label(k): (self.label(a), self.label(b))
                for k, (a, b) in enumerate(self.successors)}


def transfer_graph(depth: int, q: int = 3, max_depth: int = MAX_GRAPH_DEPTH) -> TransferGraph:
    if not 1 <= depth <= max_depth:
        raise ValueError(f"depth must be in 1..{max_depth}, got {depth}")
    check_q(q)
    succ = []
    for k in range(1 << depth):
        a, b = image_intervals(IntervalId(depth, k), q)
        succ.append((a.index, b.index))
    return TransferGraph(depth, q, succ)


@dataclass
class ConnectivityReport:
    strongly_connected: bool
    primitivity_exponent: int | None
    covering_time: list[int | None]


def _reaches_all(adj: list[list[int]], n: int) -> bool:
    seen = [False] * n
    seen[0] = True
    todo = deque([0])
    while todo:
        u = todo.popleft()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                todo.append(v)
    return all(seen)


def connectivity_report(graph: TransferGraph) -> ConnectivityReport:
    """Strong connectivity, primitivity exponent, and per-node covering times.

    Boolean powers are tracked column-wise as packed bitsets: row ``w`` of
    ``cols`` is the set of sources that reach ``w`` in exactly m steps.
    """
    n = graph.size
    forward = [list(s) for s in graph.successors]
    backward: list[list[int]] = [[] for _ in range(n)]
    for u, (a, b) in enumerate(graph.successors):
        backward[a].append(u)
        backward[b].append(u)
    strong = _reaches_all(forward, n) and _reaches_all(backward, n)

    # successors are always a sibling block {2j, 2j+1}: propagate per block
    parent = np.array([a >> 1 for a, _ in graph.successors])
    order = np.argsort(parent, kind="stable")
    blocks, starts = np.unique(parent[order], return_index=True)

    idx = np.arange(n)
    cols = np.zeros((n, (n + 7) // 8), dtype=np.uint8)
    cols[idx, idx >> 3] = (0x80 >> (idx & 7)).astype(np.uint8)
    covering: list[int | None] = [None] * n
    exponent = None
    seen_states = set()
    limit = (n - 1) ** 2 + 1
    m = 0
    while m < limit:
        m += 1
        per_block = np.zeros((n >> 1, cols.shape[1]), dtype=np.uint8)
        per_block[blocks] = np.bitwise_or.reduceat(cols[order], starts, axis=0)
        cols = np.repeat(per_block, 2, axis=0)
        full = np.unpackbits(np.bitwise_and.reduce(cols, axis=0), count=n).astype(bool)
        for v in np.flatnonzero(full):
            if covering[v] is None:
                covering[v] = m
        if full.all():
            exponent = m
            break
        state = cols.tobytes()
        if state in seen_states:
            break
        seen_states.add(state)
    return ConnectivityReport(strong, exponent, covering)


def automaton_export(graph: TransferGraph, labelled: bool = True, name: str = "transfer") -> str:
    """DOT text; each edge carries its source's branch symbol when ``labelled``."""
    lines = [f"digraph {name} {{"]
    for k in range(graph.size):
        lines.append(f'  "{graph.label(k)}" [branch={graph.branch(k)}];')
    for k, (a, b) in enumerate(graph.successors):
        for t in (a, b):
            attr = f' [label="{graph.branch(k)}"]' if labelled else ""
            lines.append(f'  "{graph.label(k)}" -> "{graph.label(t)}"{attr};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _samples(interval: IntervalId, sample_depth: int):
    if sample_depth <= interval.depth:
        raise ValueError("sample_depth must exceed the interval depth")
    shift = sample_depth - interval.depth
    base = interval.index << shift
    for k in range(base, base + (1 << shift)):
        yield Dyadic._raw(k, sample_depth).canonical()


@dataclass
class SpanReport:
    interval: IntervalId
    sample_depth: int
    minimum: Dyadic
    maximum: Dyadic
    argmin: Dyadic
    argmax: Dyadic
    points: int

    @property
    def span(self) -> Fraction:
        return self.maximum.as_fraction() - self.minimum.as_fraction()


def span_measurement(interval: IntervalId, q: int = 3, sample_depth: int | None = None) -> SpanReport:
    """Exact extrema of g over the grid of ``interval`` at ``sample_depth``.

    The grid is every point of depth <= ``sample_depth`` in ``[lo, hi)``;
    ties resolve to the smallest x.
    """
    check_q(q)
    if sample_depth is None:
        sample_depth = interval.depth + 12
    lo = hi = None
    count = 0
    for x in _samples(interval, sample_depth):
        y = g(x, q)
        count += 1
        if lo is None or y < lo[1]:
            lo = (x, y)
        if hi is None or y > hi[1]:
            hi = (x, y)
    return SpanReport(interval, sample_depth, lo[1], hi[1], lo[0], hi[0], count)


@dataclass
class SlopeReport:
    interval: IntervalId
    sample_depth: int
    anchor: Dyadic
    ratios: list[tuple[Dyadic, Fraction]]
    three_halves: list[Dyadic]

    def distribution(self) -> Counter:
        return Counter(r for _, r in self.ratios)


def slope_pattern_report(interval: IntervalId, sample_depth: int | None = None) -> SlopeReport:
    """Quotients of g (q = 3) against the interval's minimum point.

    Every sampled ``x`` other than the argmin gets
    ``(g(x) - g(x0)) / (x - x0)``; points where this is exactly 3/2 are
    listed separately.
    """
    span = span_measurement(interval, 3, sample_depth)
    x0 = span.argmin
    y0 = span.minimum
    ratios = []
    for x in _samples(interval, span.sample_depth):
        if x == x0:
            continue
        ratios.append((x, exact_quotient((g(x), y0), (x, x0))))
    flagged = [x for x, r in ratios if r == Fraction(3, 2)]
    return SlopeReport(interval, span.sample_depth, x0, ratios, flagged)
