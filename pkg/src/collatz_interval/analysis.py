"""Claim-by-claim verification harness and figure-data helpers."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np
from scipy.spatial.distance import directed_hausdorff

from .coding import decode_h, encode_h
from .conjugate import (
    TWO_CYCLE,
    bernoulli_B,
    below_diagonal_scan,
    cycle_expansion_product,
    g,
    g2_symbolic,
    g_orbit,
    left_limit_probe,
    quotient_scan,
)
from .core import Verdict, bernoulli_f, check_q, orbit, step_T
from .dyadic import HALF, ONE, Dyadic, to_decimal
from .intervals import (
    IntervalId,
    connectivity_report,
    image_intervals,
    interval_of,
    span_measurement,
    transfer_graph,
)

__all__ = [
    "ScaleBounds",
    "SCALES",
    "CheckResult",
    "VerificationReport",
    "verify_all",
    "PointSet",
    "sample_window",
    "window_extract",
    "window_compare",
    "diagonal_classification",
    "DEPTH2_RELATIONS",
]

PASS, FAIL, SKIPPED = "PASS", "FAIL", "SKIPPED"

DEPTH2_RELATIONS = {
    "00": ("00", "01"),
    "01": ("10", "11"),
    "10": ("00", "01"),
    "11": ("10", "11"),
}


@dataclass(frozen=True)
class ScaleBounds:
    """Sizes for each check; a zero disables the check."""

    coding_bits: int = 0
    commutation_max: int = 0
    symbolic_max: int = 0
    bernoulli_max: int = 0
    quotient_depth: int = 0
    diagonal_depth: int = 0
    graph_depth: int = 0
    residue_depth: int = 0
    residue_max: int = 0
    span_depth: int = 0
    probe_k: int = 0
    orbit_max: int = 0


SCALES = {
    "small": ScaleBounds(
        coding_bits=14,
        commutation_max=20_000,
        symbolic_max=20_000,
        bernoulli_max=20_000,
        quotient_depth=10,
        diagonal_depth=12,
        graph_depth=8,
        residue_depth=8,
        residue_max=10_000,
        span_depth=12,
        probe_k=16,
        orbit_max=2_000,
    ),
    "full": ScaleBounds(
        coding_bits=20,
        commutation_max=10**6,
        symbolic_max=10**6,
        bernoulli_max=10**6,
        quotient_depth=12,
        diagonal_depth=14,
        graph_depth=10,
        residue_depth=8,
        residue_max=10**5,
        span_depth=16,
        probe_k=24,
        orbit_max=10**5,
    ),
    "none": ScaleBounds(),
}


@dataclass
class CheckResult:
    name: str
    status: str
    detail: str
    claim: str
    counterexample: str | None = None

    def line(self) -> str:
        out = f"{self.name} {self.status} claim={self.claim} {self.detail}"
        if self.counterexample:
            out += f" counterexample={self.counterexample}"
        return out


@dataclass
class VerificationReport:
    q: int
    scales: ScaleBounds
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def by_name(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_text(self) -> str:
        lines = [f"# verification q={self.q}"]
        lines += [c.line() for c in self.checks]
        lines.append(f"overall {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        data = {
            "q": self.q,
            "scales": asdict(self.scales),
            "checks": [asdict(c) for c in self.checks],
            "passed": self.passed,
        }
        return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _fmt(x: Dyadic) -> str:
    return to_decimal(x)


def _check_coding(q, s):
    bits = s.coding_bits
    if not bits:
        return CheckResult("coding_roundtrip", SKIPPED, "coding_bits=0", "coding-bijection")
    if encode_h(11) != Dyadic(13, 4):
        return CheckResult("coding_roundtrip", FAIL, "worked example", "coding-bijection",
                           f"h(11)={encode_h(11)}")
    for m in range(1 << bits):
        x = encode_h(m)
        if decode_h(x) != m:
            return CheckResult("coding_roundtrip", FAIL, "decode(encode(m))", "coding-bijection", f"m={m}")
        if (m % 2 == 0) != (x < HALF):
            return CheckResult("coding_roundtrip", FAIL, "parity split", "coding-bijection", f"m={m}")
    for depth in range(1, bits + 1):
        for num in range(1, 1 << depth, 2):
            x = Dyadic._raw(num, depth)
            y = encode_h(decode_h(x))
            if y.num != num or y.depth != depth:
                return CheckResult("coding_roundtrip", FAIL, "encode(decode(x))", "coding-bijection", str(x))
    return CheckResult("coding_roundtrip", PASS,
                       f"m<2^{bits} and canonical depth<={bits} round trip; h(11)=13/2^4",
                       "coding-bijection")


def _check_commutation(q, s):
    top = s.commutation_max
    if not top:
        return CheckResult("conjugacy_commutation", SKIPPED, "commutation_max=0", "h-T-equals-g-h")
    for m in range(1, top + 1):
        if encode_h(step_T(m, q)) != g(encode_h(m), q):
            return CheckResult("conjugacy_commutation", FAIL, f"m<={top}", "h-T-equals-g-h", f"m={m}")
    return CheckResult("conjugacy_commutation", PASS, f"h(T(m))=g(h(m)) for 1<=m<={top}", "h-T-equals-g-h")


def _check_symbolic(q, s):
    top = s.symbolic_max
    if q != 3:
        return CheckResult("symbolic_equivalence", SKIPPED, "digit formula exists for q=3 only",
                           "g2-digit-formula")
    if not top:
        return CheckResult("symbolic_equivalence", SKIPPED, "symbolic_max=0", "g2-digit-formula")
    if g2_symbolic(Dyadic(3, 2)) != Dyadic(5, 3):
        return CheckResult("symbolic_equivalence", FAIL, "worked example", "g2-digit-formula",
                           "g2(0.11)!=0.101")
    for m in range(1, top, 2):
        x = encode_h(m)
        if g2_symbolic(x) != encode_h(step_T(m, 3)):
            return CheckResult("symbolic_equivalence", FAIL, f"odd m<{top}", "g2-digit-formula", f"m={m}")
    return CheckResult("symbolic_equivalence", PASS,
                       f"digit route equals conjugation for odd m<{top}; g2(0.11b)=0.101b",
                       "g2-digit-formula")


def _check_bernoulli(q, s):
    top = s.bernoulli_max
    if not top:
        return CheckResult("bernoulli_commutation", SKIPPED, "bernoulli_max=0", "h-f-equals-B-h")
    for m in range(1, top + 1):
        if encode_h(bernoulli_f(m)) != bernoulli_B(encode_h(m)):
            return CheckResult("bernoulli_commutation", FAIL, f"m<={top}", "h-f-equals-B-h", f"m={m}")
    return CheckResult("bernoulli_commutation", PASS, f"h(f(m))=B(h(m)) for 1<=m<={top}", "h-f-equals-B-h")


def _check_quotients(q, s):
    depth = s.quotient_depth
    names = ("quotient_g1_branch", "quotient_bound", "cycle_product")
    claims = ("g1-slope-two", "expansion-at-least-two", "two-cycle-expansion-at-least-four")
    if not depth:
        return [CheckResult(n, SKIPPED, "quotient_depth=0", c) for n, c in zip(names, claims)]
    if q != 3:
        rep = quotient_scan(max(depth, 2), q)
        return [CheckResult(n, SKIPPED, f"asserted for q=3 only; observed min {rep.minimum}", c)
                for n, c in zip(names, claims)]
    out = []
    worst = None
    g1_ok = True
    for d in range(2, depth + 1):
        rep = quotient_scan(d, 3)
        g1_ok &= rep.branch_minimum["g1"] == 2 and rep.branch_maximum["g1"] == 2
        if worst is None or rep.minimum < worst.minimum:
            worst = rep
    out.append(CheckResult(names[0], PASS if g1_ok else FAIL,
                           f"g1 quotients all exactly 2 at depths 2..{depth}", claims[0]))
    a, b = worst.argmin
    status = PASS if worst.minimum >= 2 else FAIL
    out.append(CheckResult(
        names[1], status,
        f"min same-branch |quotient| over depths 2..{depth} is {worst.minimum}",
        claims[1],
        None if status == PASS else f"x=({_fmt(a)},{_fmt(b)}) depth={worst.depth} quotient={worst.minimum}",
    ))
    pdepth = max(depth, 4)
    prod = cycle_expansion_product(pdepth)
    out.append(CheckResult(names[2], PASS if abs(prod) >= 4 else FAIL,
                           f"product at (1/2,1/4) depth {pdepth} = {prod}", claims[2]))
    return out


def _check_diagonal(q, s):
    depth = s.diagonal_depth
    if not depth:
        return CheckResult("below_diagonal", SKIPPED, "diagonal_depth=0", "g2-below-diagonal")
    rep = below_diagonal_scan(depth, q)
    counts = f"above={rep.above} on={rep.on} below={rep.below} depth<={depth}"
    if q == 3:
        if rep.above or rep.on:
            x, y = rep.violations[0]
            return CheckResult("below_diagonal", FAIL, counts, "g2-below-diagonal",
                               f"g({_fmt(x)})={_fmt(y)}")
        return CheckResult("below_diagonal", PASS, counts, "g2-below-diagonal")
    if rep.above:
        return CheckResult("below_diagonal", PASS, f"above_diagonal: present (expected) {counts}",
                           "qx+1-above-diagonal")
    return CheckResult("below_diagonal", FAIL, f"above_diagonal: absent {counts}", "qx+1-above-diagonal")


def _check_transfer(q, s):
    depth = s.graph_depth
    if not depth:
        return CheckResult("transfer_structure", SKIPPED, "graph_depth=0", "interval-doubling")
    if q == 3 and depth >= 2 and transfer_graph(2, 3).relations() != DEPTH2_RELATIONS:
        return CheckResult("transfer_structure", FAIL, "depth-2 relations", "interval-doubling",
                           str(transfer_graph(2, 3).relations()))
    for d in range(1, depth + 1):
        graph = transfer_graph(d, q)
        rows = graph.matrix().sum(axis=1)
        if not (rows == 2).all():
            return CheckResult("transfer_structure", FAIL, "row sums", "interval-doubling", f"depth={d}")
        for k, (a, b) in enumerate(graph.successors):
            if a >> 1 != b >> 1 or a == b:
                return CheckResult("transfer_structure", FAIL, "sibling successors", "interval-doubling",
                                   f"depth={d} node={graph.label(k)}")
    extra = "; depth-2 relations match 00->00,01 01->10,11 10->00,01 11->10,11" if q == 3 else ""
    return CheckResult("transfer_structure", PASS,
                       f"depths 1..{depth}: two sibling successors per node, image length 2|I|{extra}",
                       "interval-doubling")


def _check_residues(q, s):
    depth, top = s.residue_depth, s.residue_max
    if not (depth and top):
        return CheckResult("residue_soundness", SKIPPED, "residue bounds zero", "residue-classes")
    succ = {}
    for m in range(1, top + 1):
        src = interval_of(encode_h(m), depth)
        if src not in succ:
            succ[src] = image_intervals(src, q)
        dst = interval_of(encode_h(step_T(m, q)), depth)
        if dst not in succ[src]:
            return CheckResult("residue_soundness", FAIL, f"depth {depth}", "residue-classes", f"m={m}")
    return CheckResult("residue_soundness", PASS,
                       f"cell of h(T(m)) among predicted successors, m<={top}, depth {depth}",
                       "residue-classes")


def _check_connectivity(q, s):
    depth = s.graph_depth
    if not depth:
        return CheckResult("connectivity", SKIPPED, "graph_depth=0", "intervals-cover-unit")
    exps = []
    for d in range(1, depth + 1):
        rep = connectivity_report(transfer_graph(d, q))
        if not rep.strongly_connected or rep.primitivity_exponent is None:
            return CheckResult("connectivity", FAIL, "strong connectivity", "intervals-cover-unit",
                               f"depth={d}")
        exps.append(rep.primitivity_exponent)
    return CheckResult("connectivity", PASS,
                       f"strongly connected at depths 1..{depth}; primitivity exponents {exps}",
                       "intervals-cover-unit")


def _check_span(q, s):
    top = s.span_depth
    if q != 3:
        return CheckResult("span_convergence", SKIPPED, "measured for q=3 only", "g2-doubles-interval")
    if top < 4:
        return CheckResult("span_convergence", SKIPPED, "span_depth<4", "g2-doubles-interval")
    interval = IntervalId.from_label("10")
    target = 2 * interval.length
    prev = None
    for d in range(4, top + 1):
        span = span_measurement(interval, 3, d).span
        if prev is not None and span < prev:
            return CheckResult("span_convergence", FAIL, "monotone", "g2-doubles-interval", f"d={d}")
        if not (0 <= target - span <= Fraction(1, 1 << (d - 4))):
            return CheckResult("span_convergence", FAIL, "distance to 2|I|", "g2-doubles-interval",
                               f"d={d} span={span}")
        prev = span
    return CheckResult("span_convergence", PASS,
                       f"span on [1/2,3/4] nondecreasing to {prev} at d={top}, within 2^-(d-4) of 1/2",
                       "g2-doubles-interval")


def _check_discontinuity(q, s):
    k_max = s.probe_k
    if q != 3:
        return CheckResult("discontinuity_probe", SKIPPED, "probe defined for q=3", "g2-discontinuous")
    if k_max < 2:
        return CheckResult("discontinuity_probe", SKIPPED, "probe_k<2", "g2-discontinuous")
    x0 = Dyadic(3, 2)
    limit = Fraction(1, 4)
    value = g(x0).as_fraction()
    for k, xk, yk in left_limit_probe(x0, k_max):
        if k >= 2 and abs(yk.as_fraction() - limit) > Fraction(2, 1 << k):
            return CheckResult("discontinuity_probe", FAIL, "convergence", "g2-discontinuous",
                               f"k={k} g={_fmt(yk)}")
    jump = value - limit
    status = PASS if value == Fraction(5, 8) and jump == Fraction(3, 8) else FAIL
    return CheckResult("discontinuity_probe", status,
                       f"left approximants of 0.75 tend to 0.25, g(0.75)={_fmt(g(x0))}, jump {jump}",
                       "g2-discontinuous")


def _check_orbits(q, s):
    top = s.orbit_max
    if q != 3:
        return CheckResult("orbit_conjugacy", SKIPPED, "cycle reaching asserted for q=3", "orbits-correspond")
    if not top:
        return CheckResult("orbit_conjugacy", SKIPPED, "orbit_max=0", "orbits-correspond")
    for m in range(1, top + 1):
        a = orbit(m, 3)
        b = g_orbit(encode_h(m), 3)
        ok = (
            a.verdict is Verdict.CYCLE and set(a.cycle) == {1, 2}
            and b.verdict is Verdict.CYCLE and set(b.cycle) == set(TWO_CYCLE)
            and a.steps == b.steps and a.entry_step == b.entry_step
        )
        if not ok:
            return CheckResult("orbit_conjugacy", FAIL, f"m<={top}", "orbits-correspond", f"m={m}")
    return CheckResult("orbit_conjugacy", PASS,
                       f"orbits of m and h(m) reach (1,2) and (0.5,0.25) in equal steps, m<={top}",
                       "orbits-correspond")


_CHECKS = (
    _check_coding,
    _check_commutation,
    _check_symbolic,
    _check_bernoulli,
    _check_quotients,
    _check_diagonal,
    _check_transfer,
    _check_residues,
    _check_connectivity,
    _check_span,
    _check_discontinuity,
    _check_orbits,
)


def verify_all(q: int = 3, scales: ScaleBounds | str = "small") -> VerificationReport:
    """Run every check in a fixed order. Failures are entries, not exceptions."""
    check_q(q)
    if isinstance(scales, str):
        scales = SCALES[scales]
    report = VerificationReport(q, scales)
    for check in _CHECKS:
        result = check(q, scales)
        report.checks.extend(result if isinstance(result, list) else [result])
    return report


@dataclass
class PointSet:
    lo: Dyadic
    hi: Dyadic
    sample_depth: int
    q: int
    points: list[tuple[Dyadic, Dyadic]]

    def __len__(self) -> int:
        return len(self.points)


def _ceil_index(x: Dyadic, depth: int) -> int:
    if x.depth <= depth:
        return x.num << (depth - x.depth)
    shift = x.depth - depth
    return -(-x.num >> shift)


def sample_window(lo: Dyadic, hi: Dyadic, sample_depth: int, q: int = 3) -> PointSet:
    """``(x, g(x))`` for every grid point of depth <= ``sample_depth`` in ``[lo, hi)``."""
    check_q(q)
    if not lo < hi:
        raise ValueError("empty window")
    if hi > ONE:
        raise ValueError("window must lie in [0, 1]")
    a = _ceil_index(lo, sample_depth)
    b = _ceil_index(hi, sample_depth)
    pts = []
    for k in range(a, b):
        x = Dyadic._raw(k, sample_depth).canonical()
        pts.append((x, g(x, q)))
    return PointSet(lo, hi, sample_depth, q, pts)


def window_extract(lo: Dyadic, hi: Dyadic, sample_depth: int, q: int = 3) -> PointSet:
    """Points of the odd branch in ``[lo, hi)`` with ``1/2 <= lo``."""
    if lo < HALF:
        raise ValueError("window must start at or above 1/2")
    return sample_window(lo, hi, sample_depth, q)


def _normalized(w: PointSet) -> np.ndarray:
    xs = np.array([float(x) for x, _ in w.points])
    ys = np.array([float(y) for _, y in w.points])
    lo, width = float(w.lo), float(w.hi) - float(w.lo)
    return np.column_stack(((xs - lo) / width, (ys - ys.min()) / width))


def window_compare(w1: PointSet, w2: PointSet) -> float:
    """Symmetric Hausdorff distance between affinely normalized windows.

    Each window's x-range goes to [0, 1]; y is scaled by the same factor and
    shifted so the window's minimum sits at 0. Exploratory only.
    """
    if not len(w1) or not len(w2):
        raise ValueError("windows must be nonempty")
    a, b = _normalized(w1), _normalized(w2)
    return max(directed_hausdorff(a, b)[0], directed_hausdorff(b, a)[0])


def diagonal_classification(q: int, depth: int):
    """Counts of odd-branch grid points above, on and below ``y = x``."""
    return below_diagonal_scan(depth, q)
