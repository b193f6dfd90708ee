"""Command-line entry point.

Exit codes: 0 success, 1 failed check or non-convergent orbit, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import analysis
from .coding import decode_h, encode_h
from .conjugate import g_orbit
from .core import DEFAULT_MAGNITUDE_BOUND, DEFAULT_MAX_STEPS, OrbitRecord, Verdict, orbit
from .dyadic import ONE, Dyadic, parse_dyadic, to_decimal
from .intervals import MAX_GRAPH_DEPTH, RESIDUE_NOTE, automaton_export, connectivity_report, transfer_graph


def _natural(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a natural number: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"negative: {text!r}")
    return value


def _positive(text: str) -> int:
    value = _natural(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _q(text: str) -> int:
    value = _natural(text)
    if value < 3 or value % 2 == 0:
        raise argparse.ArgumentTypeError("q must be an odd integer >= 3")
    return value


def _dyadic(text: str) -> Dyadic:
    try:
        return parse_dyadic(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _unit_point(text: str) -> Dyadic:
    x = _dyadic(text)
    if x.is_one():
        raise argparse.ArgumentTypeError("1 codes no finite natural")
    return x


def _graph_depth(text: str) -> int:
    value = _natural(text)
    if not 1 <= value <= MAX_GRAPH_DEPTH:
        raise argparse.ArgumentTypeError(f"depth must be in 1..{MAX_GRAPH_DEPTH}")
    return value


def _render(x: Dyadic, fmt: str) -> str:
    c = x.canonical()
    if fmt == "exact":
        return str(c)
    if fmt == "decimal":
        return to_decimal(c)
    if fmt == "binary":
        return "0." + (format(c.num, f"0{c.depth}b") if c.depth else "") + "b"
    return f"{c} ({to_decimal(c)})"


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rotate(cycle: tuple, key) -> tuple:
    i = min(range(len(cycle)), key=lambda j: key(cycle[j]))
    return cycle[i:] + cycle[:i]


def _orbit_line(rec: OrbitRecord, show, key) -> str:
    if rec.verdict is Verdict.CYCLE:
        values = rec.trajectory[: rec.steps]
    else:
        values = rec.trajectory
    parts = [" ".join(show(v) for v in values)]
    if rec.checkpoints:
        parts.append(" ... " + " ".join(f"[{n}]{show(v)}" for n, v in rec.checkpoints))
    body = "".join(parts)
    if rec.verdict is Verdict.CYCLE:
        members = ",".join(show(v) for v in _rotate(rec.cycle, key))
        tail = f"cycle({members}) in {rec.steps} steps"
    elif rec.verdict is Verdict.MAGNITUDE:
        tail = f"magnitude bound exceeded at step {rec.steps}, peak {show(rec.peak)}"
    else:
        tail = f"cutoff after {rec.steps} steps, peak {show(rec.peak)}"
    return f"{body} | {tail}\n"


def cmd_encode(args) -> int:
    print(_render(encode_h(args.value), args.format))
    return 0


def cmd_decode(args) -> int:
    print(decode_h(args.value))
    return 0


def cmd_orbit(args) -> int:
    rec = orbit(args.start, args.q, args.max_steps, args.magnitude_bound)
    sys.stdout.write(_orbit_line(rec, str, lambda v: v))
    return 0 if rec.verdict is Verdict.CYCLE else 1


def cmd_g_orbit(args) -> int:
    rec = g_orbit(args.start, args.q, args.max_steps, args.max_depth)
    sys.stdout.write(_orbit_line(rec, to_decimal, decode_h))
    return 0 if rec.verdict is Verdict.CYCLE else 1


def cmd_intervals(args) -> int:
    graph = transfer_graph(args.depth, args.q)
    if args.emit == "matrix":
        rows = graph.matrix()
        _write("".join(",".join(str(v) for v in row) + "\n" for row in rows), args.out)
    elif args.emit in ("graph", "automaton"):
        _write(automaton_export(graph, labelled=args.emit == "automaton"), args.out)
    rep = connectivity_report(graph)
    covered = [t for t in rep.covering_time if t is not None]
    summary = [
        f"depth: {args.depth}",
        f"q: {args.q}",
        f"nodes: {graph.size}",
        f"strongly_connected: {str(rep.strongly_connected).lower()}",
        f"primitivity_exponent: {rep.primitivity_exponent if rep.primitivity_exponent else 'none'}",
        f"max_covering_time: {max(covered) if covered else 'none'}",
        f"note: {RESIDUE_NOTE}",
    ]
    # keep stdout parseable when the emission itself goes there
    stream = sys.stdout if args.out or not args.emit else sys.stderr
    stream.write("\n".join(summary) + "\n")
    return 0


def cmd_plot_data(args) -> int:
    lo, hi = args.window
    if not lo < hi:
        return _usage_error(args, "window must satisfy lo < hi")
    if hi > ONE:
        return _usage_error(args, "window must lie in [0, 1]")
    pts = analysis.sample_window(lo, hi, args.sample_depth, args.q)
    lines = ["x_num,x_depth,x_float,y_num,y_depth,y_float"]
    for x, y in pts.points:
        lines.append(f"{x.num},{x.depth},{float(x):.17g},{y.num},{y.depth},{float(y):.17g}")
    _write("\n".join(lines) + "\n", args.out)
    return 0


def cmd_verify(args) -> int:
    report = analysis.verify_all(args.q, args.scale)
    text = report.to_text()
    sys.stdout.write(text)
    if args.report:
        _write(text, args.report)
    if args.json:
        _write(report.to_json(), args.json)
    return 0 if report.passed else 1


def _usage_error(args, message: str) -> int:
    args._subparser.print_usage(sys.stderr)
    sys.stderr.write(f"{args._subparser.prog}: error: {message}\n")
    return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="collatz-interval",
        description="Exact bit-reversal conjugate of the qx+1 map on [0, 1].",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="natural -> coded dyadic")
    p.add_argument("value", type=_natural)
    p.add_argument("--format", choices=("both", "exact", "decimal", "binary"), default="both")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="dyadic literal (k/2^n or 0.<bits>b) -> natural")
    p.add_argument("value", type=_unit_point)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("orbit", help="orbit of a natural under the qx+1 map")
    p.add_argument("start", type=_natural)
    p.add_argument("--q", type=_q, default=3)
    p.add_argument("--max-steps", type=_positive, default=DEFAULT_MAX_STEPS)
    p.add_argument("--magnitude-bound", type=_natural, default=DEFAULT_MAGNITUDE_BOUND)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("g-orbit", help="exact orbit of a dyadic under g")
    p.add_argument("start", type=_unit_point)
    p.add_argument("--q", type=_q, default=3)
    p.add_argument("--max-steps", type=_positive, default=DEFAULT_MAX_STEPS)
    p.add_argument("--max-depth", type=_positive, default=256)
    p.set_defaults(func=cmd_g_orbit)

    p = sub.add_parser("intervals", help="transfer matrix / graph / automaton at a depth")
    p.add_argument("--depth", type=_graph_depth, default=2)
    p.add_argument("--q", type=_q, default=3)
    p.add_argument("--emit", choices=("matrix", "graph", "automaton"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_intervals)

    p = sub.add_parser("plot-data", help="CSV of (x, g(x)) on a window")
    p.add_argument("--window", nargs=2, type=_dyadic, metavar=("LO", "HI"),
                   default=[Dyadic(0, 0), ONE])
    p.add_argument("--sample-depth", type=_positive, default=10)
    p.add_argument("--q", type=_q, default=3)
    p.add_argument("--out")
    p.set_defaults(func=cmd_plot_data)

    p = sub.add_parser("verify", help="run the claim-by-claim verification")
    p.add_argument("--q", type=_q, default=3)
    p.add_argument("--scale", choices=("small", "full"), default="small")
    p.add_argument("--report", help="also write the text report here")
    p.add_argument("--json", help="write a JSON report here")
    p.set_defaults(func=cmd_verify)

    for sp in sub.choices.values():
        sp.set_defaults(_subparser=sp)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
