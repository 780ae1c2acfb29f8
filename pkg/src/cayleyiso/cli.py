"""Command-line front end.

Subcommands: growth, ball, boundary, depth, varopoulos, separation,
counterexample {stats|find|torus}, ringlike {check|cover}, sweep ratio.

Exit codes: 0 when every asserted claim holds, 2 when a checked mathematical
claim fails (the report is still emitted), 1 for usage, input, and resource
errors. JSON output carries numbers only as exact integers or rational
strings "p/q"; CSV is available for growth tables and parameter sweeps. The
ISO_BUDGET environment variable overrides the BFS vertex budget; the
--budget flag overrides both.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from typing import Optional

from . import counterexample, isoperimetry, ringlike
from .groups import DEFAULT_BUDGET, BudgetExceeded, ball, classify_growth, parse_group

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATION = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits with code 2 on usage errors; this CLI reserves 2 for
    claim violations, so usage errors are remapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _jsonify(obj):
    """Restrict payloads to ints, bools, strings, rationals, lists, dicts.

    Fractions become "p/q" strings; floats are rejected outright so no
    inexact number can reach persisted output.
    """
    if isinstance(obj, bool) or isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, float):
        raise TypeError(f"refusing to serialize a float: {obj!r}")
    if isinstance(obj, str) or obj is None:
        return obj
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(x) for x in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__} value {obj!r}")


def _write_output(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload: dict, out: Optional[str]) -> None:
    _write_output(json.dumps(_jsonify(payload), indent=2) + "\n", out)


def _emit_csv(header: list, rows: list, out: Optional[str]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_jsonify(cell) for cell in row])
    _write_output(buf.getvalue(), out)


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"expected a rational number like 1/2 or 0.5, got {text!r}")


def _resolve_budget(args) -> int:
    if getattr(args, "budget", None) is not None:
        return args.budget
    env = os.environ.get("ISO_BUDGET")
    if env is not None:
        try:
            value = int(env)
            if value < 1:
                raise ValueError
        except ValueError:
            raise ValueError(f"ISO_BUDGET must be a positive integer, got {env!r}")
        return value
    return DEFAULT_BUDGET


def _resolve_set(args, budget: int) -> isoperimetry.VertexSet:
    """Load --set PATH, or grow --random SIZE on --group with --seed."""
    if args.set is not None:
        A = isoperimetry.load_set(args.set)
        if args.group is not None and parse_group(args.group).family != A.host.family:
            raise ValueError(
                f"--group {args.group!r} does not match set file group "
                f"{A.host.family!r}"
            )
        return A
    if args.random is not None:
        if args.group is None:
            raise ValueError("--random requires --group")
        if args.random > budget:
            raise BudgetExceeded(budget, args.random)
        g = parse_group(args.group)
        return isoperimetry.random_connected_set(g, args.random, seed=args.seed)
    raise ValueError("provide a set via --set PATH or --random SIZE")


def _add_set_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--group", help="group grammar string, e.g. z^2 or cyl:3")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--set", help="path to a JSON set file")
    src.add_argument("--random", type=int, metavar="SIZE",
                     help="grow a random connected set of SIZE vertices")
    p.add_argument("--seed", type=int, default=0,
                   help="PRNG seed for --random (default 0)")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="write output to this path instead of stdout")
    p.add_argument("--budget", type=int,
                   help=f"BFS vertex budget (default {DEFAULT_BUDGET}; "
                        "env ISO_BUDGET also honored)")


def _cmd_growth(args, budget):
    g = parse_group(args.group)
    report = classify_growth(g, args.max_radius, budget=budget)
    if args.format == "csv":
        rows = list(enumerate(report.ball_sizes))
        return ("csv", ["r", "ballSize"], rows), []
    return ("json", report.to_dict()), []


def _cmd_ball(args, budget):
    g = parse_group(args.group)
    vertices = ball(g, g.identity(), args.radius, budget=budget)
    A = isoperimetry.VertexSet(g, vertices)
    if args.emit_set:
        isoperimetry.save_set(A, args.emit_set)
    payload = {"group": g.family, "radius": args.radius, "size": len(A)}
    return ("json", payload), []


def _cmd_boundary(args, budget):
    A = _resolve_set(args, budget)
    B = isoperimetry.boundary(A)
    if args.emit_set:
        isoperimetry.save_set(B, args.emit_set)
    payload = {
        "group": A.host.family,
        "sizeA": len(A),
        "boundarySize": len(B),
    }
    return ("json", payload), []


def _cmd_depth(args, budget):
    A = _resolve_set(args, budget)
    payload = {
        "group": A.host.family,
        "sizeA": len(A),
        "depth": isoperimetry.depth(A),
    }
    return ("json", payload), []


def _cmd_varopoulos(args, budget):
    A = _resolve_set(args, budget)
    report = isoperimetry.varopoulos_check(A, budget=budget)
    payload = {"group": A.host.family, "sizeA": len(A)}
    payload.update(report.to_dict())
    violations = [] if report.holds else ["|A| <= 2m|boundary(A)|"]
    return ("json", payload), violations


def _cmd_separation(args, budget):
    A = _resolve_set(args, budget)
    report = isoperimetry.classify_separation(A, window=args.window)
    return ("json", report.to_dict()), report.violations()


def _cmd_counterexample_stats(args, budget):
    params = counterexample.GridParams(args.i, args.k)
    st = counterexample.stats(params, budget=budget)
    if args.emit_set:
        isoperimetry.save_set(counterexample.build(params, budget=budget),
                              args.emit_set)
    violations = [] if st.closedFormsMatch else ["closed forms match enumeration"]
    return ("json", st.to_dict()), violations


def _cmd_counterexample_find(args, budget):
    target = _parse_fraction(args.c)
    params, st = counterexample.find_params(target, cap=args.cap, budget=budget)
    if args.emit_set:
        isoperimetry.save_set(counterexample.build(params, budget=budget),
                              args.emit_set)
    payload = {"target": target}
    payload.update(st.to_dict())
    violations = [] if st.closedFormsMatch else ["closed forms match enumeration"]
    if not st.ratio < target:
        violations.append("ratio < target")
    return ("json", payload), violations


def _cmd_counterexample_torus(args, budget):
    params = counterexample.GridParams(args.i, args.k)
    embedding = counterexample.embed_torus(params, budget=budget)
    if args.emit_set:
        isoperimetry.save_set(embedding.vertex_set, args.emit_set)
    report = embedding.report
    violations = []
    if not report.preserved:
        violations.append("embedding preserves (|A|, |boundary|, depth)")
    if not report.halfVolumeHolds:
        violations.append("2|A| <= n^2")
    return ("json", report.to_dict()), violations


def _cmd_ringlike_check(args, budget):
    host = parse_group(args.group)
    system = ringlike.cyclic_system(host, window=args.window)
    return ("json", system.to_dict()), system.violations()


def _cmd_ringlike_cover(args, budget):
    A = _resolve_set(args, budget)
    host = A.host
    system = ringlike.cyclic_system(host, window=args.window)
    cover = ringlike.interval_cover(system, A)
    payload = system.to_dict()
    payload.update(cover.to_dict())
    violations = system.violations()
    if not cover.holds:
        violations.append("|Q\\A| <= 2s^2t^2k + 2stk")
    return ("json", payload), violations


def _cmd_sweep_ratio(args, budget):
    if args.diag is not None:
        try:
            diag = sorted({int(x) for x in args.diag.split(",") if x.strip()})
        except ValueError:
            raise ValueError(f"--diag expects comma-separated integers, got {args.diag!r}")
        pairs = [(j, j) for j in diag]
    elif args.imax is not None and args.kmax is not None:
        pairs = [(i, k) for i in range(2, args.imax + 1) for k in range(2, args.kmax + 1)]
    else:
        raise ValueError("provide --imax and --kmax, or --diag LIST")
    rows = []
    violations = []
    for i, k in sorted(pairs):
        st = counterexample.stats(counterexample.GridParams(i, k), budget=budget)
        if not st.closedFormsMatch:
            violations.append(f"closed forms match enumeration at i={i}, k={k}")
        rows.append([i, k, st.sizeA, st.boundarySize, st.depthOracle, st.ratio])
    header = ["i", "k", "sizeA", "boundarySize", "depthOracle", "ratio"]
    if args.format == "json":
        payload = {
            "rows": [dict(zip(header, row)) for row in rows],
        }
        return ("json", payload), violations
    return ("csv", header, rows), violations


def build_parser() -> _Parser:
    parser = _Parser(prog="cayleyiso",
                     description="Isoperimetry on implicit Cayley graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("growth", help="ball sizes and growth dichotomy branch")
    p.add_argument("--group", required=True)
    p.add_argument("--max-radius", type=int, default=20)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    _add_common(p)
    p.set_defaults(handler=_cmd_growth)

    p = sub.add_parser("ball", help="ball around the identity")
    p.add_argument("--group", required=True)
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--emit-set", metavar="PATH",
                   help="also write the ball as a JSON set file")
    _add_common(p)
    p.set_defaults(handler=_cmd_ball)

    for name, handler, description in [
        ("boundary", _cmd_boundary, "exterior vertex boundary of a set"),
        ("depth", _cmd_depth, "max distance from a member to the complement"),
        ("varopoulos", _cmd_varopoulos, "|A| <= 2m|boundary(A)| check"),
        ("separation", _cmd_separation, "small-set / ring-like classification"),
    ]:
        p = sub.add_parser(name, help=description)
        _add_set_source(p)
        if name == "boundary":
            p.add_argument("--emit-set", metavar="PATH",
                           help="also write the boundary as a JSON set file")
        if name == "separation":
            p.add_argument("--window", type=int, default=50,
                           help="block window for delegated cylinder checks")
        _add_common(p)
        p.set_defaults(handler=handler)

    p = sub.add_parser("counterexample",
                       help="perforated-grid family operations")
    csub = p.add_subparsers(dest="subcommand", required=True)

    q = csub.add_parser("stats", help="exact statistics of A(i,k)")
    q.add_argument("--i", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--emit-set", metavar="PATH")
    _add_common(q)
    q.set_defaults(handler=_cmd_counterexample_stats)

    q = csub.add_parser("find", help="first diagonal member with ratio < c")
    q.add_argument("--c", required=True, help="target ratio, e.g. 0.5 or 1/2")
    q.add_argument("--cap", type=int, default=2**20,
                   help="hard cap on the diagonal index i = k")
    q.add_argument("--emit-set", metavar="PATH")
    _add_common(q)
    q.set_defaults(handler=_cmd_counterexample_find)

    q = csub.add_parser("torus", help="embed A(i,k) into the torus of side 3ki+1")
    q.add_argument("--i", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--emit-set", metavar="PATH",
                   help="write the embedded torus set as a JSON set file")
    _add_common(q)
    q.set_defaults(handler=_cmd_counterexample_torus)

    p = sub.add_parser("ringlike", help="cylinder block-system checks")
    rsub = p.add_subparsers(dest="subcommand", required=True)

    q = rsub.add_parser("check", help="verify block system properties on a window")
    q.add_argument("--group", required=True)
    q.add_argument("--window", type=int, default=50)
    _add_common(q)
    q.set_defaults(handler=_cmd_ringlike_check)

    q = rsub.add_parser("cover", help="interval cover slack bound for a set")
    _add_set_source(q)
    q.add_argument("--window", type=int, default=50)
    _add_common(q)
    q.set_defaults(handler=_cmd_ringlike_cover)

    p = sub.add_parser("sweep", help="parameter sweeps")
    ssub = p.add_subparsers(dest="subcommand", required=True)

    q = ssub.add_parser("ratio", help="ratio table over (i,k) parameters")
    q.add_argument("--imax", type=int)
    q.add_argument("--kmax", type=int)
    q.add_argument("--diag", help="comma-separated diagonal values, e.g. 4,8,16")
    q.add_argument("--format", choices=["csv", "json"], default="csv")
    _add_common(q)
    q.set_defaults(handler=_cmd_sweep_ratio)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        budget = _resolve_budget(args)
        result, violations = args.handler(args, budget)
    except (ValueError, OSError, json.JSONDecodeError, BudgetExceeded,
            counterexample.SearchCapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if result[0] == "csv":
        _emit_csv(result[1], result[2], args.out)
    else:
        _emit_json(result[1], args.out)
    if violations:
        for name in violations:
            print(f"claim violated: {name}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
