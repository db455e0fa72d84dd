"""Command-line front end: parse set files, dispatch operations, emit reports.

Exit codes: 0 success, 1 a checker reported a counterexample verdict, 2 input
error (malformed JSON, bad flags, resolution cap exceeded).  All output is
deterministic for fixed (argv, seed, input files): JSON is emitted with sorted
keys and rationals as "p/q" strings, never floats.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from math import lcm

from . import transport
from .corpus import DEFAULT_SEED
from .grids import volume, iterated_sum, minkowski_sum_auto, common_resolution
from .hulls import hull_of, hull_volume, hull_ratio, grid_corners
from .positioning import position, verify_certificate
from .rationals import format_rational, parse_rational, parse_vector
from .setio import (InputFormatError, dump_affine_map, dump_certificate, dump_grid,
                    dump_plan, dump_polytope, load_polytope, load_set_definition,
                    read_json)
from .theorems import SWEEP_CHECKERS, SharpFamily, delta_t, sharp_family_exact, sweep
from .verdicts import VerdictReport

DEFAULT_MAX_RESOLUTION = 4096


def _max_cells() -> int:
    raw = os.environ.get("SUMSETLAB_MAX_CELLS")
    if raw is None:
        return 5_000_000
    try:
        return int(raw)
    except ValueError:
        raise InputFormatError(f"SUMSETLAB_MAX_CELLS={raw!r} is not an integer") from None


def _emit(args, payload) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load_grid_file(path: str, args):
    grid = load_set_definition(read_json(path)).grid_only()
    if grid.q > args.max_resolution:
        raise InputFormatError(
            f"{path}: resolution q={grid.q} exceeds the cap of {args.max_resolution}")
    return grid


def _check_resolution(q: int, args) -> None:
    if q > args.max_resolution:
        raise InputFormatError(
            f"working resolution {q} exceeds the cap of {args.max_resolution} "
            "(raise --max-resolution to allow it)")


def _check_workspace(a, b) -> None:
    cap = _max_cells()
    if a.cell_count * b.cell_count > cap:
        raise InputFormatError(
            f"anchor-pair working set {a.cell_count * b.cell_count} exceeds "
            f"SUMSETLAB_MAX_CELLS={cap}")


def _cmd_sum(args) -> int:
    a = _load_grid_file(args.a, args)
    b = _load_grid_file(args.b, args)
    a, b = common_resolution(a, b)
    _check_resolution(a.q, args)
    _check_workspace(a, b)
    out = minkowski_sum_auto(a, b, max_workspace=_max_cells())
    _emit(args, {"set": dump_grid(out), "volume": format_rational(volume(out))})
    return 0


def _cmd_isum(args) -> int:
    a = _load_grid_file(args.a, args)
    _check_workspace(a, a)
    out = iterated_sum(a, args.k)
    _emit(args, {"set": dump_grid(out), "volume": format_rational(volume(out))})
    return 0


def _cmd_delta(args) -> int:
    a = _load_grid_file(args.a, args)
    b = _load_grid_file(args.b, args)
    t = parse_rational(args.t)
    _check_resolution(lcm(a.q, b.q) * t.denominator, args)
    _check_workspace(a, b)
    d = delta_t(a, b, t)
    report = VerdictReport(
        kind="delta",
        inputs_digest="-",
        measured={"delta": d, "volume": volume(a), "threshold": t**a.dim},
        bound=Fraction(0),
        holds=d >= 0,
        tight=d == 0,
    )
    _emit(args, report.to_json_dict())
    return 0 if report.holds else 1


def _cmd_hull(args) -> int:
    sd = load_set_definition(read_json(args.a))
    pts = list(sd.points)
    if not sd.grid.is_empty:
        pts.extend(grid_corners(sd.grid))
    if not pts:
        raise InputFormatError(f"{args.a}: set definition is empty")
    poly = hull_of(pts, dim=sd.grid.dim)
    vol = hull_volume(poly)
    out = {"polytope": dump_polytope(poly), "volume": format_rational(vol)}
    if not sd.grid.is_empty and volume(sd.grid) > 0:
        out["ratio"] = format_rational(hull_ratio(sd.grid, sd.points))
    _emit(args, out)
    return 0


def _cmd_position(args) -> int:
    x = load_polytope(read_json(args.x))
    y = load_polytope(read_json(args.y))
    amap, translation, cert = position(x, y)
    report = verify_certificate(cert)
    _emit(args, {
        "map": dump_affine_map(amap),
        "translation": [format_rational(c) for c in translation],
        "certificate": dump_certificate(cert),
        "verdict": report.to_json_dict(),
    })
    return 0 if report.holds else 1


def _cmd_transport(args) -> int:
    a = _load_grid_file(args.a, args)
    b = _load_grid_file(args.b, args)
    a, b = common_resolution(a, b)
    t = parse_rational(args.t)
    da = transport.decompose(a, args.axis)
    db = transport.decompose(b, args.axis)
    plan = transport.optimal_transport(da.marginal, db.marginal)
    report = transport.rho_t_check(da, db, plan, t)
    _emit(args, {"plan": dump_plan(plan), "density_check": report.to_json_dict()})
    return 0 if report.holds else 1


def _cmd_check(args) -> int:
    options = {}
    if args.t is not None:
        options["t"] = parse_rational(args.t)
    if args.k is not None:
        options["k"] = args.k
    records = sweep(args.name, args.count, args.seed, **options)
    violations = [r["instance"] for r in records if not r["holds"]]
    _emit(args, {
        "checker": args.name,
        "count": args.count,
        "seed": args.seed,
        "holds_all": not violations,
        "violations": violations,
    })
    return 1 if violations else 0


def _cmd_sharp_family(args) -> int:
    v = parse_vector(args.v.split(","))
    if args.family == "two-set":
        if args.t is None:
            raise InputFormatError("two-set family needs -t")
        fam = SharpFamily(dim=args.d, v=v, t=parse_rational(args.t))
    else:
        if args.k is None:
            raise InputFormatError("iterated family needs -k")
        fam = SharpFamily(dim=args.d, v=v, k=args.k)
    grid_q = [int(x) for x in args.grid_q.split(",")] if args.grid_q else []
    report = sharp_family_exact(fam, grid_q=grid_q)
    _emit(args, report.to_json_dict())
    return 0 if report.holds else 1


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return format_rational(value)
    return str(value)


def _cmd_sweep(args) -> int:
    options = {}
    if args.t is not None:
        options["t"] = parse_rational(args.t)
    if args.k is not None:
        options["k"] = args.k
    records = sweep(args.checker, args.count, args.seed, **options)
    columns = ["seed", "instance", "d", "q", "t_or_k", "primary_measure",
               "threshold", "hull_ratio", "holds", "tight"]
    if args.format == "json":
        payload = [{c: _format_cell(r.get(c)) for c in columns} for r in records]
        _emit(args, payload)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for r in records:
            writer.writerow([_format_cell(r.get(c)) for c in columns])
        _emit(args, buf.getvalue())
    return 1 if any(not r["holds"] for r in records) else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumsetlab",
        description="Exact sumset, hull, positioning, and transport toolkit")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help=f"corpus seed (default {DEFAULT_SEED:#x})")
    parser.add_argument("--max-resolution", type=int, default=DEFAULT_MAX_RESOLUTION,
                        help="cap on the working grid resolution denominator")
    parser.add_argument("-o", "--output", help="write the report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sum", help="Minkowski sum of two set files")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(fn=_cmd_sum)

    p = sub.add_parser("isum", help="k-fold iterated sum of a set file")
    p.add_argument("a")
    p.add_argument("-k", type=int, required=True)
    p.set_defaults(fn=_cmd_isum)

    p = sub.add_parser("delta", help="volume deficit of tA + (1-t)B")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("-t", required=True, help="rational t, e.g. 1/2")
    p.set_defaults(fn=_cmd_delta)

    p = sub.add_parser("hull", help="convex hull, volume, and hull ratio")
    p.add_argument("a")
    p.set_defaults(fn=_cmd_hull)

    p = sub.add_parser("position", help="normalize two polytope files")
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(fn=_cmd_position)

    p = sub.add_parser("transport", help="fiber transport between two set files")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("-t", required=True)
    p.add_argument("--axis", type=int, default=1, help="slicing axis, 1-based")
    p.set_defaults(fn=_cmd_transport)

    p = sub.add_parser("check", help="run a named checker over a seeded corpus")
    p.add_argument("name", choices=sorted(SWEEP_CHECKERS))
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("-t", help="rational t for checkers that take one")
    p.add_argument("-k", type=int, help="k for checkers that take one")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("sharp-family", help="evaluate a sharp threshold witness")
    p.add_argument("family", choices=["two-set", "iterated"])
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-t", help="rational t for the two-set family")
    p.add_argument("-k", type=int, help="k for the iterated family")
    p.add_argument("-v", required=True, help="far translate, e.g. 8,8")
    p.add_argument("--grid-q", help="comma list of resolutions to cross-check")
    p.set_defaults(fn=_cmd_sharp_family)

    p = sub.add_parser("sweep", help="stream checker records as CSV or JSON")
    p.add_argument("--checker", required=True, choices=sorted(SWEEP_CHECKERS))
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("-t")
    p.add_argument("-k", type=int)
    p.set_defaults(fn=_cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (InputFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
