"""JSON wire formats for sets, polytopes, plans, and verdicts.

Rationals are always encoded as strings ``"p/q"`` in lowest terms; floats are
rejected outright.  A set definition is a union of primitives::

    { "dim": 2, "q": 2,
      "primitives": [ {"box": {"lo": ["0/1","0/1"], "hi": ["1/1","1/1"]}},
                      {"cells": [[0, 0], [3, 3]]},
                      {"point": ["5/1","5/1"]} ] }

Point primitives carry no volume and are only legal for consumers that
document support (hulls, sharp families); grid operations reject them.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import lcm
from typing import Any

from .grids import GridSet
from .hulls import Polytope
from .intervals import IntervalSet
from .positioning import AffineMap, PositioningCertificate
from .rationals import format_rational, format_vector, parse_rational, parse_vector
from .transport import TransportPlan

__all__ = [
    "SetDefinition",
    "load_set_definition",
    "load_grid",
    "dump_grid",
    "load_interval_set",
    "dump_interval_set",
    "load_polytope",
    "dump_polytope",
    "dump_plan",
    "load_plan",
    "dump_certificate",
    "dump_affine_map",
    "InputFormatError",
]


class InputFormatError(ValueError):
    """Malformed input document; the message names the offending field."""


class SetDefinition:
    """Parsed set definition: a grid part plus optional measure-zero points."""

    def __init__(self, grid: GridSet, points: list[tuple[Fraction, ...]]):
        self.grid = grid
        self.points = points

    def grid_only(self) -> GridSet:
        if self.points:
            raise InputFormatError(
                "point primitives are not supported by grid operations "
                f"({len(self.points)} present)")
        return self.grid


def _require(doc: dict, field: str, types) -> Any:
    if field not in doc:
        raise InputFormatError(f"missing field {field!r}")
    val = doc[field]
    if not isinstance(val, types):
        raise InputFormatError(f"field {field!r} has the wrong type")
    return val


def load_set_definition(doc: dict) -> SetDefinition:
    dim = _require(doc, "dim", int)
    q = _require(doc, "q", int)
    if dim < 1 or q < 1:
        raise InputFormatError("dim and q must be positive")
    prims = _require(doc, "primitives", list)
    points: list[tuple[Fraction, ...]] = []
    boxes: list[tuple[tuple[Fraction, ...], tuple[Fraction, ...]]] = []
    raw_cells: list[tuple[int, ...]] = []
    for i, prim in enumerate(prims):
        if not isinstance(prim, dict) or len(prim) != 1:
            raise InputFormatError(f"primitive #{i} must be a single-key object")
        (kind, body), = prim.items()
        try:
            if kind == "box":
                lo = parse_vector(_require(body, "lo", list))
                hi = parse_vector(_require(body, "hi", list))
                if len(lo) != dim or len(hi) != dim:
                    raise InputFormatError(f"primitive #{i}: box corner dimension != {dim}")
                if any(a >= b for a, b in zip(lo, hi)):
                    raise InputFormatError(f"primitive #{i}: box sides must have positive length")
                boxes.append((lo, hi))
            elif kind == "cells":
                for cell in body:
                    if not isinstance(cell, list) or len(cell) != dim \
                            or not all(isinstance(c, int) and not isinstance(c, bool) for c in cell):
                        raise InputFormatError(f"primitive #{i}: cells must be integer {dim}-vectors")
                    raw_cells.append(tuple(cell))
            elif kind == "point":
                pt = parse_vector(body)
                if len(pt) != dim:
                    raise InputFormatError(f"primitive #{i}: point dimension != {dim}")
                points.append(pt)
            else:
                raise InputFormatError(f"primitive #{i}: unknown kind {kind!r}")
        except ValueError as exc:
            if isinstance(exc, InputFormatError):
                raise
            raise InputFormatError(f"primitive #{i}: {exc}") from None

    qq = q
    for lo, hi in boxes:
        for x in list(lo) + list(hi):
            qq = lcm(qq, x.denominator)
    cells: set[tuple[int, ...]] = set()
    m = qq // q
    for cell in raw_cells:
        base = tuple(c * m for c in cell)
        block = [base]
        for i in range(dim):
            block = [c[:i] + (c[i] + d,) + c[i + 1:] for c in block for d in range(m)]
        cells.update(block)
    for lo, hi in boxes:
        block = [()]
        for a, b in zip(lo, hi):
            block = [c + (v,) for c in block for v in range(int(a * qq), int(b * qq))]
        cells.update(block)
    return SetDefinition(GridSet(dim, qq, cells), points)


def load_grid(doc: dict) -> GridSet:
    return load_set_definition(doc).grid_only()


def dump_grid(g: GridSet) -> dict:
    return {"dim": g.dim, "q": g.q,
            "primitives": [{"cells": [list(c) for c in sorted(g.cells)]}]}


def load_interval_set(doc: dict) -> IntervalSet:
    parts = _require(doc, "parts", list)
    out = []
    for i, part in enumerate(parts):
        if not isinstance(part, list) or len(part) != 2:
            raise InputFormatError(f"part #{i} must be a [lo, hi] pair")
        out.append((parse_rational(part[0]), parse_rational(part[1])))
    return IntervalSet(out)


def dump_interval_set(s: IntervalSet) -> dict:
    return {"parts": [[format_rational(lo), format_rational(hi)] for lo, hi in s.parts]}


def load_polytope(doc: dict) -> Polytope:
    dim = _require(doc, "dim", int)
    verts = _require(doc, "vertices", list)
    pts = []
    for i, v in enumerate(verts):
        if not isinstance(v, list) or len(v) != dim:
            raise InputFormatError(f"vertex #{i} must be a {dim}-vector")
        pts.append(parse_vector(v))
    from .hulls import hull_of

    return hull_of(pts, dim=dim)


def dump_polytope(p: Polytope) -> dict:
    return {"dim": p.dim, "vertices": [format_vector(v) for v in p.vertices]}


def dump_plan(plan: TransportPlan) -> dict:
    return {"pairs": [{"x": format_vector(x), "y": format_vector(y), "m": format_rational(m)}
                      for x, y, m in plan.pairs],
            "cost": format_rational(plan.cost)}


def load_plan(doc: dict) -> TransportPlan:
    from .transport import plan_cost

    pairs = []
    for i, rec in enumerate(_require(doc, "pairs", list)):
        try:
            pairs.append((parse_vector(rec["x"]), parse_vector(rec["y"]),
                          parse_rational(rec["m"])))
        except (KeyError, ValueError) as exc:
            raise InputFormatError(f"plan pair #{i}: {exc}") from None
    plan = TransportPlan(pairs=tuple(pairs), cost=plan_cost(pairs))
    if "cost" in doc and parse_rational(doc["cost"]) != plan.cost:
        raise InputFormatError("declared cost does not match the pair costs")
    return plan


def dump_affine_map(m: AffineMap) -> dict:
    return {"linear": [format_vector(row) for row in m.linear],
            "offset": format_vector(m.offset)}


def dump_certificate(cert: PositioningCertificate) -> dict:
    return {
        "u": dump_polytope(cert.u),
        "v": dump_polytope(cert.v),
        "points": [{"p": format_vector(p), "in_u": in_u} for p, in_u in cert.points],
        "lambdas": format_vector(cert.lambdas),
        "hyperplane_offsets": format_vector(cert.hyperplane_offsets),
        "hyperplane_normals": [format_vector(n) for n in cert.hyperplane_normals],
    }


def read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    except OSError as exc:
        raise InputFormatError(f"{path}: {exc.strerror}") from None
