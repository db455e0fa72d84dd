"""Exact convex hulls and hull volumes for rational points in dimension <= 3.

All predicates are integer determinant signs after clearing denominators, so
there are no tolerances anywhere: collinear and coplanar degeneracies are
decided exactly.  The 3D hull is an incremental construction whose output is
verified (every point weakly inside every facet, closed oriented edge
structure); any pathology falls back to a slower exhaustive supporting-plane
enumeration that is immune to degeneracy.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .grids import GridSet, volume as grid_volume
from .intervals import IntervalSet
from .rationals import as_fraction

__all__ = [
    "Polytope",
    "hull_of",
    "hull_volume",
    "hull_ratio",
    "contains_point",
    "grid_corners",
]


@dataclass(frozen=True)
class Polytope:
    """Convex polytope given by its extreme points only (deduplicated)."""

    dim: int
    vertices: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not 1 <= self.dim <= 3:
            raise ValueError(f"only dimensions 1..3 are supported, got {self.dim}")
        for v in self.vertices:
            if len(v) != self.dim:
                raise ValueError(f"vertex {v} does not have {self.dim} components")


def hull_of(points: Iterable[Sequence], dim: int | None = None) -> Polytope:
    """Extreme points of the convex hull of rational points (d <= 3)."""
    pts = [tuple(as_fraction(x) for x in p) for p in points]
    if not pts:
        raise ValueError("need at least one point")
    d = dim if dim is not None else len(pts[0])
    if not 1 <= d <= 3:
        raise ValueError(f"only dimensions 1..3 are supported, got {d}")
    for p in pts:
        if len(p) != d:
            raise ValueError("points of mixed dimension")
    ipts, scale = _clear_denominators(pts)
    ipts = sorted(set(ipts))
    if d == 1:
        verts = [(ipts[0][0],)] if len(ipts) == 1 else [(ipts[0][0],), (ipts[-1][0],)]
    elif d == 2:
        verts = _hull2(ipts)
    else:
        verts, _facets = _hull3(ipts)
    return Polytope(d, tuple(tuple(Fraction(c, scale) for c in v) for v in sorted(verts)))


def hull_volume(p: Polytope) -> Fraction:
    """Exact d-volume of the hull of the polytope's vertices (0 if degenerate)."""
    ipts, scale = _clear_denominators(list(p.vertices))
    ipts = sorted(set(ipts))
    if p.dim == 1:
        vol = Fraction(ipts[-1][0] - ipts[0][0]) if len(ipts) > 1 else Fraction(0)
    elif p.dim == 2:
        vol = _area2(_hull2(ipts))
    else:
        _verts, facets = _hull3(ipts)
        vol = sum((Fraction(_det3(a, b, c)) for a, b, c in facets), Fraction(0)) / 6
    return vol / Fraction(scale) ** p.dim


def hull_ratio(s, extra_points: Iterable[Sequence] = ()) -> Fraction:
    """|co(set union extra points)| / |set|, exact; requires positive volume."""
    extras = [tuple(as_fraction(x) for x in p) for p in extra_points]
    if isinstance(s, GridSet):
        vol = grid_volume(s)
        if vol == 0:
            raise ValueError("hull_ratio requires a set of positive volume")
        pts = grid_corners(s) + extras
        return hull_volume(hull_of(pts, dim=s.dim)) / vol
    if isinstance(s, IntervalSet):
        if s.measure == 0:
            raise ValueError("hull_ratio requires a set of positive measure")
        pts = [(s.inf,), (s.sup,)] + extras
        return hull_volume(hull_of(pts, dim=1)) / s.measure
    raise TypeError(f"unsupported set type {type(s).__name__}")


def grid_corners(g: GridSet) -> list[tuple[Fraction, ...]]:
    """Cell corner points of a grid set, pruned by column-extreme filtering.

    A hull vertex is the min or max of every axis-aligned column it lies in,
    so iterating the per-axis column filter to a fixed point keeps every
    extreme point while discarding face-interior corners.
    """
    if g.is_empty:
        raise ValueError("empty grid set has no corners")
    corners: set[tuple[int, ...]] = set()
    offsets = [()]
    for _ in range(g.dim):
        offsets = [o + (v,) for o in offsets for v in (0, 1)]
    for cell in g.cells:
        for off in offsets:
            corners.add(tuple(a + e for a, e in zip(cell, off)))
    pruned = _column_extreme_fixpoint(corners, g.dim)
    return [tuple(Fraction(c, g.q) for c in p) for p in sorted(pruned)]


def _column_extreme_fixpoint(pts: set[tuple[int, ...]], dim: int) -> set[tuple[int, ...]]:
    cur = pts
    if dim == 1:
        return {min(cur), max(cur)} if cur else cur
    while True:
        changed = False
        for ax in range(dim):
            cols: dict[tuple, list] = {}
            for p in cur:
                key = p[:ax] + p[ax + 1:]
                e = cols.get(key)
                if e is None:
                    cols[key] = [p, p]
                else:
                    if p[ax] < e[0][ax]:
                        e[0] = p
                    if p[ax] > e[1][ax]:
                        e[1] = p
            keep = set()
            for lo, hi in cols.values():
                keep.add(lo)
                keep.add(hi)
            if len(keep) < len(cur):
                cur = keep
                changed = True
        if not changed:
            return cur


def contains_point(poly: Polytope, point: Sequence) -> bool:
    """Exact membership test of a rational point in the polytope."""
    pt = tuple(as_fraction(x) for x in point)
    if len(pt) != poly.dim:
        raise ValueError("point dimension mismatch")
    all_pts = list(poly.vertices) + [pt]
    ipts, _scale = _clear_denominators(all_pts)
    verts, ipt = ipts[:-1], ipts[-1]
    verts = sorted(set(verts))
    if poly.dim == 1:
        return verts[0][0] <= ipt[0] <= verts[-1][0]
    if poly.dim == 2:
        return _inside2(verts, ipt)
    return _inside3(verts, ipt)


# ----------------------------------------------------------------------------
# integer-arithmetic internals
# ----------------------------------------------------------------------------


def _clear_denominators(pts: list[tuple[Fraction, ...]]) -> tuple[list[tuple[int, ...]], int]:
    scale = 1
    for p in pts:
        for x in p:
            scale = lcm(scale, as_fraction(x).denominator)
    return [tuple(int(as_fraction(x) * scale) for x in p) for p in pts], scale


def _cross2(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull2(pts: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Monotone chain with strict turns: extreme points only, ccw order."""
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross2(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross2(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return hull if len(hull) >= 2 else pts[:1]


def _area2(ccw: list[tuple[int, int]]) -> Fraction:
    if len(ccw) < 3:
        return Fraction(0)
    twice = 0
    for i, (x1, y1) in enumerate(ccw):
        x2, y2 = ccw[(i + 1) % len(ccw)]
        twice += x1 * y2 - x2 * y1
    return Fraction(abs(twice), 2)


def _inside2(verts: list[tuple[int, int]], p: tuple[int, int]) -> bool:
    hull = _hull2(verts)
    if len(hull) == 1:
        return p == hull[0]
    if len(hull) == 2:
        a, b = hull
        if _cross2(a, b, p) != 0:
            return False
        return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])
    return all(_cross2(hull[i], hull[(i + 1) % len(hull)], p) >= 0 for i in range(len(hull)))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _det3(a, b, c) -> int:
    return (a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


def _orient3(a, b, c, d) -> int:
    """Sign of det[b-a, c-a, d-a]; > 0 means d on the positive side of (a,b,c)."""
    m = _det3(_sub(b, a), _sub(c, a), _sub(d, a))
    return (m > 0) - (m < 0)


def _cross3(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _affine_rank(pts: list[tuple[int, ...]]) -> int:
    base = pts[0]
    rows = [list(_sub(p, base)) for p in pts[1:]]
    rank = 0
    ncols = len(base)
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = Fraction(rows[r][col], pr[col])
                rows[r] = [x - f * y for x, y in zip(rows[r], pr)]
        rank += 1
        if rank == min(len(rows), ncols):
            break
    return rank


class _HullPathology(Exception):
    pass


def _hull3(pts: list[tuple[int, int, int]]) -> tuple[list[tuple[int, ...]], list[tuple]]:
    """Vertices and outward-oriented triangular facets of a 3D point set.

    Degenerate inputs (affine rank < 3) return their lower-dimensional extreme
    points and no facets.  Full-rank inputs run the verified incremental hull
    with exhaustive fallback.
    """
    pts = sorted(set(pts))
    if len(pts) == 1:
        return pts, []
    rank = _affine_rank(pts)
    if rank == 1:
        d = _sub(pts[-1], pts[0])
        keyed = sorted(pts, key=lambda p: sum(x * y for x, y in zip(_sub(p, pts[0]), d)))
        return [keyed[0], keyed[-1]], []
    if rank == 2:
        return _planar_extremes(pts), []
    try:
        verts, facets = _hull3_incremental(pts)
        _verify_hull3(pts, facets)
        return verts, facets
    except _HullPathology:
        return _hull3_enumeration(pts)


def _planar_extremes(pts: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    base = pts[0]
    d1 = next(_sub(p, base) for p in pts[1:] if p != base)
    d2 = next((_sub(p, base) for p in pts[1:] if _cross3(d1, _sub(p, base)) != (0, 0, 0)))
    n = _cross3(d1, d2)
    drop = max(range(3), key=lambda i: abs(n[i]))
    keep = [i for i in range(3) if i != drop]
    proj = {}
    for p in pts:
        proj[(p[keep[0]], p[keep[1]])] = p
    hull2 = _hull2(list(proj.keys()))
    return sorted(proj[h] for h in hull2)


def _centroid(pts: list[tuple[int, ...]]) -> tuple[Fraction, ...]:
    n = len(pts)
    return tuple(Fraction(sum(p[i] for p in pts), n) for i in range(len(pts[0])))


def _orient3_frac(a, b, c, d) -> int:
    m = _det3(_sub(b, a), _sub(c, a), _sub(d, a))
    return (m > 0) - (m < 0)


def _hull3_incremental(pts: list[tuple[int, int, int]]) -> tuple[list, list]:
    # initial simplex from the lexicographically first affinely independent points
    p0 = pts[0]
    p1 = pts[1]
    p2 = next(p for p in pts[2:] if _cross3(_sub(p1, p0), _sub(p, p0)) != (0, 0, 0))
    p3 = next(p for p in pts if _orient3(p0, p1, p2, p) != 0)
    inner = _centroid([p0, p1, p2, p3])

    def outward(tri):
        s = _orient3_frac(tri[0], tri[1], tri[2], inner)
        if s == 0:
            raise _HullPathology("interior point coplanar with a facet")
        return tri if s < 0 else (tri[0], tri[2], tri[1])

    facets = [outward(t) for t in ((p0, p1, p2), (p0, p1, p3), (p0, p2, p3), (p1, p2, p3))]
    simplex = {p0, p1, p2, p3}

    for p in pts:
        if p in simplex:
            continue
        visible = [f for f in facets if _orient3(f[0], f[1], f[2], p) > 0]
        if not visible:
            continue  # inside or on the boundary: not a vertex
        vis_edges = set()
        for a, b, c in visible:
            vis_edges.update(((a, b), (b, c), (c, a)))
        horizon = [(u, v) for (u, v) in vis_edges if (v, u) not in vis_edges]
        # the horizon must be one closed cycle for the cone surgery to be valid
        nxt = {}
        for u, v in horizon:
            if u in nxt:
                raise _HullPathology("pinched horizon")
            nxt[u] = v
        if len(nxt) != len(horizon) or not horizon:
            raise _HullPathology("broken horizon")
        start = horizon[0][0]
        node, steps = nxt[start], 1
        while node != start:
            node = nxt.get(node)
            steps += 1
            if node is None or steps > len(horizon):
                raise _HullPathology("horizon is not a single cycle")
        if steps != len(horizon):
            raise _HullPathology("disconnected horizon")
        keep = [f for f in facets if _orient3(f[0], f[1], f[2], p) <= 0]
        for u, v in horizon:
            if _cross3(_sub(v, u), _sub(p, u)) == (0, 0, 0):
                raise _HullPathology("degenerate cone facet")
            keep.append(outward((u, v, p)))
        facets = keep

    return _vertices_from_facets(facets), facets


def _vertices_from_facets(facets: list[tuple]) -> list:
    """Facet corners whose incident facet normals span rank 3 (true vertices)."""
    normals: dict[tuple, set] = {}
    for a, b, c in facets:
        n = _cross3(_sub(b, a), _sub(c, a))
        g = gcd(gcd(abs(n[0]), abs(n[1])), abs(n[2]))
        n = tuple(x // g for x in n)
        for corner in (a, b, c):
            normals.setdefault(corner, set()).add(n)
    verts = []
    for corner, ns in normals.items():
        ns = list(ns)
        if len(ns) >= 3 and _rank_vectors(ns) == 3:
            verts.append(corner)
    return sorted(verts)


def _rank_vectors(vectors: list[tuple[int, ...]]) -> int:
    rows = [list(v) for v in vectors]
    rank = 0
    for col in range(3):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = Fraction(rows[r][col], pr[col])
                rows[r] = [x - f * y for x, y in zip(rows[r], pr)]
        rank += 1
    return rank


def _verify_hull3(pts: list, facets: list) -> None:
    if not facets:
        raise _HullPathology("no facets for a full-rank set")
    edges = {}
    for a, b, c in facets:
        for u, v in ((a, b), (b, c), (c, a)):
            if (u, v) in edges:
                raise _HullPathology("directed edge repeated")
            edges[(u, v)] = True
    for u, v in edges:
        if (v, u) not in edges:
            raise _HullPathology("open edge")
    corners = {x for f in facets for x in f}
    if len(corners) - len(edges) // 2 + len(facets) != 2:
        raise _HullPathology("Euler check failed")
    for a, b, c in facets:
        for p in pts:
            if _orient3(a, b, c, p) > 0:
                raise _HullPathology("point outside a facet")


def _hull3_enumeration(pts: list[tuple[int, int, int]]) -> tuple[list, list]:
    """Exhaustive supporting-plane hull: slow, exact, immune to degeneracy."""
    inner = _centroid(pts)
    n = len(pts)
    planes: dict[tuple, list] = {}
    for i in range(n):
        for j in range(i + 1, n):
            dij = _sub(pts[j], pts[i])
            for k in range(j + 1, n):
                nv = _cross3(dij, _sub(pts[k], pts[i]))
                if nv == (0, 0, 0):
                    continue
                g = gcd(gcd(abs(nv[0]), abs(nv[1])), abs(nv[2]))
                nv = tuple(x // g for x in nv)
                off = sum(a * b for a, b in zip(nv, pts[i]))
                if (nv, off) in planes or (tuple(-x for x in nv), -off) in planes:
                    continue
                pos = neg = False
                for p in pts:
                    s = sum(a * b for a, b in zip(nv, p)) - off
                    if s > 0:
                        pos = True
                    elif s < 0:
                        neg = True
                    if pos and neg:
                        break
                if pos and neg:
                    continue
                if neg:
                    key = (nv, off)
                else:
                    key = (tuple(-x for x in nv), -off)
                planes.setdefault(key, [p for p in pts
                                        if sum(a * b for a, b in zip(key[0], p)) == key[1]])
    facets = []
    verts: set = set()
    for (nv, off), face_pts in planes.items():
        drop = max(range(3), key=lambda i: abs(nv[i]))
        keep = [i for i in range(3) if i != drop]
        proj = {}
        for p in face_pts:
            proj[(p[keep[0]], p[keep[1]])] = p
        ring = [proj[h] for h in _hull2(list(proj.keys()))]
        verts.update(ring)
        for t in range(1, len(ring) - 1):
            tri = (ring[0], ring[t], ring[t + 1])
            s = _orient3_frac(tri[0], tri[1], tri[2], inner)
            if s == 0:
                continue
            facets.append(tri if s < 0 else (tri[0], tri[2], tri[1]))
    return sorted(verts), facets


def _inside3(verts: list[tuple[int, ...]], p: tuple[int, ...]) -> bool:
    verts = sorted(set(verts))
    if len(verts) == 1:
        return p == verts[0]
    rank = _affine_rank(verts)
    if rank == 1:
        a, b = verts[0], verts[-1]
        if _cross3(_sub(b, a), _sub(p, a)) != (0, 0, 0):
            return False
        t = [(p[i] - a[i]) * (b[i] - a[i]) for i in range(3)]
        span = [(b[i] - a[i]) ** 2 for i in range(3)]
        return 0 <= sum(t) <= sum(span)
    if rank == 2:
        base = verts[0]
        d1 = next(_sub(v, base) for v in verts[1:] if v != base)
        d2 = next(_sub(v, base) for v in verts[1:] if _cross3(d1, _sub(v, base)) != (0, 0, 0))
        nrm = _cross3(d1, d2)
        if sum(a * b for a, b in zip(nrm, _sub(p, base))) != 0:
            return False
        drop = max(range(3), key=lambda i: abs(nrm[i]))
        keep = [i for i in range(3) if i != drop]
        flat = [(v[keep[0]], v[keep[1]]) for v in verts]
        return _inside2(flat, (p[keep[0]], p[keep[1]]))
    _vs, facets = _hull3(verts)
    return all(_orient3(a, b, c, p) <= 0 for a, b, c in facets)
