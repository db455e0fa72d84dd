"""Affine normalization of a pair of convex polytopes with exact certificates.

``position`` walks the coordinate axes once.  Per axis it (a) translates the
second set along that axis (minimal magnitude) so both directional extremes
lie in one set, (b) moves the joint minimum to the origin, (c) records the
slab with width lambda_i witnessed by that extreme pair, and (d) applies the
volume-preserving shear taking the top extreme to lambda_i * e_i.

Later shears tilt the slabs recorded for earlier axes, so each certificate
slab carries its exact normal vector (unit upper-triangular across axes by
construction; a slab with normal e_i is an axis-aligned one).  The extreme
pairs are untouched by later steps: both endpoints share the shearing
coordinate, so every shear moves them in lockstep and the difference stays
exactly lambda_i * e_i.

Certificate properties, all decided by exact rational arithmetic:

1. the recorded pair p^i, p^i + lambda_i e_i lies in U (or both in V);
2. U and V lie inside every slab  c_i <= n_i . x <= c_i + lambda_i;
3. the slab intersection is a parallelepiped of volume exactly
   prod_i lambda_i  (equivalently |det N| = 1 for the normal matrix N).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .hulls import Polytope, contains_point, hull_of
from .rationals import as_fraction
from .verdicts import VerdictReport, digest_inputs

__all__ = [
    "AffineMap",
    "PositioningCertificate",
    "position",
    "verify_certificate",
    "equalize_lambdas",
]

Vec = tuple[Fraction, ...]


def _det(m: Sequence[Sequence[Fraction]]) -> Fraction:
    d = len(m)
    if d == 1:
        return m[0][0]
    if d == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))


def _matvec(m, v) -> Vec:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


def _matmul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))


def _identity(d):
    return tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))


@dataclass(frozen=True)
class AffineMap:
    """x -> linear @ x + offset with an invertible rational matrix."""

    linear: tuple[tuple[Fraction, ...], ...]
    offset: tuple[Fraction, ...]

    def __post_init__(self):
        if _det(self.linear) == 0:
            raise ValueError("affine map must be invertible")

    @property
    def dim(self) -> int:
        return len(self.offset)

    def apply(self, point: Sequence) -> Vec:
        p = tuple(as_fraction(x) for x in point)
        return tuple(a + b for a, b in zip(_matvec(self.linear, p), self.offset))

    def apply_polytope(self, poly: Polytope) -> Polytope:
        return hull_of([self.apply(v) for v in poly.vertices], dim=poly.dim)

    def compose(self, other: "AffineMap") -> "AffineMap":
        """Map applying ``other`` first, then this map."""
        return AffineMap(_matmul(self.linear, other.linear),
                         tuple(a + b for a, b in zip(_matvec(self.linear, other.offset), self.offset)))

    def inverse(self) -> "AffineMap":
        d = self.dim
        aug = [list(row) + [Fraction(int(i == j)) for j in range(d)]
               for i, row in enumerate(self.linear)]
        for col in range(d):
            pivot = next(r for r in range(col, d) if aug[r][col] != 0)
            aug[col], aug[pivot] = aug[pivot], aug[col]
            pv = aug[col][col]
            aug[col] = [x / pv for x in aug[col]]
            for r in range(d):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
        inv = tuple(tuple(row[d:]) for row in aug)
        return AffineMap(inv, tuple(-x for x in _matvec(inv, self.offset)))

    def determinant(self) -> Fraction:
        return _det(self.linear)


@dataclass(frozen=True)
class PositioningCertificate:
    """Witness data for the normalized position of two convex polytopes."""

    u: Polytope
    v: Polytope
    points: tuple[tuple[Vec, bool], ...]       # (p^i, lies in U)
    lambdas: tuple[Fraction, ...]
    hyperplane_offsets: tuple[Fraction, ...]   # c_i
    hyperplane_normals: tuple[Vec, ...]        # n_i with n_i[i] == 1; e_i when axis-aligned

    @property
    def dim(self) -> int:
        return len(self.lambdas)


def _axis_range(verts: Sequence[Vec], axis: int) -> tuple[Fraction, Fraction]:
    vals = [v[axis] for v in verts]
    return min(vals), max(vals)


def _extreme_vertex(verts: Sequence[Vec], axis: int, value: Fraction) -> Vec:
    """Lexicographically smallest vertex attaining the given axis value."""
    return min(v for v in verts if v[axis] == value)


def position(x: Polytope, y: Polytope):
    """Normalize two full-dimensional convex polytopes (d <= 3).

    Returns ``(map, translation, certificate)`` where the certificate holds
    U = map(x) and V = map(y) + translation together with the slab data; the
    three certificate properties verify exactly on every valid input.
    """
    if x.dim != y.dim:
        raise ValueError("dimension mismatch")
    d = x.dim
    from .hulls import hull_volume

    for name, poly in (("x", x), ("y", y)):
        if hull_volume(poly) == 0:
            raise ValueError(f"{name} must be full-dimensional (positive volume)")

    u = [tuple(v) for v in x.vertices]
    v = [tuple(v) for v in y.vertices]
    lin = _identity(d)
    off = tuple(Fraction(0) for _ in range(d))
    extra = tuple(Fraction(0) for _ in range(d))  # translation applied to y only

    slabs: list[dict] = []
    pairs: list[tuple[Vec, bool]] = []

    def translate_all(w: Vec):
        nonlocal u, v, off
        u = [tuple(a + b for a, b in zip(p, w)) for p in u]
        v = [tuple(a + b for a, b in zip(p, w)) for p in v]
        off = tuple(a + b for a, b in zip(off, w))
        for s in slabs:
            s["c"] += sum(n * t for n, t in zip(s["n"], w))
        for i, (p, in_u) in enumerate(pairs):
            pairs[i] = (tuple(a + b for a, b in zip(p, w)), in_u)

    for axis in range(d):
        u_lo, u_hi = _axis_range(u, axis)
        v_lo, v_hi = _axis_range(v, axis)
        # translate V along this axis so one set's range contains the other's;
        # minimal magnitude, zero when containment already holds
        if u_hi - u_lo >= v_hi - v_lo:
            s_lo, s_hi = u_lo - v_lo, u_hi - v_hi
            host_is_u = True
        else:
            s_lo, s_hi = u_hi - v_hi, u_lo - v_lo
            host_is_u = False
        shift = min(max(Fraction(0), s_lo), s_hi)
        if shift != 0:
            v = [p[:axis] + (p[axis] + shift,) + p[axis + 1:] for p in v]
            # pairs living in V ride along; their difference vectors and the
            # recorded slab functionals are unaffected (earlier normals have
            # no component along an axis that has not been sheared yet)
            for i, (p, in_u) in enumerate(pairs):
                if not in_u:
                    pairs[i] = (p[:axis] + (p[axis] + shift,) + p[axis + 1:], in_u)
        extra = extra[:axis] + (extra[axis] + shift,) + extra[axis + 1:]

        host = u if host_is_u else v
        lo, hi = _axis_range(host, axis)
        q_pt = _extreme_vertex(host, axis, lo)
        r_pt = _extreme_vertex(host, axis, hi)
        translate_all(tuple(-c for c in q_pt))
        r_pt = tuple(a - b for a, b in zip(r_pt, q_pt))
        lam = r_pt[axis]
        if lam <= 0:
            raise ValueError("degenerate input: zero width along an axis")
        slabs.append({"n": tuple(Fraction(int(i == axis)) for i in range(d)),
                      "c": Fraction(0), "lam": lam})
        pairs.append((tuple(Fraction(0) for _ in range(d)), host_is_u))

        w = tuple(c / lam - Fraction(int(i == axis)) for i, c in enumerate(r_pt))
        if any(w):
            shear = tuple(tuple(Fraction(int(i == j)) - w[i] * Fraction(int(j == axis))
                                for j in range(d)) for i in range(d))
            u = [_matvec(shear, p) for p in u]
            v = [_matvec(shear, p) for p in v]
            lin = _matmul(shear, lin)
            off = _matvec(shear, off)
            extra = _matvec(shear, extra)
            for s in slabs:
                gain = sum(wi * ni for wi, ni in zip(w, s["n"]))
                if gain:
                    s["n"] = tuple(ni + gain * Fraction(int(i == axis))
                                   for i, ni in enumerate(s["n"]))
            for i, (p, in_u) in enumerate(pairs):
                pairs[i] = (_matvec(shear, p), in_u)

    amap = AffineMap(lin, off)
    cert = PositioningCertificate(
        u=hull_of(u, dim=d),
        v=hull_of(v, dim=d),
        points=tuple(pairs),
        lambdas=tuple(s["lam"] for s in slabs),
        hyperplane_offsets=tuple(s["c"] for s in slabs),
        hyperplane_normals=tuple(s["n"] for s in slabs),
    )
    return amap, extra, cert


def verify_certificate(cert: PositioningCertificate) -> VerdictReport:
    """Exact check of the three certificate properties."""
    d = cert.dim
    prop1 = True
    for i, (p, in_u) in enumerate(cert.points):
        mate = p[:i] + (p[i] + cert.lambdas[i],) + p[i + 1:]
        target = cert.u if in_u else cert.v
        if not (contains_point(target, p) and contains_point(target, mate)):
            prop1 = False

    prop2 = True
    for i in range(d):
        n, c, lam = cert.hyperplane_normals[i], cert.hyperplane_offsets[i], cert.lambdas[i]
        for vert in cert.u.vertices + cert.v.vertices:
            val = sum(a * b for a, b in zip(n, vert))
            if not c <= val <= c + lam:
                prop2 = False

    lam_product = Fraction(1)
    for lam in cert.lambdas:
        lam_product *= lam
    det = _det([[cert.hyperplane_normals[i][j] for j in range(d)] for i in range(d)])
    slab_volume = lam_product / abs(det) if det != 0 else None
    prop3 = slab_volume == lam_product

    holds = prop1 and prop2 and prop3
    notes = tuple(f"property ({k}) {'ok' if ok else 'FAILED'}"
                  for k, ok in ((1, prop1), (2, prop2), (3, prop3)))
    return VerdictReport(
        kind="positioning-certificate",
        inputs_digest=digest_inputs(
            [list(v) for v in cert.u.vertices], [list(v) for v in cert.v.vertices],
            list(cert.lambdas)),
        measured={
            "lambda_product": lam_product,
            "slab_volume": slab_volume if slab_volume is not None else Fraction(-1),
            "normal_det": det,
        },
        bound=lam_product,
        holds=holds,
        tight=holds,
        notes=notes,
    )


def equalize_lambdas(cert: PositioningCertificate, target: Fraction | None = None):
    """Diagonal rescaling making every lambda_i equal (default: the maximum).

    Returns ``(map, new_certificate)``; the map scales axis i by
    target / lambda_i, pairs stay axis-aligned with common gap ``target``.
    """
    d = cert.dim
    tgt = as_fraction(target) if target is not None else max(cert.lambdas)
    if tgt <= 0:
        raise ValueError("target width must be positive")
    factors = [tgt / lam for lam in cert.lambdas]
    diag = tuple(tuple(factors[i] if i == j else Fraction(0) for j in range(d)) for i in range(d))
    amap = AffineMap(diag, tuple(Fraction(0) for _ in range(d)))
    new_normals = []
    new_offsets = []
    for i in range(d):
        n = cert.hyperplane_normals[i]
        new_normals.append(tuple(factors[i] * n[j] / factors[j] for j in range(d)))
        new_offsets.append(cert.hyperplane_offsets[i] * factors[i])
    new_cert = PositioningCertificate(
        u=amap.apply_polytope(cert.u),
        v=amap.apply_polytope(cert.v),
        points=tuple((amap.apply(p), in_u) for p, in_u in cert.points),
        lambdas=tuple(tgt for _ in range(d)),
        hyperplane_offsets=tuple(new_offsets),
        hyperplane_normals=tuple(new_normals),
    )
    return amap, new_cert
