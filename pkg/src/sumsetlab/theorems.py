"""Threshold quantities, sharpness witnesses, and theorem-level checkers.

The central quantity is the volume deficit
``delta_t(A, B) = |tA + (1-t)B| / |A| - 1`` for equal-volume sets.  The
two-set threshold is ``t^d`` and the k-fold iterated threshold is
``1^d + ... + k^d``; both are witnessed sharply by a unit cube together with
one far-away point, and the witnesses here evaluate in closed form with the
grid arithmetic as a cross-check.

Checkers never prove anything: they measure exactly and report whether an
instance is consistent with the stated implication.  A reported
counterexample is a bug-detection signal, not mathematics.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import corpus
from .grids import (GridSet, common_resolution, iterated_sum, minkowski_sum_auto,
                    scale, scaled_sum, unit_cube, volume)
from .hulls import grid_corners, hull_of, hull_ratio, hull_volume
from .intervals import (IntervalSet, check_cauchy_davenport, check_lemma_distinct,
                        check_lemma_iterated, freiman_iterated_bound, iterated_sum_1d,
                        sum_1d)
from .rationals import as_fraction
from .transport import decompose
from .verdicts import VerdictReport, digest_inputs

__all__ = [
    "SharpFamily",
    "explicit_width_constant",
    "hull_ratio_constant",
    "delta_t",
    "sharp_family_exact",
    "check_thm_distinct",
    "check_thm_iterated",
    "check_plunnecke",
    "check_long_fibre_claim",
    "sweep",
    "SWEEP_CHECKERS",
]


def explicit_width_constant(dim: int, t) -> Fraction:
    """The explicit slab-width constant (2 / ((1-t) t))^(4d)."""
    t = as_fraction(t)
    if not 0 < t < 1:
        raise ValueError("t must lie strictly in (0, 1)")
    return (2 / ((1 - t) * t)) ** (4 * dim)


def hull_ratio_constant(dim: int, t) -> Fraction:
    """Hull-ratio bound L^d derived from the explicit width constant."""
    return explicit_width_constant(dim, t) ** dim


def delta_t(a: GridSet, b: GridSet, t) -> Fraction:
    """Exact volume deficit |tA + (1-t)B| / |A| - 1 for equal-volume inputs."""
    va, vb = volume(a), volume(b)
    if va == 0 or va != vb:
        raise ValueError(f"inputs must have equal positive volume, got {va} and {vb}")
    return volume(scaled_sum(a, b, t)) / va - 1


@dataclass(frozen=True)
class SharpFamily:
    """Boundary witness: the unit cube plus one far translate of a point.

    ``t`` set (and ``k`` None) selects the two-set family A = [0,1]^d,
    B = A u {v}; ``k`` set selects the iterated family A = [0,1]^d u {v}.
    The components of v must be large enough that all blocks in the closed
    form stay disjoint (>= 2 for the two-set family, >= k+1 for iterated).
    """

    dim: int
    v: tuple[Fraction, ...]
    t: Fraction | None = None
    k: int | None = None

    def __post_init__(self):
        if (self.t is None) == (self.k is None):
            raise ValueError("set exactly one of t and k")
        if len(self.v) != self.dim:
            raise ValueError("translate vector dimension mismatch")
        object.__setattr__(self, "v", tuple(as_fraction(x) for x in self.v))
        if self.t is not None:
            object.__setattr__(self, "t", as_fraction(self.t))
            if not 0 < self.t <= Fraction(1, 2):
                raise ValueError("t must lie in (0, 1/2]")
            if min(self.v) < 2:
                raise ValueError("two-set family needs min(v) >= 2 for disjoint blocks")
        else:
            if self.k < 1:
                raise ValueError("k must be positive")
            if min(self.v) < self.k + 1:
                raise ValueError(f"iterated family needs min(v) >= {self.k + 1}")


def sharp_family_exact(fam: SharpFamily, grid_q: Iterable[int] = ()) -> VerdictReport:
    """Closed-form evaluation of the sharp family, with grid cross-checks.

    Two-set family: the sum decomposes as the cube plus one disjoint block, so
    the deficit is exactly t^d; at finite resolution q the extra point is one
    grid cell and the measured deficit is exactly (t + (1-t)/q)^d.  Iterated
    family: |k.A| / |A| = sum of j^d; at finite q the blocks have side
    (k - i) + i/q and the measured ratio is their exact volume sum over
    1 + q^-d.  Either way the grid numbers are asserted against the closed
    forms, not merely reported.
    """
    d = fam.dim
    notes = []
    measured: dict[str, Fraction] = {}
    cube_pts = hull_of([p for p in _cube_corners(d)], dim=d).vertices
    hull_r = hull_volume(hull_of(list(cube_pts) + [fam.v], dim=d))
    measured["hull_ratio"] = hull_r

    if fam.t is not None:
        t = fam.t
        bound = t**d
        measured["delta"] = bound  # closed form: cube u disjoint t-block
        for q in grid_q:
            gd = _two_set_grid_delta(fam, q)
            expected = (t + (1 - t) / q) ** d
            if gd != expected:
                raise AssertionError(f"grid cross-check failed at q={q}: {gd} != {expected}")
            measured[f"grid_delta_q{q}"] = gd
            notes.append(f"grid q={q}: deficit exceeds t^d by the extra cell term exactly")
        primary = measured["delta"]
    else:
        k = fam.k
        bound = Fraction(sum(j**d for j in range(1, k + 1)))
        measured["ratio"] = bound  # closed form: disjoint blocks i.v + [0, k-i]^d
        if d == 1:
            a1 = IntervalSet([(Fraction(0), Fraction(1))]).union(IntervalSet.point(fam.v[0]))
            m = iterated_sum_1d(a1, k).measure
            if m != bound:
                raise AssertionError(f"1D interval path disagrees: {m} != {bound}")
            notes.append("1D interval path agrees exactly")
        for q in grid_q:
            gr = _iterated_grid_ratio(fam, q)
            expected = sum((Fraction(k - i) + Fraction(i, q)) ** d for i in range(k + 1)) \
                / (1 + Fraction(1, q**d))
            if gr != expected:
                raise AssertionError(f"grid cross-check failed at q={q}: {gr} != {expected}")
            measured[f"grid_ratio_q{q}"] = gr
        primary = measured["ratio"]

    return VerdictReport(
        kind="sharp-family",
        inputs_digest=digest_inputs(d, list(fam.v), fam.t if fam.t is not None else fam.k),
        measured=measured,
        bound=bound,
        holds=primary == bound,
        tight=primary == bound,
        notes=tuple(notes),
    )


def _cube_corners(d: int):
    pts = [()]
    for _ in range(d):
        pts = [p + (c,) for p in pts for c in (Fraction(0), Fraction(1))]
    return pts


def _grid_point_cell(fam: SharpFamily, q: int) -> tuple[int, ...]:
    anchor = tuple(x * q for x in fam.v)
    if any(a.denominator != 1 for a in anchor):
        raise ValueError(f"v={fam.v} is not grid-representable at q={q}")
    return tuple(int(a) for a in anchor)


def _two_set_grid_delta(fam: SharpFamily, q: int) -> Fraction:
    a = unit_cube(fam.dim, q)
    b = GridSet(fam.dim, q, set(a.cells) | {_grid_point_cell(fam, q)})
    return volume(scaled_sum(a, b, fam.t)) / volume(a) - 1


def _iterated_grid_ratio(fam: SharpFamily, q: int) -> Fraction:
    base = unit_cube(fam.dim, q)
    a = GridSet(fam.dim, q, set(base.cells) | {_grid_point_cell(fam, q)})
    return volume(iterated_sum(a, fam.k)) / volume(a)


def _candidate_translations(a: GridSet, b: GridSet) -> list[tuple[Fraction, ...]]:
    """Documented finite list: identity, min-corner, max-corner, centroid alignment."""
    d = a.dim
    zero = tuple(Fraction(0) for _ in range(d))
    alo, ahi = a.bounding_box()
    blo, bhi = b.bounding_box()
    cands = [
        zero,
        tuple(Fraction(x, a.q) - Fraction(y, b.q) for x, y in zip(alo, blo)),
        tuple(Fraction(x + 1, a.q) - Fraction(y + 1, b.q) for x, y in zip(ahi, bhi)),
    ]
    ca = _vertex_centroid(a)
    cb = _vertex_centroid(b)
    cands.append(tuple(x - y for x, y in zip(ca, cb)))
    # dedupe, keep order
    seen = []
    for c in cands:
        if c not in seen:
            seen.append(c)
    return seen


def _vertex_centroid(g: GridSet) -> tuple[Fraction, ...]:
    verts = hull_of(grid_corners(g), dim=g.dim).vertices
    n = len(verts)
    return tuple(sum(v[i] for v in verts) / n for i in range(g.dim))


def check_thm_distinct(a: GridSet, b: GridSet, t) -> VerdictReport:
    """Consistency check of the two-set threshold statement.

    Computes the deficit and the hull ratio of A u (B + w), minimized over a
    finite list of alignment translations w; an instance is a counterexample
    only if the deficit is strictly below t^d while every candidate hull ratio
    exceeds the explicit constant L^d.
    """
    t = as_fraction(t)
    if not 0 < t <= Fraction(1, 2):
        raise ValueError("t must lie in (0, 1/2]")
    if a.dim > 3:
        raise ValueError("hull measurements support d <= 3 only")
    d = a.dim
    delta = delta_t(a, b, t)
    threshold = t**d
    cap = hull_ratio_constant(d, t)
    corners_a = grid_corners(a)
    corners_b = grid_corners(b)
    best = None
    for w in _candidate_translations(a, b):
        pts = corners_a + [tuple(c + s for c, s in zip(p, w)) for p in corners_b]
        ratio = hull_volume(hull_of(pts, dim=d)) / volume(a)
        if best is None or ratio < best:
            best = ratio
    counterexample = delta < threshold and best > cap
    return VerdictReport(
        kind="thm-distinct",
        inputs_digest=digest_inputs(a, b, t),
        measured={"delta": delta, "hull_ratio": best, "constant": cap},
        bound=threshold,
        holds=not counterexample,
        tight=delta == threshold,
    )


def check_thm_iterated(a, k: int, constant: Fraction | None = None) -> VerdictReport:
    """Consistency check of the iterated threshold statement.

    Accepts a grid set (d <= 3) or an interval set for the exact 1D path
    (interval-plus-point witnesses are not grid-representable).  The
    hull-ratio cap defaults to L^d at t = 1/2, flagged as heuristic in the
    notes: the iterated statement only asserts existence of some constant.
    """
    if isinstance(a, IntervalSet):
        if a.measure == 0:
            raise ValueError("the set must have positive measure")
        d = 1
        ratio = iterated_sum_1d(a, k).measure / a.measure
        hr = a.hull_measure / a.measure
    else:
        if a.dim > 3:
            raise ValueError("hull measurements support d <= 3 only")
        if volume(a) == 0:
            raise ValueError("the set must have positive volume")
        d = a.dim
        ratio = volume(iterated_sum(a, k)) / volume(a)
        hr = hull_ratio(a)
    threshold = Fraction(sum(j**d for j in range(1, k + 1)))
    notes = ()
    if constant is None:
        constant = hull_ratio_constant(d, Fraction(1, 2))
        notes = ("hull-ratio cap is the heuristic default L^d at t=1/2",)
    counterexample = ratio < threshold and hr > constant
    return VerdictReport(
        kind="thm-iterated",
        inputs_digest=digest_inputs(a, k),
        measured={"ratio": ratio, "hull_ratio": hr, "constant": constant},
        bound=threshold,
        holds=not counterexample,
        tight=ratio == threshold,
        notes=notes,
    )


def check_plunnecke(x, y, m: int) -> VerdictReport:
    """Sumset growth bound: |X+Y| <= lambda |Y| implies |m.X| <= lambda^m |Y|.

    Accepts a pair of grid sets or a pair of interval sets; lambda is taken as
    the exact ratio |X+Y| / |Y|.  This must hold on every instance.
    """
    if not isinstance(m, int) or m < 1:
        raise ValueError("m must be a positive integer")
    if isinstance(x, GridSet) and isinstance(y, GridSet):
        xr, yr = common_resolution(x, y)
        vol_sum = volume(minkowski_sum_auto(xr, yr))
        vol_y = volume(y)
        vol_mx = volume(iterated_sum(x, m))
    elif isinstance(x, IntervalSet) and isinstance(y, IntervalSet):
        vol_sum = sum_1d(x, y).measure
        vol_y = y.measure
        vol_mx = iterated_sum_1d(x, m).measure
    else:
        raise TypeError("x and y must both be grid sets or both interval sets")
    if vol_y == 0:
        raise ValueError("Y must have positive volume")
    lam = vol_sum / vol_y
    bound = lam**m * vol_y
    return VerdictReport(
        kind="plunnecke",
        inputs_digest=digest_inputs(x, y, m),
        measured={"lambda": lam, "iterated_volume": vol_mx},
        bound=bound,
        holds=vol_mx <= bound,
        tight=vol_mx == bound,
    )


def check_long_fibre_claim(a: GridSet, b: GridSet, t, width_constant=None) -> VerdictReport:
    """Long-fibre doubling claim.

    If along every axis the longest fiber of tA or of (1-t)B has length at
    least sqrt(L), then |tA + (1-t)B| >= 2|A|.  The comparison against
    sqrt(L) is done on squares, so irrational thresholds never appear.
    When the hypothesis fails the claim is vacuous and the verdict records
    that no conclusion was tested.

    The claim presumes volumes normalized to 1; for other volumes the caller
    must rescale the width constant accordingly (the verdict carries a note
    whenever |A| != 1).
    """
    t = as_fraction(t)
    va, vb = volume(a), volume(b)
    if va == 0 or va != vb:
        raise ValueError("inputs must have equal positive volume")
    d = a.dim
    big_l = as_fraction(width_constant) if width_constant is not None \
        else explicit_width_constant(d, t)
    ta = scale(a, t)
    tb = scale(b, 1 - t)
    measured: dict[str, Fraction] = {"width_constant": big_l}
    norm_notes = () if va == 1 else (f"volume is {va}, not 1: width constant must be pre-scaled",)
    hypothesis = True
    for axis in range(1, d + 1):
        fa = max(f.measure for f in decompose(ta, axis).fibers.values())
        fb = max(f.measure for f in decompose(tb, axis).fibers.values())
        longest = max(fa, fb)
        measured[f"max_fiber_axis{axis}"] = longest
        if longest**2 < big_l:
            hypothesis = False
    bound = 2 * va
    if not hypothesis:
        return VerdictReport(
            kind="long-fibre",
            inputs_digest=digest_inputs(a, b, t, big_l),
            measured=measured,
            bound=bound,
            holds=True,
            tight=False,
            notes=("hypothesis not met: no claim tested",) + norm_notes,
        )
    vol_sum = volume(scaled_sum(a, b, t))
    measured["sum_volume"] = vol_sum
    return VerdictReport(
        kind="long-fibre",
        inputs_digest=digest_inputs(a, b, t, big_l),
        measured=measured,
        bound=bound,
        holds=vol_sum >= bound,
        tight=vol_sum == bound,
        notes=norm_notes,
    )


# ----------------------------------------------------------------------------
# seeded sweeps
# ----------------------------------------------------------------------------


def _sweep_thm_distinct(rng: random.Random, opts) -> tuple[dict, VerdictReport]:
    d = rng.choice(opts.get("dims", (1, 2, 3)))
    q = rng.choice(opts.get("qs", (1, 2, 4)))
    t = as_fraction(opts.get("t", Fraction(1, 2)))
    a, b = corpus.random_equal_volume_pair(rng, d, q)
    rep = check_thm_distinct(a, b, t)
    return {"d": d, "q": q, "t_or_k": t, "primary_measure": rep.measured["delta"],
            "threshold": rep.bound, "hull_ratio": rep.measured["hull_ratio"]}, rep


def _sweep_thm_iterated(rng: random.Random, opts) -> tuple[dict, VerdictReport]:
    d = rng.choice(opts.get("dims", (1, 2, 3)))
    q = rng.choice(opts.get("qs", (1, 2, 4)))
    k = int(opts.get("k", 2))
    a = corpus.random_grid_set(rng, d, q)
    rep = check_thm_iterated(a, k)
    return {"d": d, "q": q, "t_or_k": k, "primary_measure": rep.measured["ratio"],
            "threshold": rep.bound, "hull_ratio": rep.measured["hull_ratio"]}, rep


def _sweep_plunnecke(rng: random.Random, opts) -> tuple[dict, VerdictReport]:
    d = rng.choice(opts.get("dims", (1, 2)))
    q = rng.choice(opts.get("qs", (1, 2)))
    m = rng.choice(opts.get("ms", (1, 2, 3)))
    x = corpus.random_grid_set(rng, d, q)
    y = corpus.random_grid_set(rng, d, q)
    rep = check_plunnecke(x, y, m)
    return {"d": d, "q": q, "t_or_k": m, "primary_measure": rep.measured["iterated_volume"],
            "threshold": rep.bound, "hull_ratio": None}, rep


def _sweep_lemma_distinct(rng: random.Random, opts) -> tuple[dict, VerdictReport]:
    x = corpus.random_interval_set(rng)
    y = corpus.random_interval_set(rng)
    z = corpus.random_interval_set(rng)
    rep = check_lemma_distinct(x, y, z)
    return {"d": 1, "q": None, "t_or_k": None,
            "primary_measure": rep.measured["union_measure"],
            "threshold": rep.bound, "hull_ratio": None}, rep


def _sweep_lemma_iterated(rng: random.Random, opts) -> tuple[dict, VerdictReport]:
    k = int(opts.get("k", rng.choice((2, 3, 4))))
    ys = [corpus.random_capped_interval_set(rng, k) for _ in range(k)]
    rep = check_lemma_iterated(ys)
    return {"d": 1, "q": None, "t_or_k": k,
            "primary_measure": rep.measured["union_measure"],
            "threshold": rep.bound, "hull_ratio": None}, rep


def _sweep_freiman(rng: random.Random, opts) -> tuple[dict, VerdictReport]:
    k = int(opts.get("k", rng.choice((2, 3, 4, 5))))
    while True:
        a = corpus.random_interval_set(rng)
        if a.measure > 0:
            break
    rep = freiman_iterated_bound(a, k)
    return {"d": 1, "q": None, "t_or_k": k,
            "primary_measure": rep.measured["iterated_measure"],
            "threshold": rep.bound, "hull_ratio": rep.measured["hull_measure"] / a.measure}, rep


def _sweep_cauchy_davenport(rng: random.Random, opts) -> tuple[dict, VerdictReport]:
    x = corpus.random_interval_set(rng)
    y = corpus.random_interval_set(rng)
    rep = check_cauchy_davenport(x, y)
    return {"d": 1, "q": None, "t_or_k": None,
            "primary_measure": rep.measured["projected_sum"],
            "threshold": rep.bound, "hull_ratio": None}, rep


def _sweep_long_fibre(rng: random.Random, opts) -> tuple[dict, VerdictReport]:
    d = rng.choice(opts.get("dims", (2,)))
    t = as_fraction(opts.get("t", Fraction(1, 2)))
    a, b = corpus.random_equal_volume_pair(rng, d, 1)
    width = opts.get("width_constant")
    rep = check_long_fibre_claim(a, b, t, width_constant=width)
    return {"d": d, "q": 1, "t_or_k": t,
            "primary_measure": rep.measured.get("sum_volume"),
            "threshold": rep.bound, "hull_ratio": None}, rep


SWEEP_CHECKERS = {
    "thm-distinct": _sweep_thm_distinct,
    "thm-iterated": _sweep_thm_iterated,
    "plunnecke": _sweep_plunnecke,
    "lemma-distinct": _sweep_lemma_distinct,
    "lemma-iterated": _sweep_lemma_iterated,
    "freiman": _sweep_freiman,
    "cauchy-davenport": _sweep_cauchy_davenport,
    "long-fibre": _sweep_long_fibre,
}


def sweep(checker: str, count: int, seed: int, **options) -> list[dict]:
    """Run a named checker over a seeded corpus; one record per instance.

    Records are deterministic functions of (checker, count, seed, options) and
    carry the instance index, generator parameters, the primary measured
    quantity, the threshold, and the holds/tight flags.
    """
    if checker not in SWEEP_CHECKERS:
        raise ValueError(f"unknown checker {checker!r}; expected one of {sorted(SWEEP_CHECKERS)}")
    rng = random.Random(seed)
    fn = SWEEP_CHECKERS[checker]
    records = []
    for idx in range(count):
        fields, rep = fn(rng, options)
        rec = {"seed": seed, "instance": idx, **fields,
               "holds": rep.holds, "tight": rep.tight}
        records.append(rec)
    return records
