"""Fiber decompositions of grid sets and exact transport of fiber marginals.

A grid set slices along one coordinate into 1D fibers indexed by base cells
of the complementary projection.  Marginals are atomized at base-cell centers
(masses are the exact fiber lengths); one-dimensional bases use the monotone
rearrangement, which is optimal for the squared ground cost, and
two-dimensional bases use an exact integer min-cost-flow solve.

The discrete density check treats every plan pair as its own fiber
interaction: a pair moving mass m from a fiber of length alpha onto one of
length beta occupies base area  cellarea * m * (t/alpha + (1-t)/beta)  at the
interpolated location and carries density  t*alpha + (1-t)*beta.  For a
one-dimensional base this is exactly the area of the interpolated subcell, and
in general the per-pair product is at least  cellarea * m  by the AM-GM
inequality, so the integral dominates |A| exactly, with equality when every
matched pair has alpha == beta.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Mapping, Sequence

from .grids import GridSet
from .intervals import IntervalSet
from .rationals import as_fraction
from .verdicts import VerdictReport, digest_inputs

__all__ = [
    "FiberDecomposition",
    "TransportPlan",
    "S1Construction",
    "decompose",
    "optimal_transport",
    "rho_t_check",
    "s1_construct",
    "fiber_at",
]

Pos = tuple[Fraction, ...]


@dataclass(frozen=True)
class FiberDecomposition:
    """Slices of a grid set along one coordinate axis (1-based).

    ``fibers`` maps base anchors (integer (d-1)-vectors at resolution q) to the
    1D fiber as an :class:`IntervalSet`; ``marginal`` maps base-cell centers to
    fiber lengths.  Sum of lengths times base-cell area equals the volume.
    """

    axis: int
    dim: int
    q: int
    fibers: Mapping[tuple[int, ...], IntervalSet]

    @property
    def base_cell_area(self) -> Fraction:
        return Fraction(1, self.q ** (self.dim - 1))

    def center(self, anchor: tuple[int, ...]) -> Pos:
        return tuple(Fraction(2 * a + 1, 2 * self.q) for a in anchor)

    @property
    def marginal(self) -> dict[Pos, Fraction]:
        return {self.center(a): f.measure for a, f in self.fibers.items()}

    @property
    def anchor_by_center(self) -> dict[Pos, tuple[int, ...]]:
        return {self.center(a): a for a in self.fibers}

    @property
    def total_volume(self) -> Fraction:
        return sum((f.measure for f in self.fibers.values()), Fraction(0)) * self.base_cell_area


def decompose(s: GridSet, axis: int) -> FiberDecomposition:
    """Slice a grid set along a coordinate axis (1-based)."""
    if not 1 <= axis <= s.dim:
        raise ValueError(f"axis must be in 1..{s.dim}, got {axis}")
    i = axis - 1
    runs: dict[tuple[int, ...], list[int]] = {}
    for cell in s.cells:
        runs.setdefault(cell[:i] + cell[i + 1:], []).append(cell[i])
    fibers = {}
    for base, coords in runs.items():
        fibers[base] = IntervalSet([(Fraction(c, s.q), Fraction(c + 1, s.q)) for c in coords])
    return FiberDecomposition(axis=axis, dim=s.dim, q=s.q, fibers=fibers)


@dataclass(frozen=True)
class TransportPlan:
    """Feasible coupling of two atomic marginals with its squared-distance cost."""

    pairs: tuple[tuple[Pos, Pos, Fraction], ...]
    cost: Fraction

    def source_marginal(self) -> dict[Pos, Fraction]:
        out: dict[Pos, Fraction] = {}
        for x, _y, m in self.pairs:
            out[x] = out.get(x, Fraction(0)) + m
        return out

    def target_marginal(self) -> dict[Pos, Fraction]:
        out: dict[Pos, Fraction] = {}
        for _x, y, m in self.pairs:
            out[y] = out.get(y, Fraction(0)) + m
        return out


def _sqdist(x: Pos, y: Pos) -> Fraction:
    return sum(((a - b) ** 2 for a, b in zip(x, y)), Fraction(0))


def plan_cost(pairs: Sequence[tuple[Pos, Pos, Fraction]]) -> Fraction:
    return sum((m * _sqdist(x, y) for x, y, m in pairs), Fraction(0))


def optimal_transport(mu_a: Mapping[Pos, Fraction], mu_b: Mapping[Pos, Fraction]) -> TransportPlan:
    """Exact optimal coupling for the squared Euclidean ground cost.

    Marginals are dicts from positions (rational tuples, all the same length)
    to positive masses with equal totals.  One-dimensional positions take the
    monotone rearrangement; higher-dimensional ones take an exact integer
    min-cost flow.
    """
    a = sorted((tuple(as_fraction(c) for c in k), as_fraction(v)) for k, v in mu_a.items() if v)
    b = sorted((tuple(as_fraction(c) for c in k), as_fraction(v)) for k, v in mu_b.items() if v)
    if not a or not b:
        raise ValueError("marginals must carry positive mass")
    if any(m < 0 for _, m in a) or any(m < 0 for _, m in b):
        raise ValueError("masses must be nonnegative")
    ta = sum(m for _, m in a)
    tb = sum(m for _, m in b)
    if ta != tb:
        raise ValueError(f"total masses differ exactly: {ta} != {tb}")
    width = len(a[0][0])
    if any(len(p) != width for p, _ in a + b):
        raise ValueError("positions of mixed dimension")
    if width <= 1:
        pairs = _monotone_pairs(a, b)
    else:
        pairs = _min_cost_flow_pairs(a, b)
    return TransportPlan(pairs=tuple(pairs), cost=plan_cost(pairs))


def _monotone_pairs(a, b):
    pairs = []
    ia = ib = 0
    rem_a, rem_b = a[0][1], b[0][1]
    while True:
        m = min(rem_a, rem_b)
        if m > 0:
            pairs.append((a[ia][0], b[ib][0], m))
        rem_a -= m
        rem_b -= m
        if rem_a == 0:
            ia += 1
            if ia == len(a):
                break
            rem_a = a[ia][1]
        if rem_b == 0:
            ib += 1
            if ib == len(b):
                break
            rem_b = b[ib][1]
    return pairs


def _min_cost_flow_pairs(a, b):
    import networkx as nx

    den = 1
    for _, m in a + b:
        den = lcm(den, m.denominator)
    cost_den = 1
    costs = {}
    for i, (pa, _) in enumerate(a):
        for j, (pb, _) in enumerate(b):
            c = _sqdist(pa, pb)
            costs[i, j] = c
            cost_den = lcm(cost_den, c.denominator)
    g = nx.DiGraph()
    for i, (_, m) in enumerate(a):
        g.add_node(("s", i), demand=-int(m * den))
    for j, (_, m) in enumerate(b):
        g.add_node(("t", j), demand=int(m * den))
    for (i, j), c in costs.items():
        g.add_edge(("s", i), ("t", j), weight=int(c * cost_den))
    flow = nx.min_cost_flow(g)
    pairs = []
    for i, (pa, _) in enumerate(a):
        row = flow.get(("s", i), {})
        for j, (pb, _) in enumerate(b):
            f = row.get(("t", j), 0)
            if f:
                pairs.append((pa, pb, Fraction(f, den)))
    return pairs


def _pair_weights(a: FiberDecomposition, b: FiberDecomposition,
                  plan: TransportPlan, t: Fraction):
    """(alpha, beta, mass, weight) per plan pair, after exact validation."""
    if a.dim != b.dim or a.q != b.q:
        raise ValueError("decompositions must share dimension and resolution")
    mu_a, mu_b = a.marginal, b.marginal
    if plan.source_marginal() != {k: v for k, v in mu_a.items() if v} or \
       plan.target_marginal() != {k: v for k, v in mu_b.items() if v}:
        raise ValueError("plan marginals do not match the decompositions")
    area = a.base_cell_area
    out = []
    for x, y, m in plan.pairs:
        alpha, beta = mu_a[x], mu_b[y]
        weight = area * m * (t / alpha + (1 - t) / beta)
        out.append((x, y, alpha, beta, m, weight))
    return out


def rho_t_check(a: FiberDecomposition, b: FiberDecomposition,
                plan: TransportPlan, t) -> VerdictReport:
    """Exact transported-density integral against the source volume.

    Accumulates (t*alpha + (1-t)*beta) over the interpolated pair locations
    with the per-pair area weights described in the module docstring; the
    result dominates |A| exactly, with equality iff alpha == beta on every
    pair carrying mass.
    """
    t = as_fraction(t)
    if not 0 < t < 1:
        raise ValueError(f"t must lie strictly in (0, 1), got {t}")
    integral = Fraction(0)
    for _x, _y, alpha, beta, _m, weight in _pair_weights(a, b, plan, t):
        integral += (t * alpha + (1 - t) * beta) * weight
    vol_a = a.total_volume
    return VerdictReport(
        kind="transport-density",
        inputs_digest=digest_inputs(
            {str(k): v for k, v in a.marginal.items()},
            {str(k): v for k, v in b.marginal.items()}, t),
        measured={"integral": integral, "volume_a": vol_a, "volume_b": b.total_volume},
        bound=vol_a,
        holds=integral >= vol_a,
        tight=integral == vol_a,
    )


@dataclass(frozen=True)
class S1Construction:
    """Aggregated fiber family (t min(I) + (1-t)J) u (tI + (1-t) max(J))."""

    axis: int
    t: Fraction
    pieces: tuple[tuple[Pos, IntervalSet, Fraction], ...]  # (base location, fiber, area weight)
    total_measure: Fraction


def combine_fibers(i: IntervalSet, j: IntervalSet, t) -> IntervalSet:
    """1D fiber sum (t min(I) + (1-t)J) u (tI + (1-t) max(J)).

    The two pieces meet in the single point t min(I) + (1-t) max(J), so the
    measure is exactly t|I| + (1-t)|J|.
    """
    t = as_fraction(t)
    if i.is_empty or j.is_empty:
        raise ValueError("fibers must be nonempty")
    low = j.scale(1 - t).translate(t * i.inf)
    high = i.scale(t).translate((1 - t) * j.sup)
    return low.union(high)


def s1_construct(a: FiberDecomposition, b: FiberDecomposition,
                 plan: TransportPlan, t) -> S1Construction:
    """Build the interpolated fiber family along the transport plan.

    Each plan pair contributes the fiber sum of its source and target fibers
    at base location t*x + (1-t)*y; the per-pair measure identity
    |piece| == t|I| + (1-t)|J| is asserted, which makes the total measure
    coincide exactly with the transported-density integral.
    """
    t = as_fraction(t)
    if not 0 < t < 1:
        raise ValueError(f"t must lie strictly in (0, 1), got {t}")
    by_center_a = a.anchor_by_center
    by_center_b = b.anchor_by_center
    pieces = []
    total = Fraction(0)
    for x, y, alpha, beta, m, weight in _pair_weights(a, b, plan, t):
        fib_i = a.fibers[by_center_a[x]]
        fib_j = b.fibers[by_center_b[y]]
        if fib_i.is_empty or fib_j.is_empty:
            raise ValueError("plan carries mass on an empty fiber")
        piece = combine_fibers(fib_i, fib_j, t)
        if piece.measure != t * alpha + (1 - t) * beta:
            raise AssertionError("per-pair fiber measure identity violated")
        loc = tuple(t * xc + (1 - t) * yc for xc, yc in zip(x, y))
        pieces.append((loc, piece, weight))
        total += piece.measure * weight
    return S1Construction(axis=a.axis, t=t, pieces=tuple(pieces), total_measure=total)


def fiber_at(s: GridSet, axis: int, position: Sequence) -> IntervalSet:
    """Exact 1D slice of the closed cell union at a rational base position.

    Cells whose closed base contains the position contribute; a position on a
    base-cell boundary therefore collects both neighbors.
    """
    if not 1 <= axis <= s.dim:
        raise ValueError(f"axis must be in 1..{s.dim}, got {axis}")
    pos = tuple(as_fraction(x) for x in position)
    if len(pos) != s.dim - 1:
        raise ValueError("base position must have d-1 components")
    i = axis - 1
    candidates = []
    for x in pos:
        scaled = x * s.q
        lo = scaled.numerator // scaled.denominator
        anchors = {lo}
        if scaled == lo:  # exactly on a cell boundary
            anchors.add(lo - 1)
        candidates.append(anchors)
    coords = []
    for cell in s.cells:
        base = cell[:i] + cell[i + 1:]
        if all(b in c for b, c in zip(base, candidates)):
            coords.append(cell[i])
    return IntervalSet([(Fraction(c, s.q), Fraction(c + 1, s.q)) for c in coords])
