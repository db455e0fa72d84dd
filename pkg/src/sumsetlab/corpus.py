"""Seeded random instance generators for property suites and sweeps.

Everything here is driven by a caller-supplied ``random.Random`` so corpora
are reproducible bit for bit.  Grid instances are unions of a few axis-aligned
boxes plus optional far-away single cells; interval instances have endpoints
with bounded denominator (default 64) and may include degenerate points.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .grids import GridSet
from .hulls import Polytope, hull_of, hull_volume
from .intervals import IntervalSet
from .transport import TransportPlan, plan_cost

__all__ = [
    "DEFAULT_SEED",
    "random_grid_set",
    "random_equal_volume_pair",
    "random_interval_set",
    "random_capped_interval_set",
    "random_polytope",
    "random_feasible_plan",
    "dense_box",
]

# shared default seed for every CLI corpus (documented in the README)
DEFAULT_SEED = 0xB4A11

_SPAN = {1: 12, 2: 8, 3: 5}
_SIDE = {1: 6, 2: 4, 3: 2}


def random_grid_set(rng: random.Random, dim: int, q: int = 1,
                    max_boxes: int = 4, max_far_cells: int = 2) -> GridSet:
    """Union of 1..max_boxes random boxes plus 0..max_far_cells far cells."""
    span = _SPAN[dim] * 1  # anchors live in [0, span) cells per axis
    side = _SIDE[dim]
    cells: set[tuple[int, ...]] = set()
    for _ in range(rng.randint(1, max_boxes)):
        lo = [rng.randint(0, span - 1) for _ in range(dim)]
        ln = [rng.randint(1, side) for _ in range(dim)]
        block = [()]
        for i in range(dim):
            block = [c + (lo[i] + d,) for c in block for d in range(ln[i])]
        cells.update(block)
    for _ in range(rng.randint(0, max_far_cells)):
        far = tuple(rng.randint(2 * span, 4 * span) for _ in range(dim))
        cells.add(far)
    return GridSet(dim, q, cells)


def random_equal_volume_pair(rng: random.Random, dim: int, q: int = 1,
                             **kwargs) -> tuple[GridSet, GridSet]:
    """Two same-resolution grid sets with exactly equal volume.

    Equal volume at equal resolution is equal cell count, so the larger set is
    trimmed to the smaller one's count by removing random cells.
    """
    a = random_grid_set(rng, dim, q, **kwargs)
    b = random_grid_set(rng, dim, q, **kwargs)
    target = min(a.cell_count, b.cell_count)

    def trim(s: GridSet) -> GridSet:
        if s.cell_count == target:
            return s
        keep = rng.sample(sorted(s.cells), target)
        return GridSet(s.dim, s.q, keep)

    return trim(a), trim(b)


def random_interval_set(rng: random.Random, max_parts: int = 8, den: int = 64,
                        allow_points: bool = True) -> IntervalSet:
    """Interval set within [0, 1] with endpoint denominators dividing ``den``."""
    parts = []
    for _ in range(rng.randint(1, max_parts)):
        lo = rng.randint(0, den - 1)
        max_len = den - lo
        ln = rng.randint(0 if allow_points else 1, max_len)
        parts.append((Fraction(lo, den), Fraction(lo + ln, den)))
    return IntervalSet(parts)


def random_capped_interval_set(rng: random.Random, k: int, den: int = 64,
                               max_parts: int = 4) -> IntervalSet:
    """Nonempty subset of [0, 1] with measure at most 1/k.

    Part lengths are drawn from a shared budget of den//k grid units, so the
    cap holds before merging and merging only shrinks the total.
    """
    budget = den // k
    if budget < 1:
        raise ValueError(f"denominator {den} too coarse for cap 1/{k}")
    parts = []
    for _ in range(rng.randint(1, max_parts)):
        ln = rng.randint(0, budget)
        budget -= ln
        lo = rng.randint(0, den - ln)
        parts.append((Fraction(lo, den), Fraction(lo + ln, den)))
    return IntervalSet(parts)


def random_polytope(rng: random.Random, dim: int, n_points: int | None = None,
                    span: int = 8, den: int = 4) -> Polytope:
    """Full-dimensional polytope from a handful of random rational points."""
    n = n_points if n_points is not None else dim + 1 + rng.randint(0, 1)
    while True:
        pts = [tuple(Fraction(rng.randint(-span * den, span * den), den)
                     for _ in range(dim)) for _ in range(n)]
        poly = hull_of(pts, dim=dim)
        if hull_volume(poly) > 0:
            return poly


def random_feasible_plan(rng: random.Random, mu_a: dict, mu_b: dict) -> TransportPlan:
    """Random feasible coupling of two balanced marginals (not optimized)."""
    src = [[pos, m] for pos, m in sorted(mu_a.items()) if m]
    dst = [[pos, m] for pos, m in sorted(mu_b.items()) if m]
    pairs = []
    while src and dst:
        i = rng.randrange(len(src))
        j = rng.randrange(len(dst))
        m = min(src[i][1], dst[j][1])
        pairs.append((src[i][0], dst[j][0], m))
        src[i][1] -= m
        dst[j][1] -= m
        if src[i][1] == 0:
            src.pop(i)
        if dst[j][1] == 0:
            dst.pop(j)
    return TransportPlan(pairs=tuple(pairs), cost=plan_cost(pairs))


def dense_box(dim: int, side: int, q: int = 1) -> GridSet:
    """Dense cube of side^dim cells, built array-backed for speed."""
    grids = np.meshgrid(*[np.arange(side, dtype=np.int64)] * dim, indexing="ij")
    arr = np.stack([g.ravel() for g in grids], axis=1)
    return GridSet._from_local_array(dim, q, arr, (0,) * dim)
