import random
from fractions import Fraction as F

import pytest

from sumsetlab.corpus import random_equal_volume_pair, random_feasible_plan, random_interval_set
from sumsetlab.grids import GridSet, box, common_resolution, scale, scaled_sum, translate, unit_cube, volume
from sumsetlab.intervals import IntervalSet
from sumsetlab.transport import (TransportPlan, _min_cost_flow_pairs, combine_fibers,
                                 decompose, fiber_at, optimal_transport, plan_cost,
                                 rho_t_check, s1_construct)


def test_decompose_product_set():
    d = decompose(unit_cube(2, q=2), 1)
    assert len(d.fibers) == 2
    for fib in d.fibers.values():
        assert fib.parts == ((F(0), F(1)),)
    assert d.marginal == {(F(1, 4),): F(1), (F(3, 4),): F(1)}
    assert d.total_volume == 1


def test_decompose_l_shape():
    s = GridSet(2, 2, box([0, 0], [1, 1], 2).cells | {(2, 0), (3, 0)})
    d = decompose(s, 2)  # slice along axis 2: fibers run vertically
    lengths = sorted(f.measure for f in d.fibers.values())
    assert lengths == [F(1, 2), F(1, 2), F(1), F(1)]
    assert d.total_volume == volume(s)


def test_decompose_1d_edge_case():
    s = GridSet(1, 1, [(0,), (2,)])
    d = decompose(s, 1)
    assert list(d.fibers) == [()]
    assert d.fibers[()].measure == 2
    assert d.total_volume == 2


def test_decompose_bad_axis():
    with pytest.raises(ValueError, match="axis"):
        decompose(unit_cube(2), 3)


def test_transport_identity_plan():
    d = decompose(unit_cube(2, q=2), 1)
    plan = optimal_transport(d.marginal, d.marginal)
    assert plan.cost == 0
    assert all(x == y for x, y, _m in plan.pairs)


def test_transport_single_atoms():
    plan = optimal_transport({(F(0),): F(1)}, {(F(3),): F(1)})
    assert plan.pairs == (((F(0),), (F(3),), F(1)),)
    assert plan.cost == 9


def test_monotone_beats_crossing():
    mu_a = {(F(0),): F(1, 2), (F(1),): F(1, 2)}
    mu_b = {(F(2),): F(1, 2), (F(3),): F(1, 2)}
    plan = optimal_transport(mu_a, mu_b)
    assert plan.cost == 4  # monotone: (0->2), (1->3)
    crossing = TransportPlan(
        pairs=(((F(0),), (F(3),), F(1, 2)), ((F(1),), (F(2),), F(1, 2))),
        cost=plan_cost([((F(0),), (F(3),), F(1, 2)), ((F(1),), (F(2),), F(1, 2))]))
    assert crossing.cost == 5
    assert plan.cost < crossing.cost


def test_unequal_totals_rejected():
    with pytest.raises(ValueError, match="differ"):
        optimal_transport({(F(0),): F(1)}, {(F(0),): F(2)})


def test_monotone_cost_agrees_with_min_cost_flow():
    # dual route: the 1D monotone sweep and the integer network solve agree
    rng = random.Random(3)
    for _ in range(20):
        mu_a = {}
        for _ in range(rng.randint(1, 5)):
            pos = (F(rng.randint(0, 12), 2),)
            mu_a[pos] = mu_a.get(pos, F(0)) + F(rng.randint(1, 6), 4)
        remaining = sum(mu_a.values())
        mu_b = {}
        while remaining > 0:
            chunk = min(remaining, F(rng.randint(1, 8), 8))
            pos = (F(rng.randint(0, 12), 2),)
            mu_b[pos] = mu_b.get(pos, F(0)) + chunk
            remaining -= chunk
        plan = optimal_transport(mu_a, mu_b)
        flow_pairs = _min_cost_flow_pairs(sorted(mu_a.items()), sorted(mu_b.items()))
        assert plan.cost == plan_cost(flow_pairs)


def test_monotone_dominates_random_plans():
    rng = random.Random(7)
    for _ in range(15):
        a, b = random_equal_volume_pair(rng, 2, rng.choice((1, 2)))
        da, db = decompose(a, 1), decompose(b, 1)
        plan = optimal_transport(da.marginal, db.marginal)
        for _ in range(25):
            other = random_feasible_plan(rng, da.marginal, db.marginal)
            assert plan.cost <= other.cost


def test_combine_fibers_examples():
    one = IntervalSet([(0, 1)])
    assert combine_fibers(one, one, F(1, 2)).parts == ((F(0), F(1)),)
    pt = IntervalSet.point(0)
    got = combine_fibers(one, pt, F(1, 2))
    assert got.parts == ((F(0), F(1, 2)),)
    assert got.measure == F(1, 2)


def test_combine_fibers_measure_identity_random():
    rng = random.Random(11)
    for _ in range(300):
        i = random_interval_set(rng)
        j = random_interval_set(rng)
        t = rng.choice((F(1, 2), F(1, 3), F(2, 5)))
        assert combine_fibers(i, j, t).measure == t * i.measure + (1 - t) * j.measure


def test_rho_identity_is_tight():
    d = decompose(unit_cube(2, q=2), 1)
    plan = optimal_transport(d.marginal, d.marginal)
    rep = rho_t_check(d, d, plan, F(1, 2))
    assert rep.holds and rep.tight
    assert rep.measured["integral"] == 1


def test_rho_holds_on_random_pairs():
    rng = random.Random(13)
    for _ in range(40):
        a, b = random_equal_volume_pair(rng, 2, rng.choice((1, 2)))
        da, db = decompose(a, 1), decompose(b, 1)
        plan = optimal_transport(da.marginal, db.marginal)
        for t in (F(1, 2), F(1, 3)):
            rep = rho_t_check(da, db, plan, t)
            assert rep.holds
            assert rep.measured["integral"] >= volume(a)


def test_rho_rejects_mismatched_plan():
    d = decompose(unit_cube(2, q=2), 1)
    # shifting the base coordinate moves the marginal atoms
    other = decompose(translate(unit_cube(2, q=2), [0, 5]), 1)
    plan = optimal_transport(d.marginal, d.marginal)
    with pytest.raises(ValueError, match="marginals"):
        rho_t_check(other, d, plan, F(1, 2))


def test_s1_total_equals_rho_integral():
    rng = random.Random(17)
    for _ in range(25):
        a, b = random_equal_volume_pair(rng, 2, rng.choice((1, 2)))
        da, db = decompose(a, 1), decompose(b, 1)
        plan = optimal_transport(da.marginal, db.marginal)
        t = rng.choice((F(1, 2), F(1, 3)))
        s1 = s1_construct(da, db, plan, t)
        rep = rho_t_check(da, db, plan, t)
        assert s1.total_measure == rep.measured["integral"]
        assert s1.total_measure >= volume(a)


def test_s1_pieces_contained_in_scaled_sum():
    rng = random.Random(19)
    for _ in range(15):
        a, b = random_equal_volume_pair(rng, 2, rng.choice((1, 2)))
        t = rng.choice((F(1, 2), F(1, 3)))
        da, db = decompose(a, 1), decompose(b, 1)
        plan = optimal_transport(da.marginal, db.marginal)
        s1 = s1_construct(da, db, plan, t)
        total = scaled_sum(a, b, t)
        for loc, piece, _w in s1.pieces:
            assert piece.is_subset(fiber_at(total, 1, loc))


def test_transport_d3_two_dimensional_bases():
    # 2D bases go through the exact integer min-cost flow
    rng = random.Random(77)
    for i in range(8):
        a, b = random_equal_volume_pair(rng, 3, 1)
        da, db = decompose(a, 1), decompose(b, 1)
        plan = optimal_transport(da.marginal, db.marginal)
        rep = rho_t_check(da, db, plan, F(1, 2))
        assert rep.holds, i
        s1 = s1_construct(da, db, plan, F(1, 2))
        assert s1.total_measure == rep.measured["integral"], i
        for _ in range(5):
            other = random_feasible_plan(rng, da.marginal, db.marginal)
            assert plan.cost <= other.cost


def test_fiber_at_boundary_position():
    s = unit_cube(2, q=2)
    # position exactly on the boundary between base cells collects both
    fib = fiber_at(s, 1, (F(1, 2),))
    assert fib.parts == ((F(0), F(1)),)
    assert fiber_at(s, 1, (F(7),)).is_empty


def test_s1_s2_fiber_bound_demonstration():
    # engineered so an S1 piece location collides with a scaled source fiber:
    # A is a vertical domino, B puts mass at base 0 with a wide two-part fiber
    t = F(1, 3)
    a = GridSet(2, 1, [(0, 0), (0, 1)])
    b = GridSet(2, 1, [(0, 0), (9, 0)])
    assert volume(a) == volume(b)
    da, db = decompose(a, 1), decompose(b, 1)
    plan = optimal_transport(da.marginal, db.marginal)
    s1 = s1_construct(da, db, plan, t)
    locs = {loc for loc, _p, _w in s1.pieces}
    assert locs == {(F(1, 2),), (F(5, 6),)}

    total = scaled_sum(a, b, t)

    # the directional span of B's base-0 fiber hull, scaled by (1-t)
    span = (1 - t) * db.fibers[(0,)].hull_measure
    s2 = GridSet(2, scale(a, t).q, scale(a, t).cells)
    shifted = translate(scale(a, t), [span, F(0)])
    s2, shifted = common_resolution(s2, shifted)
    s2 = GridSet(2, s2.q, s2.cells | shifted.cells)
    from sumsetlab.grids import is_subset
    assert is_subset(s2, total)

    # fiber bound |S_tx \ S1| >= t |A_x| at every source base position
    for anchor, fib in da.fibers.items():
        x = da.center(anchor)
        tx = tuple(t * c for c in x)
        s_fiber = fiber_at(total, 1, tx)
        s1_here = IntervalSet()
        for loc, piece, _w in s1.pieces:
            if loc == tx:
                s1_here = s1_here.union(piece)
        assert s_fiber.difference(s1_here).measure >= t * fib.measure
    # the engineered collision: t*x == (1/2,) carries an S1 piece
    assert (F(1, 2),) in {tuple(t * c for c in da.center(a_)) for a_ in da.fibers}
