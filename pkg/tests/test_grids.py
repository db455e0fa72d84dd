import random
from fractions import Fraction as F

import pytest

from sumsetlab.grids import (GridSet, WorkspaceOverflowError, box, common_resolution,
                             iterated_sum, minkowski_sum, minkowski_sum_fast, refine,
                             same_continuous_set, scale, scale_axis, scaled_sum,
                             translate, unit_cube, volume)
from sumsetlab.corpus import random_equal_volume_pair, random_grid_set


def brute_minkowski(a: GridSet, b: GridSet) -> GridSet:
    """Independent oracle: emit every {0,1}^d block offset per cell pair."""
    assert a.dim == b.dim and a.q == b.q
    offsets = [()]
    for _ in range(a.dim):
        offsets = [o + (e,) for o in offsets for e in (0, 1)]
    cells = set()
    for x in a.cells:
        for y in b.cells:
            for off in offsets:
                cells.add(tuple(u + v + e for u, v, e in zip(x, y, off)))
    return GridSet(a.dim, a.q, cells)


def test_volume_examples():
    assert volume(unit_cube(2)) == 1
    assert volume(unit_cube(2, q=4)) == 1
    assert volume(GridSet(2, 2, [(0, 0), (3, 3)])) == F(1, 2)


def test_refine_examples():
    s = unit_cube(1)
    r = refine(s, 3)
    assert r.q == 3 and r.cells == frozenset({(0,), (1,), (2,)})
    assert refine(s, 1) is s
    r2 = refine(unit_cube(2), 2)
    assert r2.cell_count == 4 and volume(r2) == 1


def test_refinement_invariance():
    rng = random.Random(11)
    for _ in range(20):
        s = random_grid_set(rng, rng.choice((1, 2)), q=rng.choice((1, 2)))
        m = rng.choice((2, 3))
        assert volume(refine(s, m)) == volume(s)


def test_minkowski_examples():
    c = unit_cube(2)
    s = minkowski_sum(c, c)
    assert s == box([0, 0], [2, 2])
    assert volume(s) == 4

    far = GridSet(2, 1, set(c.cells) | {(10, 10)})
    s2 = minkowski_sum(c, far)
    assert volume(s2) == 8
    assert s2 == brute_minkowski(c, far)

    single = GridSet(1, 1, [(0,)])
    assert minkowski_sum(single, single) == box([0], [2])


def test_minkowski_against_oracle():
    rng = random.Random(7)
    for _ in range(30):
        d = rng.choice((1, 2))
        q = rng.choice((1, 2, 4))
        a = random_grid_set(rng, d, q)
        b = random_grid_set(rng, d, q)
        assert minkowski_sum(a, b) == brute_minkowski(a, b)


def test_minkowski_commutes_with_refinement():
    rng = random.Random(13)
    for _ in range(10):
        a = random_grid_set(rng, 2, 1)
        b = random_grid_set(rng, 2, 1)
        m = rng.choice((2, 3))
        assert refine(minkowski_sum(a, b), m) == minkowski_sum(refine(a, m), refine(b, m))


def test_minkowski_commutativity_and_volume_growth():
    rng = random.Random(17)
    for _ in range(10):
        a = random_grid_set(rng, 2, 2)
        b = random_grid_set(rng, 2, 2)
        s = minkowski_sum(a, b)
        assert s == minkowski_sum(b, a)
        assert volume(s) >= max(volume(a), volume(b))


def test_resolution_mismatch_rejected():
    with pytest.raises(ValueError, match="resolution"):
        minkowski_sum(unit_cube(2, 1), unit_cube(2, 2))
    with pytest.raises(ValueError, match="dimension"):
        minkowski_sum(unit_cube(1), unit_cube(2))


def test_fast_path_equals_naive():
    rng = random.Random(23)
    for _ in range(40):
        d = rng.choice((1, 2, 3))
        q = rng.choice((1, 2, 4))
        a = random_grid_set(rng, d, q)
        b = random_grid_set(rng, d, q)
        assert minkowski_sum_fast(a, b).cells == minkowski_sum(a, b).cells


def test_fast_path_workspace_overflow():
    a = GridSet(2, 1, [(0, 0), (10**6, 10**6)])
    with pytest.raises(WorkspaceOverflowError):
        minkowski_sum_fast(a, a, max_workspace=1000)


def test_fast_path_huge_coordinates():
    # anchors far from the origin but with a small extent stay on the fast path
    big = 10**30
    a = GridSet(1, 1, [(big,), (big + 3,)])
    assert minkowski_sum_fast(a, a).cells == minkowski_sum(a, a).cells
    # far-apart components overflow the workspace and signal fallback
    spread = GridSet(1, 1, [(0,), (big,)])
    with pytest.raises(WorkspaceOverflowError):
        minkowski_sum_fast(spread, spread)


def test_scaled_sum_equality_cases():
    for d in (1, 2):
        c = unit_cube(d)
        s = scaled_sum(c, c, F(1, 2))
        assert volume(s) == 1
        assert same_continuous_set(s, c)
    assert volume(scaled_sum(unit_cube(1), unit_cube(1), F(1, 3))) == 1


def test_scaled_sum_against_scale_oracle():
    rng = random.Random(29)
    for _ in range(15):
        d = rng.choice((1, 2))
        a = random_grid_set(rng, d, rng.choice((1, 2)))
        b = random_grid_set(rng, d, rng.choice((1, 2)))
        t = rng.choice((F(1, 2), F(1, 3), F(2, 5)))
        direct = scaled_sum(a, b, t)
        ta, tb = common_resolution(scale(a, t), scale(b, 1 - t))
        assert same_continuous_set(direct, minkowski_sum(ta, tb))


def test_scaled_sum_sharp_pointlike_cell():
    # cube against cube-plus-far-cell: the extra block has side t + (1-t)/q
    for q in (2, 4, 8):
        a = unit_cube(2, q)
        b = GridSet(2, q, set(a.cells) | {(8 * q, 8 * q)})
        t = F(1, 2)
        extra = volume(scaled_sum(a, b, t)) - 1
        assert extra == (t + (1 - t) / q) ** 2


def test_iterated_sum():
    c = unit_cube(1)
    assert iterated_sum(c, 1) is c
    assert iterated_sum(c, 3) == box([0], [3])
    rng = random.Random(31)
    a = random_grid_set(rng, 2, 1)
    assert iterated_sum(a, 3) == minkowski_sum(iterated_sum(a, 2), a)


def test_translate_and_scale():
    c = unit_cube(2)
    assert translate(c, [0, 0]) == c
    s = scale(c, F(1, 2))
    assert volume(s) == F(1, 4)
    assert s == box([0, 0], [F(1, 2), F(1, 2)])
    t = translate(unit_cube(1), [F(1, 3)])
    assert t.q == 3 and same_continuous_set(t, box([F(1, 3)], [F(4, 3)]))


def test_scaling_law():
    rng = random.Random(37)
    for _ in range(10):
        d = rng.choice((1, 2, 3))
        s = random_grid_set(rng, d, rng.choice((1, 2)))
        t = rng.choice((F(1, 2), F(2, 3), F(3, 2)))
        assert volume(scale(s, t)) == t**d * volume(s)


def test_scale_axis():
    c = unit_cube(2)
    s = scale_axis(c, 1, F(3, 2))
    assert volume(s) == F(3, 2)
    assert same_continuous_set(s, box([0, 0], [F(3, 2), 1]))


def test_superadditivity_on_equal_volume_pairs():
    rng = random.Random(41)
    for _ in range(25):
        d = rng.choice((1, 2))
        a, b = random_equal_volume_pair(rng, d, rng.choice((1, 2)))
        t = rng.choice((F(1, 2), F(1, 3)))
        assert volume(scaled_sum(a, b, t)) >= volume(a)


def test_cells_property_and_equality_lazy_path():
    a = unit_cube(2, 2)
    fast = minkowski_sum_fast(a, a)
    naive = minkowski_sum(a, a)
    assert fast == naive
    assert fast.cell_count == naive.cell_count
    assert hash(fast) == hash(naive)


def test_box_rational_endpoints():
    b = box([F(1, 3)], [F(2, 3)])
    assert b.q == 3 and volume(b) == F(1, 3)
    with pytest.raises(ValueError, match="positive length"):
        box([0], [0])
