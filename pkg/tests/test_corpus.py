import random
from fractions import Fraction as F

from sumsetlab.corpus import (dense_box, random_capped_interval_set,
                              random_equal_volume_pair, random_feasible_plan,
                              random_grid_set, random_interval_set, random_polytope)
from sumsetlab.grids import volume
from sumsetlab.hulls import hull_volume


def test_generators_are_deterministic():
    a1 = random_grid_set(random.Random(5), 2, 2)
    a2 = random_grid_set(random.Random(5), 2, 2)
    assert a1 == a2
    s1 = random_interval_set(random.Random(5))
    s2 = random_interval_set(random.Random(5))
    assert s1 == s2


def test_equal_volume_pairs_are_exact():
    rng = random.Random(9)
    for _ in range(30):
        d = rng.choice((1, 2, 3))
        a, b = random_equal_volume_pair(rng, d, rng.choice((1, 2)))
        assert volume(a) == volume(b) > 0


def test_capped_sets_respect_cap():
    rng = random.Random(13)
    for k in (2, 3, 4, 5):
        for _ in range(100):
            s = random_capped_interval_set(rng, k)
            assert not s.is_empty
            assert s.measure <= F(1, k)
            assert s.inf >= 0 and s.sup <= 1


def test_interval_sets_live_in_unit_interval():
    rng = random.Random(17)
    for _ in range(100):
        s = random_interval_set(rng)
        assert s.inf >= 0 and s.sup <= 1


def test_random_polytopes_full_dimensional():
    rng = random.Random(21)
    for d in (2, 3):
        for _ in range(20):
            assert hull_volume(random_polytope(rng, d)) > 0


def test_random_plans_are_feasible():
    rng = random.Random(25)
    mu_a = {(F(0),): F(1, 2), (F(1),): F(1, 2)}
    mu_b = {(F(3),): F(3, 4), (F(5),): F(1, 4)}
    for _ in range(20):
        plan = random_feasible_plan(rng, mu_a, mu_b)
        assert plan.source_marginal() == mu_a
        assert plan.target_marginal() == mu_b


def test_dense_box():
    g = dense_box(2, 16)
    assert g.cell_count == 256
    assert volume(g) == 256
    assert (0, 0) in g.cells and (15, 15) in g.cells
