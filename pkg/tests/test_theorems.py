import random
from fractions import Fraction as F

import pytest

from sumsetlab.corpus import random_equal_volume_pair, random_grid_set
from sumsetlab.grids import GridSet, box, unit_cube, volume
from sumsetlab.intervals import IntervalSet
from sumsetlab.theorems import (SharpFamily, check_long_fibre_claim, check_plunnecke,
                                check_thm_distinct, check_thm_iterated, delta_t,
                                explicit_width_constant, hull_ratio_constant,
                                sharp_family_exact, sweep)


def test_explicit_constants():
    assert explicit_width_constant(1, F(1, 2)) == 8**4
    assert hull_ratio_constant(2, F(1, 2)) == (8**8) ** 2
    with pytest.raises(ValueError):
        explicit_width_constant(2, F(3, 2))


def test_delta_equality_case():
    for d in (1, 2, 3):
        c = unit_cube(d)
        for t in (F(1, 2), F(1, 3), F(1, 4)):
            assert delta_t(c, c, t) == 0


def test_delta_requires_equal_volumes():
    with pytest.raises(ValueError, match="equal"):
        delta_t(unit_cube(1), box([0], [2]), F(1, 2))


def test_delta_nonnegative_on_random_pairs():
    rng = random.Random(3)
    for _ in range(30):
        d = rng.choice((1, 2))
        a, b = random_equal_volume_pair(rng, d, rng.choice((1, 2)))
        assert delta_t(a, b, rng.choice((F(1, 2), F(1, 3)))) >= 0


def test_sharp_family_two_set_exact():
    for d in (1, 2, 3):
        for t in (F(1, 2), F(1, 3), F(1, 4)):
            fam = SharpFamily(dim=d, v=(F(3),) * d, t=t)
            rep = sharp_family_exact(fam)
            assert rep.holds and rep.tight
            assert rep.measured["delta"] == t**d


def test_sharp_family_grid_cross_check():
    fam = SharpFamily(dim=2, v=(F(8), F(8)), t=F(1, 2))
    rep = sharp_family_exact(fam, grid_q=[2, 4, 8])
    deltas = [rep.measured[f"grid_delta_q{q}"] for q in (2, 4, 8)]
    assert deltas == sorted(deltas, reverse=True)
    assert all(d > F(1, 4) for d in deltas)
    assert deltas[-1] == (F(1, 2) + F(1, 2) / 8) ** 2


def test_sharp_family_iterated():
    for d, k in ((1, 2), (1, 3), (2, 2), (2, 3)):
        fam = SharpFamily(dim=d, v=(F(k + 7),) * d, k=k)
        rep = sharp_family_exact(fam, grid_q=[2])
        assert rep.holds
        assert rep.measured["ratio"] == sum(j**d for j in range(1, k + 1))


def test_sharp_family_hull_ratio_grows_with_v():
    t = F(1, 2)
    ratios = []
    for scale in (3, 6, 12):
        fam = SharpFamily(dim=2, v=(F(scale), F(scale)), t=t)
        rep = sharp_family_exact(fam)
        assert rep.measured["delta"] == t**2  # threshold unchanged by v
        ratios.append(rep.measured["hull_ratio"])
    assert ratios[0] < ratios[1] < ratios[2]


def test_sharp_family_rejects_small_v():
    with pytest.raises(ValueError, match="min"):
        SharpFamily(dim=2, v=(F(1), F(8)), t=F(1, 2))
    with pytest.raises(ValueError, match="min"):
        SharpFamily(dim=1, v=(F(2),), k=3)


def test_thm_distinct_consistent_on_examples():
    c = unit_cube(2)
    rep = check_thm_distinct(c, c, F(1, 2))
    assert rep.holds
    assert rep.measured["delta"] == 0
    assert rep.measured["hull_ratio"] == 1

    # sharp family at finite q: deficit sits above the threshold, so the
    # hypothesis fails and any hull ratio is consistent
    q = 4
    a = unit_cube(2, q)
    b = GridSet(2, q, set(a.cells) | {(8 * q, 8 * q)})
    a2 = GridSet(2, q, set(a.cells) | {(9 * q, 9 * q)})  # match volumes
    rep = check_thm_distinct(a2, b, F(1, 2))
    assert rep.holds
    assert rep.measured["delta"] > F(1, 4)


def test_thm_iterated_examples():
    rep = check_thm_iterated(unit_cube(2), 2)
    assert rep.holds
    assert rep.measured["ratio"] == 4
    assert rep.bound == 5
    assert rep.measured["hull_ratio"] == 1

    a = IntervalSet([(0, 1), (3, 3)])
    rep = check_thm_iterated(a, 2)
    assert rep.holds and rep.tight
    assert rep.measured["ratio"] == 3 == rep.bound


def test_plunnecke_examples():
    c = unit_cube(2)
    rep = check_plunnecke(c, c, 2)
    assert rep.holds
    assert rep.measured["lambda"] == 4
    assert rep.measured["iterated_volume"] == 4 <= rep.bound == 16

    x = IntervalSet([(0, 1), (5, 5)])
    y = IntervalSet([(0, 1)])
    rep = check_plunnecke(x, y, 2)
    assert rep.holds
    assert rep.measured["lambda"] == 3
    assert rep.measured["iterated_volume"] == 3
    assert rep.bound == 9


def test_plunnecke_random_grids():
    rng = random.Random(7)
    for _ in range(60):
        d = rng.choice((1, 2))
        q = rng.choice((1, 2))
        x = random_grid_set(rng, d, q)
        y = random_grid_set(rng, d, q)
        assert check_plunnecke(x, y, rng.choice((1, 2, 3))).holds


def test_long_fibre_vacuous_case():
    c = unit_cube(2)
    rep = check_long_fibre_claim(c, c, F(1, 2))
    assert rep.holds
    assert any("hypothesis not met" in n for n in rep.notes)


def test_long_fibre_crossing_slabs():
    # two crossing 1 x 20 slabs: every direction has a long fiber, and the
    # cross sums to far more than twice its own area
    n = 20
    bar_h = {(x, 9) for x in range(n)}
    bar_v = {(9, y) for y in range(n)}
    cross = GridSet(2, 1, bar_h | bar_v)
    rep = check_long_fibre_claim(cross, cross, F(1, 2), width_constant=F(100))
    assert "hypothesis not met: no claim tested" not in rep.notes
    assert "sum_volume" in rep.measured
    assert rep.holds
    assert rep.measured["sum_volume"] >= 2 * volume(cross)


def test_long_fibre_requires_equal_volumes():
    with pytest.raises(ValueError, match="equal"):
        check_long_fibre_claim(unit_cube(2), box([0, 0], [2, 2]), F(1, 2))


def test_sweep_deterministic_and_clean():
    r1 = sweep("plunnecke", 25, 42)
    r2 = sweep("plunnecke", 25, 42)
    assert r1 == r2
    assert all(rec["holds"] for rec in r1)
    assert [rec["instance"] for rec in r1] == list(range(25))


def test_sweep_unknown_checker():
    with pytest.raises(ValueError, match="unknown checker"):
        sweep("nope", 1, 0)


def test_sweep_small_corpora_zero_counterexamples():
    for checker in ("thm-distinct", "thm-iterated", "lemma-distinct",
                    "lemma-iterated", "freiman", "cauchy-davenport", "long-fibre"):
        assert all(rec["holds"] for rec in sweep(checker, 20, 11))


def test_empty_sweep():
    assert sweep("plunnecke", 0, 1) == []
