"""Fiber decomposition and exact transport of fiber marginals.

Slice two equal-volume sets along a coordinate, couple their fiber-length
marginals by the monotone rearrangement, and rebuild interpolated fibers: the
transported density integrates to at least |A|, exactly, with equality when
the matched fibers agree everywhere.
"""

import random
from fractions import Fraction as F

from sumsetlab import (GridSet, decompose, fiber_at, optimal_transport,
                       rho_t_check, s1_construct, scaled_sum, volume)
from sumsetlab.corpus import random_equal_volume_pair

t = F(1, 3)
a = GridSet(2, 1, [(0, 0), (0, 1)])          # vertical domino
b = GridSet(2, 1, [(0, 0), (9, 0)])          # two far cells in one row
print("|A| =", volume(a), " |B| =", volume(b))

da = decompose(a, 1)
db = decompose(b, 1)
print("A marginal (base center -> fiber length):", da.marginal)
print("B marginal:", db.marginal)

plan = optimal_transport(da.marginal, db.marginal)
print("monotone plan:", [(x, y, str(m)) for x, y, m in plan.pairs], " cost", plan.cost)

rep = rho_t_check(da, db, plan, t)
print("density integral:", rep.measured["integral"], ">= |A| =", rep.bound,
      "holds:", rep.holds)

s1 = s1_construct(da, db, plan, t)
print()
print("interpolated fiber family:")
for loc, piece, weight in s1.pieces:
    print("  at base", loc, "fiber", piece.parts, "area weight", weight)
print("total measure:", s1.total_measure)

total = scaled_sum(a, b, t)
print("every piece sits inside the true sum's fiber:",
      all(piece.is_subset(fiber_at(total, 1, loc)) for loc, piece, _w in s1.pieces))

# the same check across a random seeded corpus
rng = random.Random(2024)
worst = None
for _ in range(50):
    ra, rb = random_equal_volume_pair(rng, 2, rng.choice((1, 2)))
    dra, drb = decompose(ra, 1), decompose(rb, 1)
    p = optimal_transport(dra.marginal, drb.marginal)
    r = rho_t_check(dra, drb, p, t)
    slack = r.measured["integral"] - r.bound
    worst = slack if worst is None else min(worst, slack)
    assert r.holds
print()
print("50 random equal-volume pairs all hold; smallest integral slack:", worst)
