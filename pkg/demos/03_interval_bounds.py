"""One-dimensional sumset bounds on interval sets.

Interval sets carry degenerate points as first-class parts: the tight
witnesses of each bound are interval-plus-point sets whose points add
structure but no measure.
"""

from fractions import Fraction as F

from sumsetlab import (IntervalSet, check_cauchy_davenport, check_lemma_distinct,
                       check_lemma_iterated, freiman_iterated_bound, sum_1d,
                       torus_project)

a = IntervalSet([(0, 1), (3, 3)])  # unit interval plus the point {3}
print("A =", a.parts, " measure", a.measure, " hull", a.hull_measure)
print("A + A =", sum_1d(a, a).parts)

print()
print("torus projection measures wrap-around exactly:")
s = IntervalSet([(F(4, 5), F(11, 10))])
print("  [4/5, 11/10] projects to", torus_project(s).parts, "measure", torus_project(s).measure)

print()
print("circle sumset bound |f(X+Y)| >= min(1, |f(X)| + |f(Y)|):")
rep = check_cauchy_davenport(IntervalSet([(0, F(3, 10))]), IntervalSet([(0, F(2, 5))]))
print("  lhs", rep.measured["projected_sum"], " bound", rep.bound, " tight:", rep.tight)

print()
print("two-set bound |(X+Y) u ({0,1}+Z)| >= min(1, |X|+|Y|) + |Z|:")
half = IntervalSet([(0, F(1, 2))])
rep = check_lemma_distinct(half, half, half)
print("  X=Y=Z=[0,1/2]:", rep.measured["union_measure"], ">=", rep.bound, " tight:", rep.tight)

print()
print("iterated bound |U_i {0..k-i} + i.Y_i| >= sum_i i|Y_i|:")
third = IntervalSet([(0, F(1, 3))])
rep = check_lemma_iterated([third, third, third])
print("  k=3, Y_i=[0,1/3]:", rep.measured["union_measure"], ">=", rep.bound, " tight:", rep.tight)

print()
print("iterated structure bound with the interval-plus-point witness:")
for k in (2, 3):
    rep = freiman_iterated_bound(a, k)
    print(f"  k={k}: |k.A| = {rep.measured['iterated_measure']} >= {rep.bound}"
          f"  tight: {rep.tight}")

dense = IntervalSet([(0, 1), (F(5, 4), F(3, 2))])
rep = freiman_iterated_bound(dense, 2)
print("  dense set: hull deficit", rep.measured["hull_deficit"],
      "<=", rep.measured["deficit_bound"], "(doubling-deficit bound)")
