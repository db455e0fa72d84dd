"""Grid-exact Minkowski sums.

A GridSet is a union of closed cells a/q + [0, 1/q]^d with integer anchors.
Because the cells are closed, sums of grid sets are again grid sets and every
volume below is an exact Fraction.
"""

from fractions import Fraction as F

from sumsetlab import (GridSet, box, delta_t, minkowski_sum, minkowski_sum_fast,
                       scaled_sum, unit_cube, volume)

# the unit square, once at q=1 and once refined to q=4: same continuous set
sq = unit_cube(2)
print("unit square volume:", volume(sq), "| at q=4:", volume(unit_cube(2, q=4)))

# A + A doubles every side
double = minkowski_sum(sq, sq)
print("[0,1]^2 + [0,1]^2 =", sorted(double.cells)[:3], "... volume", volume(double))

# a far-away cell creates a second component; the sum keeps both exactly
square_plus_far = GridSet(2, 1, set(sq.cells) | {(10, 10)})
s = minkowski_sum(sq, square_plus_far)
print("with a far cell, |A + B| =", volume(s), "(two disjoint blocks)")

# the convolution fast path is bit-exact equal to the naive enumeration
assert minkowski_sum_fast(sq, square_plus_far) == s

# convex-combination sums: tA + (1-t)B at t = 1/3, exactly
mix = scaled_sum(sq, square_plus_far, F(1, 3))
print("|1/3 A + 2/3 B| =", volume(mix), "at resolution 1/", mix.q)

# equal-volume inputs never fall below |A| (Brunn-Minkowski at grid level)
b = box([2, 2], [3, 3])
print("deficit for two unit squares far apart:", delta_t(sq, b, F(1, 2)))
