"""The sharp threshold families.

A unit cube together with one far-away point sits exactly on the stability
thresholds: the two-set deficit equals t^d while the hull ratio blows up with
the translate, and the k-fold sumset ratio equals 1^d + ... + k^d.
"""

from fractions import Fraction as F

from sumsetlab import SharpFamily, sharp_family_exact

print("two-set family: delta_t == t^d for every (d, t)")
for d in (1, 2, 3):
    for t in (F(1, 2), F(1, 3), F(1, 4)):
        fam = SharpFamily(dim=d, v=(F(3),) * d, t=t)
        rep = sharp_family_exact(fam)
        print(f"  d={d} t={t}: delta = {rep.measured['delta']}  "
              f"hull ratio = {rep.measured['hull_ratio']}")

print()
print("grid refinement: the finite-q deficit is t^d plus the extra cell term")
fam = SharpFamily(dim=2, v=(F(8), F(8)), t=F(1, 2))
rep = sharp_family_exact(fam, grid_q=[2, 4, 8, 16])
for q in (2, 4, 8, 16):
    print(f"  q={q:3d}: measured {rep.measured[f'grid_delta_q{q}']}  "
          f"(= (t + (1-t)/q)^2, decreasing toward 1/4)")

print()
print("iterated family: |k.A| / |A| == sum of j^d")
for d in (1, 2):
    for k in (2, 3):
        fam = SharpFamily(dim=d, v=(F(k + 5),) * d, k=k)
        rep = sharp_family_exact(fam)
        print(f"  d={d} k={k}: ratio = {rep.measured['ratio']}")

print()
print("growing the translate leaves the deficit pinned while the hull grows:")
for scale in (3, 10, 100):
    fam = SharpFamily(dim=2, v=(F(scale), F(scale)), t=F(1, 2))
    rep = sharp_family_exact(fam)
    print(f"  v = ({scale},{scale}): delta = {rep.measured['delta']}, "
          f"hull ratio = {rep.measured['hull_ratio']}")
