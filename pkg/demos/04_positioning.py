"""Affine normalization of a pair of convex polytopes.

The construction walks the axes once: align the directional extremes into a
single set, record the slab they witness, and shear the top extreme onto the
axis.  The certificate that comes out verifies three exact properties:
same-set extreme pairs, slab containment, and the parallelepiped identity.
"""

from sumsetlab import equalize_lambdas, hull_of, hull_volume, position, verify_certificate

x = hull_of([(0, 0), (2, 0), (1, 1)])
y = hull_of([(5, 3), (8, 4), (6, 6), (5, 5)])
print("X vertices:", x.vertices)
print("Y vertices:", y.vertices)

amap, translation, cert = position(x, y)
print()
print("U = map(X):", cert.u.vertices)
print("V = map(Y) + v:", cert.v.vertices)
print("translation v applied to Y:", translation)
print("slab widths lambda:", cert.lambdas)
print("slab normals (unit upper-triangular):", cert.hyperplane_normals)
print("extreme pairs (p, p + lambda_i e_i), host set:",
      [("U" if in_u else "V", p) for p, in_u in cert.points])

rep = verify_certificate(cert)
print()
print("certificate verdict:", rep.holds, rep.notes)
print("volume covariance: |U| =", hull_volume(cert.u), "= |det| * |X| =",
      abs(amap.determinant()) * hull_volume(x))

# a final diagonal map makes all slab widths equal (largest wins)
dmap, cert_eq = equalize_lambdas(cert)
print()
print("after lambda equalization:", cert_eq.lambdas,
      "still verifies:", verify_certificate(cert_eq).holds)
