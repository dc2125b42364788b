# %% [markdown]
# # A self-reciprocal half-open 4-cube
#
# Take the unit 4-cube and remove the facets whose normal is +-e3 or +-e4.
# The counting polynomial of what is left turns out to be its own reciprocal,
# even though the removed part is not Cohen-Macaulay.

# %%
from reciprocity import (
    HalfOpenRegion, Polytope, boundary_complex, classify_faces, cm_status,
    complex_homology, ehrhart_polynomial, subcomplex_generated, verify_reciprocity,
)

P = Polytope.cube(4)
S1 = frozenset(i for i, (a, _) in enumerate(P.facets) if a[2] or a[3])
poly = ehrhart_polynomial(HalfOpenRegion(P, S1))
print("E(n) =", poly)

# %% the reciprocity check, n = 1..5
report = verify_reciprocity(P, S1, n_max=5)
for row in report["checks"]:
    print(f"n={row['n']}: (-1)^4 E(-n) = {row['lhs']}, count of n(-(P minus D)) = {row['rhs']}")
print("verdict:", report["verdict"])

# %% why it is only weakly Cohen-Macaulay
K = boundary_complex(P)
B = subcomplex_generated(K, S1)
print("cm_status:", cm_status(B).as_dict())
_, _, T = classify_faces(K, B)
h = complex_homology(T)
print("boundary of B has f-vector", T.f_vector(), "and reduced Betti numbers",
      [h.rank(i) for i in range(3)], "(a torus)")
