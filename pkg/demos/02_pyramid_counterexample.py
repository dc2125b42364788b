# %% [markdown]
# # When reciprocity fails
#
# A square pyramid with two opposite triangular facets removed.  The link of
# the apex in the removed complex is disconnected, and the reciprocity
# identity breaks already at n = 1.

# %%
from reciprocity import Polytope, boundary_complex, cm_status, subcomplex_generated, \
    verify_reciprocity

P = Polytope([(-1, -1, 0), (1, -1, 0), (-1, 1, 0), (1, 1, 0), (0, 0, 1)])
opposite = [i for i, (a, _) in enumerate(P.facets) if a[0] != 0]
adjacent = [i for i, (a, _) in enumerate(P.facets) if a in ((-1, 0, 1), (0, -1, 1))]

for label, B in (("opposite", opposite), ("adjacent", adjacent)):
    st = cm_status(subcomplex_generated(boundary_complex(P), B))
    rep = verify_reciprocity(P, B, n_max=3)
    print(f"{label} triangles: {st.value.name}, reciprocity {rep['verdict']}")
    if st.witness:
        print("   witness:", st.witness)
    for row in rep["checks"]:
        print(f"   n={row['n']}: {row['lhs']} vs {row['rhs']}")

# %% the W coefficients still recompose the left-hand side exactly
print(rep["w_audit"])
