# %% [markdown]
# # Vertex cones of a half-open square
#
# The lattice points of a half-open polytope are the sum of its half-open
# vertex cones.  The reciprocal statement compared exactly as Laurent
# polynomials does not hold; what does hold is reciprocity cone by cone.

# %%
from reciprocity import Polytope, verify_relative_brion

P = Polytope.cube(2)
bottom = [i for i, (a, _) in enumerate(P.facets) if a == (0, -1)]
r = verify_relative_brion(P, bottom)
print("statement 1:", r["statement1"]["verdict"])
print("statement 2 as written:", r["statement2"]["verdict"])
print("   lhs:", r["statement2"]["lhs"])
print("   rhs:", r["statement2"]["rhs"])
print("per-vertex reciprocity:", [v["verdict"] for v in r["vertex_reciprocity"]])
print("vertex-sum identity:", r["vertex_sum_identity"]["verdict"])
