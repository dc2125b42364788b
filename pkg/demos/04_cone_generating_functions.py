# %% [markdown]
# # Generating functions of cones
#
# Rational generating functions come from a half-open triangulation; the
# identities are checked by exact evaluation at random rational points.

# %%
from reciprocity import (
    Cone, Polytope, cone_section_complex, generated_by, homogenize, triangulate_and_halfopen,
    verify_genF, verify_mr1, verify_stanley_reciprocity,
)

C = homogenize(Polytope.cube(2))
for piece in triangulate_and_halfopen(C):
    print(piece.generators, "open walls:", sorted(piece.open_facets), "index", piece.index)

# %% Stanley reciprocity for the cone and for a non-unimodular simplicial cone
print(verify_stanley_reciprocity(C)["verdict"])
print(verify_stanley_reciprocity(Cone.from_generators([(1, 0, 0), (1, 2, 0), (1, 0, 3)]))["verdict"])

# %% MR1: one wall removed (a ball) versus two opposite walls (disconnected)
sets = C.facet_generator_sets
opposite = next(j for j in range(4) if not sets[j] & sets[0])
for facets in ([0], [0, opposite]):
    r = verify_mr1(C, facets)
    print(facets, r["cm_status"]["value"], r["verdict"])

# %% the general formula has no hypothesis: two isolated rays
K = cone_section_complex(C)
D = generated_by(K, [frozenset({0}), frozenset({3})])
r = verify_genF(C, D)
print(r["verdict"], r["coefficients"])
