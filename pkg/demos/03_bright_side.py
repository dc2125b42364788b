# %% [markdown]
# # Light sources and bright sides
#
# The facets visible from an outside point always form a ball, so the bright
# side is a reciprocal domain.  An inside light source makes the bright side
# empty and recovers the classical interior-point reciprocity.

# %%
from fractions import Fraction

from reciprocity import Polytope, boundary_complex, bright_side, cm_status, \
    subcomplex_generated, verify_reciprocity

cases = [
    (Polytope.cube(2), (2, 2)),
    (Polytope.cube(2), (Fraction(1, 2), Fraction(1, 2))),
    (Polytope.cube(3), (2, 2, 2)),
    (Polytope([(0, 0), (2, 0), (0, 2)]), (Fraction(5, 2), Fraction(5, 2))),
]
for P, q in cases:
    B = bright_side(P, q)
    st = cm_status(subcomplex_generated(boundary_complex(P), B))
    rep = verify_reciprocity(P, B, n_max=4)
    print(f"{P} lit from {tuple(map(str, q))}: bright facets {sorted(B)}, "
          f"{st.value.name}, {rep['verdict']}")
