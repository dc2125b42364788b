import itertools

import pytest

from reciprocity.cli import DEFAULTS, Instance, corpus_names, corpus_path, load_instance
from reciprocity.complex import boundary_complex, classify_faces, link, subcomplex_generated
from reciprocity.geometry import Polytope
from reciprocity.topology import (
    CM,
    Manifold,
    SimplicialComplex,
    cm_status,
    complex_homology,
    face_poset_link,
    homology_manifold_status,
    reduced_euler_char,
    reduced_homology,
)

# minimal 6-vertex triangulation of the real projective plane
RP2 = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6), (2, 3, 5), (2, 4, 5), (2, 4, 6),
       (3, 4, 6), (3, 5, 6)]


def test_spheres_and_rp2():
    s2 = SimplicialComplex.from_facets(itertools.combinations(range(4), 3))
    assert reduced_homology(s2).is_sphere(2)
    h = reduced_homology(SimplicialComplex.from_facets(RP2))
    assert h.rank(1) == 0 and h.torsion(1) == (2,) and h.rank(2) == 0


def test_void_and_empty():
    assert reduced_homology(SimplicialComplex(frozenset(), True)).is_trivial()
    assert reduced_homology(SimplicialComplex(frozenset())).is_sphere(-1)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_cube_boundary_is_sphere(k):
    K = boundary_complex(Polytope.cube(k))
    assert complex_homology(K).is_sphere(k - 1)
    assert cm_status(K).value == CM.CM
    assert homology_manifold_status(K)[0] == Manifold.WithoutBoundary


def test_four_cube_torus_and_s1():
    P = Polytope.cube(4)
    K = boundary_complex(P)
    S1 = [i for i, (a, _) in enumerate(P.facets) if a[2] or a[3]]
    B = subcomplex_generated(K, S1)
    st = cm_status(B)
    assert st.value == CM.WeaklyCM and st.witness["degree"] == 1
    assert homology_manifold_status(B)[0] == Manifold.WithBoundary
    _, _, T = classify_faces(K, B)
    assert T.f_vector() == (16, 32, 16)
    assert complex_homology(T).ranks() == (0, 0, 2, 1)
    assert homology_manifold_status(T)[0] == Manifold.WithoutBoundary


def test_pyramid_witness():
    P = Polytope([(-1, -1, 0), (1, -1, 0), (-1, 1, 0), (1, 1, 0), (0, 0, 1)])
    B = subcomplex_generated(boundary_complex(P),
                             [i for i, (a, _) in enumerate(P.facets) if a[0]])
    st = cm_status(B)
    assert st.value == CM.NotWeaklyCM and st.witness["face"] == [[0, 0, 1]]
    assert homology_manifold_status(B)[0] == Manifold.No


def _trimmed(h):
    g = list(h.groups)
    while g and g[-1] == (0, ()):
        g.pop()
    return g


def _corpus_complexes():
    for name in corpus_names():
        inst = Instance(load_instance(corpus_path(name)), dict(DEFAULTS))
        if inst.polytope is None or inst.polytope.dim < 2:
            continue
        K = boundary_complex(inst.polytope)
        yield name, K
        if "cells" not in inst.sub:
            yield name + "/sub", subcomplex_generated(K, inst.facets())


def test_set_link_matches_face_poset_link():
    """Set-links are homotopy equivalent to geometric links: compare homology."""
    for name, K in _corpus_complexes():
        for F in K.faces:
            a = complex_homology(link(K, F))
            b = reduced_homology(face_poset_link(K, F))
            assert _trimmed(a) == _trimmed(b), (name, sorted(F))
            assert a.euler() == b.euler() == reduced_euler_char(link(K, F)), (name, sorted(F))
