"""Acceptance criteria 1-10, one pass/fail line each (criterion 9 has two halves).

Every identity here is exact; the only tolerance is wall-clock runtime.
Run with ``python tests/test_acceptance.py`` for the bare report.
"""
from __future__ import annotations

import random
import time
from contextlib import contextmanager

import numpy as np
import pytest

import acceptance_log
from oracles import count_dilate, random_full_polytope
from reciprocity import (
    CM,
    Cone,
    Polytope,
    bright_side,
    boundary_complex,
    classify_faces,
    cm_status,
    complex_homology,
    count_points,
    count_relint,
    ehrhart_polynomial,
    generated_by,
    cone_section_complex,
    half_open_count_ie,
    homogenize,
    relint_count_ie,
    subcomplex_generated,
    triangulate_and_halfopen,
    verify_genF,
    verify_mr1,
    verify_reciprocity,
    verify_relative_brion,
    check_indicator_identity,
)
from reciprocity.cli import Instance, corpus_names, corpus_path, load_instance, DEFAULTS
from reciprocity.ehrhart import HalfOpenRegion
from reciprocity.genfun import box_membership, box_series
from reciprocity.identities import KINDS, sample_points

# runtime limits in seconds, one per criterion
LIMITS = {1: 30, 2: 10, 3: 60, 4: 10, 5: 30, 6: 10, 7: 10, 8: 60, 9: 30, 10: 60}


@contextmanager
def criterion(label: str, number: int):
    t0 = time.perf_counter()
    status = "FAIL"
    try:
        yield
        status = "PASS"
    finally:
        dt = time.perf_counter() - t0
        over = dt > LIMITS[number]
        if over:
            status = "FAIL"
        acceptance_log.LINES.append(f"criterion {label}: {status} ({dt:.2f}s, limit {LIMITS[number]}s)")
        print(acceptance_log.LINES[-1])
    assert not over, f"criterion {label} took {dt:.1f}s > {LIMITS[number]}s"


def cube(k):
    return Polytope.cube(k)


def facets_with(P, pred):
    return frozenset(i for i, (a, _) in enumerate(P.facets) if pred(a))


def test_criterion_01_four_cube_self_reciprocity():
    with criterion("1 (4-cube self-reciprocity)", 1):
        P = cube(4)
        S1 = facets_with(P, lambda a: a[2] or a[3])
        S2 = frozenset(range(8)) - S1
        poly = ehrhart_polynomial(HalfOpenRegion(P, S1))
        assert poly.coefficients == (1, 0, -2, 0, 1)
        rep = verify_reciprocity(P, S1, n_max=5)
        assert rep["verdict"] == "VERIFIED"
        for n in range(1, 6):
            assert poly(-n) == count_points(HalfOpenRegion(P, S2), n) == count_points(
                HalfOpenRegion(P, S1), n) == (n * n - 1) ** 2
        K = boundary_complex(P)
        B = subcomplex_generated(K, S1)
        st = cm_status(B)
        assert st.value == CM.WeaklyCM
        assert st.witness["degree"] == 1 and st.witness["homology"] == "Z"
        _, _, T = classify_faces(K, B)
        h = complex_homology(T)
        assert (h.rank(0), h.rank(1), h.rank(2)) == (0, 2, 1)
        assert not any(h.torsion(i) for i in range(3))


def test_criterion_02_cube_ehrhart():
    with criterion("2 (cube Ehrhart)", 2):
        for k in range(1, 5):
            poly = ehrhart_polynomial(cube(k))
            for n in range(-3, 7):
                assert poly(n) == (n + 1) ** k


def test_criterion_03_ehrhart_macdonald():
    with criterion("3 (Ehrhart-Macdonald, 24 random polytopes)", 3):
        rng = random.Random(2024)
        done = 0
        for d in (1, 2, 3):
            for _ in range(8):
                verts = random_full_polytope(rng, d)
                P = Polytope(verts)
                poly = ehrhart_polynomial(P)
                for n in range(1, 5):
                    assert (-1) ** d * poly(-n) == count_dilate(verts, n, strict=True), verts
                    assert poly(n) == count_dilate(verts, n)
                done += 1
        assert done >= 20


def test_criterion_04_pyramid_refutation():
    with criterion("4 (pyramid refutation)", 4):
        P = Polytope([(-1, -1, 0), (1, -1, 0), (-1, 1, 0), (1, 1, 0), (0, 0, 1)])
        B = facets_with(P, lambda a: a[0] != 0)
        assert len(B) == 2
        rep = verify_reciprocity(P, B, n_max=3)
        assert rep["verdict"] == "REFUTED" and rep["first_failure"] <= 3
        st = cm_status(subcomplex_generated(boundary_complex(P), B))
        assert st.value == CM.NotWeaklyCM
        assert st.witness["face"] == [[0, 0, 1]] and st.witness["homology"] == "Z"


BRIGHT = [
    ([(0, 0), (1, 0), (0, 1), (1, 1)], (2, 2)),
    ([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)],
     (2, 2, 2)),
    ([(0, 0), (2, 0), (0, 2)], (-1, -1)),
    ([(0, 0, 3), (0, 0, 4), (0, 2, 4), (0, 4, 1), (2, 1, 3), (3, 0, 1)], (-1, -1, -1)),
]


def test_criterion_05_bright_side():
    with criterion("5 (bright side)", 5):
        for verts, q in BRIGHT:
            P = Polytope(verts)
            assert not P.contains(q)
            B = bright_side(P, q)
            assert B
            assert cm_status(subcomplex_generated(boundary_complex(P), B)).value == CM.CM
            assert verify_reciprocity(P, B, 4)["verdict"] == "VERIFIED"


def _square_cone():
    return homogenize(cube(2))


def test_criterion_06_mr1():
    with criterion("6 (MR1 on the cone over the square)", 6):
        C = _square_cone()
        one = verify_mr1(C, [0], trials=16, seed=0)
        assert one["verdict"] == "VERIFIED" and one["identity"]["trials"] == 16
        sets = C.facet_generator_sets
        opp = [j for j in range(4) if not sets[j] & sets[0]]
        two = verify_mr1(C, [0] + opp, trials=16, seed=0)
        assert two["cm_status"]["value"] != "CM"
        assert two["verdict"] == "REFUTED"
        assert verify_mr1(C, [0] + opp, trials=16, seed=0) == two


def test_criterion_07_genf():
    with criterion("7 (genF without a CM hypothesis)", 7):
        C = _square_cone()
        K = cone_section_complex(C)
        gens = {g: i for i, g in enumerate(C.generators)}
        a, b = gens[(0, 0, 1)], gens[(1, 1, 1)]
        for cells in ([], [{a}], [{a}, {b}], [C.facet_generator_sets[0]]):
            D = generated_by(K, [frozenset(c) for c in cells])
            assert verify_genF(C, D)["verdict"] == "VERIFIED", cells


def test_criterion_08_indicator_identities():
    with criterion("8 (indicator identities)", 8):
        rand3 = Polytope([(0, 0, 3), (0, 0, 4), (0, 2, 4), (0, 4, 1), (2, 1, 3), (3, 0, 1)])
        sq = cube(2)
        bottom = facets_with(sq, lambda a: a == (0, -1))
        left = facets_with(sq, lambda a: a == (-1, 0))
        cases = [(cube(3), facets_with(cube(3), lambda a: a == (0, 0, -1))),
                 (sq, bottom), (sq, bottom | left), (rand3, frozenset({1, 2}))]
        for P, delta in cases:
            pts = sample_points(P.ambient_dim, 3, 200, seed=0)
            for kind in KINDS[1:]:
                r = check_indicator_identity(kind, P, delta, pts)
                assert r["verdict"] == "PASS", (kind, P, r["failures"])
            C = homogenize(P)
            r = check_indicator_identity("ConeBG", C, None, sample_points(C.ambient_dim, 3, 200, 0))
            assert r["verdict"] == "PASS"


def _brion_cases():
    sq = cube(2)
    iv = Polytope([(0,), (1,)])
    return [
        ("square, one edge", sq, facets_with(sq, lambda a: a == (0, -1))),
        ("square, two adjacent edges", sq, facets_with(sq, lambda a: a in ((0, -1), (-1, 0)))),
        ("[0,1], one endpoint", iv, facets_with(iv, lambda a: a == (-1,))),
    ]


def test_criterion_09_relative_brion_statement1():
    with criterion("9a (relative Brion statement 1, classical Brion)", 9):
        for _, P, D in _brion_cases():
            assert verify_relative_brion(P, D)["statement1"]["verdict"] == "VERIFIED"
        for verts in ([(0, 0), (1, 0), (0, 1), (1, 1)], [(0, 0), (1, 0), (0, 1)],
                      [(0, 0, 3), (0, 0, 4), (0, 2, 4), (0, 4, 1), (2, 1, 3), (3, 0, 1)]):
            r = verify_relative_brion(Polytope(verts), [])
            assert r["statement1"]["verdict"] == "VERIFIED"


def test_criterion_09_relative_brion_statement2():
    """Coefficient-exact comparison of the second statement as written.

    Expected to fail: e.g. on [0,1] minus {0} the left side is -x^-1 and the
    right side is 1.  The per-vertex reciprocity and the vertex-sum identity
    that the argument actually yields are asserted first, so a failure here
    isolates the final step.
    """
    with criterion("9b (relative Brion statement 2, exact)", 9):
        failures = []
        for name, P, D in _brion_cases():
            r = verify_relative_brion(P, D)
            assert all(v["verdict"] == "EQUAL" for v in r["vertex_reciprocity"])
            assert r["vertex_sum_identity"]["verdict"] == "EQUAL"
            if r["statement2"]["verdict"] != "VERIFIED":
                failures.append((name, r["statement2"]["difference"]))
        assert not failures, f"statement 2 refuted: {failures}"


def _corpus_instances():
    out = []
    for name in corpus_names():
        data = load_instance(corpus_path(name))
        out.append((name, Instance(data, dict(DEFAULTS))))
    return out


def test_criterion_10_cross_oracles():
    with criterion("10 (cross-oracle invariants on the corpus)", 10):
        cones = []
        seen = set()
        for name, inst in _corpus_instances():
            if inst.polytope is not None:
                P = inst.polytope
                if P.vertices in seen:
                    continue
                seen.add(P.vertices)
                B = inst.facets()
                for n in (1, 2, 3):
                    assert half_open_count_ie(P, B, n=n) == count_points(HalfOpenRegion(P, B), n)
                    assert relint_count_ie(P, n=n) == count_relint(P, n)
                cones.append(homogenize(P))
            else:
                cones.append(inst.cone)
        for C in cones:
            radius = 4 if C.ambient_dim <= 4 else 3
            for interior in (False, True):
                pieces = triangulate_and_halfopen(C, interior=interior)
                got = box_series(pieces, radius)
                want = box_membership(C, radius, interior)
                assert np.array_equal(got, want), (C, interior)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
