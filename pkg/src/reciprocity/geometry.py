"""Lattice polytopes and polyhedral cones over Z^d.

Polytopes are stored as their vertex list together with an irredundant facet
description.  Lower-dimensional polytopes live in an affine frame: a lattice
origin plus a Z-basis of the direction lattice of their affine hull, so that
lattice points of ``n*P`` correspond exactly to integer intrinsic coordinates.
"""
from __future__ import annotations

import itertools
from math import gcd
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .exact_math import (
    InputError,
    lattice_basis,
    matrix_rank,
    nullspace,
    primitive,
    solve_linear,
)

Vector = tuple  # tuple of int or Fraction

MAX_AMBIENT_DIM = 8


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


@dataclass(frozen=True)
class Frame:
    """Affine frame ``x = origin + sum_i c_i * basis[i]`` of an affine hull."""
    origin: tuple[int, ...]
    basis: tuple[tuple[int, ...], ...]
    ambient_dim: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_standard(self) -> bool:
        return self.dim == self.ambient_dim and all(x == 0 for x in self.origin)

    @cached_property
    def equations(self) -> tuple[tuple[tuple[int, ...], int], ...]:
        """Integer equations ``<a, x> = b`` cutting out the affine hull."""
        if self.dim == self.ambient_dim:
            return ()
        if not self.basis:
            ortho = [[int(i == j) for j in range(self.ambient_dim)]
                     for i in range(self.ambient_dim)]
        else:
            ortho = [primitive(v) for v in nullspace(self.basis, self.ambient_dim)]
        return tuple((tuple(a), _dot(a, self.origin)) for a in ortho)

    @cached_property
    def _pivot_rows(self):
        # k independent coordinate rows of the basis matrix and their inverse
        k = self.dim
        if k == 0:
            return (), ()
        cols = [[self.basis[j][i] for j in range(k)] for i in range(self.ambient_dim)]
        chosen = []
        for i, row in enumerate(cols):
            if matrix_rank([cols[r] for r in chosen] + [row]) > len(chosen):
                chosen.append(i)
            if len(chosen) == k:
                break
        sub = [cols[i] for i in chosen]
        inv = []
        for j in range(k):
            e = [int(i == j) for i in range(k)]
            inv.append(solve_linear(sub, e))
        # inv[j] solves sub @ inv[j] = e_j, so columns of the inverse
        inverse = [[inv[j][i] for j in range(k)] for i in range(k)]
        return tuple(chosen), tuple(map(tuple, inverse))

    def contains(self, x: Sequence) -> bool:
        return all(_dot(a, x) == b for a, b in self.equations)

    def coords(self, x: Sequence):
        """Intrinsic coordinates of a point assumed to lie in the hull."""
        rows, inverse = self._pivot_rows
        rel = [Fraction(x[i]) - self.origin[i] for i in range(self.ambient_dim)]
        y = [rel[i] for i in rows]
        return tuple(sum(inverse[r][c] * y[c] for c in range(len(y)))
                     for r in range(len(y)))

    def lift(self, c: Sequence) -> tuple:
        out = list(self.origin)
        for ci, b in zip(c, self.basis):
            if ci:
                for i in range(self.ambient_dim):
                    out[i] += ci * b[i]
        return tuple(out)

    def lift_direction(self, c: Sequence) -> tuple:
        out = [0] * self.ambient_dim
        for ci, b in zip(c, self.basis):
            if ci:
                for i in range(self.ambient_dim):
                    out[i] += ci * b[i]
        return tuple(out)


def _frame_for(points: Sequence[Sequence[int]], ambient_dim: int,
               through_origin: bool = False) -> Frame:
    if through_origin:
        origin = (0,) * ambient_dim
        dirs = [tuple(p) for p in points]
    else:
        origin = tuple(points[0])
        dirs = [_sub(p, origin) for p in points[1:]]
    k = matrix_rank(dirs) if dirs else 0
    if k == ambient_dim:
        eye = tuple(tuple(int(i == j) for j in range(ambient_dim)) for i in range(ambient_dim))
        return Frame((0,) * ambient_dim, eye, ambient_dim)
    return Frame(origin, tuple(lattice_basis(dirs, ambient_dim)), ambient_dim)


def _supporting_functionals(vectors: Sequence[Sequence[int]], k: int) -> list[tuple[int, ...]]:
    """Primitive ``a`` with ``<a, v> <= 0`` for all vectors, tight on a rank k-1 set.

    The vectors must span R^k.  Candidates are normals of hyperplanes through
    k-1 linearly independent vectors; at desk scale O(n^(k-1)) is fine.
    """
    vecs = [tuple(v) for v in vectors]
    if k == 1:
        # a ray has one supporting functional, a line none
        return [a for a in ((-1,), (1,)) if all(a[0] * v[0] <= 0 for v in vecs)]
    found: dict[tuple[int, ...], None] = {}
    for subset in itertools.combinations(range(len(vecs)), k - 1):
        # skip subsets already covered by a known facet
        rows = [vecs[i] for i in subset]
        if any(all(_dot(a, r) == 0 for r in rows) for a in found):
            continue
        ns = nullspace(rows, k)
        if len(ns) != 1:
            continue
        a = primitive(ns[0])
        vals = [_dot(a, v) for v in vecs]
        if all(x <= 0 for x in vals):
            found[a] = None
        elif all(x >= 0 for x in vals):
            found[tuple(-x for x in a)] = None
    return list(found)


@dataclass(frozen=True)
class Face:
    """A nonempty face, identified by its vertex (or generator) index set."""
    vertex_set: frozenset
    active_facets: frozenset
    dim: int

    def __eq__(self, other):
        return isinstance(other, Face) and self.vertex_set == other.vertex_set

    def __hash__(self):
        return hash(self.vertex_set)

    def __repr__(self):
        return f"Face({sorted(self.vertex_set)}, dim={self.dim})"


def _closure_faces(n_items: int, facet_sets: Sequence[frozenset], top_dim: int,
                   dim_of, include_top=True) -> dict[frozenset, Face]:
    """All nonempty intersections of facet vertex sets, plus the whole set."""
    top = frozenset(range(n_items))
    faces = {top: None}
    queue = [top]
    while queue:
        g = queue.pop()
        for fs in facet_sets:
            h = g & fs
            if h and h not in faces:
                faces[h] = None
                queue.append(h)
    out = {}
    for vs in faces:
        active = frozenset(i for i, fs in enumerate(facet_sets) if vs <= fs)
        out[vs] = Face(vs, active, top_dim if not active else dim_of(active))
    return out


class Polytope:
    """Convex hull of finitely many lattice points in Z^d."""

    def __init__(self, points: Iterable[Sequence[int]]):
        pts = []
        for p in points:
            q = tuple(p)
            if any(isinstance(x, float) for x in q) or any(Fraction(x).denominator != 1 for x in q):
                raise InputError(f"non-integral point {p}")
            pts.append(tuple(int(x) for x in q))
        if not pts:
            raise InputError("empty point set")
        d = len(pts[0])
        if any(len(p) != d for p in pts):
            raise InputError("points of mixed dimension")
        if d > MAX_AMBIENT_DIM:
            raise InputError(f"ambient dimension {d} exceeds {MAX_AMBIENT_DIM}")
        pts = sorted(set(pts))
        self.ambient_dim = d
        self.frame = _frame_for(pts, d)
        k = self.frame.dim
        self.dim = k
        local = [tuple(int(c) for c in self.frame.coords(p)) for p in pts]
        if k == 0:
            facets = []
        else:
            hom = [c + (1,) for c in local]
            facets = []
            for f in _supporting_functionals(hom, k + 1):
                a, b = f[:k], -f[k]
                if all(x == 0 for x in a):
                    continue
                s = 0
                for x in a:
                    s = gcd(s, x)
                facets.append((tuple(x // s for x in a), b // s))
        facets.sort()
        # vertices: points whose tight facet normals have full rank
        verts = []
        for p, c in zip(pts, local):
            tight = [a for a, b in facets if _dot(a, c) == b]
            if k == 0 or (tight and matrix_rank(tight) == k):
                verts.append((p, c))
        self.vertices: tuple[tuple[int, ...], ...] = tuple(v for v, _ in verts)
        self._local_vertices = tuple(c for _, c in verts)
        self.facets: tuple[tuple[tuple[int, ...], int], ...] = tuple(facets)

    # construction helpers -------------------------------------------------
    @classmethod
    def cube(cls, k: int) -> "Polytope":
        return cls(itertools.product((0, 1), repeat=k))

    def __repr__(self):
        return f"Polytope(dim={self.dim}, vertices={len(self.vertices)}, facets={len(self.facets)})"

    def __eq__(self, other):
        return isinstance(other, Polytope) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.ambient_dim

    def negated(self) -> "Polytope":
        return Polytope([tuple(-x for x in v) for v in self.vertices])

    def translated(self, t: Sequence[int]) -> "Polytope":
        return Polytope([tuple(x + y for x, y in zip(v, t)) for v in self.vertices])

    def local_vertices(self) -> tuple[tuple[int, ...], ...]:
        return self._local_vertices

    # membership ------------------------------------------------------------
    def facet_values(self, x: Sequence):
        """``(<a_i, c> - b_i)`` for each facet, where c are intrinsic coords."""
        c = self.frame.coords(x)
        return [_dot(a, c) - b for a, b in self.facets]

    def contains(self, x: Sequence, strict_facets: Iterable[int] = ()) -> bool:
        if not self.frame.contains(x):
            return False
        vals = self.facet_values(x)
        strict = set(strict_facets)
        return all((v < 0) if i in strict else (v <= 0) for i, v in enumerate(vals))

    def contains_relint(self, x: Sequence) -> bool:
        return self.contains(x, range(len(self.facets)))

    # faces -----------------------------------------------------------------
    @cached_property
    def facet_vertex_sets(self) -> tuple[frozenset, ...]:
        return tuple(
            frozenset(j for j, c in enumerate(self._local_vertices) if _dot(a, c) == b)
            for a, b in self.facets)

    def _dim_of_active(self, active: frozenset) -> int:
        return self.dim - matrix_rank([self.facets[i][0] for i in active])

    @cached_property
    def _faces(self) -> dict[frozenset, Face]:
        return _closure_faces(len(self.vertices), self.facet_vertex_sets, self.dim,
                              self._dim_of_active)

    def face(self, vertex_set: Iterable[int]) -> Face:
        vs = frozenset(vertex_set)
        try:
            return self._faces[vs]
        except KeyError:
            raise InputError(f"{sorted(vs)} is not a face") from None

    def face_polytope(self, face: Face) -> "Polytope":
        return _face_polytope(self, face.vertex_set)

    def facet_face(self, i: int) -> Face:
        return self._faces[self.facet_vertex_sets[i]]

    def face_coords(self, face: Face) -> tuple[tuple[int, ...], ...]:
        return tuple(self.vertices[i] for i in sorted(face.vertex_set))


_FACE_CACHE: dict = {}


def _face_polytope(P: Polytope, vs: frozenset) -> Polytope:
    key = tuple(P.vertices[i] for i in sorted(vs))
    hit = _FACE_CACHE.get(key)
    if hit is None:
        hit = Polytope(key)
        if len(_FACE_CACHE) < 20000:
            _FACE_CACHE[key] = hit
    return hit


def hull_facets(vertices: Iterable[Sequence[int]]) -> Polytope:
    """V-to-H conversion: the canonical polytope of a lattice point set."""
    return Polytope(vertices)


def face_lattice(P: Polytope, include_empty: bool = False) -> list[Face]:
    """Every nonempty face of P exactly once, sorted by dimension then vertices.

    With ``include_empty`` the empty face (dim -1) is prepended.
    """
    faces = sorted(P._faces.values(), key=lambda f: (f.dim, sorted(f.vertex_set)))
    if include_empty:
        faces.insert(0, Face(frozenset(), frozenset(range(len(P.facets))), -1))
    return faces


def is_subface(F: Face, G: Face) -> bool:
    return F.vertex_set <= G.vertex_set


# --------------------------------------------------------------------------
# cones


class Cone:
    """A polyhedral cone ``apex + {x : <a_i, x> <= 0}``.

    Cones built from generators are pointed and know their extreme rays and
    faces (as generator index sets; the apex is the empty set).  Cones built
    from inequalities may have lineality and only support membership.
    """

    def __init__(self, apex: Sequence, inequalities: Sequence[Sequence[int]],
                 generators: Sequence[Sequence[int]] | None = None,
                 frame: Frame | None = None):
        self.apex = tuple(apex)
        self.ambient_dim = len(self.apex)
        # inequalities are in intrinsic coordinates of ``frame`` when one is given
        self.normals: tuple[tuple[int, ...], ...] = tuple(tuple(a) for a in inequalities)
        self.generators = None if generators is None else tuple(tuple(g) for g in generators)
        if frame is None:
            eye = tuple(tuple(int(i == j) for j in range(self.ambient_dim))
                        for i in range(self.ambient_dim))
            frame = Frame((0,) * self.ambient_dim, eye, self.ambient_dim)
        self.frame = frame

    @classmethod
    def from_generators(cls, generators: Iterable[Sequence[int]],
                        apex: Sequence[int] | None = None) -> "Cone":
        gens = sorted({primitive(g) for g in generators})
        if not gens:
            raise InputError("cone needs at least one generator")
        d = len(gens[0])
        frame = _frame_for(gens, d, through_origin=True)
        k = frame.dim
        local = [tuple(int(c) for c in frame.coords(g)) for g in gens]
        normals = sorted(_supporting_functionals(local, k))
        if k and (not normals or matrix_rank(normals) < k):
            raise InputError("cone is not pointed")
        # extreme rays: generators whose tight normals have rank k-1
        extreme = []
        for g, c in zip(gens, local):
            tight = [a for a in normals if _dot(a, c) == 0]
            if k == 1 or (tight and matrix_rank(tight) == k - 1):
                extreme.append(g)
        return cls(apex if apex is not None else (0,) * d, normals, extreme, frame)

    @property
    def dim(self) -> int:
        return self.frame.dim

    @property
    def is_pointed(self) -> bool:
        k = self.frame.dim
        return k == 0 or (bool(self.normals) and matrix_rank(self.normals) == k)

    def __repr__(self):
        return (f"Cone(apex={self.apex}, dim={self.dim}, "
                f"gens={self.generators}, facets={len(self.normals)})")

    def contains(self, x: Sequence, strict_facets: Iterable[int] = ()) -> bool:
        # cone frames always pass through the origin
        rel = tuple(Fraction(a) - b for a, b in zip(x, self.apex))
        if not self.frame.contains(rel):
            return False
        c = self.frame.coords(rel)
        strict = set(strict_facets)
        for i, a in enumerate(self.normals):
            v = _dot(a, c)
            if v > 0 or (i in strict and v == 0):
                return False
        return True

    def contains_relint(self, x: Sequence) -> bool:
        return self.contains(x, range(len(self.normals)))

    # faces of generator-built cones -----------------------------------------
    @cached_property
    def _local_generators(self):
        return tuple(tuple(int(c) for c in self.frame.coords(g)) for g in self.generators)

    @cached_property
    def facet_generator_sets(self) -> tuple[frozenset, ...]:
        return tuple(
            frozenset(j for j, c in enumerate(self._local_generators) if _dot(a, c) == 0)
            for a in self.normals)

    @cached_property
    def _faces(self) -> dict[frozenset, Face]:
        if self.generators is None:
            raise InputError("face structure needs generators")
        n = len(self.generators)
        faces = _closure_faces(n, self.facet_generator_sets, self.dim,
                               lambda act: self.dim - matrix_rank([self.normals[i] for i in act]))
        apex = frozenset()
        faces[apex] = Face(apex, frozenset(range(len(self.normals))), 0)
        return faces

    def faces(self) -> list[Face]:
        """All faces including the apex (generator set ``{}``, dim 0)."""
        return sorted(self._faces.values(), key=lambda f: (f.dim, sorted(f.vertex_set)))

    def face(self, generator_set: Iterable[int]) -> Face:
        gs = frozenset(generator_set)
        try:
            return self._faces[gs]
        except KeyError:
            raise InputError(f"{sorted(gs)} is not a face") from None

    def face_cone(self, face: Face) -> "Cone":
        """The face as a (lower-dimensional) pointed cone with the same apex."""
        if not face.vertex_set:
            return _apex_cone(self.apex)
        return Cone.from_generators([self.generators[i] for i in sorted(face.vertex_set)],
                                    self.apex)

    def facet_face(self, i: int) -> Face:
        return self._faces[self.facet_generator_sets[i]]


def _apex_cone(apex) -> Cone:
    d = len(apex)
    return Cone(apex, (), (), Frame((0,) * d, (), d))


def homogenize(P: Polytope) -> Cone:
    """The cone over ``P x {1}`` in R^(d+1)."""
    return Cone.from_generators([v + (1,) for v in P.vertices])


def tangent_cone(P: Polytope, F: Face, inverted: bool = False) -> Cone:
    """Tangent cone of a full-dimensional polytope at a nonempty face.

    Forward: ``{x : <a_i, x> <= b_i, i in I(F)}``; inverted flips every active
    inequality.  At a vertex the cone is pointed and carries its edge
    directions as generators.
    """
    if not P.is_full_dimensional:
        raise InputError("tangent cones need a full-dimensional polytope")
    if F.vertex_set not in P._faces:
        raise InputError(f"{F} is not a face of {P}")
    F = P._faces[F.vertex_set]
    pts = P.face_coords(F)
    apex = tuple(sum(Fraction(p[i]) for p in pts) / len(pts) for i in range(P.ambient_dim))
    if len(pts) == 1:
        apex = pts[0]
    sign = -1 if inverted else 1
    normals = [tuple(sign * x for x in P.facets[i][0]) for i in sorted(F.active_facets)]
    gens = None
    if F.dim == 0:
        (v,) = F.vertex_set
        gens = []
        for G in P._faces.values():
            if G.dim == 1 and v in G.vertex_set:
                (w,) = G.vertex_set - {v}
                gens.append(primitive([sign * x for x in _sub(P.vertices[w], P.vertices[v])]))
        gens.sort()
    return Cone(apex, normals, gens)


def vertex_cone(P: Polytope, v: int, inverted: bool = False) -> tuple[Cone, dict[int, int]]:
    """Pointed tangent cone at vertex ``v`` translated to the origin.

    Returns the cone and a map from P's facet indices (active at v) to facet
    indices of the cone.
    """
    T = tangent_cone(P, P._faces[frozenset([v])], inverted)
    C = Cone.from_generators(T.generators)
    sign = -1 if inverted else 1
    idx = {a: j for j, a in enumerate(C.normals)}
    mapping = {}
    for i in P._faces[frozenset([v])].active_facets:
        a = tuple(sign * x for x in P.facets[i][0])
        mapping[i] = idx[a]
    return C, mapping


def bright_side(P: Polytope, q: Sequence) -> frozenset:
    """Facets visible from the light source ``q``: ``{i : <a_i, q> > b_i}``."""
    if not P.is_full_dimensional:
        raise InputError("bright side needs a full-dimensional polytope")
    q = tuple(Fraction(x) for x in q)
    return frozenset(i for i, (a, b) in enumerate(P.facets) if _dot(a, q) > b)


def face_of_point(X: Polytope | Cone, p: Sequence) -> Face | None:
    """The unique face whose relative interior contains p (None if p is outside)."""
    p = tuple(Fraction(x) for x in p)
    if not X.contains(p):
        return None
    if isinstance(X, Polytope):
        vals = X.facet_values(p)
        tight = [i for i, v in enumerate(vals) if v == 0]
        vs = frozenset(range(len(X.vertices)))
        for i in tight:
            vs &= X.facet_vertex_sets[i]
        return X._faces[vs]
    c = X.frame.coords(tuple(a - b for a, b in zip(p, X.apex)))
    gs = frozenset(range(len(X.generators)))
    for i, a in enumerate(X.normals):
        if _dot(a, c) == 0:
            gs &= X.facet_generator_sets[i]
    return X._faces[gs]
