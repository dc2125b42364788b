"""Polyhedral complexes, links, stars and boundary classification.

Faces are frozensets of vertex labels.  Every complex remembers the *universe*
of cells it was cut from (e.g. the full face lattice of a polytope) so that
"all subfaces of F" is a lookup rather than a hull computation.

Two different empty complexes matter here: the *void* complex (no faces at
all, reduced Euler characteristic 0) and ``{∅}`` (only the empty face,
reduced Euler characteristic -1).  ``link`` returns the void complex for a
face outside K and ``{∅}`` for a maximal face of K.
"""
from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .exact_math import InputError
from .geometry import Cone, Polytope, face_lattice

FaceKey = frozenset


class PolyhedralComplex:
    def __init__(self, faces: Iterable[FaceKey], universe: Mapping[FaceKey, int],
                 coords: Mapping[int, tuple] | None = None, void: bool = False,
                 maximal_order: Sequence[FaceKey] | None = None,
                 validate: bool = True):
        self.universe = universe
        self.faces: dict[FaceKey, int] = {}
        for f in faces:
            f = frozenset(f)
            if not f:
                continue
            if f not in universe:
                raise InputError(f"{sorted(f)} is not a cell of the ambient complex")
            self.faces[f] = universe[f]
        if self.faces and void:
            raise InputError("a void complex has no faces")
        self.void = void
        self.coords = coords
        maximal = [f for f in self.faces
                   if not any(f < g for g in self.faces)]
        if maximal_order is not None:
            order = [frozenset(m) for m in maximal_order]
            rank = {m: i for i, m in enumerate(order)}
            maximal.sort(key=lambda m: (rank.get(m, len(order)), sorted(m)))
        else:
            maximal.sort(key=lambda m: (-self.faces[m], sorted(m)))
        self.maximal: tuple[FaceKey, ...] = tuple(maximal)
        if validate:
            self._validate()

    # ---------------------------------------------------------------------
    @classmethod
    def void_complex(cls, universe: Mapping[FaceKey, int] | None = None) -> "PolyhedralComplex":
        return cls((), universe or {}, void=True, validate=False)

    def _sub(self, faces: Iterable[FaceKey], maximal_order=None) -> "PolyhedralComplex":
        return PolyhedralComplex(faces, self.universe, self.coords,
                                 maximal_order=maximal_order, validate=False)

    def subfaces(self, f: FaceKey) -> list[FaceKey]:
        return [g for g in self.universe if g <= f]

    def _validate(self):
        for f in self.faces:
            for g in self.subfaces(f):
                if g not in self.faces:
                    raise InputError(f"not closed: {sorted(g)} missing below {sorted(f)}")
        keys = list(self.faces)
        for i, f in enumerate(keys):
            for g in keys[i + 1:]:
                h = f & g
                if h and h not in self.faces:
                    raise InputError(f"{sorted(f)} and {sorted(g)} meet in a non-face")

    def is_closed(self) -> bool:
        return all(g in self.faces for f in self.faces for g in self.subfaces(f))

    # ---------------------------------------------------------------------
    @property
    def dim(self) -> int:
        """Max face dimension; -1 for ``{∅}`` and the void complex."""
        return max(self.faces.values(), default=-1)

    @property
    def pure(self) -> bool:
        return len({self.faces[m] for m in self.maximal}) <= 1

    @property
    def is_empty(self) -> bool:
        return not self.faces

    def __contains__(self, f) -> bool:
        f = frozenset(f)
        if not f:
            return not self.void
        return f in self.faces

    def __len__(self):
        return len(self.faces)

    def __le__(self, other: "PolyhedralComplex") -> bool:
        return all(f in other.faces for f in self.faces) and (self.void or not other.void)

    def __eq__(self, other):
        return (isinstance(other, PolyhedralComplex) and self.faces.keys() == other.faces.keys()
                and self.void == other.void)

    def __hash__(self):
        return hash((frozenset(self.faces), self.void))

    def __repr__(self):
        if self.void:
            return "PolyhedralComplex(void)"
        return f"PolyhedralComplex(dim={self.dim}, faces={len(self.faces)}, maximal={len(self.maximal)})"

    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * (self.dim + 1)
        for d in self.faces.values():
            counts[d] += 1
        return tuple(counts)

    def faces_of_dim(self, d: int) -> list[FaceKey]:
        return sorted((f for f, k in self.faces.items() if k == d), key=sorted)

    def union(self, other: "PolyhedralComplex") -> "PolyhedralComplex":
        return self._sub(list(self.faces) + list(other.faces))


def _polytope_universe(P: Polytope) -> dict[FaceKey, int]:
    return {f.vertex_set: f.dim for f in face_lattice(P)}


def boundary_complex(P: Polytope) -> PolyhedralComplex:
    """All proper faces of P; maximal faces are ordered like ``P.facets``."""
    if P.dim < 1:
        raise InputError("boundary complex needs dim P >= 1")
    universe = _polytope_universe(P)
    top = frozenset(range(len(P.vertices)))
    faces = [f for f in universe if f != top]
    return PolyhedralComplex(faces, universe, dict(enumerate(P.vertices)),
                             maximal_order=P.facet_vertex_sets)


def polytope_complex(P: Polytope) -> PolyhedralComplex:
    """P together with all its faces (a ball)."""
    universe = _polytope_universe(P)
    return PolyhedralComplex(universe, universe, dict(enumerate(P.vertices)))


def cone_section_complex(C: Cone, faces: Iterable[FaceKey] | None = None,
                         void: bool = False) -> PolyhedralComplex:
    """Complex of faces of a pointed cone seen through a cross-section.

    A cone face with generator set S becomes the cell S of dimension
    ``dim - 1``; the apex becomes the empty face.  Without ``faces`` the result
    is the boundary fan of C.
    """
    universe = {f.vertex_set: f.dim - 1 for f in C.faces() if f.vertex_set}
    top = frozenset(range(len(C.generators)))
    if faces is None:
        faces = [f for f in universe if f != top]
    return PolyhedralComplex(faces, universe, void=void,
                             maximal_order=C.facet_generator_sets)


def subcomplex_generated(K: PolyhedralComplex, facets: Iterable[int],
                         complement: bool = False) -> PolyhedralComplex:
    """Subcomplex generated by selected maximal faces (or by the others).

    Selecting nothing yields the void complex.
    """
    sel = set(facets)
    n = len(K.maximal)
    bad = [i for i in sel if not 0 <= i < n]
    if bad:
        raise InputError(f"maximal-face indices out of range: {sorted(bad)}")
    chosen = [K.maximal[i] for i in range(n) if (i in sel) != complement]
    if not chosen:
        return PolyhedralComplex.void_complex(K.universe)
    faces = {g for m in chosen for g in K.subfaces(m)}
    return K._sub(faces, maximal_order=K.maximal)


def generated_by(K: PolyhedralComplex, cells: Iterable[FaceKey]) -> PolyhedralComplex:
    cells = [frozenset(c) for c in cells]
    if not cells:
        return PolyhedralComplex.void_complex(K.universe)
    if any(c and c not in K.universe for c in cells):
        raise InputError("generator is not a cell")
    return K._sub({g for c in cells for g in K.subfaces(c)}, maximal_order=K.maximal)


def link(K: PolyhedralComplex, F: Iterable) -> PolyhedralComplex:
    """``lk_K(F) = {G in K : G ∩ F = ∅, G ∪ F ⊆ H for some H in K}``."""
    F = frozenset(F)
    if F not in K:
        return PolyhedralComplex.void_complex(K.universe)
    if not F:
        return K._sub(K.faces)
    over = [h for h in K.faces if F <= h]
    faces = [g for g in K.faces if not (g & F) and any(g | F <= h for h in over)]
    return K._sub(faces)


def link_dim(K: PolyhedralComplex, F: Iterable) -> int:
    """Dimension of the geometric link: ``max dim H - dim F - 1`` over H ⊇ F.

    The combinatorial link above can have larger dimension for non-simplicial
    cells (e.g. two squares around an edge of a cube), but it has the homotopy
    type of the geometric link, whose dimension is what CM conditions use.
    """
    F = frozenset(F)
    if F not in K:
        return -1
    fd = K.faces[F] if F else -1
    top = max((K.faces[h] for h in K.faces if F <= h), default=fd)
    return top - fd - 1


def closed_star(K: PolyhedralComplex, F: Iterable) -> PolyhedralComplex:
    F = frozenset(F)
    if F not in K:
        raise InputError(f"{sorted(F)} is not a face of the complex")
    over = [h for h in K.faces if F <= h]
    return K._sub([g for g in K.faces if any(g | F <= h for h in over)])


def classify_faces(K: PolyhedralComplex, D: PolyhedralComplex):
    """Split the faces of D into interior and boundary faces relative to K.

    F is interior when every cell of K containing F already lies in D, i.e.
    the geometric link of F in K is inside D.  (Testing the combinatorial link
    instead misfires on non-simplicial cells: around a square of the torus in
    the 4-cube boundary it only sees the two opposite squares.)

    Returns ``(interior, boundary, boundary_complex)``.
    """
    if not D <= K:
        raise InputError("subcomplex is not contained in the complex")
    interior, boundary = set(), set()
    for f in D.faces:
        star = (h for h in K.faces if f <= h)
        (interior if all(h in D.faces for h in star) else boundary).add(f)
    bd = D._sub(boundary) if boundary else PolyhedralComplex.void_complex(K.universe)
    return interior, boundary, bd
