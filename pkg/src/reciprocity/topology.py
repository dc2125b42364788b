"""Integral reduced homology and (weak) Cohen-Macaulay / manifold tests.

Homology of a polyhedral complex is computed on its order complex (chains of
faces), which is homeomorphic to the underlying space and needs no geometric
triangulation.  Coefficients are Z throughout; torsion is reported.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable

from .complex import PolyhedralComplex, link, link_dim
from .exact_math import smith_normal_form


@dataclass(frozen=True)
class SimplicialComplex:
    """Downward-closed family of simplices over sortable vertex labels.

    ``simplices`` holds the nonempty simplices only; ``void`` distinguishes the
    void complex from ``{∅}``.
    """
    simplices: frozenset
    void: bool = False
    labels: dict | None = field(default=None, compare=False, hash=False)

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable], void: bool = False) -> "SimplicialComplex":
        out = set()
        for f in facets:
            f = tuple(sorted(f))
            n = len(f)
            for mask in range(1, 1 << n):
                out.add(tuple(f[i] for i in range(n) if mask >> i & 1))
        return cls(frozenset(frozenset(s) for s in out), void)

    @property
    def vertices(self) -> list:
        return sorted({v for s in self.simplices for v in s})

    @property
    def dim(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def f_vector(self) -> tuple[int, ...]:
        counts = [0] * (self.dim + 1)
        for s in self.simplices:
            counts[len(s) - 1] += 1
        return tuple(counts)


@dataclass(frozen=True)
class HomologyProfile:
    """Reduced integral homology; ``groups[i + 1]`` is ``(free rank, torsion)`` of H̃_i."""
    groups: tuple[tuple[int, tuple[int, ...]], ...]

    def rank(self, i: int) -> int:
        j = i + 1
        return self.groups[j][0] if 0 <= j < len(self.groups) else 0

    def torsion(self, i: int) -> tuple[int, ...]:
        j = i + 1
        return self.groups[j][1] if 0 <= j < len(self.groups) else ()

    def vanishes(self, i: int) -> bool:
        return self.rank(i) == 0 and not self.torsion(i)

    @property
    def top_degree(self) -> int:
        return len(self.groups) - 2

    def is_trivial(self) -> bool:
        return all(r == 0 and not t for r, t in self.groups)

    def is_sphere(self, k: int) -> bool:
        """Same reduced homology as S^k (k = -1 is the empty sphere {∅})."""
        return all((r, t) == ((1, ()) if i - 1 == k else (0, ()))
                   for i, (r, t) in enumerate(self.groups)) and k <= self.top_degree

    def euler(self) -> int:
        return sum((-1) ** (i - 1) * r for i, (r, _) in enumerate(self.groups))

    def ranks(self) -> tuple[int, ...]:
        return tuple(r for r, _ in self.groups)

    def as_dict(self) -> dict:
        return {str(i - 1): {"rank": r, "torsion": list(t)}
                for i, (r, t) in enumerate(self.groups)}

    def describe(self, i: int) -> str:
        parts = []
        if self.rank(i):
            parts.append("Z" if self.rank(i) == 1 else f"Z^{self.rank(i)}")
        parts += [f"Z/{t}" for t in self.torsion(i)]
        return " + ".join(parts) or "0"


def order_complex(K: PolyhedralComplex) -> SimplicialComplex:
    """Chains ``F_0 ⊊ ... ⊊ F_k`` of nonempty faces; labels are face ids."""
    if K.void:
        return SimplicialComplex(frozenset(), True, {})
    faces = sorted(K.faces, key=lambda f: (K.faces[f], sorted(f)))
    ids = {f: i for i, f in enumerate(faces)}
    above = {f: [g for g in faces if f < g] for f in faces}
    chains = set()

    def grow(chain, last):
        chains.add(frozenset(chain))
        for g in above[last]:
            chain.append(ids[g])
            grow(chain, g)
            chain.pop()

    for f in faces:
        grow([ids[f]], f)
    return SimplicialComplex(frozenset(chains), False, dict(enumerate(faces)))


def face_poset_link(K: PolyhedralComplex, F) -> SimplicialComplex:
    """Order complex of the open upper interval ``{G in K : G ⊋ F}``.

    Homeomorphic to the geometric link of F; used as an independent check on
    the combinatorial link.
    """
    F = frozenset(F)
    if F not in K:
        return SimplicialComplex(frozenset(), True, {})
    faces = sorted((g for g in K.faces if F < g), key=lambda g: (K.faces[g], sorted(g)))
    ids = {f: i for i, f in enumerate(faces)}
    chains = set()

    def grow(chain, last):
        chains.add(frozenset(chain))
        for g in faces:
            if last < g:
                chain.append(ids[g])
                grow(chain, g)
                chain.pop()

    for f in faces:
        grow([ids[f]], f)
    return SimplicialComplex(frozenset(chains), False, dict(enumerate(faces)))


def _boundary_rows(lower: dict, upper: list[tuple]) -> list[list[int]]:
    """Boundary matrix with one row per upper simplex (transposed layout).

    SNF invariants do not depend on transposition.
    """
    rows = []
    n = len(lower)
    for s in upper:
        row = [0] * n
        for i in range(len(s)):
            row[lower[s[:i] + s[i + 1:]]] += -1 if i % 2 else 1
        rows.append(row)
    return rows


def reduced_homology(S: SimplicialComplex) -> HomologyProfile:
    """Reduced homology over Z via Smith normal forms of boundary maps.

    The void complex has all groups zero (reduced Euler characteristic 0);
    ``{∅}`` has H̃_-1 = Z.
    """
    if S.void:
        return HomologyProfile(((0, ()),))
    top = S.dim
    by_dim: list[list[tuple]] = [[()]]  # degree -1: the empty simplex
    for k in range(top + 1):
        by_dim.append(sorted(tuple(sorted(s)) for s in S.simplices if len(s) == k + 1))
    index = [{s: i for i, s in enumerate(level)} for level in by_dim]
    # boundary ranks and torsion: bd[k] is the map from degree k to k-1
    ranks = {}
    tors = {}
    for k in range(0, top + 1):
        rows = _boundary_rows(index[k], by_dim[k + 1])
        if not rows or not index[k]:
            ranks[k], tors[k] = 0, ()
            continue
        snf = smith_normal_form(rows)
        ranks[k] = snf.rank
        tors[k] = tuple(d for d in snf.diagonal if d > 1)
    groups = []
    for k in range(-1, top + 1):
        n = len(by_dim[k + 1])
        free = n - ranks.get(k, 0) - ranks.get(k + 1, 0)
        groups.append((free, tors.get(k + 1, ())))
    return HomologyProfile(tuple(groups))


def reduced_euler_char(K: PolyhedralComplex) -> int:
    """``sum_{∅≠F∈K} (-1)^dim F - 1``, and 0 for the void complex."""
    if K.void:
        return 0
    return sum((-1) ** d for d in K.faces.values()) - 1


def euler_char(K: PolyhedralComplex) -> int:
    """Unreduced Euler characteristic (0 for the void complex and for {∅})."""
    return sum((-1) ** d for d in K.faces.values())


_HOMOLOGY_CACHE: dict = {}


def complex_homology(K: PolyhedralComplex) -> HomologyProfile:
    key = (frozenset(K.faces), K.void)
    hit = _HOMOLOGY_CACHE.get(key)
    if hit is None:
        hit = reduced_homology(order_complex(K))
        if len(_HOMOLOGY_CACHE) < 50000:
            _HOMOLOGY_CACHE[key] = hit
    return hit


class CM(enum.IntEnum):
    NotWeaklyCM = 0
    WeaklyCM = 1
    CM = 2


@dataclass(frozen=True)
class CMStatus:
    value: CM
    witness: dict | None = None

    @property
    def weakly_cm(self) -> bool:
        return self.value >= CM.WeaklyCM

    @property
    def cm(self) -> bool:
        return self.value == CM.CM

    def as_dict(self) -> dict:
        return {"value": self.value.name, "witness": self.witness}


def _face_label(K: PolyhedralComplex, F) -> list:
    if K.coords:
        return [list(K.coords[v]) for v in sorted(F)]
    return sorted(F)


def _link_failure(K: PolyhedralComplex, F):
    lk = link(K, F)
    h = complex_homology(lk)
    for i in range(0, link_dim(K, F)):
        if not h.vanishes(i):
            return {"face": _face_label(K, F), "face_dim": K.faces[F], "degree": i,
                    "homology": h.describe(i), "reason": "link homology below top degree"}
    return None


def cm_status(K: PolyhedralComplex) -> CMStatus:
    """Weakly CM iff every nonempty face's link has H̃_i = 0 for i below its dimension."""
    if not K.pure:
        return CMStatus(CM.NotWeaklyCM, {"reason": "not pure"})
    for F in sorted(K.faces, key=lambda f: (K.faces[f], sorted(f))):
        w = _link_failure(K, F)
        if w:
            return CMStatus(CM.NotWeaklyCM, w)
    h = complex_homology(K)
    for i in range(0, K.dim):
        if not h.vanishes(i):
            return CMStatus(CM.WeaklyCM, {"face": None, "degree": i, "homology": h.describe(i),
                                          "reason": "complex itself has homology below top degree"})
    return CMStatus(CM.CM)


class Manifold(enum.Enum):
    No = "No"
    WithBoundary = "WithBoundary"
    WithoutBoundary = "WithoutBoundary"


def homology_manifold_status(K: PolyhedralComplex) -> tuple[Manifold, dict | None]:
    """Every link is a homology (dim K - dim F - 1)-sphere or homologically trivial."""
    if not K.pure:
        return Manifold.No, {"reason": "not pure"}
    d = K.dim
    boundary = False
    for F in sorted(K.faces, key=lambda f: (K.faces[f], sorted(f))):
        h = complex_homology(link(K, F))
        k = d - K.faces[F] - 1
        if h.is_sphere(k):
            continue
        if h.is_trivial():
            boundary = True
            continue
        return Manifold.No, {"face": _face_label(K, F), "face_dim": K.faces[F],
                             "link_homology": h.as_dict()}
    return (Manifold.WithBoundary if boundary else Manifold.WithoutBoundary), None
