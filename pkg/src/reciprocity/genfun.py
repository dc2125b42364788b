"""Exact rational generating functions of pointed cones.

A cone is split into half-open simplicial pieces (pulling triangulation plus
a generic reference vector deciding which shared walls each piece keeps), and
each piece contributes ``sum_{p in Π} x^p / prod (1 - x^g)`` with Π the
lattice points of its half-open fundamental parallelepiped.  Identities are
tested by exact evaluation at seeded random rational points.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import numpy as np

from .complex import PolyhedralComplex, cone_section_complex, generated_by
from .exact_math import InputError, determinant, primitive, solve_linear
from .geometry import Cone, Polytope, face_of_point

MAX_INDEX = 10 ** 5
MAX_PARALLELEPIPED_BOX = 10 ** 7

Exponent = tuple


class PoleError(ArithmeticError):
    """Evaluation point lies on a pole of the rational function."""


# --------------------------------------------------------------------------
# Laurent polynomials


class LaurentPolynomial:
    __slots__ = ("terms", "dim")

    def __init__(self, terms: Mapping[Exponent, int] | Iterable[tuple[Exponent, int]] = (),
                 dim: int | None = None):
        acc: dict[Exponent, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            e = tuple(int(x) for x in e)
            acc[e] = acc.get(e, 0) + int(c)
        self.terms = {e: c for e, c in acc.items() if c}
        if dim is None:
            dim = len(next(iter(acc))) if acc else 0
        self.dim = dim

    @classmethod
    def monomial(cls, e: Exponent, c: int = 1) -> "LaurentPolynomial":
        return cls({tuple(e): c}, len(e))

    @classmethod
    def from_points(cls, points: Iterable[Exponent], dim: int) -> "LaurentPolynomial":
        return cls(((p, 1) for p in points), dim)

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return LaurentPolynomial(itertools.chain(self.terms.items(), other.terms.items()),
                                 self.dim)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        out = ((tuple(a + b for a, b in zip(e, f)), c * k)
               for e, c in self.terms.items() for f, k in other.terms.items())
        return LaurentPolynomial(out, self.dim)

    def scale(self, k: int) -> "LaurentPolynomial":
        return LaurentPolynomial({e: k * c for e, c in self.terms.items()}, self.dim)

    def shift(self, v: Exponent) -> "LaurentPolynomial":
        return LaurentPolynomial({tuple(a + b for a, b in zip(e, v)): c
                                  for e, c in self.terms.items()}, self.dim)

    def negate_exponents(self) -> "LaurentPolynomial":
        return LaurentPolynomial({tuple(-a for a in e): c for e, c in self.terms.items()},
                                 self.dim)

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        return sum((c * _monomial_value(e, point) for e, c in self.terms.items()), Fraction(0))

    def __eq__(self, other):
        return isinstance(other, LaurentPolynomial) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"LaurentPolynomial({len(self.terms)} terms)"

    def as_list(self) -> list:
        """Sorted ``[exponent, coefficient]`` pairs (JSON friendly)."""
        return [[list(e), c] for e, c in sorted(self.terms.items())]


def _monomial_value(e: Exponent, point: Sequence[Fraction]) -> Fraction:
    v = Fraction(1)
    for x, k in zip(point, e):
        if k:
            v *= x ** k
    return v


# --------------------------------------------------------------------------
# rational generating functions


def _canonical_ray(g: Exponent) -> tuple[Exponent, bool]:
    """Return (ray, flipped) with the first nonzero entry positive."""
    for x in g:
        if x:
            return (g, False) if x > 0 else (tuple(-y for y in g), True)
    raise InputError("zero denominator ray")


class RationalGenFun:
    """``sum_t num_t / prod_{g in rays_t} (1 - x^g)`` with canonical rays."""

    __slots__ = ("terms", "dim")

    def __init__(self, terms: Iterable[tuple[LaurentPolynomial, Sequence[Exponent]]], dim: int):
        self.dim = dim
        out = []
        for num, rays in terms:
            if not num.terms:
                continue
            fixed = []
            for g in rays:
                g = tuple(int(x) for x in g)
                if primitive(g) != g:
                    raise InputError(f"denominator ray {g} is not primitive")
                g, flipped = _canonical_ray(g)
                if flipped:
                    # 1/(1 - x^-g) = -x^g / (1 - x^g)
                    num = num.shift(g).scale(-1)
                fixed.append(g)
            out.append((num, tuple(sorted(fixed))))
        self.terms: tuple[tuple[LaurentPolynomial, tuple[Exponent, ...]], ...] = tuple(out)

    @classmethod
    def from_laurent(cls, f: LaurentPolynomial) -> "RationalGenFun":
        return cls([(f, ())], f.dim)

    @classmethod
    def zero(cls, dim: int) -> "RationalGenFun":
        return cls((), dim)

    @classmethod
    def one(cls, dim: int) -> "RationalGenFun":
        return cls.from_laurent(LaurentPolynomial.monomial((0,) * dim))

    def __add__(self, other: "RationalGenFun") -> "RationalGenFun":
        return RationalGenFun(self.terms + other.terms, self.dim)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int) -> "RationalGenFun":
        return RationalGenFun(((n.scale(k), r) for n, r in self.terms), self.dim)

    def shift(self, v: Exponent) -> "RationalGenFun":
        """Multiply by the monomial ``x^v``."""
        return RationalGenFun(((n.shift(v), r) for n, r in self.terms), self.dim)

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        return eval_rational(self, point)

    def __eq__(self, other):
        return isinstance(other, RationalGenFun) and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        return f"RationalGenFun(dim={self.dim}, terms={len(self.terms)})"


def substitute_reciprocal(f: RationalGenFun | LaurentPolynomial):
    """``f(1/x)``, with denominators renormalized to canonical rays."""
    if isinstance(f, LaurentPolynomial):
        return f.negate_exponents()
    # the constructor turns each negated ray back into a canonical one
    return RationalGenFun(((n.negate_exponents(), tuple(tuple(-x for x in g) for g in r))
                           for n, r in f.terms), f.dim)


def eval_rational(f: RationalGenFun | LaurentPolynomial, point: Sequence) -> Fraction:
    point = tuple(Fraction(x) for x in point)
    if any(x == 0 for x in point):
        raise PoleError("coordinates must be nonzero")
    if isinstance(f, LaurentPolynomial):
        return f.evaluate(point)
    total = Fraction(0)
    cache: dict = {}
    for num, rays in f.terms:
        den = Fraction(1)
        for g in rays:
            m = cache.get(g)
            if m is None:
                m = cache[g] = _monomial_value(g, point)
            den *= 1 - m
        if den == 0:
            raise PoleError(f"pole along ray {g}")
        total += num.evaluate(point) / den
    return total


@dataclass(frozen=True)
class Equality:
    verdict: str  # EQUAL | NOT_EQUAL
    trials: int
    seed: int
    witness: dict | None = None

    @property
    def equal(self) -> bool:
        return self.verdict == "EQUAL"

    def as_dict(self) -> dict:
        out = {"verdict": self.verdict, "randomized": True, "trials": self.trials,
               "seed": self.seed}
        if self.witness:
            out["witness"] = self.witness
        return out


def _random_point(rng: random.Random, dim: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(rng.randint(1, 10 ** 6), rng.randint(1, 10 ** 6)) * rng.choice((1, -1))
                 for _ in range(dim))


def rational_equal(f, g, trials: int = 16, seed: int = 0) -> Equality:
    """Randomized exact identity test; deterministic for a given seed."""
    dim = f.dim
    if g.dim != dim:
        raise InputError("ambient dimensions differ")
    rng = random.Random(seed)
    done = 0
    misses = 0
    while done < trials:
        p = _random_point(rng, dim)
        try:
            a, b = eval_rational(f, p), eval_rational(g, p)
        except PoleError:
            misses += 1
            if misses > 100 * trials:
                raise
            continue
        done += 1
        if a != b:
            return Equality("NOT_EQUAL", done, seed,
                            {"point": [str(x) for x in p], "lhs": str(a), "rhs": str(b)})
    return Equality("EQUAL", trials, seed)


# --------------------------------------------------------------------------
# half-open simplicial cones


def _inverse(G: Sequence[Sequence[int]]) -> list[list[Fraction]]:
    """Inverse of a square matrix (columns solved one at a time)."""
    k = len(G)
    cols = [solve_linear(G, [int(i == j) for i in range(k)]) for j in range(k)]
    return [[cols[j][i] for j in range(k)] for i in range(k)]


@dataclass(frozen=True)
class HalfOpenSimplicialCone:
    """``shift + {sum λ_i g_i : λ_i >= 0, λ_i > 0 for i in open_facets}``.

    Facet i is the one opposite generator i.  ``local`` holds the generators in
    a lattice basis of their span (``basis``), so enumeration is intrinsic.
    """
    generators: tuple[tuple[int, ...], ...]
    open_facets: frozenset
    shift: tuple[int, ...]
    local: tuple[tuple[int, ...], ...] = field(repr=False)
    basis: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.generators)

    @property
    def index(self) -> int:
        return abs(int(determinant(self.local))) if self.local else 1

    def contains(self, x: Sequence) -> bool:
        rel = [Fraction(a) - b for a, b in zip(x, self.shift)]
        if not self.generators:
            return all(r == 0 for r in rel)
        cols = [[g[i] for g in self.generators] for i in range(len(rel))]
        lam = solve_linear(cols, rel)
        if lam is None:
            return False
        return all(l > 0 if i in self.open_facets else l >= 0 for i, l in enumerate(lam))

    def parallelepiped_points(self) -> list[tuple[int, ...]]:
        """Lattice points of the half-open fundamental parallelepiped (ambient)."""
        k = self.dim
        if k == 0:
            return [self.shift]
        D = int(determinant(self.local))
        if abs(D) > MAX_INDEX:
            raise InputError(f"cone index {abs(D)} exceeds {MAX_INDEX}")
        adj = [[int(x * D) for x in row] for row in _inverse(self.local)]
        if D < 0:
            D, adj = -D, [[-x for x in row] for row in adj]
        G = np.array(self.local, dtype=np.int64)
        lo = np.minimum(G, 0).sum(axis=0)
        hi = np.maximum(G, 0).sum(axis=0)
        if int(np.prod((hi - lo + 1).astype(object))) > MAX_PARALLELEPIPED_BOX:
            raise InputError("parallelepiped box too large")
        A = np.array(adj, dtype=np.int64)
        opened = np.zeros(k, dtype=bool)
        opened[list(self.open_facets)] = True
        grid = np.stack(np.meshgrid(*[np.arange(lo[i], hi[i] + 1) for i in range(k)],
                                    indexing="ij"), -1).reshape(-1, k)
        mu = grid @ A  # λ * D
        ok = np.where(opened, (mu > 0) & (mu <= D), (mu >= 0) & (mu < D)).all(axis=1)
        pts = grid[ok] @ np.array(self.basis, dtype=np.int64)
        shift = np.array(self.shift, dtype=np.int64)
        return sorted(tuple(int(x) for x in row + shift) for row in pts)

    def genfun(self) -> RationalGenFun:
        d = len(self.shift)
        num = LaurentPolynomial.from_points(self.parallelepiped_points(), d)
        return RationalGenFun([(num, self.generators)], d)


def _faces_below(C: Cone, S: frozenset, dim: int) -> list[frozenset]:
    return sorted((vs for vs, f in C._faces.items() if vs < S and f.dim == dim - 1), key=sorted)


def _pulling_triangulation(C: Cone) -> list[frozenset]:
    """Simplices (generator index sets) of the pulling triangulation.

    Generators are pulled in index order; each face is coned from its first
    generator over the triangulations of the facets avoiding it.
    """
    memo: dict[frozenset, list[frozenset]] = {}

    def tri(S: frozenset) -> list[frozenset]:
        if S in memo:
            return memo[S]
        dim = C._faces[S].dim
        if len(S) == dim:
            out = [S]
        else:
            v = min(S)
            out = [t | {v} for G in _faces_below(C, S, dim) if v not in G for t in tri(G)]
        memo[S] = out
        return out

    return tri(frozenset(range(len(C.generators))))


def _generic_reference(C: Cone, simplices: list, reference=None):
    """A point of int C off every wall of every simplex, in intrinsic coords."""
    k = C.dim
    local = C._local_generators
    inverses = [_inverse([local[i] for i in sorted(s)]) for s in simplices]

    def generic(y):
        if not all(sum(a * c for a, c in zip(n, y)) < 0 for n in C.normals):
            return False
        for inv in inverses:
            for j in range(k):
                if sum(y[i] * inv[i][j] for i in range(k)) == 0:
                    return False
        return True

    if reference is not None:
        base = list(C.frame.coords([Fraction(x) for x in reference]))
    else:
        base = [sum(Fraction(g[i]) for g in local) for i in range(k)]
    for ratio in (2, 3, 5, 7):
        pert = [Fraction(1, ratio ** i) for i in range(k)]
        for t in range(1, 40):
            eps = Fraction(1, 10 ** t)
            y = [b + eps * p for b, p in zip(base, pert)]
            if generic(y):
                return y, inverses
    raise InputError("no generic reference vector found")


def triangulate_and_halfopen(C: Cone, reference: Sequence | None = None,
                             interior: bool = False) -> list[HalfOpenSimplicialCone]:
    """Partition C (or relint C when ``interior``) into half-open simplicial cones.

    Wall j of a piece is opened when the reference lies strictly on the far
    side of it; ``interior`` flips the rule, which opens every boundary wall.
    """
    if C.generators is None:
        raise InputError("cone needs generators")
    if not C.is_pointed:
        raise InputError("cone is not pointed")
    basis = C.frame.basis
    if C.dim == 0:
        return [HalfOpenSimplicialCone((), frozenset(), tuple(int(a) for a in C.apex), (), ())]
    if any(Fraction(a).denominator != 1 for a in C.apex):
        raise InputError("apex must be a lattice point")
    apex = tuple(int(a) for a in C.apex)
    simplices = _pulling_triangulation(C)
    y, inverses = _generic_reference(C, simplices, reference)
    pieces = []
    for s, inv in zip(simplices, inverses):
        idx = sorted(s)
        k = len(idx)
        lam = [sum(y[i] * inv[i][j] for i in range(k)) for j in range(k)]
        opened = frozenset(j for j in range(k) if (lam[j] > 0 if interior else lam[j] < 0))
        pieces.append(HalfOpenSimplicialCone(
            tuple(C.generators[i] for i in idx), opened, apex,
            tuple(C._local_generators[i] for i in idx), basis))
    return pieces


# --------------------------------------------------------------------------
# generating functions of cones and regions


@lru_cache(maxsize=4096)
def _cone_genfun(generators: tuple, apex: tuple, interior: bool) -> RationalGenFun:
    d = len(apex)
    if not generators:
        return RationalGenFun.one(d).shift(apex)
    C = Cone.from_generators(generators, apex)
    total = RationalGenFun.zero(d)
    for piece in triangulate_and_halfopen(C, interior=interior):
        total = total + piece.genfun()
    return total


def _key(C: Cone) -> tuple:
    if C.generators is None:
        raise InputError("cone needs generators")
    return tuple(C.generators), tuple(int(a) for a in C.apex)


def genfun_cone(C: Cone, mode: str = "closed") -> RationalGenFun:
    """``F_C`` (mode ``closed``) or ``F_{relint C}`` (mode ``relint``)."""
    if mode not in ("closed", "relint"):
        raise InputError(f"unknown mode {mode!r}")
    if not C.is_pointed:
        raise InputError("cone is not pointed")
    gens, apex = _key(C)
    return _cone_genfun(gens, apex, mode == "relint")


def genfun_relint_by_faces(C: Cone) -> RationalGenFun:
    """``F_{relint C} = sum_G (-1)^(dim C - dim G) F_G`` over all faces, apex included."""
    total = RationalGenFun.zero(C.ambient_dim)
    for G in C.faces():
        total = total + genfun_cone(C.face_cone(G)).scale((-1) ** (C.dim - G.dim))
    return total


def _check_fan_subcomplex(C: Cone, D: PolyhedralComplex):
    top = frozenset(range(len(C.generators)))
    for f in D.faces:
        if f not in C._faces or f == top:
            raise InputError(f"{sorted(f)} is not a proper face of the cone")


def genfun_region(C: Cone, D: PolyhedralComplex) -> RationalGenFun:
    """``F_{C \\ |D|} = F_C - sum_{G in D} F_{relint G}``.

    ``D`` lives in the cross-section complex of C: cells are generator index
    sets and the apex is the empty cell, present unless D is void.
    """
    _check_fan_subcomplex(C, D)
    out = genfun_cone(C)
    for f in sorted(D.faces, key=sorted):
        out = out - genfun_cone(C.face_cone(C._faces[f]), "relint")
    if not D.void:
        out = out - RationalGenFun.one(C.ambient_dim).shift(_key(C)[1])
    return out


def cone_facet_subcomplex(C: Cone, facets: Iterable[int]) -> PolyhedralComplex:
    """Cross-section subcomplex generated by the listed facets of C (void if none)."""
    K = cone_section_complex(C)
    sets = C.facet_generator_sets
    chosen = sorted(set(facets))
    if any(not 0 <= i < len(sets) for i in chosen):
        raise InputError("facet index out of range")
    return generated_by(K, [sets[i] for i in chosen])


def laurent_of_region(P: Polytope, D: PolyhedralComplex | None = None,
                      removed_facets: Iterable[int] = ()) -> LaurentPolynomial:
    """``F_{P \\ |D|}`` by enumeration; D is any subcomplex of the boundary of P."""
    from .ehrhart import lattice_points
    pts = lattice_points(P, 1, removed_facets)
    if D is not None and not D.void:
        pts = [p for p in pts if face_of_point(P, p).vertex_set not in D.faces]
    return LaurentPolynomial.from_points(pts, P.ambient_dim)


def _piece_mask(piece: HalfOpenSimplicialCone, grid: np.ndarray) -> np.ndarray:
    rel = grid - np.array(piece.shift, dtype=np.int64)
    k, d = piece.dim, grid.shape[1]
    if k < d:
        return np.array([piece.contains(tuple(int(x) for x in row)) for row in grid], dtype=bool)
    G = [list(g) for g in piece.generators]
    D = int(determinant(G))
    adj = np.array([[int(x * D) for x in row] for row in _inverse(G)], dtype=np.int64)
    if D < 0:
        D, adj = -D, -adj
    mu = rel @ adj
    opened = np.zeros(k, dtype=bool)
    opened[list(piece.open_facets)] = True
    return np.where(opened, mu > 0, mu >= 0).all(axis=1)


def box_grid(dim: int, radius: int) -> np.ndarray:
    axes = [np.arange(-radius, radius + 1)] * dim
    return np.stack(np.meshgrid(*axes, indexing="ij"), -1).reshape(-1, dim)


def box_series(pieces: Sequence[HalfOpenSimplicialCone], radius: int) -> np.ndarray:
    """Per lattice point of ``[-radius, radius]^d``, how many pieces contain it."""
    if not pieces:
        raise InputError("no pieces")
    grid = box_grid(len(pieces[0].shift), radius)
    total = np.zeros(len(grid), dtype=np.int64)
    for p in pieces:
        total += _piece_mask(p, grid)
    return total


def box_membership(C: Cone, radius: int, interior: bool = False) -> np.ndarray:
    """Facet-inequality membership of the box points in a full-dimensional cone."""
    if C.dim != C.ambient_dim:
        raise InputError("box membership needs a full-dimensional cone")
    grid = box_grid(C.ambient_dim, radius) - np.array([int(a) for a in C.apex], dtype=np.int64)
    vals = grid @ np.array(C.normals, dtype=np.int64).T
    return ((vals < 0) if interior else (vals <= 0)).all(axis=1).astype(np.int64)
