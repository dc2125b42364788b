"""Exact integer and rational linear algebra.

Everything here works on Python ints and :class:`fractions.Fraction`; there is
no floating point anywhere in the package.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Rational = Fraction


class InputError(ValueError):
    """Raised when an operation receives malformed input."""


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise InputError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise InputError("ragged matrix")
        return cls(len(rows), cols, tuple(int(x) for r in rows for x in r))

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]


@dataclass(frozen=True)
class SNFResult:
    """Smith normal form ``left @ M @ right == diag(diagonal)``.

    ``left``/``right`` are only filled when transforms were requested.
    """
    diagonal: tuple[int, ...]
    rank: int
    left: tuple[tuple[int, ...], ...] | None = None
    right: tuple[tuple[int, ...], ...] | None = None


def _as_rows(M) -> list[list[int]]:
    if isinstance(M, IntMatrix):
        return M.to_rows()
    return [[int(x) for x in row] for row in M]


def _dense_snf(a: list[list[int]], track: bool):
    """In-place SNF of a dense matrix; returns (diag, U, V) with U a V = D."""
    m = len(a)
    n = len(a[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if track:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if track:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row dst += k * row src
        ra, rs = a[dst], a[src]
        for c in range(n):
            if rs[c]:
                ra[c] += k * rs[c]
        if track:
            ua, us = U[dst], U[src]
            for c in range(m):
                ua[c] += k * us[c]

    def add_col(dst, src, k):  # col dst += k * col src
        for row in a:
            if row[src]:
                row[dst] += k * row[src]
        if track:
            for row in V:
                row[dst] += k * row[src]

    diag = []
    for t in range(min(m, n)):
        # pivot: smallest nonzero |entry| in the trailing block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            # remainders smaller than the pivot become the new pivot
            cand = None
            for i in range(t + 1, m):
                if a[i][t] and (cand is None or abs(a[i][t]) < cand[0]):
                    cand = (abs(a[i][t]), 'r', i)
            for j in range(t + 1, n):
                if a[t][j] and (cand is None or abs(a[t][j]) < cand[0]):
                    cand = (abs(a[t][j]), 'c', j)
            if cand is not None:
                done = False
                if cand[1] == 'r':
                    swap_rows(t, cand[2])
                else:
                    swap_cols(t, cand[2])
                continue
            # divisibility of the remaining block
            p = a[t][t]
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is not None:
                add_row(t, bad, 1)
                done = False
                continue
            if done:
                break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if track:
                U[t] = [-x for x in U[t]]
        diag.append(a[t][t])
    return diag, U, V


def _sparse_unit_phase(rows: list[list[int]]):
    """Eliminate every unit pivot sparsely; return (#units, leftover dense block).

    With a pivot of +-1, clearing its column by row operations leaves the pivot
    row's other entries removable by column operations touching that row only,
    so row and column can simply be dropped.
    """
    R = {}
    cols: dict[int, set[int]] = {}
    for i, row in enumerate(rows):
        d = {j: v for j, v in enumerate(row) if v}
        if d:
            R[i] = d
            for j in d:
                cols.setdefault(j, set()).add(i)
    units = 0
    while True:
        pivot = None
        for i, d in R.items():
            for j, v in d.items():
                if v == 1 or v == -1:
                    pivot = (i, j, v)
                    break
            if pivot:
                break
        if pivot is None:
            break
        pi, pj, pv = pivot
        prow = R.pop(pi)
        for j in prow:
            cols[j].discard(pi)
        for i in list(cols.get(pj, ())):
            d = R[i]
            k = d[pj] * pv  # d[pj] / pv with pv = +-1
            for j, v in prow.items():
                nv = d.get(j, 0) - k * v
                if nv:
                    if j not in d:
                        cols[j].add(i)
                    d[j] = nv
                elif j in d:
                    del d[j]
                    cols[j].discard(i)
            if not d:
                del R[i]
        cols.pop(pj, None)
        units += 1
    live_cols = sorted({j for d in R.values() for j in d})
    idx = {j: k for k, j in enumerate(live_cols)}
    block = []
    for d in R.values():
        row = [0] * len(live_cols)
        for j, v in d.items():
            row[idx[j]] = v
        block.append(row)
    return units, block


def smith_normal_form(M, transforms: bool = False) -> SNFResult:
    """Smith normal form of an integer matrix.

    Pivots are chosen by minimal absolute value. Without ``transforms`` a
    sparse pass removes all unit pivots first, which keeps boundary matrices of
    order complexes cheap.
    """
    rows = _as_rows(M)
    if isinstance(M, IntMatrix):
        m, n = M.rows, M.cols
    else:
        m = len(rows)
        n = len(rows[0]) if rows else 0
    size = min(m, n)
    if transforms:
        a = [list(r) for r in rows]
        diag, U, V = _dense_snf(a, True) if size else ([], None, None)
        if U is None:
            U = [[int(i == j) for j in range(m)] for i in range(m)]
            V = [[int(i == j) for j in range(n)] for i in range(n)]
        full = tuple(diag) + (0,) * (size - len(diag))
        return SNFResult(full, len(diag), tuple(map(tuple, U)), tuple(map(tuple, V)))
    units, block = _sparse_unit_phase(rows)
    rest = _dense_snf(block, False)[0] if block else []
    diag = [1] * units + rest
    full = tuple(diag) + (0,) * (size - len(diag))
    return SNFResult(full, len(diag))


def matrix_rank(A: Sequence[Sequence]) -> int:
    return len(_row_echelon([[Fraction(x) for x in r] for r in A])[1])


def _row_echelon(a: list[list[Fraction]]):
    """Reduced row echelon form in place; returns (a, pivot columns)."""
    m = len(a)
    n = len(a[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return a, pivots


def solve_linear(A: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One exact solution of ``A x = b`` (free variables set to 0), or None."""
    m = len(A)
    if m == 0:
        return []
    n = len(A[0])
    aug = [[Fraction(x) for x in A[i]] + [Fraction(b[i])] for i in range(m)]
    aug, piv = _row_echelon(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for r, c in enumerate(piv):
        x[c] = aug[r][n]
    return x


def nullspace(A: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """Rational basis of ``{x : A x = 0}``."""
    if not A:
        n = ncols or 0
        return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    n = len(A[0])
    a, piv = _row_echelon([[Fraction(x) for x in r] for r in A])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, c in enumerate(piv):
            v[c] = -a[r][f]
        basis.append(v)
    return basis


def primitive(v: Iterable) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    v = [Fraction(x) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    w = [int(x * den) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    if g == 0:
        raise InputError("zero vector has no primitive representative")
    return tuple(x // g for x in w)


def integer_kernel(A: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Z-basis of the integer solutions of ``A x = 0``."""
    if not A:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    res = smith_normal_form(A, transforms=True)
    V = res.right
    return [tuple(V[i][j] for i in range(ncols)) for j in range(res.rank, ncols)]


def lattice_basis(directions: Sequence[Sequence], dim: int) -> list[tuple[int, ...]]:
    """Z-basis of ``span(directions) ∩ Z^dim`` (the saturated sublattice)."""
    dirs = [d for d in directions if any(x != 0 for x in d)]
    if not dirs:
        return []
    ortho = nullspace(dirs, dim)
    if not ortho:
        return [tuple(int(i == j) for j in range(dim)) for i in range(dim)]
    A = [list(primitive(v)) for v in ortho]
    return integer_kernel(A, dim)


def determinant(A: Sequence[Sequence]) -> Fraction:
    a = [[Fraction(x) for x in r] for r in A]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def _poly_mul(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    return out


def interpolate_polynomial(points: Sequence[tuple]) -> list[Fraction]:
    """Coefficients (constant term first) of the Lagrange interpolant.

    Trailing zero coefficients are dropped; the zero polynomial is ``[0]``.
    """
    pts = [(Fraction(x), Fraction(y)) for x, y in points]
    if not pts:
        raise InputError("need at least one point")
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise InputError("duplicate abscissae")
    coeffs = [Fraction(0)] * len(pts)
    for i, (xi, yi) in enumerate(pts):
        if yi == 0:
            continue
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = _poly_mul(basis, [-xj, Fraction(1)])
                denom *= xi - xj
        scale = yi / denom
        for k, c in enumerate(basis):
            coeffs[k] += scale * c
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def eval_polynomial(coeffs: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
