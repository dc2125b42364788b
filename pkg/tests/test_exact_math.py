from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from reciprocity.exact_math import (
    InputError,
    determinant,
    integer_kernel,
    interpolate_polynomial,
    lattice_basis,
    matrix_rank,
    primitive,
    smith_normal_form,
    solve_linear,
)

small = st.integers(-6, 6)
matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=m, max_size=m)))


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def test_snf_known_examples():
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]).diagonal == (2, 6, 12)
    assert smith_normal_form([[1, 2], [3, 4]]).diagonal == (1, 2)
    assert smith_normal_form([[0, 0], [0, 0]]).diagonal == (0, 0)
    # boundary of a triangle: rank 2
    assert smith_normal_form([[1, -1, 0], [0, 1, -1], [1, 0, -1]]).rank == 2


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_properties(M):
    r = smith_normal_form(M, transforms=True)
    D = [[r.diagonal[i] if i == j and i < len(r.diagonal) else 0 for j in range(len(M[0]))]
         for i in range(len(M))]
    assert matmul(matmul(r.left, M), r.right) == D
    nz = [d for d in r.diagonal if d]
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert all(d > 0 for d in nz)
    assert r.rank == matrix_rank(M) == len(nz)
    assert abs(determinant(r.left)) == 1 and abs(determinant(r.right)) == 1
    # fast path agrees with the dense path
    assert smith_normal_form(M).diagonal == r.diagonal


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_snf_determinant(M):
    prod = 1
    for d in smith_normal_form(M).diagonal:
        prod *= d
    assert prod == abs(determinant(M))


def test_solve_and_rank():
    assert solve_linear([[1, 1], [1, -1]], [3, 1]) == [2, 1]
    assert solve_linear([[1, 1], [2, 2]], [1, 3]) is None
    assert matrix_rank([[1, 2], [2, 4]]) == 1


def test_integer_kernel_and_lattice_basis():
    ker = integer_kernel([[1, 1, 1]], 3)
    assert len(ker) == 2 and all(sum(v) == 0 for v in ker)
    # the direction lattice of 2x + 3y = c is generated by (3, -2)
    (b,) = lattice_basis([(3, -2), (-6, 4)], 2)
    assert b in ((3, -2), (-3, 2))
    # span of (2, 0) meets Z^2 in multiples of (1, 0)
    assert lattice_basis([(2, 0)], 2) in ([(1, 0)], [(-1, 0)])


def test_primitive():
    assert primitive([Fraction(1, 2), 1]) == (1, 2)
    assert primitive([-4, 6]) == (-2, 3)
    with pytest.raises(InputError):
        primitive([0, 0])


def test_interpolation():
    pts = [(n, (n + 1) ** 3) for n in range(1, 5)]
    assert interpolate_polynomial(pts) == [1, 3, 3, 1]
    assert interpolate_polynomial([(1, 5), (2, 5)]) == [5]
    with pytest.raises(InputError):
        interpolate_polynomial([(1, 1), (1, 2)])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=1, max_size=5))
def test_interpolation_roundtrip(coeffs):
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    f = lambda x: sum(c * x ** i for i, c in enumerate(coeffs))
    got = interpolate_polynomial([(x, f(x)) for x in range(len(coeffs))])
    if coeffs == [0]:
        assert all(c == 0 for c in got)
    else:
        assert got == coeffs
