from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from symqcs.errors import ConfigurationError
from symqcs.linalg import (QQ, Field, Matrix, ModP, Subspace, kron, matrix_from_json, matrix_to_json,
                           nullspace, rref_kernel_image, solve)

small = st.integers(-3, 3)


def dense(rows, cols):
    return st.lists(st.lists(small, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


def test_identity_rank_and_kernel():
    r, K, _ = rref_kernel_image(Matrix.identity(2))
    assert r == 2 and K.ncols == 0


def test_zero_matrix():
    r, K, I = rref_kernel_image(Matrix.zeros(3, 4))
    assert r == 0 and K.ncols == 4 and I.ncols == 0


def test_rank_one_kernel_by_hand():
    r, K, _ = rref_kernel_image(Matrix.from_dense([[1, 2], [2, 4]]))
    assert r == 1
    assert K.to_dense() == [[-2], [1]]


def test_kron_examples():
    assert kron(Matrix.identity(2), Matrix.identity(3)) == Matrix.identity(6)
    assert kron(Matrix.from_dense([[2]]), Matrix.from_dense([[3]])).to_dense() == [[6]]


def test_kron_lexicographic_order():
    a = Matrix.from_dense([[1, 2], [3, 4]])
    b = Matrix.from_dense([[0, 1], [1, 0]])
    assert kron(a, b).to_dense() == [[0, 1, 0, 2], [1, 0, 2, 0], [0, 3, 0, 4], [3, 0, 4, 0]]


def test_fraction_entries_normalised():
    m = Matrix.from_dense([[Fraction(4, 2), Fraction(1, 3)]])
    assert m[0, 0] == 2 and isinstance(m[0, 0], int)
    assert m[0, 1] == Fraction(1, 3)


def test_gf_p_arithmetic():
    F = Field(5)
    a, b = F(3), F(4)
    assert a + b == F(2) and a * b == F(2)
    assert F.inv(a) * a == F.one
    assert F.to_str(F(-1)) == "4 mod 5"
    with pytest.raises(ConfigurationError):
        Field(6)
    with pytest.raises(ConfigurationError):
        QQ(ModP(1, 5))


def test_json_round_trip():
    m = Matrix.from_dense([[1, Fraction(-1, 2)], [0, 3]])
    assert matrix_from_json(matrix_to_json(m)) == m
    assert matrix_to_json(m)[0][1] == "-1/2"


@given(dense(3, 3), dense(2, 2))
def test_rank_of_kron_multiplies(a, b):
    A, B = Matrix.from_dense(a), Matrix.from_dense(b)
    assert kron(A, B).rank() == A.rank() * B.rank()


@given(dense(3, 4), st.lists(small, min_size=4, max_size=4))
def test_solve_round_trip(a, x):
    A = Matrix.from_dense(a)
    xv = {i: v for i, v in enumerate(x) if v}
    b = A.apply(xv)
    y = solve(A, b)
    assert y is not None and A.apply(y) == b


@given(dense(3, 5))
def test_rank_nullity_and_kernel(a):
    A = Matrix.from_dense(a)
    r, K, I = rref_kernel_image(A)
    assert r + K.ncols == A.ncols
    assert (A @ K).is_zero()
    assert I.rank() == r
    assert len(nullspace(A.rows, A.ncols)) == K.ncols


@given(dense(4, 3), dense(3, 3))
def test_subspace_intersection_and_sum(a, b):
    U = Subspace(3, QQ, [dict(enumerate(r)) for r in a])
    V = Subspace(3, QQ, [dict(enumerate(r)) for r in b])
    assert (U + V).dim + U.intersection(V).dim == U.dim + V.dim
    assert U.intersection(V).issubset(U)


@given(dense(3, 3))
def test_gf7_rank_at_most_rational_rank(a):
    assert Matrix.from_dense(a, Field(7)).rank() <= Matrix.from_dense(a).rank()
