from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bialgd.errors import NoSolution, NotInSubspace, Singular
from bialgd.linalg import (
    GF,
    QQ,
    Fp,
    Matrix,
    Quotient,
    Subspace,
    column_rank,
    det,
    field_from_spec,
    invert,
    kernel,
    rank,
    solve,
    span_membership,
    sparse,
    sparse_solve,
)
from oracles import adjugate_inverse, gauss_jordan_rank, leibniz_det, matmul

small = st.integers(-4, 4).map(Fraction)
fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


def square(n, elems=small):
    return st.lists(st.lists(elems, min_size=n, max_size=n), min_size=n, max_size=n)


matrices = st.integers(1, 4).flatmap(square)
rect = st.tuples(st.integers(1, 5), st.integers(1, 5)).flatmap(
    lambda rc: st.lists(st.lists(fractions, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0])
)


# --- fields ---------------------------------------------------------------


def test_rational_parsing_rejects_decimals():
    assert QQ("3/4") == Fraction(3, 4)
    assert QQ(" -2 ") == -2
    for bad in ("0.5", "1e3", ""):
        with pytest.raises(ValueError):
            QQ(bad)
    with pytest.raises(TypeError):
        QQ(True)


def test_prime_field_arithmetic():
    F = GF(7)
    a, b = F(3), F(5)
    assert a + b == F(1)
    assert a * b == F(1)
    assert a / b == F(3 * 3)  # 5^-1 = 3 mod 7
    assert -a == F(4)
    assert F(7) == F.zero and not F(14)
    assert F.format(F(-1)) == "6"
    assert isinstance(F(2) * 3, Fp)


def test_prime_field_rejects_composite_and_zero_division():
    with pytest.raises(ValueError):
        GF(9)
    with pytest.raises(ZeroDivisionError):
        GF(5)(1) / GF(5)(0)


def test_field_from_spec():
    assert field_from_spec("Q") is QQ
    assert field_from_spec({"Fp": 11}).p == 11
    with pytest.raises(ValueError):
        field_from_spec("R")


# --- dense routines against oracles ---------------------------------------


@given(matrices)
@settings(max_examples=60, deadline=None)
def test_det_matches_leibniz(rows):
    assert det(Matrix(rows)) == leibniz_det(rows)


@given(matrices)
@settings(max_examples=60, deadline=None)
def test_inverse_matches_adjugate(rows):
    expected = adjugate_inverse(rows)
    if expected is None:
        with pytest.raises(Singular):
            invert(Matrix(rows))
    else:
        assert invert(Matrix(rows)).rows() == expected


@given(rect)
@settings(max_examples=80, deadline=None)
def test_rank_matches_gauss_jordan(rows):
    r = gauss_jordan_rank(rows)
    assert rank(Matrix(rows)) == r
    assert column_rank(Matrix(rows)) == r


@given(rect)
@settings(max_examples=60, deadline=None)
def test_kernel_vectors_are_annihilated_and_complete(rows):
    M = Matrix(rows)
    ker = kernel(M)
    for v in ker:
        assert all(x == 0 for x in M @ v)
    assert len(ker) == M.ncols - gauss_jordan_rank(rows)


@given(rect, st.data())
@settings(max_examples=60, deadline=None)
def test_solve_reproduces_rhs_in_column_space(rows, data):
    M = Matrix(rows)
    x = data.draw(st.lists(small, min_size=M.ncols, max_size=M.ncols))
    b = M @ x
    sol = solve(M, b)
    assert M @ sol.particular == b
    for v in sol.kernel_basis:
        assert all(c == 0 for c in M @ v)


def test_solve_inconsistent_raises():
    M = Matrix([[1, 1], [2, 2]])
    with pytest.raises(NoSolution):
        solve(M, [1, 3])


def test_span_membership_coefficients():
    ok, c = span_membership([3, 5], [[1, 1], [0, 1]])
    assert ok and c == [3, 2]
    ok, c = span_membership([1, 0], [[1, 1], [2, 2]])
    assert not ok and c is None
    assert span_membership([0, 0], []) == (True, [])


def test_matrix_algebra_of_products():
    A = Matrix([[1, 2], [3, 4]])
    B = Matrix([["1/2", 0], [0, 1]])
    assert (A @ B).rows() == matmul(A.rows(), B.rows())
    assert (A - A).is_zero()
    assert A.T[0, 1] == 3
    assert (A @ invert(A)) == Matrix.identity(2)


def test_gf_rank_differs_from_q():
    # det = 5, singular only mod 5
    rows = [[1, 2], [3, 11]]
    assert rank(Matrix(rows)) == 2
    assert rank(Matrix(rows, GF(5))) == 1
    assert det(Matrix(rows, GF(5))) == GF(5).zero


def test_gf_inverse():
    F = GF(3)
    M = Matrix([[1, 1], [0, 2]], F)
    assert M @ invert(M) == Matrix.identity(2, F)


# --- sparse solver ----------------------------------------------------------


def test_sparse_solve_particular_and_kernel():
    rows = [{0: 1, 1: 1}, {1: 1, 2: -1}]
    part, ker = sparse_solve(rows, [QQ(2), QQ(0)], 3, QQ)
    assert len(ker) == 1
    x = [part.get(i, 0) for i in range(3)]
    assert x[0] + x[1] == 2 and x[1] - x[2] == 0


# --- subspaces and quotients ------------------------------------------------


def test_subspace_coords_and_membership():
    V = Subspace([[1, 1, 0], [0, 1, 1]], 3, QQ)
    assert V.dim == 2
    v = [2, 5, 3]
    assert V.contains(v)
    assert V.element(V.coords(v)) == v
    with pytest.raises(NotInSubspace):
        V.coords([1, 0, 0])
    assert V == Subspace([[1, 2, 1], [1, 0, -1]], 3, QQ)
    assert Subspace([[1, 1, 0]], 3, QQ).issubset(V)


@given(st.lists(st.lists(small, min_size=4, max_size=4), max_size=3), st.lists(small, min_size=4, max_size=4))
@settings(max_examples=60, deadline=None)
def test_quotient_project_lift_is_identity(rels, v):
    Q = Quotient(4, [sparse(r) for r in rels], QQ)
    assert Q.dim == 4 - gauss_jordan_rank(rels) if rels else Q.dim == 4
    c = Q.project(v)
    assert Q.project(Q.lift(c)) == c
    assert Q.project(Q.lift_alt(c)) == c
    for r in rels:
        assert Q.is_zero(sparse(r))
    # v minus its lift is a relation
    diff = {i: x for i, x in enumerate(v)}
    for k, x in Q.lift(c).items():
        diff[k] = diff.get(k, 0) - x
    assert Q.is_zero({k: x for k, x in diff.items() if x})
