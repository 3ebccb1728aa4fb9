from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from uqlab.errors import DegenerateError
from uqlab.linalg import det, inverse, make_span, nullspace, proportional, rank, solve
from uqlab.matrix import SparseMatrix

from conftest import field

ints = st.integers(-4, 4)


def _mat(f, rows):
    return [[f.const(v) for v in r] for r in rows]


@pytest.mark.parametrize("backend", ["exact", "float"])
def test_rank_and_det(backend):
    f = field(backend, 3)
    m = _mat(f, [[1, 2, 3], [2, 4, 6], [0, 1, 1]])
    assert rank(f, m, 3) == 2
    assert f.is_zero(det(f, m))
    n = _mat(f, [[2, 0], [1, 3]])
    assert f.eq(det(f, n), f.const(6))


def test_exact_rank_over_cyclotomic():
    f = field("exact", 3)
    w = f.w_power(1)
    # (1, w) and (w^2, 1) are proportional since w^3 = 1.
    assert rank(f, [[f.one, w], [w * w, f.one]], 2) == 1


@pytest.mark.parametrize("backend", ["exact", "float"])
def test_inverse(backend):
    f = field(backend, 5)
    m = _mat(f, [[1, 2], [3, 4]])
    inv = inverse(f, m)
    prod = SparseMatrix.from_dense(m) @ SparseMatrix.from_dense(inv)
    for i in range(2):
        for j in range(2):
            assert f.eq(prod[i, j], f.one if i == j else f.zero)
    with pytest.raises(DegenerateError):
        inverse(f, _mat(f, [[1, 2], [2, 4]]))


def test_nullspace_and_solve():
    f = field("exact", 3)
    M = SparseMatrix.from_dense(_mat(f, [[1, 1, 0], [0, 1, 1]]))
    ns = nullspace(f, M)
    assert len(ns) == 1
    assert all(f.is_zero(v) for v in M.apply(ns[0], f.zero))
    cols = _mat(f, [[1, 0], [1, 1]])
    coeffs = solve(f, cols, _mat(f, [[3, 5]])[0])
    assert coeffs == [f.const(-2), f.const(5)]
    assert solve(f, _mat(f, [[1, 0]]), _mat(f, [[0, 1]])[0]) is None


def test_proportional():
    f = field("exact", 3)
    u = _mat(f, [[1, 2, 0]])[0]
    assert proportional(f, [x * 3 for x in u], u) == f.const(3)
    assert proportional(f, _mat(f, [[1, 1, 0]])[0], u) is None


def test_span_membership():
    f = field("exact", 3)
    s = make_span(f, 3)
    assert s.add(_mat(f, [[1, 1, 0]])[0])
    assert not s.add(_mat(f, [[2, 2, 0]])[0])
    assert s.contains(_mat(f, [[3, 3, 0]])[0])
    assert not s.contains(_mat(f, [[0, 0, 1]])[0])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(ints, min_size=3, max_size=3), min_size=3, max_size=3))
def test_exact_and_float_agree(rows):
    fe, ff = field("exact", 3), field("float", 3)
    me, mf = _mat(fe, rows), _mat(ff, rows)
    assert rank(fe, me, 3) == rank(ff, mf, 3)
    assert abs(complex(det(fe, me).to_fraction()) - det(ff, mf)) < 1e-9


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(ints, min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_multiplicative(rows):
    f = field("exact", 5)
    a = _mat(f, rows)
    b = _mat(f, [[1, 2, 0], [0, 1, 3], [4, 0, 1]])
    ab = SparseMatrix.from_dense(a) @ SparseMatrix.from_dense(b)
    dense = [[ab[i, j] for j in range(3)] for i in range(3)]
    assert det(f, dense) == det(f, a) * det(f, b)


def test_sparse_matrix_ops():
    f = field("exact", 3)
    I = SparseMatrix.identity(2, f.one)
    D = SparseMatrix.diagonal([f.const(2), f.const(Fraction(1, 2))])
    assert (D @ I) == D
    assert (D - D).nnz == 0
    assert (D * f.const(2))[0, 0] == f.const(4)
