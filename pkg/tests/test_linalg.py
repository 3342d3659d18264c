"""
tests/test_linalg.py
============================================================
RREF / kernel / 부분공간 연산 테스트 (유한체와 유리수 양쪽)
"""

from fractions import Fraction

import pytest

from services.errors import DimensionError, PreconditionError
from services.field import RATIONALS, field_make
from services.linalg import (
    Matrix,
    Subspace,
    fixed_space,
    kernel,
    rref,
    subspace_leq,
    subspace_meet,
    subspace_meet_all,
)

F3 = field_make(3)


def test_rref_is_canonical_over_rationals():
    arr = RATIONALS.array([[2, 4, 6], [1, 1, 1]])
    reduced, r, pivots = rref(RATIONALS, arr)
    assert r == 2
    assert pivots == [0, 1]
    assert [list(row) for row in reduced] == [[1, 0, -1], [0, 1, 2]]
    assert all(isinstance(x, Fraction) for x in reduced.flat)


def test_rref_over_prime_field():
    arr = F3.array([[1, 2, 0], [2, 1, 0]])
    _, r, pivots = rref(F3, arr)
    assert r == 1
    assert pivots == [0]


def test_kernel_dimension_is_cols_minus_rank():
    arr = F3.array([[1, 1, 1, 1]])
    ker = kernel(F3, arr)
    assert ker.dim == 3
    assert ker.codim == 1
    for row in ker.basis:
        assert sum(int(x) for x in row) % 3 == 0


def test_same_subspace_from_different_spanning_sets_is_equal():
    a = Subspace.span(RATIONALS, 3, RATIONALS.array([[1, 1, 0], [0, 1, 1]]))
    b = Subspace.span(RATIONALS, 3, RATIONALS.array([[1, 2, 1], [1, 0, -1], [2, 2, 0]]))
    assert a == b
    assert hash(a) == hash(b)


def test_meet_and_containment():
    x_axis = Subspace.span(F3, 3, F3.array([[1, 0, 0]]))
    xy = Subspace.span(F3, 3, F3.array([[1, 0, 0], [0, 1, 0]]))
    xz = Subspace.span(F3, 3, F3.array([[1, 0, 0], [0, 0, 1]]))
    assert subspace_meet(xy, xz) == x_axis
    assert subspace_leq(x_axis, xy)
    assert not subspace_leq(xy, x_axis)
    assert subspace_meet_all([], F3, 3) == Subspace.full(F3, 3)
    assert subspace_meet_all([xy, xz, x_axis], F3, 3) == x_axis


def test_meet_rejects_mismatched_spaces():
    with pytest.raises(DimensionError):
        subspace_meet(Subspace.full(F3, 2), Subspace.full(F3, 3))


def test_inverse_and_singular():
    m = Matrix.from_rows(RATIONALS, [[2, 1], [1, 1]])
    assert (m @ m.inverse()).is_identity()
    with pytest.raises(PreconditionError):
        Matrix.from_rows(F3, [[1, 2], [2, 1]]).inverse()


def test_fixed_space_of_a_transposition():
    swap = Matrix.from_rows(RATIONALS, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    w = fixed_space(swap)
    assert w.codim == 1
    assert w.contains_vector(RATIONALS.array([1, 1, 5]))
    assert not w.contains_vector(RATIONALS.array([1, -1, 0]))


def test_matrix_json_uses_field_serialization():
    m = Matrix.from_rows(RATIONALS, [[Fraction(1, 2), 0], [0, 1]])
    assert m.to_json() == [["1/2", "0/1"], ["0/1", "1/1"]]
    assert Matrix.from_rows(F3, [[4, 5]]).to_json() == [[1, 2]]


def test_ragged_rows_rejected():
    with pytest.raises(DimensionError):
        Matrix.from_rows(F3, [[1, 0], [1]])
