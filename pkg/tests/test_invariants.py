"""
tests/test_invariants.py
============================================================
다항식 작용 / 불변식 공간 / 생성원 차수 분포 / 삼각형
"""

import gc
import weakref

import pytest

from services.errors import BudgetExceeded, DimensionError, PreconditionError
from services.field import RATIONALS, field_make
from services.invariants import (
    act,
    element_order,
    entries_invariant,
    in_subalgebra,
    invariant_space,
    is_invariant,
    minimal_generator_profile,
    monomial_basis,
    new_generators,
    norm_trace,
    orbit_norm,
    power_sum,
)
from services.polynomials import MultiPoly
from services.scenarios import c2_sign_group, cp_triangle, cp_vn_group, s3_perm_group, trivial_group

F3 = field_make(3)


def test_substitution_convention_shifts_coordinates():
    g = cp_vn_group(3, 3)
    sigma = g.generator_indices()[0]
    x1, x2, x3 = MultiPoly.variables(g.field, 3)
    assert act(g, sigma, x1) == x1 + x2
    assert act(g, sigma, x2) == x2 + x3
    assert act(g, sigma, x3) == x3
    assert element_order(g, sigma) == 3


def test_act_is_a_left_action():
    g = s3_perm_group()
    x1, x2, x3 = MultiPoly.variables(RATIONALS, 3)
    f = x1 * x1 * x2 + MultiPoly.constant(RATIONALS, 3, 3) * x3
    for a in range(g.order):
        for b in range(g.order):
            assert act(g, g.mul(a, b), f) == act(g, a, act(g, b, f))


def test_act_rejects_wrong_variable_count():
    g = s3_perm_group()
    with pytest.raises(DimensionError):
        act(g, 1, MultiPoly.variable(RATIONALS, 2, 0))


def test_invariance_and_orbit_norm():
    g = s3_perm_group()
    x1, x2, x3 = MultiPoly.variables(RATIONALS, 3)
    assert is_invariant(g, x1 + x2 + x3)
    assert not is_invariant(g, x1)
    assert orbit_norm(g, x1) == x1 * x2 * x3
    assert is_invariant(g, orbit_norm(g, x1 + x2))


def test_norm_and_trace_of_a_jordan_block():
    g = cp_vn_group(3, 2)
    sigma = g.generator_indices()[0]
    x1, x2 = MultiPoly.variables(g.field, 2)
    norm, trace = norm_trace(g, sigma, x1)
    assert norm == x1**3 + MultiPoly.constant(g.field, 2, 2) * x1 * x2**2
    assert trace.is_zero()
    assert is_invariant(g, norm)


@pytest.mark.parametrize(
    "p, j, expected",
    [(5, 0, 4), (5, 1, 0), (5, 2, 0), (5, 4, 4), (5, 8, 4), (3, 2, 2), (7, 3, 0)],
)
def test_power_sum(p, j, expected):
    assert power_sum(p, j) == expected


def test_monomial_basis_order():
    assert monomial_basis(2, 2) == [(0, 2), (1, 1), (2, 0)]
    assert len(monomial_basis(3, 2)) == 6


def test_invariant_space_dimensions():
    g = s3_perm_group()
    assert [len(invariant_space(g, D)) for D in range(4)] == [1, 1, 2, 3]
    assert len(invariant_space(trivial_group(2, F3), 2)) == 3
    assert invariant_space(g, -1) == []
    for f in invariant_space(g, 3):
        assert is_invariant(g, f)


def test_action_memo_is_released_with_the_group():
    g = s3_perm_group(F3)
    invariant_space(g, 2)
    assert set(g._actions) == {s for s in g.generator_indices() if s != 0}
    ref = weakref.ref(g)
    del g
    gc.collect()
    assert ref() is None


def test_degree_cap():
    g = s3_perm_group()
    with pytest.raises(BudgetExceeded):
        invariant_space(g, 3, cap=2)
    with pytest.raises(BudgetExceeded):
        minimal_generator_profile(g, 4, cap=3)


@pytest.mark.parametrize(
    "build, degrees, expected",
    [
        (lambda: s3_perm_group(), 4, [1, 1, 1, 0]),
        (lambda: c2_sign_group(F3), 3, [0, 1, 0]),
        (lambda: cp_vn_group(3, 2), 3, [1, 0, 1]),
        (lambda: trivial_group(2, F3), 2, [2, 0]),
    ],
)
def test_minimal_generator_profile(build, degrees, expected):
    assert minimal_generator_profile(build(), degrees) == expected


def test_new_generators_and_subalgebra_membership():
    g = s3_perm_group()
    spaces = {D: invariant_space(g, D) for D in range(1, 3)}
    assert len(new_generators(g, 2, spaces)) == 1
    x1, x2, x3 = MultiPoly.variables(RATIONALS, 3)
    e1 = x1 + x2 + x3
    e2 = x1 * x2 + x1 * x3 + x2 * x3
    p2 = x1 * x1 + x2 * x2 + x3 * x3
    assert in_subalgebra(e1 * e1, [("e1", e1)])
    assert not in_subalgebra(p2, [("e1", e1)])
    assert in_subalgebra(p2, [("e1", e1), ("e2", e2)])
    assert in_subalgebra(MultiPoly.zero(RATIONALS, 3), [])


def test_cp_triangle_diagonal_sums():
    g, family = cp_triangle(3, 3)
    assert sorted(family.entries) == [(1, 1), (1, 2), (2, 2), (3, 3)]
    assert family.candidate_labels() == ["S2", "S3", "S4", "S6"]
    assert entries_invariant(g, family) == []
    assert all(is_invariant(g, f) for f in family.candidates())


@pytest.mark.parametrize("p, n", [(3, 1), (3, 4), (2, 3)])
def test_cp_triangle_preconditions(p, n):
    with pytest.raises(PreconditionError):
        cp_triangle(p, n)
