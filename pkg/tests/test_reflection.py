"""
tests/test_reflection.py
============================================================
반사 부분공간 격자 / minimal reflecting subspace / rigid 판정
"""

import pytest

from services.field import field_make
from services.reflection import classify, minimal_reflecting_subspaces, reflecting_lattice
from services.scenarios import c2_sign_group, c2c2_group, cp_vn_group, gl7_group, s3_perm_group, trivial_group


def test_s3_lattice_and_classification():
    g = s3_perm_group()
    lattice = reflecting_lattice(g)
    assert lattice.size == 5
    assert lattice.codims == [0, 1, 1, 1, 2]
    assert lattice.bottom() == 4
    assert sorted(lattice.atoms_dual()) == [1, 2, 3]

    c = classify(g, lattice)
    assert c.codim_profile == [1, 3, 2, 0]
    assert c.generating_r == 1
    assert c.minimal_codims == [1, 1, 1]
    assert c.r_star == 1
    assert c.is_rigid_reflection_group
    assert c.criteria_agree


def test_c2c2_needs_a_4_reflection():
    c = classify(c2c2_group(2))
    assert c.generating_r == 3
    assert sorted(c.minimal_codims) == [3, 3, 4]
    assert c.r_star == 4
    assert [c.is_rigid(r) for r in range(1, 6)] == [False, False, False, True, True]
    assert c.criteria_agree
    assert c.divergent_r == []


def test_trivial_group_has_no_reflecting_subspace():
    c = classify(trivial_group(3))
    assert c.lattice.size == 1
    assert c.minimal == []
    assert c.r_star == 0
    assert c.generating_r == 0
    assert c.is_rigid_reflection_group


def test_sign_action_is_a_reflection():
    c = classify(c2_sign_group(field_make(5)))
    assert c.minimal_codims == [1]
    assert c.is_rigid_reflection_group


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2), (3, 3), (5, 3)])
def test_jordan_block_minimal_subspace_has_codim_n_minus_1(p, n):
    g = cp_vn_group(p, n)
    found = minimal_reflecting_subspaces(g)
    assert [codim for _, codim in found] == [n - 1]
    assert classify(g).r_star == n - 1


def test_gl7_has_a_codim_3_minimal_reflecting_subspace():
    c = classify(gl7_group())
    assert 3 in c.minimal_codims
    assert not c.is_rigid_reflection_group
