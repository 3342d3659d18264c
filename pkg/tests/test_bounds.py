"""
tests/test_bounds.py
============================================================
비소멸 차수 Q 와 하한 / 일관성 검사
"""

import pytest

from services.arrangement import separating_poset
from services.bounds import agz_report, separating_bound
from services.field import field_make
from services.reflection import classify
from services.scenarios import c2_sign_group, c2c2_group, cp_vn_group, s3_diag_group, s3_perm_group, trivial_group


def run(g, characteristic=0, **kwargs):
    c = classify(g)
    p = separating_poset(g, c.lattice)
    rep = agz_report(p, characteristic, **kwargs)
    return p, c, rep, separating_bound(rep, c, g.dim)


def test_s3_permutation_bound():
    p, _, rep, bound = run(s3_perm_group())
    assert rep.Q == [3]
    bottom = p.bottom()
    assert rep.entries[bottom].betti.from_degree(0) == [0, 4]
    assert bound.cohomological == 3
    assert bound.reflection == 3
    assert bound.connectivity == 3
    assert bound.consistent
    # 성분 6 개 + 초평면 노드 9 개 + 바닥 1 개가 모두 3 차에 기여
    assert len(rep.contributors[3]) == 16


def test_symmetry_shortcut_gives_the_same_report():
    g = s3_perm_group()
    _, _, fast, _ = run(g, use_symmetry=True)
    _, _, slow, _ = run(g, use_symmetry=False, threads=1)
    assert fast.Q == slow.Q
    assert [e.betti for e in fast.entries] == [e.betti for e in slow.entries]


def test_s3_diagonal_two_copies():
    _, _, rep, bound = run(s3_diag_group(2))
    assert rep.Q == [6, 7, 8]
    assert bound.cohomological == 8
    assert bound.reflection == 7
    assert bound.consistent


def test_c2c2_degrees_from_minimal_subspaces_appear():
    _, c, rep, bound = run(c2c2_group(2))
    assert bound.reflection_degrees == [7, 8]
    assert bound.reflection == 8
    assert bound.connectivity == 7
    assert {7, 8} <= set(rep.Q)
    assert 10 not in rep.Q
    assert bound.consistent


def test_trivial_group_floor_is_the_dimension():
    _, _, rep, bound = run(trivial_group(4))
    assert rep.Q == [4]
    assert bound.cohomological == bound.reflection == bound.connectivity == 4


def test_sign_action():
    _, _, rep, bound = run(c2_sign_group(field_make(3)), 3)
    assert rep.Q == [1]
    assert bound.cohomological == 1


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2), (3, 3), (5, 3), (5, 4)])
def test_jordan_block_bound_is_2n_minus_2(p, n):
    _, _, rep, bound = run(cp_vn_group(p, n), p)
    assert bound.reflection == 2 * n - 2
    assert bound.cohomological == 2 * n - 2
    assert bound.consistent


def test_coefficient_characteristic_override():
    _, _, rep, _ = run(s3_perm_group(), 2)
    assert rep.characteristic == 2
    assert rep.Q == [3]
