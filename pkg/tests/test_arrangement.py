"""
tests/test_arrangement.py
============================================================
분리 다양체 교차 poset 테스트 (무차별 기하 계산과 비교 포함)
"""

import pytest

from oracles import geometric_cover_count, geometric_poset_layers
from services.arrangement import (
    component_down_set_matches_lattice,
    connectivity_in_codim,
    poset_dot,
    poset_dump,
    separating_poset,
    upper_interval_isomorphism_check,
)
from services.errors import DimensionError
from services.field import field_make
from services.matrix_group import is_r_reflection_group
from services.reflection import reflecting_lattice
from services.scenarios import (
    c2_sign_group,
    c2c2_group,
    cp_vn_group,
    diagonal_cyclic_group,
    s3_perm_group,
    trivial_group,
    v2_sum_group,
)

SMALL_GROUPS = {
    "s3-perm": lambda: s3_perm_group(),
    "s3-perm-f5": lambda: s3_perm_group(field_make(5)),
    "c2c2-5": lambda: c2c2_group(2),
    "c2-sign-f3": lambda: c2_sign_group(field_make(3)),
    "trivial-3": lambda: trivial_group(3),
    "cp-v3-f3": lambda: cp_vn_group(3, 3),
    "cp-v2x2-f2": lambda: v2_sum_group(2, 2),
    "diag-c4-f5": lambda: diagonal_cyclic_group(5, 1, 4, [1, 2]),
}


@pytest.fixture(scope="module")
def s3_poset():
    return separating_poset(s3_perm_group())


def test_s3_poset_matches_the_hasse_diagram(s3_poset):
    assert s3_poset.size == 16
    assert list(s3_poset.layer_sizes().values()) == [6, 9, 1]
    assert len(s3_poset.components()) == 6
    bottom = s3_poset.bottom()
    assert bottom is not None
    assert s3_poset.nodes[bottom].codim == 5
    # 각 초평면 노드는 정확히 두 성분 아래에 있음
    for i, node in enumerate(s3_poset.nodes):
        if node.codim == 4:
            assert len(s3_poset.above(i)) == 2


@pytest.mark.parametrize("name", sorted(SMALL_GROUPS))
def test_poset_agrees_with_brute_force_geometry(name):
    g = SMALL_GROUPS[name]()
    p = separating_poset(g)
    assert p.layer_sizes() == geometric_poset_layers(g)
    assert len(p.covers()) == geometric_cover_count(g)


@pytest.mark.parametrize("name", sorted(SMALL_GROUPS))
def test_connectivity_matches_reflection_generation(name):
    g = SMALL_GROUPS[name]()
    p = separating_poset(g)
    for r in range(1, g.dim + 1):
        assert connectivity_in_codim(p, r) == is_r_reflection_group(g, r)


def test_connectivity_rejects_out_of_range_r(s3_poset):
    with pytest.raises(DimensionError):
        connectivity_in_codim(s3_poset, 0)


@pytest.mark.parametrize("name", ["s3-perm", "c2c2-5", "cp-v3-f3"])
def test_component_down_sets_are_copies_of_the_lattice(name):
    g = SMALL_GROUPS[name]()
    lattice = reflecting_lattice(g)
    p = separating_poset(g, lattice)
    for comp in p.components():
        assert component_down_set_matches_lattice(p, lattice, comp)


@pytest.mark.parametrize("build", [s3_perm_group, lambda: c2c2_group(2), lambda: cp_vn_group(3, 2)])
def test_upper_intervals_match_their_isotropy_groups(build):
    g = build()
    lattice = reflecting_lattice(g)
    p = separating_poset(g, lattice)
    checked = 0
    for index in range(1, lattice.size):
        ok, reason = upper_interval_isomorphism_check(g, index, lattice=lattice, poset=p)
        assert ok, (index, reason)
        checked += 1
    assert checked == lattice.size - 1


def test_upper_interval_check_rejects_the_whole_space():
    g = s3_perm_group()
    ok, reason = upper_interval_isomorphism_check(g, 0)
    assert not ok
    assert "trivial isotropy" in reason


def test_dot_and_dump_are_deterministic(s3_poset):
    dot = poset_dot(s3_poset)
    assert dot.startswith("digraph separating_poset")
    assert dot == poset_dot(separating_poset(s3_perm_group()))
    assert dot.count("->") == len(s3_poset.covers())
    dump = poset_dump(s3_poset)
    assert len(dump["nodes"]) == 16
    assert len(dump["covers"]) == 6 * 3 + 9
