"""
tests/test_separation.py
============================================================
궤도 분리 검증 / 예산 정책 / 탐색 / 삼각형
"""

import itertools

import pytest

from oracles import separates
from services.errors import BudgetExceeded, CandidateError, DimensionError, FieldError, PreconditionError
from services.field import field_make
from services.invariants import TriangleFamily
from services.linalg import Matrix
from services.matrix_group import close_group
from services.polynomials import MultiPoly
from services.scenarios import coordinates, cp_triangle, s3_perm_group, triangle_candidates, trivial_group
from services.separation import (
    orbit_table,
    search_separating,
    space_pool,
    verify_separating,
    verify_triangle,
)

F3 = field_make(3)


@pytest.fixture
def swap():
    g = close_group([Matrix.from_rows(F3, [[0, 1], [1, 0]])], label="swap-f3")
    x1, x2 = MultiPoly.variables(F3, 2)
    return g, x1 + x2, x1 * x2


def test_coordinates_separate_for_the_trivial_group():
    g = trivial_group(2, field_make(2))
    rep = verify_separating(g, coordinates(g.field, 2), [1, 2])
    assert rep.verdict == "separating"
    assert rep.extensions_covered == [1, 2]
    assert [r.points for r in rep.results] == [4, 16]
    assert [r.orbits for r in rep.results] == [4, 16]
    assert all(r.mode == "exhaustive" and r.orbit_sizes_ok for r in rep.results)
    assert rep.witness is None


def test_symmetric_functions_separate_swap_orbits(swap):
    g, e1, e2 = swap
    rep = verify_separating(g, [("e1", e1), ("e2", e2)], [1, 2])
    assert rep.separating
    assert rep.results[0].orbits == 6
    assert not any(r.probabilistic for r in rep.results)


def test_sum_alone_fails_with_a_witness(swap):
    g, e1, _ = swap
    rep = verify_separating(g, [("e1", e1)], [1])
    assert rep.verdict == "not-separating"
    (a, b), (c, d) = rep.witness
    assert (a + b) % 3 == (c + d) % 3
    assert sorted((a, b)) != sorted((c, d))


def test_unnamed_candidates_get_default_names(swap):
    g, e1, e2 = swap
    rep = verify_separating(g, [e1, e2], [1])
    assert rep.candidates == ["f1", "f2"]


@pytest.mark.parametrize("drop", [None, 0, 1, 2])
def test_s3_elementary_symmetric_agrees_with_brute_force(drop):
    g = s3_perm_group(F3)
    x1, x2, x3 = MultiPoly.variables(F3, 3)
    polys = [x1 + x2 + x3, x1 * x2 + x1 * x3 + x2 * x3, x1 * x2 * x3]
    if drop is not None:
        polys.pop(drop)
    rep = verify_separating(g, polys, [1])
    assert rep.separating == separates(g, polys)
    if drop is None:
        assert rep.separating


def _values(f, point):
    return f.evaluate(list(point))


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2), (3, 3), (5, 3), (5, 4)])
def test_cp_triangle_sums_separate_and_none_is_redundant(p, n):
    g, family = cp_triangle(p, n)
    cands = triangle_candidates(family)
    assert len(cands) == 2 * n - 2
    tables = {}
    assert verify_separating(g, cands, [1], tables=tables).separating
    for dropped in range(len(cands)):
        rest = cands[:dropped] + cands[dropped + 1 :]
        rep = verify_separating(g, rest, [1], tables=tables)
        assert rep.verdict == "not-separating", cands[dropped][0]
        a, b = rep.witness
        assert [_values(f, a) for _, f in rest] == [_values(f, b) for _, f in rest]
        # 빠진 합이 두 점을 가름
        name, f = cands[dropped]
        assert _values(f, a) != _values(f, b), name


def test_cp_triangle_subsets_agree_with_brute_force():
    g, family = cp_triangle(3, 3)
    cands = triangle_candidates(family)
    for subset in itertools.combinations(cands, len(cands) - 2):
        rep = verify_separating(g, list(subset), [1])
        assert rep.separating == separates(g, [f for _, f in subset])


def test_orbit_table_counts_and_reuse(swap):
    g, e1, e2 = swap
    table = orbit_table(g, 1)
    assert table.size == 9
    assert table.orbit_count() == 6
    assert table.orbit_sizes_ok()
    assert table.first_collision([]) is not None
    tables = {1: table}
    verify_separating(g, [e1, e2], [1], tables=tables)
    assert tables[1] is table


def test_budget_policies(swap):
    g, e1, e2 = swap
    skipped = verify_separating(g, [e1, e2], [1, 2], budget=9, on_budget="skip")
    assert [r.mode for r in skipped.results] == ["exhaustive", "skipped"]
    assert skipped.extensions_covered == [1]

    nothing = verify_separating(g, [e1, e2], [2], budget=9, on_budget="skip")
    assert nothing.verdict == "inconclusive"

    with pytest.raises(BudgetExceeded):
        verify_separating(g, [e1, e2], [2], budget=9, on_budget="error")

    sampled = verify_separating(g, [e1, e2], [2], budget=9, on_budget="sample", seed=7, sample_size=40)
    again = verify_separating(g, [e1, e2], [2], budget=9, on_budget="sample", seed=7, sample_size=40)
    r = sampled.results[0]
    assert r.mode == "sampled"
    assert r.orbit_sizes_ok is None
    assert r.probabilistic
    assert r.points == again.results[0].points <= 40


def test_candidate_checks(swap):
    g, e1, _ = swap
    x1 = MultiPoly.variable(F3, 2, 0)
    with pytest.raises(CandidateError):
        verify_separating(g, [("x1", x1)], [1])
    with pytest.raises(DimensionError):
        verify_separating(g, [("y", MultiPoly.variable(F3, 3, 0))], [1])
    with pytest.raises(PreconditionError):
        verify_separating(g, [e1], [0])


def test_rationals_are_not_enumerable():
    g = s3_perm_group()
    x = MultiPoly.variables(g.field, 3)
    with pytest.raises(FieldError):
        verify_separating(g, [x[0] + x[1] + x[2]], [1])


def test_search_finds_the_first_separating_pair(swap):
    g, e1, e2 = swap
    pool = [("e1", e1), ("e1^2", e1 * e1), ("e2", e2)]
    hit = search_separating(g, [], pool, 2)
    assert [n for n, _ in hit.found] == ["e1", "e2"]
    assert hit.report.separating
    assert not hit.exhausted

    miss = search_separating(g, [], pool, 1)
    assert miss.exhausted
    assert miss.leaves == 3

    with pytest.raises(BudgetExceeded):
        search_separating(g, [], pool, 1, search_budget=1)
    with pytest.raises(PreconditionError):
        search_separating(g, pool, [], 2)


def test_space_pool_adds_mixed_degree_sums(swap):
    _, e1, e2 = swap
    pool = space_pool({1: [e1], 2: [e1 * e1, e2]})
    assert [n for n, _ in pool] == ["I1[0]", "I2[0]", "I2[1]", "I1[0]+I2[0]", "I1[0]+I2[1]"]


def test_verify_triangle():
    g, family = cp_triangle(3, 3)
    tri = verify_triangle(g, family, extension_degrees=[1])
    assert (tri.size, tri.sums, tri.expected) == (3, 4, 5)
    assert tri.report.separating


def test_triangle_entries_must_be_invariant():
    g, _ = cp_triangle(3, 3)
    x1 = MultiPoly.variable(F3, 3, 0)
    with pytest.raises(CandidateError):
        verify_triangle(g, TriangleFamily(F3, 3, 1, {(1, 1): x1}), extension_degrees=[1])
    with pytest.raises(DimensionError):
        verify_triangle(g, TriangleFamily(F3, 2, 1, {(1, 1): MultiPoly.variable(F3, 2, 0)}), extension_degrees=[1])
