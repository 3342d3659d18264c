"""
tests/oracles.py
============================================================
작은 군에서만 쓰는 무차별(brute-force) 기준 구현

- graph_subspaces : 성분 (1⊗σ)(V) 를 V×V 의 부분공간으로 직접 만듦
- geometric_poset_layers : 성분들의 교집합 닫힘을 직접 계산해 여차원별 개수
- orbit_partition / separates : 소수체 위 점들을 직접 돌려 궤도와 분리 여부 판정

라이브러리의 (W, 코셋) 표현이나 정수 번호 인코딩을 거치지 않습니다.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from services.field import Field
from services.linalg import Subspace, subspace_leq, subspace_meet
from services.matrix_group import FiniteMatrixGroup
from services.polynomials import MultiPoly


def graph_subspaces(g: FiniteMatrixGroup) -> list[Subspace]:
    d, field = g.dim, g.field
    out = []
    for m in g.elements:
        rows = []
        for i in range(d):
            rows.append([field.one if k == i else field.zero for k in range(d)] + [m.entry(k, i) for k in range(d)])
        out.append(Subspace.span(field, 2 * d, field.array(rows)))
    return out


def geometric_intersections(g: FiniteMatrixGroup) -> list[Subspace]:
    comps = graph_subspaces(g)
    found = set(comps)
    frontier = list(comps)
    while frontier:
        fresh = []
        for a in frontier:
            for b in comps:
                m = subspace_meet(a, b)
                if m not in found:
                    found.add(m)
                    fresh.append(m)
        frontier = fresh
    return sorted(found, key=lambda w: (w.codim, w.key))


def geometric_poset_layers(g: FiniteMatrixGroup) -> dict[int, int]:
    out: dict[int, int] = {}
    for w in geometric_intersections(g):
        out[w.codim] = out.get(w.codim, 0) + 1
    return dict(sorted(out.items()))


def geometric_cover_count(g: FiniteMatrixGroup) -> int:
    spaces = geometric_intersections(g)
    n = len(spaces)
    less = [[i != j and subspace_leq(spaces[i], spaces[j]) for j in range(n)] for i in range(n)]
    count = 0
    for i in range(n):
        for j in range(n):
            if less[i][j] and not any(less[i][k] and less[k][j] for k in range(n)):
                count += 1
    return count


def _act(g: FiniteMatrixGroup, sigma: int, point: tuple) -> tuple:
    f, m = g.field, g.elements[sigma]
    out = []
    for i in range(g.dim):
        acc = f.zero
        for j in range(g.dim):
            acc = f.add(acc, f.mul(m.entry(i, j), point[j]))
        out.append(acc)
    return tuple(out)


def orbit_partition(g: FiniteMatrixGroup) -> list[frozenset[tuple]]:
    field: Field = g.field
    seen: set[tuple] = set()
    orbits = []
    for point in itertools.product(field.elements(), repeat=g.dim):
        if point in seen:
            continue
        orbit = frozenset(_act(g, s, point) for s in range(g.order))
        seen |= orbit
        orbits.append(orbit)
    return orbits


def separates(g: FiniteMatrixGroup, polys: Sequence[MultiPoly]) -> bool:
    """바닥체 위에서만: 값 벡터가 같은 두 점이 항상 같은 궤도인지."""
    owner = {}
    for k, orbit in enumerate(orbit_partition(g)):
        for point in orbit:
            owner[point] = k
    by_value: dict[tuple, int] = {}
    for point, k in owner.items():
        key = tuple(f.evaluate(list(point)) for f in polys)
        if by_value.setdefault(key, k) != k:
            return False
    return True
