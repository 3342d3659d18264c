"""
services/reflection.py
============================================================
반사(reflection) 이론적 분류

용어:
- r-reflection       : 고정공간 V^σ 의 여차원이 정확히 r 인 원소
- reflecting subspace: 자명하지 않은 isotropy 를 갖는 부분공간 (고정공간들의 교집합)
- minimal reflecting : 더 작은 여차원의 reflecting subspace 들의 교집합으로 쓸 수 없는 것
- rigid r-reflection : 모든 minimal reflecting subspace 의 여차원이 r 이하

rigid 판정은 두 가지 기준으로 모두 계산하고, 서로 다르면 경고를 남깁니다
(isotropy 부분군 기준과의 동치는 증명 없이 쓰지 않음).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field

import numpy as np

from services.linalg import Subspace, subspace_leq, subspace_meet, subspace_meet_all
from services.matrix_group import FiniteMatrixGroup, isotropy, is_r_reflection_group
from services.poset import FinitePoset

logger = logging.getLogger(__name__)


# ============================================================
# 반사 부분공간 격자
# ============================================================
@dataclass(eq=False)
class SubspaceLattice(FinitePoset):
    """
    {V^σ : σ ≠ 1} 와 V 의 교집합 닫힘. 순서 = 포함 관계.

    노드 0 은 항상 V 이고, 나머지는 (여차원, 기저) 순으로 정렬됩니다.
    isotropy[i] 는 노드 i 의 isotropy 부분군 (원소 번호 집합).
    """

    isotropy: list[frozenset[int]] = dc_field(default_factory=list)

    @property
    def subspaces(self) -> list[Subspace]:
        return self.labels

    def index_of(self, w: Subspace) -> int:
        for i, s in enumerate(self.labels):
            if s == w:
                return i
        raise KeyError("subspace is not a lattice node")

    def bottom(self) -> int:
        """가장 작은 노드 (V^G)."""
        return max(range(self.size), key=lambda i: (self.codims[i], -i))

    def atoms_dual(self) -> list[int]:
        """포함 관계로 V 바로 아래에 있는 노드들 (쌍대 격자의 atom)."""
        return [i for (i, j) in self.covers() if j == 0]


def reflecting_lattice(g: FiniteMatrixGroup) -> SubspaceLattice:
    """
    반사 부분공간 격자 R_{V,G} 를 계산합니다.

    Returns:
        SubspaceLattice: 교집합으로 닫힌 부분공간 목록 + 포함 순서 + isotropy
    """
    full = g.full_space()
    seeds = {fs for i, fs in enumerate(g.fixed) if i != 0}
    found: set[Subspace] = set(seeds)
    frontier = list(seeds)
    while frontier:
        fresh = []
        current = sorted(found, key=_sort_key)
        for a in frontier:
            for b in current:
                m = subspace_meet(a, b)
                if m not in found:
                    found.add(m)
                    fresh.append(m)
        frontier = fresh
    nodes = [full] + sorted(found, key=_sort_key)

    n = len(nodes)
    less = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            if i != j and nodes[i].dim < nodes[j].dim and subspace_leq(nodes[i], nodes[j]):
                less[i, j] = True
    iso = [isotropy(g, w) for w in nodes]
    logger.info("reflecting lattice: %d nodes", n)
    return SubspaceLattice(labels=nodes, less=less, codims=[w.codim for w in nodes], isotropy=iso)


def _sort_key(w: Subspace) -> tuple:
    return (w.codim, w.key)


# ============================================================
# minimal reflecting subspace
# ============================================================
def minimal_reflecting_subspaces(
    g: FiniteMatrixGroup,
    lattice: SubspaceLattice | None = None,
) -> list[tuple[Subspace, int]]:
    """
    ∩{V^σ : σ ∈ G_W∖{1}, codim V^σ < codim W} ≠ W 인 격자 노드 W (W ≠ V).

    빈 교집합은 V 로 취급하므로, 더 작은 여차원의 원소가 없는 W 는 항상 minimal.
    """
    lattice = lattice or reflecting_lattice(g)
    out = []
    for idx in _minimal_indices(g, lattice):
        w = lattice.subspaces[idx]
        out.append((w, w.codim))
    return out


def _minimal_indices(g: FiniteMatrixGroup, lattice: SubspaceLattice) -> list[int]:
    out = []
    codims = g.codims
    for i in range(1, lattice.size):
        w = lattice.subspaces[i]
        if lattice.isotropy[i] == frozenset({0}):
            continue
        lower = [g.fixed[s] for s in sorted(lattice.isotropy[i]) if s != 0 and codims[s] < w.codim]
        if subspace_meet_all(lower, g.field, g.dim) != w:
            out.append(i)
    return out


# ============================================================
# 분류
# ============================================================
@dataclass
class ReflectionClassification:
    """
    Attributes:
        order (int): |G|
        dim (int): d
        element_codims (list[int]): 원소별 codim V^σ
        codim_profile (list[int]): codim c 인 원소 개수 (c = 0..d)
        generating_r (int): G 가 (≤ r)-reflection 으로 생성되는 최소 r
        minimal (list[tuple[int, Subspace, int]]): (격자 번호, 부분공간, 여차원)
        r_star (int): minimal reflecting subspace 최대 여차원 (없으면 0)
        rigid_r (dict[int, bool]): minimal 여차원 기준 rigid 판정
        rigid_isotropy (dict[int, bool]): isotropy 생성 기준 rigid 판정
    """

    order: int
    dim: int
    element_codims: list[int]
    codim_profile: list[int]
    generating_r: int
    minimal: list[tuple[int, Subspace, int]]
    r_star: int
    rigid_r: dict[int, bool]
    rigid_isotropy: dict[int, bool]
    lattice: SubspaceLattice = dc_field(repr=False)

    @property
    def minimal_codims(self) -> list[int]:
        return [c for _, _, c in self.minimal]

    @property
    def criteria_agree(self) -> bool:
        return self.rigid_r == self.rigid_isotropy

    @property
    def divergent_r(self) -> list[int]:
        return [r for r in self.rigid_r if self.rigid_r[r] != self.rigid_isotropy[r]]

    def is_rigid(self, r: int) -> bool:
        return self.rigid_r.get(r, True)

    @property
    def is_rigid_reflection_group(self) -> bool:
        """rigid 1-reflection group (모든 minimal reflecting subspace 가 초평면)."""
        return self.is_rigid(1)


def _isotropy_generated(g: FiniteMatrixGroup, subgroup: frozenset[int], r: int) -> bool:
    gens = [s for s in subgroup if 0 < g.codims[s] <= r]
    return g.subgroup_closure(gens) == subgroup


def classify(g: FiniteMatrixGroup, lattice: SubspaceLattice | None = None) -> ReflectionClassification:
    """
    codim 분포, 최소 생성 r, minimal reflecting subspace, r*, rigid 판정을 모읍니다.

    Note:
        - rigid 는 r = 1..d 각각에 대해 두 기준으로 판정:
          (a) 모든 minimal 여차원 ≤ r
          (b) 모든 격자 노드의 isotropy 가 (≤ r)-reflection 으로 생성됨
        - 두 기준이 다르면 경고 로그 (리포트에도 그대로 남음)
    """
    lattice = lattice or reflecting_lattice(g)
    codims = g.codims
    profile = [0] * (g.dim + 1)
    for c in codims:
        profile[c] += 1

    generating_r = next(r for r in range(g.dim + 1) if is_r_reflection_group(g, r))

    minimal = [(i, lattice.subspaces[i], lattice.codims[i]) for i in _minimal_indices(g, lattice)]
    r_star = max((c for _, _, c in minimal), default=0)

    rigid_r = {r: all(c <= r for _, _, c in minimal) for r in range(1, g.dim + 1)}
    rigid_iso = {
        r: all(_isotropy_generated(g, lattice.isotropy[i], r) for i in range(lattice.size))
        for r in range(1, g.dim + 1)
    }
    out = ReflectionClassification(
        order=g.order,
        dim=g.dim,
        element_codims=codims,
        codim_profile=profile,
        generating_r=generating_r,
        minimal=minimal,
        r_star=r_star,
        rigid_r=rigid_r,
        rigid_isotropy=rigid_iso,
        lattice=lattice,
    )
    if not out.criteria_agree:
        logger.warning("rigidity criteria diverge at r=%s", out.divergent_r)
    return out
