"""
services/arrangement.py
============================================================
분리 다양체 S_{V,G} ⊂ V×V 의 교차 poset

S_{V,G} = ∪_σ (1⊗σ)(V)  (σ 의 그래프들의 합집합)

노드는 V×V 의 부분공간을 직접 만들지 않고 (W, γ) 쌍으로 표현합니다:
    (W, γ)  ↔  {(w, γw) : w ∈ W}
- W 는 반사 부분공간 격자의 노드 (V 포함)
- γ 는 코셋 γ·G_W 의 최소 원소 번호
- V×V 에서의 여차원 = 2d − dim W

순서: (W, γ) ≤ (W', γ')  ⟺  W ⊆ W' 이고 γ'^{-1}γ ∈ G_W
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

import networkx as nx
import numpy as np

from services.errors import DimensionError, PreconditionError
from services.homology import poset_betti
from services.linalg import Subspace
from services.matrix_group import FiniteMatrixGroup, subgroup
from services.poset import FinitePoset, hasse_dot
from services.reflection import SubspaceLattice, reflecting_lattice

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SepNode:
    """
    Attributes:
        lattice_index (int): 반사 격자에서 W 의 번호 (0 = V)
        subspace (Subspace): W
        coset_rep (int): γ (코셋의 최소 원소 번호)
        codim (int): V×V 에서의 여차원 2d − dim W
        is_component (bool): W = V 여부
    """

    lattice_index: int
    subspace: Subspace
    coset_rep: int
    codim: int
    is_component: bool

    @property
    def key(self) -> tuple[int, int]:
        return (self.lattice_index, self.coset_rep)

    def label(self) -> str:
        space = "V" if self.is_component else f"W{self.lattice_index}"
        return f"g{self.coset_rep}·{space} (codim {self.codim})"


@dataclass(eq=False)
class SepPoset(FinitePoset):
    """분리 다양체의 교차 poset. labels 는 SepNode, dim 은 V 의 차원."""

    dim: int = 0

    @property
    def nodes(self) -> list[SepNode]:
        return self.labels

    def induced(self, indices: Sequence[int]) -> SepPoset:
        sub = super().induced(indices)
        return SepPoset(labels=sub.labels, less=sub.less, codims=sub.codims, origin=sub.origin, dim=self.dim)

    def node_index(self, lattice_index: int, coset_rep: int) -> int:
        for i, n in enumerate(self.nodes):
            if n.key == (lattice_index, coset_rep):
                return i
        raise PreconditionError(f"no node (W{lattice_index}, g{coset_rep}) in the poset")

    def components(self) -> list[int]:
        return [i for i, n in enumerate(self.nodes) if n.is_component]

    def bottom(self) -> int | None:
        mins = self.minimal()
        return mins[0] if len(mins) == 1 else None


# ============================================================
# 구성
# ============================================================
def separating_poset(g: FiniteMatrixGroup, lattice: SubspaceLattice | None = None) -> SepPoset:
    """
    교차 poset 을 (W, 코셋) 쌍으로 구성합니다.

    Returns:
        SepPoset: 노드는 (여차원, 격자 번호, 코셋 대표) 순으로 정렬

    Note:
        - 격자 노드 W ≠ V 는 isotropy 가 자명하지 않은 것만 사용
        - 성분 (V, σ) 는 σ 마다 하나씩 (isotropy 자명)
        - 성분 2개 이상의 아래에 있지 않은 비성분 노드는 제거 (교집합으로 실현 불가)
    """
    lattice = lattice if lattice is not None else reflecting_lattice(g)
    d = g.dim
    nodes: list[SepNode] = []
    for li, w in enumerate(lattice.subspaces):
        iso = lattice.isotropy[li]
        if li != 0 and iso == frozenset({0}):
            continue
        reps = sorted({g.coset_rep(gamma, iso) for gamma in range(g.order)})
        for rep in reps:
            nodes.append(SepNode(li, w, rep, d + w.codim, li == 0))
    nodes.sort(key=lambda n: (n.codim, n.lattice_index, n.coset_rep))

    n = len(nodes)
    less = np.zeros((n, n), dtype=bool)
    for i, a in enumerate(nodes):
        for j, b in enumerate(nodes):
            if i == j or a.codim <= b.codim:
                continue
            if not lattice.less[a.lattice_index, b.lattice_index]:
                continue
            if g.mul(g.inv(b.coset_rep), a.coset_rep) in lattice.isotropy[a.lattice_index]:
                less[i, j] = True

    comp = np.array([x.is_component for x in nodes], dtype=bool)
    keep = [i for i in range(n) if comp[i] or int(less[i][comp].sum()) >= 2]
    if len(keep) < n:
        logger.debug("pruned %d nodes not below two components", n - len(keep))
        nodes = [nodes[i] for i in keep]
        less = less[np.ix_(keep, keep)]

    out = SepPoset(labels=nodes, less=less, codims=[x.codim for x in nodes], dim=d)
    logger.info("separating poset: %d nodes, layers %s", out.size, out.layer_sizes())
    return out


def open_interval_above(p: SepPoset, index: int) -> SepPoset:
    return p.open_interval_above(index)


# ============================================================
# 여차원 연결성
# ============================================================
def component_graph(p: SepPoset, r: int) -> nx.Graph:
    """
    성분들을 꼭짓점으로 하고, 두 성분의 교집합의 V 안 여차원이 r 이하이면 간선.

    교집합 = 두 성분 모두의 아래에 있는 노드 중 여차원이 가장 작은 것.
    """
    comps = p.components()
    graph = nx.Graph()
    graph.add_nodes_from(comps)
    for a_pos, a in enumerate(comps):
        for b in comps[a_pos + 1 :]:
            common = np.flatnonzero(p.less[:, a] & p.less[:, b])
            if common.size == 0:
                continue
            codim_in_v = min(p.codims[int(c)] for c in common) - p.dim
            if codim_in_v <= r:
                graph.add_edge(a, b)
    return graph


def connectivity_in_codim(p: SepPoset, r: int) -> bool:
    """성분 교차 그래프가 여차원 ≤ r 간선만으로 연결되는지."""
    if not 1 <= r <= p.dim:
        raise DimensionError(f"r must lie in [1, {p.dim}], got {r}")
    graph = component_graph(p, r)
    return graph.number_of_nodes() <= 1 or nx.is_connected(graph)


# ============================================================
# 내보내기
# ============================================================
def poset_dot(p: SepPoset) -> str:
    """Hasse 도표 DOT (노드 라벨 "gγ·W (codim c)")."""
    return hasse_dot(p, lambda i: p.nodes[i].label(), name="separating_poset")


def poset_dump(p: SepPoset) -> dict:
    return {
        "nodes": [
            {"subspace_id": n.lattice_index, "coset_rep": n.coset_rep, "codim": n.codim}
            for n in p.nodes
        ],
        "covers": [[lo, hi] for lo, hi in sorted(p.covers())],
    }


# ============================================================
# 구조 검사
# ============================================================
def component_down_set_matches_lattice(p: SepPoset, lattice: SubspaceLattice, component: int) -> bool:
    """
    성분 (1⊗σ)(V) 아래의 down-set 이 반사 격자와 순서 동형인지.

    down-set 의 각 노드를 W 로 보내는 사상이 전단사이고 순서를 보존하는지 확인.
    """
    down = p.down_set(component)
    to_lattice = [node.lattice_index for node in down.nodes]
    used = [li for li in range(lattice.size) if li == 0 or lattice.isotropy[li] != frozenset({0})]
    if sorted(to_lattice) != sorted(used):
        return False
    for i in range(down.size):
        for j in range(down.size):
            if i != j and bool(down.less[i, j]) != bool(lattice.less[to_lattice[i], to_lattice[j]]):
                return False
    return True


def _hasse_graph(p: FinitePoset) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from((i, {"codim": c}) for i, c in enumerate(p.codims))
    graph.add_edges_from(p.covers())
    return graph


def _same_codim(a: dict, b: dict) -> bool:
    return a["codim"] == b["codim"]


def upper_interval_isomorphism_check(
    g: FiniteMatrixGroup,
    lattice_index: int,
    characteristic: int = 0,
    lattice: SubspaceLattice | None = None,
    poset: SepPoset | None = None,
) -> tuple[bool, str]:
    """
    S_{V,G}(>(1⊗1)(W)) 와 S_{V,G_W}(>(1⊗1)(V^{G_W})) 를 비교합니다.

    두 구간의 Hasse 도표(여차원 라벨 포함)가 그래프 동형인지 networkx 로 확인하고,
    축약 Betti 수도 함께 비교합니다.

    Returns:
        tuple[bool, str]: (일치 여부, 이유)
    """
    lattice = lattice if lattice is not None else reflecting_lattice(g)
    poset = poset if poset is not None else separating_poset(g, lattice)
    iso = lattice.isotropy[lattice_index]
    if iso == frozenset({0}):
        return False, "lattice node has trivial isotropy"

    left = poset.open_interval_above(poset.node_index(lattice_index, 0))
    h = subgroup(g, iso)
    h_poset = separating_poset(h)
    bottom = h_poset.bottom()
    if bottom is None:
        return False, "isotropy poset has no unique minimum"
    right = h_poset.open_interval_above(bottom)

    # G 의 여차원은 d + codim W 기준, G_W 쪽은 V^{G_W} = W 이므로 같은 값
    if left.layer_sizes() != right.layer_sizes():
        return False, f"layer sizes differ: {left.layer_sizes()} vs {right.layer_sizes()}"
    if not nx.is_isomorphic(_hasse_graph(left), _hasse_graph(right), node_match=_same_codim):
        return False, "hasse diagrams are not isomorphic"
    b_left = poset_betti(left, characteristic)
    b_right = poset_betti(right, characteristic)
    if b_left.values != b_right.values:
        return False, f"betti numbers differ: {b_left.values} vs {b_right.values}"
    return True, "ok"
