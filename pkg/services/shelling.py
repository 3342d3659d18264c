"""
services/shelling.py
============================================================
Shelling: EL 라벨링으로 반사 격자를 shell 하고,
성분별 shelling 을 이어 붙여 분리 poset 전체를 shell 합니다.

검증기는 구성과 독립적으로 shelling 조건을 다시 확인합니다:
  각 i > 0, j < i 에 대해 F_i∩F_j ⊆ F_i∩F_k, |F_i∩F_k| = |F_i| − 1 인 k < i 존재
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field as dc_field

from services.arrangement import SepPoset
from services.errors import PreconditionError
from services.homology import Face, OrderComplex, order_complex
from services.linalg import subspace_meet, subspace_meet_all
from services.matrix_group import FiniteMatrixGroup
from services.reflection import ReflectionClassification, SubspaceLattice, classify

logger = logging.getLogger(__name__)


@dataclass
class ShellingCheck:
    """
    Attributes:
        ok (bool): shelling 조건 통과 여부
        witness (tuple[int, int] | None): 실패한 (i, j)
        reason (str): 실패 사유
        certificate (list[list[int]]): certificate[i][j] = 선택된 k (i > 0, j < i)
    """

    ok: bool
    witness: tuple[int, int] | None = None
    reason: str = "ok"
    certificate: list[list[int]] = dc_field(default_factory=list)


@dataclass
class ShellingOrder:
    """
    Attributes:
        facets (list[Face]): 정렬된 극대 chain (poset 노드 번호)
        label_words (list[tuple[int, ...]]): EL 라벨 단어 (격자 shelling 일 때)
        copies (list[dict]): 성분별 구성 기록 (분리 poset shelling 일 때)
        check (ShellingCheck | None): 검증 결과
    """

    facets: list[Face]
    label_words: list[tuple[int, ...]] = dc_field(default_factory=list)
    copies: list[dict] = dc_field(default_factory=list)
    check: ShellingCheck | None = None

    @property
    def verified(self) -> bool:
        return self.check is not None and self.check.ok


# ============================================================
# 검증
# ============================================================
def verify_shelling(c: OrderComplex, order: list[Face]) -> ShellingCheck:
    """
    facet 순서가 shelling 인지 확인합니다.

    Args:
        c (OrderComplex): 대상 complex
        order (list[Face]): c.facets 의 순열

    Returns:
        ShellingCheck: 통과 여부, 실패 시 (i, j), 통과 시 certificate
    """
    if sorted(order) != sorted(c.facets) or len(set(order)) != len(order):
        raise PreconditionError("order is not a permutation of the complex's facets")
    if not c.is_pure():
        return ShellingCheck(False, None, "complex is not pure")

    sets = [frozenset(f) for f in order]
    certificate: list[list[int]] = [[]]
    for i in range(1, len(sets)):
        fi = sets[i]
        # 앞 facet 과의 교집합마다 그것을 품는 (|F_i| − 1) 크기 교집합이 있어야 함
        meets = [fi & sets[j] for j in range(i)]
        big = [k for k in range(i) if len(meets[k]) == len(fi) - 1]
        row = []
        for j in range(i):
            k = next((k for k in big if meets[j] <= meets[k]), None)
            if k is None:
                return ShellingCheck(False, (i, j), f"facet {i} meets facet {j} outside a codimension-1 face")
            row.append(k)
        certificate.append(row)
    return ShellingCheck(True, None, "ok", certificate)


# ============================================================
# 반사 격자의 EL shelling
# ============================================================
def _require_hyperplane_lattice(lattice: SubspaceLattice) -> list[int]:
    hyperplanes = [i for i in range(lattice.size) if lattice.codims[i] == 1]
    for i in range(1, lattice.size):
        w = lattice.subspaces[i]
        above = [lattice.subspaces[h] for h in hyperplanes if lattice.less[i, h] or h == i]
        if subspace_meet_all(above, w.field, w.ambient) != w:
            raise PreconditionError(f"lattice node {i} (codim {w.codim}) is not an intersection of hyperplanes")
    return hyperplanes


def el_shelling_reflecting(lattice: SubspaceLattice, first: int) -> ShellingOrder:
    """
    쌍대 격자의 EL 라벨링으로 극대 chain 들을 정렬합니다.

    Args:
        lattice (SubspaceLattice): rigid reflection group 의 반사 격자
        first (int): 맨 앞에 둘 반사 초평면의 격자 번호

    Returns:
        ShellingOrder: 첫 facet 은 first 를 포함

    Note:
        - atom 순서: first, 그 다음 나머지 초평면을 번호 오름차순
        - 간선 (x ⊃ y) 라벨 = x ∩ H_i = y 인 최소 i (1부터)
        - 라벨 단어 사전순 정렬 (동률이면 chain 자체로 정렬)
    """
    hyperplanes = _require_hyperplane_lattice(lattice)
    if lattice.size == 1:
        return ShellingOrder(facets=[(0,)], label_words=[()])
    if first not in hyperplanes:
        raise PreconditionError(f"lattice node {first} is not a reflecting hyperplane")
    atoms = [first] + [h for h in hyperplanes if h != first]

    index_of = {w: i for i, w in enumerate(lattice.subspaces)}

    def label(x: int, y: int) -> int:
        for pos, h in enumerate(atoms, start=1):
            if index_of[subspace_meet(lattice.subspaces[x], lattice.subspaces[h])] == y:
                return pos
        raise PreconditionError(f"cover ({x}, {y}) has no atom label")

    # 포함 관계로 내려가는 방향 (V → bottom)
    down: dict[int, list[int]] = {}
    for lo, hi in lattice.covers():
        down.setdefault(hi, []).append(lo)
    chains: list[tuple[tuple[int, ...], list[int]]] = []
    stack = [(0,)]
    while stack:
        chain = stack.pop()
        nxt = down.get(chain[-1], [])
        if not nxt:
            word = tuple(label(a, b) for a, b in zip(chain, chain[1:]))
            chains.append((word, list(chain)))
            continue
        for y in nxt:
            stack.append(chain + (y,))
    chains.sort()
    facets = [tuple(sorted(chain)) for _, chain in chains]
    if first not in facets[0]:
        raise PreconditionError("first facet does not contain the designated hyperplane")
    return ShellingOrder(facets=facets, label_words=[w for w, _ in chains])


# ============================================================
# 분리 poset 의 shelling
# ============================================================
def reflection_bfs(g: FiniteMatrixGroup) -> list[tuple[int, int | None, int | None]]:
    """
    1 = σ_0, σ_1, ... 를 σ_j = σ_i·t (t 는 반사, i < j 최소) 로 나열.

    Returns:
        list[tuple[int, int | None, int | None]]: (원소 번호, 증인 위치 i, 반사 t)
    """
    reflections = [s for s, c in enumerate(g.codims) if c == 1]
    order: list[tuple[int, int | None, int | None]] = [(0, None, None)]
    position = {0: 0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for t in reflections:
            y = g.mul(x, t)
            if y not in position:
                position[y] = len(order)
                order.append((y, position[x], t))
                queue.append(y)
    if len(order) != g.order:
        raise PreconditionError("group is not generated by reflections")
    return order


def shelling_separating(
    p: SepPoset,
    g: FiniteMatrixGroup,
    classification: ReflectionClassification | None = None,
    *,
    complex_: OrderComplex | None = None,
    verify: bool = True,
) -> ShellingOrder:
    """
    rigid reflection group 의 분리 poset 을 성분별 격자 shelling 으로 이어 붙여 shell 합니다.

    Note:
        - j = 0: 항등원 성분의 down-set 을 가장 작은 번호의 초평면부터 EL shelling
        - j > 0: BFS 증인 i 와 반사 t 에 대해 H = V^t 로 시작하는 shelling 을 사상
        - 이어 붙인 결과를 verify_shelling 으로 다시 검증 (실패 시 경고)
    """
    classification = classification or classify(g)
    if not classification.is_rigid_reflection_group:
        raise PreconditionError("shelling construction needs a rigid reflection group")
    lattice = classification.lattice
    node_index = {n.key: i for i, n in enumerate(p.nodes)}

    def to_poset(chain: Face, sigma: int) -> Face:
        # 격자 chain 의 W 를 σ 의 코셋 대표 노드 (W, σG_W) 로 보냄
        out = []
        for li in chain:
            rep = g.coset_rep(sigma, lattice.isotropy[li])
            out.append(node_index[(li, rep)])
        return tuple(sorted(out))

    hyperplanes = [i for i in range(lattice.size) if lattice.codims[i] == 1]
    facets: list[Face] = []
    copies: list[dict] = []
    for j, (sigma, witness, t) in enumerate(reflection_bfs(g)):
        if t is None:
            first = hyperplanes[0] if hyperplanes else 0
        else:
            first = lattice.index_of(g.fixed[t])
        copy = el_shelling_reflecting(lattice, first)
        mapped = [to_poset(chain, sigma) for chain in copy.facets]
        # 이어 붙일 copy 의 첫 facet 은 증인 copy 와 공유하는 초평면 노드를 지나야 함
        if t is not None:
            h_node = node_index[(first, g.coset_rep(sigma, lattice.isotropy[first]))]
            if h_node not in mapped[0]:
                raise PreconditionError(f"copy {j}: first facet misses the shared hyperplane node")
        facets.extend(mapped)
        copies.append({"position": j, "element": sigma, "witness": witness, "reflection": t, "first": first})

    out = ShellingOrder(facets=facets, copies=copies)
    if verify:
        c = complex_ if complex_ is not None else order_complex(p)
        out.check = verify_shelling(c, facets)
        if not out.check.ok:
            logger.warning("concatenated shelling failed verification at %s: %s", out.check.witness, out.check.reason)
    return out
