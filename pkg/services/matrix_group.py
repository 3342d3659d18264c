"""
services/matrix_group.py
============================================================
유한 행렬군: 닫힘(closure), 고정공간, isotropy 부분군

행렬 규약:
- "point" : 입력 행렬이 좌표 열벡터에 작용 (ρ(σ)·v)
- "substitution" : j번째 열이 σ·x_j 의 계수 (V* 위의 행렬)
  → ρ(σ) = C^{-T} 로 변환해서 저장

원소 순서는 결정적입니다: 항등원이 0번, 이후 정렬된 생성원으로
너비 우선(BFS) 탐색한 발견 순서.
"""

from __future__ import annotations

import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Literal, Sequence

from config import CLOSURE_CAP, THREADS
from services.errors import DimensionError, GroupClosureError
from services.field import Field
from services.linalg import Matrix, Subspace, fixed_space, subspace_leq

logger = logging.getLogger(__name__)

Convention = Literal["point", "substitution"]


@dataclass(eq=False)
class FiniteMatrixGroup:
    """
    원소가 모두 나열된 유한 행렬군.

    Attributes:
        field (Field): 정의체
        dim (int): V 의 차원 d
        generators (list[Matrix]): point 규약 생성원 (정렬됨)
        elements (list[Matrix]): 원소 목록 (0번 = 항등원)
        fixed (list[Subspace]): 원소별 고정공간 V^σ
    """

    field: Field
    dim: int
    generators: list[Matrix]
    elements: list[Matrix]
    fixed: list[Subspace]
    label: str = ""
    _index: dict[Matrix, int] = dc_field(default_factory=dict, repr=False)
    _inverse: list[int] = dc_field(default_factory=list, repr=False)
    _products: dict[tuple[int, int], int] = dc_field(default_factory=dict, repr=False)
    # σ → 단항식 작용 memo (services/invariants.py 가 채움)
    _actions: dict[int, object] = dc_field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if not self._index:
            self._index = {m: i for i, m in enumerate(self.elements)}
        if not self._inverse:
            self._inverse = [self._index[m.inverse()] for m in self.elements]

    # ------------------------------------------------------------
    # 기본 조회
    # ------------------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def codims(self) -> list[int]:
        return [w.codim for w in self.fixed]

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    def index_of(self, m: Matrix) -> int:
        try:
            return self._index[m]
        except KeyError:
            raise GroupClosureError("matrix is not an element of the group") from None

    def generator_indices(self) -> list[int]:
        return sorted({self._index[g] for g in self.generators})

    def mul(self, i: int, j: int) -> int:
        """원소 번호 i·j 의 번호 (행렬곱 ρ(σ_i)ρ(σ_j))."""
        key = (i, j)
        out = self._products.get(key)
        if out is None:
            out = self._index[self.elements[i] @ self.elements[j]]
            self._products[key] = out
        return out

    def inv(self, i: int) -> int:
        return self._inverse[i]

    def full_space(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    # ------------------------------------------------------------
    # 부분군
    # ------------------------------------------------------------
    def subgroup_closure(self, gens: Iterable[int]) -> frozenset[int]:
        """원소 집합 안에서 BFS로 생성 부분군을 구합니다 (새 행렬곱 없음)."""
        gens = sorted(set(gens))
        seen = {0}
        queue = deque([0])
        while queue:
            x = queue.popleft()
            for s in gens:
                y = self.mul(x, s)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def coset_rep(self, gamma: int, subgroup: Iterable[int]) -> int:
        """γ·H 에서 가장 작은 원소 번호."""
        return min(self.mul(gamma, h) for h in subgroup)

    def describe(self) -> dict:
        return {
            "label": self.label,
            "field": self.field.descriptor(),
            "dimension": self.dim,
            "order": self.order,
            "generators": [g.to_json() for g in self.generators],
        }


def to_point_matrix(m: Matrix, convention: Convention) -> Matrix:
    """substitution 규약 행렬을 point 규약(C^{-T})으로 변환합니다."""
    if convention == "point":
        return m
    if convention == "substitution":
        return m.inverse().transpose()
    raise DimensionError(f"unknown matrix convention {convention!r}")


def _fixed_spaces(elements: Sequence[Matrix], threads: int) -> list[Subspace]:
    if threads <= 1 or len(elements) < 64:
        return [fixed_space(m) for m in elements]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fixed_space, elements))


def close_group(
    generators: Sequence[Matrix],
    *,
    cap: int = CLOSURE_CAP,
    convention: Convention = "point",
    label: str = "",
    threads: int = THREADS,
) -> FiniteMatrixGroup:
    """
    생성원으로부터 유한 행렬군을 닫아 만듭니다.

    Args:
        generators (Sequence[Matrix]): 같은 체 위의 가역 정사각 행렬들
        cap (int): 원소 수 상한
        convention (Convention): 입력 행렬 규약
        label (str): 리포트용 이름

    Returns:
        FiniteMatrixGroup: 모든 원소와 고정공간이 계산된 군

    Note:
        - 빈 생성원 목록은 허용되지 않습니다 (차원을 알 수 없음).
          자명군은 항등행렬 하나로 넘기세요.
        - 상한을 넘으면 GroupClosureError (무한군/잘못된 입력 방지)
    """
    if cap < 1:
        raise GroupClosureError(f"closure cap must be >= 1, got {cap}")
    if not generators:
        raise GroupClosureError("at least one generator (possibly the identity) is required")
    field = generators[0].field
    dim = generators[0].rows
    for g in generators:
        if g.field != field:
            raise DimensionError("generators over different fields")
        if not g.is_square or g.rows != dim:
            raise DimensionError(f"generator of shape {g.rows}x{g.cols}, expected {dim}x{dim}")
        if g.rank() < dim:
            raise GroupClosureError("singular generator")

    point_gens = [to_point_matrix(g, convention) for g in generators]
    gens = sorted(set(point_gens), key=lambda m: m.key)
    ident = Matrix.identity(field, dim)

    elements = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = x @ s
            if y in index:
                continue
            if len(elements) >= cap:
                raise GroupClosureError(f"group closure exceeded cap {cap} (infinite or too large group?)")
            index[y] = len(elements)
            elements.append(y)
            queue.append(y)

    fixed = _fixed_spaces(elements, threads)
    logger.info("group closed: order=%d, dim=%d over %s", len(elements), dim, field.label)
    return FiniteMatrixGroup(
        field=field,
        dim=dim,
        generators=[g for g in gens if not g.is_identity()] or [ident],
        elements=elements,
        fixed=fixed,
        label=label,
        _index=index,
    )


def subgroup(g: FiniteMatrixGroup, members: Iterable[int], label: str = "") -> FiniteMatrixGroup:
    """원소 번호 집합(부분군)을 독립된 FiniteMatrixGroup 으로 만듭니다."""
    mats = [g.elements[i] for i in sorted(members)]
    return close_group(mats, cap=len(mats), label=label or f"{g.label}|sub", threads=1)


def isotropy(g: FiniteMatrixGroup, w: Subspace) -> frozenset[int]:
    """G_W = {σ : W ⊆ V^σ} (원소 번호 집합)."""
    if w.ambient != g.dim:
        raise DimensionError(f"subspace in dimension {w.ambient}, group acts on dimension {g.dim}")
    return frozenset(i for i, fs in enumerate(g.fixed) if subspace_leq(w, fs))


def is_r_reflection_group(g: FiniteMatrixGroup, r: int) -> bool:
    """codim V^σ ≤ r 인 원소들이 G 전체를 생성하는지."""
    if not 0 <= r <= g.dim:
        raise DimensionError(f"r must lie in [0, {g.dim}], got {r}")
    gens = [i for i, c in enumerate(g.codims) if 0 < c <= r]
    return len(g.subgroup_closure(gens)) == g.order
