"""
services/homology.py
============================================================
Order complex 와 체 계수 축약(reduced) 단체 호몰로지

- 면(face) = poset 의 chain, 꼭짓점은 노드 번호 오름차순으로 정렬해 저장
- 경계사상 부호는 정렬된 단체 규약 (i번째 꼭짓점 제거 → (−1)^i)
- rank 계산: sympy DomainMatrix (희소, GF(p) 또는 QQ)

β̃_i = f_i − rank ∂_i − rank ∂_{i+1}
  (f_{−1} = 1, ∂_0 는 augmentation 이므로 빈 complex 는 β̃_{−1} = 1)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator

from sympy import GF, QQ
from sympy.polys.matrices import DomainMatrix

from config import CHAIN_BUDGET
from services.errors import BudgetExceeded, FieldError
from services.poset import FinitePoset

logger = logging.getLogger(__name__)

Face = tuple[int, ...]


# ============================================================
# Order complex
# ============================================================
@dataclass(eq=False)
class OrderComplex:
    """
    Attributes:
        vertex_count (int): 꼭짓점(poset 노드) 수
        faces (list[list[Face]]): faces[k] = k차원 면 목록 (정렬됨)
        facets (list[Face]): 극대 chain 목록 (정렬됨)
    """

    vertex_count: int
    faces: list[list[Face]]
    facets: list[Face]

    @property
    def dimension(self) -> int:
        return len(self.faces) - 1

    @property
    def is_empty(self) -> bool:
        return self.vertex_count == 0

    def face_counts(self) -> list[int]:
        """[f_{−1}, f_0, f_1, ...] (f_{−1} = 1)."""
        return [1] + [len(level) for level in self.faces]

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def reduced_euler(self) -> int:
        return sum((n if k % 2 else -n) for k, n in enumerate(self.face_counts()))


def _chains_from(poset: FinitePoset, start: int) -> Iterator[list[int]]:
    stack: list[tuple[list[int], list[int]]] = [([start], poset.above(start))]
    while stack:
        chain, ups = stack.pop()
        yield chain
        for j in reversed(ups):
            stack.append((chain + [j], [k for k in ups if poset.less[j, k]]))


def order_complex(poset: FinitePoset, *, budget: int = CHAIN_BUDGET) -> OrderComplex:
    """
    poset 의 모든 chain 을 DFS 로 나열합니다.

    Args:
        poset (FinitePoset): SepPoset / SubspaceLattice / 그 부분 poset
        budget (int): chain 개수 상한

    Returns:
        OrderComplex: 차원별 면 목록과 극대 chain
    """
    levels: dict[int, list[Face]] = {}
    count = 0
    for start in range(poset.size):
        for chain in _chains_from(poset, start):
            count += 1
            if count > budget:
                raise BudgetExceeded(f"order complex exceeds chain budget {budget}")
            face = tuple(sorted(chain))
            levels.setdefault(len(face) - 1, []).append(face)
    faces = [sorted(levels[k]) for k in range(len(levels))]
    return OrderComplex(vertex_count=poset.size, faces=faces, facets=maximal_chains(poset))


def maximal_chains(poset: FinitePoset) -> list[Face]:
    """최소 원소에서 최대 원소까지 cover 를 따라가는 chain 들."""
    up: dict[int, list[int]] = {}
    for lo, hi in poset.covers():
        up.setdefault(lo, []).append(hi)
    out: list[Face] = []
    stack = [[m] for m in reversed(poset.minimal())]
    while stack:
        chain = stack.pop()
        nxt = up.get(chain[-1], [])
        if not nxt:
            out.append(tuple(sorted(chain)))
            continue
        for j in reversed(nxt):
            stack.append(chain + [j])
    return sorted(out)


# ============================================================
# Betti 수
# ============================================================
@dataclass(frozen=True)
class BettiVector:
    """
    Attributes:
        characteristic (int): 계수체 표수 (0 = QQ)
        values (tuple[int, ...]): (β̃_{−1}, β̃_0, ..., β̃_dim)
    """

    characteristic: int
    values: tuple[int, ...]

    def __getitem__(self, degree: int) -> int:
        idx = degree + 1
        return self.values[idx] if 0 <= idx < len(self.values) else 0

    def nonzero_degrees(self) -> list[int]:
        return [k - 1 for k, b in enumerate(self.values) if b]

    def from_degree(self, start: int = 0) -> list[int]:
        return list(self.values[start + 1 :])

    def euler(self) -> int:
        return sum((b if k % 2 else -b) for k, b in enumerate(self.values))

    @property
    def is_zero(self) -> bool:
        return not any(self.values)


def _domain(characteristic: int):
    if characteristic == 0:
        return QQ
    from galois import is_prime

    if not is_prime(characteristic):
        raise FieldError(f"coefficient characteristic {characteristic} is not 0 or prime")
    return GF(characteristic)


def _boundary_rank(higher: list[Face], lower: list[Face], domain) -> int:
    if not higher or not lower:
        return 0
    row_of = {f: i for i, f in enumerate(lower)}
    one, minus = domain(1), domain(-1)
    rows: dict[int, dict[int, object]] = {}
    for col, face in enumerate(higher):
        for k in range(len(face)):
            r = row_of[face[:k] + face[k + 1 :]]
            rows.setdefault(r, {})[col] = one if k % 2 == 0 else minus
    return DomainMatrix(rows, (len(lower), len(higher)), domain).rank()


def reduced_betti(c: OrderComplex, characteristic: int = 0) -> BettiVector:
    """
    축약 Betti 수를 계수체 GF(p) (또는 QQ) 위에서 계산합니다.

    Note:
        - 꼭짓점 순서 = 노드 번호 순서 (Betti 수는 순서와 무관)
        - 비틀림(torsion)은 다루지 않음
    """
    domain = _domain(characteristic)
    ranks = [1 if c.faces else 0]  # ∂_0 : C_0 → k (augmentation)
    for k in range(1, c.dimension + 1):
        ranks.append(_boundary_rank(c.faces[k], c.faces[k - 1], domain))
    ranks.append(0)
    counts = c.face_counts()
    values = []
    for k in range(-1, c.dimension + 1):
        r_in = ranks[k] if k >= 0 else 0
        r_out = ranks[k + 1]
        values.append(counts[k + 1] - r_in - r_out)
    out = BettiVector(characteristic=characteristic, values=tuple(values))
    logger.debug("betti(char=%d) of %d-vertex complex: %s", characteristic, c.vertex_count, out.values)
    return out


def poset_betti(poset: FinitePoset, characteristic: int = 0, *, budget: int = CHAIN_BUDGET) -> BettiVector:
    return reduced_betti(order_complex(poset, budget=budget), characteristic)
