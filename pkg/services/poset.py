"""
services/poset.py
============================================================
유한 poset 공통 구조

SubspaceLattice(반사 부분공간 격자)와 SepPoset(분리 다양체 교차 poset)이
모두 이 구조를 공유하므로 order complex / homology / shelling 코드는
poset 종류를 몰라도 됩니다.

순서 관계는 n×n bool 행렬 less[i, j] = (i < j) 로 저장합니다 (엄격 순서).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Sequence

import graphviz
import numpy as np

from services.errors import PreconditionError


@dataclass(eq=False)
class FinitePoset:
    """
    Attributes:
        labels (list[Any]): 노드별 값 (부분공간, SepNode 등)
        less (np.ndarray): 엄격 순서 행렬
        codims (list[int]): 노드별 여차원
        origin (list[int] | None): 부분 poset이면 원래 poset에서의 번호
    """

    labels: list[Any]
    less: np.ndarray
    codims: list[int]
    origin: list[int] | None = None

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return self.size

    @property
    def is_empty(self) -> bool:
        return self.size == 0

    def leq(self, i: int, j: int) -> bool:
        return i == j or bool(self.less[i, j])

    def comparable(self, i: int, j: int) -> bool:
        return self.leq(i, j) or self.leq(j, i)

    def above(self, i: int) -> list[int]:
        return [int(j) for j in np.flatnonzero(self.less[i])]

    def below(self, i: int) -> list[int]:
        return [int(j) for j in np.flatnonzero(self.less[:, i])]

    def maximal(self) -> list[int]:
        return [i for i in range(self.size) if not self.less[i].any()]

    def minimal(self) -> list[int]:
        return [i for i in range(self.size) if not self.less[:, i].any()]

    def covers(self) -> list[tuple[int, int]]:
        """Hasse 간선 (i, j): i < j 이고 사이에 아무 것도 없음."""
        if self.size == 0:
            return []
        lt = self.less.astype(np.int64)
        between = (lt @ lt) > 0
        cover = self.less & ~between
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(cover))]

    def induced(self, indices: Sequence[int]) -> FinitePoset:
        idx = list(indices)
        sub = self.less[np.ix_(idx, idx)] if idx else np.zeros((0, 0), dtype=bool)
        base = self.origin
        return FinitePoset(
            labels=[self.labels[i] for i in idx],
            less=sub.copy(),
            codims=[self.codims[i] for i in idx],
            origin=[base[i] if base else i for i in idx],
        )

    def open_interval_above(self, i: int) -> FinitePoset:
        """P(>i) 의 유도 부분 poset (빈 poset 허용)."""
        if not 0 <= i < self.size:
            raise PreconditionError(f"node {i} is not in the poset (size {self.size})")
        return self.induced(self.above(i))

    def down_set(self, i: int) -> FinitePoset:
        """{m ≤ i}."""
        if not 0 <= i < self.size:
            raise PreconditionError(f"node {i} is not in the poset (size {self.size})")
        return self.induced(sorted(self.below(i) + [i]))

    def proper_part(self) -> FinitePoset:
        """유일한 최소/최대 원소를 뺀 부분 poset."""
        keep = set(range(self.size))
        mins, maxs = self.minimal(), self.maximal()
        if len(mins) == 1:
            keep.discard(mins[0])
        if len(maxs) == 1:
            keep.discard(maxs[0])
        return self.induced(sorted(keep))

    def layer_sizes(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.codims:
            out[c] = out.get(c, 0) + 1
        return dict(sorted(out.items()))

    @classmethod
    def from_relation(
        cls,
        labels: Sequence[Any],
        codims: Sequence[int],
        le: Callable[[int, int], bool],
    ) -> FinitePoset:
        n = len(labels)
        less = np.zeros((n, n), dtype=bool)
        for i in range(n):
            for j in range(n):
                if i != j and le(i, j):
                    less[i, j] = True
        return cls(labels=list(labels), less=less, codims=list(codims))


def hasse_dot(
    poset: FinitePoset,
    node_label: Callable[[int], str],
    *,
    name: str = "poset",
    rank_by_codim: bool = True,
) -> str:
    """
    Hasse 도표의 Graphviz DOT 소스.

    노드는 번호 순서, 간선은 (아래, 위) 사전순으로 넣기 때문에
    같은 poset이면 출력이 바이트 단위로 같습니다.
    """
    dot = graphviz.Digraph(name, graph_attr={"rankdir": "BT"}, node_attr={"shape": "box"})
    for i in range(poset.size):
        dot.node(f"n{i}", label=node_label(i))
    if rank_by_codim:
        for codim in sorted(set(poset.codims), reverse=True):
            members = [i for i in range(poset.size) if poset.codims[i] == codim]
            with dot.subgraph() as layer:
                layer.attr(rank="same")
                for i in members:
                    layer.node(f"n{i}")
    for lo, hi in sorted(poset.covers()):
        dot.edge(f"n{lo}", f"n{hi}")
    return dot.source
