"""
services/bounds.py
============================================================
poset homology → local cohomology 비소멸 차수 → 분리 집합 크기 하한

핵심 논리:
- 모든 노드 p 와 차수 i 에 대해 β̃_i(P(>p)) ≠ 0 이면
  q = codim(p) − i − 1 차 local cohomology 가 0 이 아님
- 0 이 아닌 차수 q 가 있으면, 분리 집합(기하적)은 q 개 이상의 원소가 필요
  (Čech complex 길이 논증)

리포트는 비소멸 "차수"만 다룹니다. 모듈 구조나 차원은 주장하지 않습니다.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

from config import CHAIN_BUDGET, THREADS
from services.arrangement import SepPoset
from services.homology import BettiVector, poset_betti
from services.reflection import ReflectionClassification

logger = logging.getLogger(__name__)


# ============================================================
# 리포트 타입
# ============================================================
@dataclass
class NodeHomology:
    node: int
    lattice_index: int
    coset_rep: int
    codim: int
    betti: BettiVector

    def degrees(self) -> list[int]:
        """이 노드가 기여하는 q 값들."""
        return [self.codim - i - 1 for i in self.betti.nonzero_degrees()]


@dataclass
class NonvanishingReport:
    """
    Attributes:
        dim (int): d
        characteristic (int): 호몰로지 계수체 표수
        entries (list[NodeHomology]): 노드별 P(>p) 의 Betti 수
        Q (list[int]): 비소멸 차수 (오름차순)
        contributors (dict[int, list[int]]): q → 기여 노드 번호
    """

    dim: int
    characteristic: int
    entries: list[NodeHomology]
    Q: list[int]
    contributors: dict[int, list[int]]


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""
    witness: list[int] = dc_field(default_factory=list)


@dataclass
class SeparatingBound:
    """
    Attributes:
        cohomological (int): max Q
        reflection (int): d + r* − 1
        reflection_degrees (list[int]): {d + r_i − 1}
        connectivity (int): d + generating_r − 1
        embedding_dimension (int): 불변식환 생성원 개수 하한 (= max Q)
        checks (list[Check]): 일관성 검사
    """

    cohomological: int
    reflection: int
    reflection_degrees: list[int]
    connectivity: int
    embedding_dimension: int
    checks: list[Check]

    @property
    def consistent(self) -> bool:
        return all(c.ok for c in self.checks)


# ============================================================
# 비소멸 차수
# ============================================================
def agz_report(
    p: SepPoset,
    characteristic: int = 0,
    *,
    use_symmetry: bool = True,
    threads: int = THREADS,
    budget: int = CHAIN_BUDGET,
) -> NonvanishingReport:
    """
    모든 노드의 열린 위 구간 P(>p) 의 축약 Betti 수로 비소멸 차수 Q 를 구합니다.

    Args:
        p (SepPoset): 분리 poset
        characteristic (int): 계수체 표수 (기본값은 호출 측에서 정의체 표수)
        use_symmetry (bool): 같은 W 의 코셋 노드끼리는 구간이 동형이므로 한 번만 계산

    Note:
        - γ 왼쪽 곱 (W, δ) ↦ (W, γδ) 는 poset 자기동형이라 같은 W 의 구간은 모두 동형
        - 성분 노드는 위 구간이 비어 있으므로 β̃_{−1} = 1 → q = d 기여
    """
    if use_symmetry:
        reps: dict[int, int] = {}
        for i, n in enumerate(p.nodes):
            reps.setdefault(n.lattice_index, i)
        targets = sorted(reps.values())
    else:
        targets = list(range(p.size))

    def work(i: int) -> BettiVector:
        return poset_betti(p.open_interval_above(i), characteristic, budget=budget)

    if threads > 1 and len(targets) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = dict(zip(targets, pool.map(work, targets)))
    else:
        results = {i: work(i) for i in targets}

    entries = []
    for i, n in enumerate(p.nodes):
        betti = results[i] if i in results else results[reps[n.lattice_index]]
        entries.append(NodeHomology(i, n.lattice_index, n.coset_rep, n.codim, betti))

    contributors: dict[int, list[int]] = {}
    for e in entries:
        for q in e.degrees():
            contributors.setdefault(q, []).append(e.node)
    q_set = sorted(contributors)
    logger.info("nonvanishing degrees Q=%s (char %d)", q_set, characteristic)
    return NonvanishingReport(
        dim=p.dim,
        characteristic=characteristic,
        entries=entries,
        Q=q_set,
        contributors=dict(sorted(contributors.items())),
    )


def lower_bound(rep: NonvanishingReport) -> int:
    """max Q: 이 방법으로 보증되는 (기하적) 분리 집합 크기 하한."""
    return max(rep.Q)


def reflection_degrees(c: ReflectionClassification, d: int) -> list[int]:
    """minimal reflecting subspace 여차원 r_i 에 대한 {d + r_i − 1}."""
    return sorted({d + r - 1 for r in c.minimal_codims})


def reflection_bound(c: ReflectionClassification, d: int) -> int:
    """d + r* − 1 (minimal reflecting subspace 가 없으면 d)."""
    if not c.minimal:
        return d
    return d + c.r_star - 1


def connectivity_bound(c: ReflectionClassification, d: int) -> int:
    """G 가 (≤ r−1)-reflection 으로 생성되지 않으면 크기 d + r − 1 미만의 분리 집합은 없음."""
    return max(d, d + c.generating_r - 1)


# ============================================================
# 일관성 검사
# ============================================================
def consistency_checks(rep: NonvanishingReport, c: ReflectionClassification, d: int) -> list[Check]:
    """
    (i) 2d ∉ Q, (ii) {d + r_i − 1} ⊆ Q, (iii) rigid reflection group 이면 Q = {d}
    에 더해 Q ⊆ [d, 2d−1], d ∈ Q 를 확인합니다.
    """
    q = set(rep.Q)
    checks = [Check("top_degree_vanishes", 2 * d not in q, f"2d = {2 * d}")]

    degrees = reflection_degrees(c, d)
    missing = [x for x in degrees if x not in q]
    checks.append(Check("reflection_degrees_in_Q", not missing, f"degrees {degrees}", missing))

    if c.is_rigid_reflection_group:
        checks.append(Check("rigid_reflection_concentrated", rep.Q == [d], f"Q = {rep.Q}", [x for x in rep.Q if x != d]))

    outside = [x for x in rep.Q if not d <= x <= 2 * d - 1]
    checks.append(Check("Q_in_range", not outside and d in q, f"range [{d}, {2 * d - 1}]", outside))

    for ch in checks:
        if not ch.ok:
            logger.warning("consistency check %s failed: %s %s", ch.name, ch.detail, ch.witness)
    return checks


def separating_bound(rep: NonvanishingReport, c: ReflectionClassification, d: int) -> SeparatingBound:
    """모든 하한과 일관성 검사를 하나로 모읍니다."""
    checks = consistency_checks(rep, c, d)
    coh = lower_bound(rep)
    floor = reflection_bound(c, d)
    conn = connectivity_bound(c, d)
    checks.append(Check("bounds_ordered", conn <= floor <= coh, f"{conn} <= {floor} <= {coh}"))
    return SeparatingBound(
        cohomological=coh,
        reflection=floor,
        reflection_degrees=reflection_degrees(c, d),
        connectivity=conn,
        embedding_dimension=coh,
        checks=checks,
    )
