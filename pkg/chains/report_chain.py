"""
chains/report_chain.py
============================================================
리포트 파이프라인

파이프라인 흐름:
1. group          : 군 요약
2. classify       : reflection 분류 (반사 격자 포함)
3. poset          : 분리 다양체 교차 poset
4. homology       : 노드별 위 구간 Betti 수 → 비소멸 차수 Q
5. bounds         : 하한들 + 일관성 검사
6. shelling       : rigid reflection group 일 때만 구성/검증
7. profile        : (요청 시) 생성원 차수 분포
8. separating     : (후보가 있고 유한체일 때) 궤도 분리 검증

각 단계는 앞 단계 결과(ChainState)를 받아 리포트 조각을 채웁니다.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Callable

from config import POINT_BUDGET, SAMPLE_SIZE, THREADS
from schemas.reports import (
    BoundsReport,
    CheckRecord,
    ClassificationReport,
    ExpectationRecord,
    ExtensionRecord,
    FullReport,
    GroupReport,
    HomologyReport,
    MinimalSubspaceRecord,
    NodeHomologyRecord,
    PosetReport,
    RelationRecord,
    SeparationRecord,
    ShellingReport,
)
from services.arrangement import SepPoset, poset_dump, separating_poset
from services.bounds import NonvanishingReport, SeparatingBound, agz_report, separating_bound
from services.errors import PreconditionError
from services.gallery import Expectation, Scenario
from services.invariants import minimal_generator_profile
from services.matrix_group import FiniteMatrixGroup
from services.reflection import ReflectionClassification, classify
from services.scenarios import RelationCheck
from services.separation import SeparationReport, verify_separating
from services.shelling import ShellingOrder, shelling_separating

logger = logging.getLogger(__name__)


@dataclass
class ChainOptions:
    """
    Attributes:
        characteristic (int | None): homology 계수체 표수 (None 이면 정의체 표수)
        extensions (tuple[int, ...] | None): 분리 검증 확대 차수 (None 이면 시나리오 값)
        witness (bool): 분리 실패 증인 점을 리포트에 포함할지
        dump_poset (bool): poset 노드/cover 전체를 리포트에 포함할지
        stop_after (str | None): 이 단계까지만 실행
    """

    characteristic: int | None = None
    extensions: tuple[int, ...] | None = None
    budget: int = POINT_BUDGET
    on_budget: str = "sample"
    seed: int = 0
    sample_size: int = SAMPLE_SIZE
    threads: int = THREADS
    witness: bool = True
    use_symmetry: bool = True
    dump_poset: bool = False
    homology_entries: bool = False
    shelling_order: bool = False
    stop_after: str | None = None


@dataclass
class ChainState:
    scenario: Scenario
    options: ChainOptions
    report: FullReport
    classification: ReflectionClassification | None = None
    poset: SepPoset | None = None
    homology: NonvanishingReport | None = None
    bound: SeparatingBound | None = None
    shelling: ShellingOrder | None = None
    separation: SeparationReport | None = None
    profile: list[int] | None = None

    @property
    def group(self) -> FiniteMatrixGroup:
        return self.scenario.group


# ============================================================
# 리포트 조각 변환
# ============================================================
def group_record(g: FiniteMatrixGroup) -> GroupReport:
    return GroupReport(**g.describe())


def classification_record(c: ReflectionClassification) -> ClassificationReport:
    return ClassificationReport(
        order=c.order,
        dimension=c.dim,
        codim_profile=c.codim_profile,
        generating_r=c.generating_r,
        minimal=[MinimalSubspaceRecord(lattice_index=i, codim=k, basis=w.basis_json()) for i, w, k in c.minimal],
        r_star=c.r_star,
        rigid_r=c.rigid_r,
        rigid_isotropy=c.rigid_isotropy,
        criteria_agree=c.criteria_agree,
        rigid_reflection_group=c.is_rigid_reflection_group,
        lattice_size=c.lattice.size,
    )


def poset_record(p: SepPoset, dump: bool = False) -> PosetReport:
    return PosetReport(
        nodes=p.size,
        layer_sizes=p.layer_sizes(),
        components=len(p.components()),
        dump=poset_dump(p) if dump else None,
    )


def homology_record(rep: NonvanishingReport, p: SepPoset, entries: bool = False) -> HomologyReport:
    bottom = p.bottom()
    above = None
    if bottom is not None:
        above = rep.entries[bottom].betti.from_degree(0)
    return HomologyReport(
        characteristic=rep.characteristic,
        Q=rep.Q,
        contributors=rep.contributors,
        betti_above_bottom=above,
        entries=[
            NodeHomologyRecord(
                node=e.node, subspace_id=e.lattice_index, coset_rep=e.coset_rep, codim=e.codim, betti=list(e.betti.values)
            )
            for e in rep.entries
        ]
        if entries
        else [],
    )


def bounds_record(b: SeparatingBound) -> BoundsReport:
    return BoundsReport(
        bound_cohomological=b.cohomological,
        reflection_bound=b.reflection,
        reflection_degrees=b.reflection_degrees,
        connectivity_bound=b.connectivity,
        embedding_dimension=b.embedding_dimension,
        consistent=b.consistent,
        checks=[CheckRecord(name=c.name, ok=c.ok, detail=c.detail, witness=c.witness) for c in b.checks],
    )


def shelling_record(order: ShellingOrder | None, reason: str = "", include_order: bool = False) -> ShellingReport:
    if order is None:
        return ShellingReport(status="not-applicable", reason=reason)
    check = order.check
    return ShellingReport(
        status="verified" if order.verified else "failed",
        facets=len(order.facets),
        witness=list(check.witness) if check is not None and check.witness is not None else None,
        reason=check.reason if check is not None else "not verified",
        order=[list(f) for f in order.facets] if include_order else None,
        copies=order.copies if include_order else [],
    )


def separation_record(rep: SeparationReport, witness: bool = True) -> SeparationRecord:
    return SeparationRecord(
        candidates=rep.candidates,
        verdict=rep.verdict,
        extensions_covered=rep.extensions_covered,
        results=[
            ExtensionRecord(
                degree=r.degree,
                field=r.field,
                mode=r.mode,
                verdict=r.verdict,
                probabilistic=r.probabilistic,
                points=r.points,
                orbits=r.orbits,
                orbit_sizes_ok=r.orbit_sizes_ok,
                witness=r.witness if witness else None,
                diagnostic=r.diagnostic,
            )
            for r in rep.results
        ],
    )


def relation_records(checks: list[RelationCheck]) -> list[RelationRecord]:
    return [RelationRecord(name=c.name, where=list(c.where), holds=c.holds) for c in checks]


# ============================================================
# 단계
# ============================================================
def stage_group(s: ChainState) -> None:
    s.report.group = group_record(s.group)


def stage_classify(s: ChainState) -> None:
    s.classification = classify(s.group)
    s.report.classification = classification_record(s.classification)


def stage_poset(s: ChainState) -> None:
    s.poset = separating_poset(s.group, s.classification.lattice)
    s.report.poset = poset_record(s.poset, s.options.dump_poset)


def stage_homology(s: ChainState) -> None:
    char = s.options.characteristic
    if char is None:
        char = s.group.field.characteristic
    elif char != s.group.field.characteristic:
        logger.warning("homology over characteristic %d, group defined in characteristic %d",
                       char, s.group.field.characteristic)
    s.homology = agz_report(s.poset, char, use_symmetry=s.options.use_symmetry, threads=s.options.threads)
    s.report.homology = homology_record(s.homology, s.poset, s.options.homology_entries)


def stage_bounds(s: ChainState) -> None:
    s.bound = separating_bound(s.homology, s.classification, s.group.dim)
    s.report.bounds = bounds_record(s.bound)


def stage_shelling(s: ChainState) -> None:
    if not s.classification.is_rigid_reflection_group:
        s.report.shelling = shelling_record(None, "not a rigid reflection group")
        return
    try:
        s.shelling = shelling_separating(s.poset, s.group, s.classification)
    except PreconditionError as e:
        s.report.shelling = shelling_record(None, str(e))
        return
    s.report.shelling = shelling_record(s.shelling, include_order=s.options.shelling_order)


def stage_profile(s: ChainState) -> None:
    if s.scenario.profile_degrees > 0 and s.group.field.is_finite:
        s.profile = minimal_generator_profile(s.group, s.scenario.profile_degrees)
        s.report.profile = s.profile


def stage_separating(s: ChainState) -> None:
    s.report.relations = relation_records(s.scenario.relations)
    if not s.scenario.candidates:
        return
    if not s.group.field.is_finite:
        logger.warning("skipping separation check: characteristic 0 is not enumerable")
        return
    o = s.options
    s.separation = verify_separating(
        s.group,
        s.scenario.candidates,
        o.extensions or s.scenario.extensions,
        o.budget,
        on_budget=o.on_budget,
        seed=o.seed,
        sample_size=o.sample_size,
        threads=o.threads,
    )
    s.report.separating = separation_record(s.separation, o.witness)


STAGES: list[tuple[str, Callable[[ChainState], None]]] = [
    ("group", stage_group),
    ("classify", stage_classify),
    ("poset", stage_poset),
    ("homology", stage_homology),
    ("bounds", stage_bounds),
    ("shelling", stage_shelling),
    ("profile", stage_profile),
    ("separating", stage_separating),
]


def summarize(s: ChainState) -> dict[str, Any]:
    """갤러리 기대값과 비교하는 평평한 요약."""
    out: dict[str, Any] = {"order": s.group.order, "dimension": s.group.dim}
    c = s.classification
    if c is not None:
        out.update(
            generating_r=c.generating_r,
            r_star=c.r_star,
            minimal_codims=sorted(c.minimal_codims),
            has_codim3_minimal=3 in c.minimal_codims,
            rigid_reflection_group=c.is_rigid_reflection_group,
            rigid_below_r_star=c.is_rigid(c.r_star - 1) if c.r_star > 1 else True,
        )
    if s.poset is not None:
        out["poset_nodes"] = s.poset.size
        out["layer_sizes"] = list(s.poset.layer_sizes().values())
    if s.homology is not None:
        out["Q"] = s.homology.Q
        out["betti_above_bottom"] = s.report.homology.betti_above_bottom
    if s.bound is not None:
        out.update(
            bound=s.bound.cohomological,
            bound_cohomological=s.bound.cohomological,
            reflection_bound=s.bound.reflection,
            connectivity_bound=s.bound.connectivity,
            consistent=s.bound.consistent,
        )
    if s.report.shelling is not None:
        out["shelling_verified"] = s.report.shelling.status == "verified" if s.shelling else None
        out["shelling_facets"] = s.report.shelling.facets if s.shelling else None
    if s.profile is not None:
        out["profile"] = s.profile
    if s.scenario.candidates:
        out["candidate_count"] = len(s.scenario.candidates)
    if s.separation is not None:
        out["separating"] = s.separation.verdict
        out["extensions_verified"] = [
            r.degree for r in s.separation.results if r.mode == "exhaustive" and r.verdict == "separating"
        ]
        if s.bound is not None and s.separation.separating:
            out["cech_consistent"] = len(s.scenario.candidates) >= s.bound.cohomological
    if s.scenario.relations:
        checked = [r for r in s.scenario.relations if not r.name.endswith("_as_printed")]
        printed = [r for r in s.scenario.relations if r.name.endswith("_as_printed")]
        out["relations_hold"] = all(r.holds for r in checked)
        if printed:
            out["printed_forms_fail"] = not any(r.holds for r in printed)
    if s.scenario.extras:
        out.update(s.scenario.extras)
    return out


def check_expectations(summary: dict[str, Any], expectations: list[Expectation]) -> list[ExpectationRecord]:
    out = []
    for e in expectations:
        actual = summary.get(e.key)
        ok = actual == e.value
        if not ok:
            logger.warning("expectation %s failed: expected %r, got %r", e.key, e.value, actual)
        out.append(
            ExpectationRecord(key=e.key, expected=e.value, actual=actual, provenance=e.provenance, source=e.source, ok=ok)
        )
    return out


def run_chain(
    scenario: Scenario,
    options: ChainOptions | None = None,
    expectations: list[Expectation] | None = None,
) -> ChainState:
    """
    시나리오 하나를 파이프라인 전체(또는 stop_after 까지)로 처리합니다.

    Returns:
        ChainState: 중간 객체와 FullReport (summary/expectations 포함)
    """
    options = options or ChainOptions()
    state = ChainState(scenario=scenario, options=options, report=FullReport(scenario=scenario.name))
    for name, stage in STAGES:
        logger.info("stage %s", name)
        stage(state)
        if options.stop_after == name:
            break
    state.report.summary = summarize(state)
    if expectations:
        state.report.expectations = check_expectations(state.report.summary, expectations)
    return state
