"""
schemas/reports.py
============================================================
JSON 리포트 스키마

모든 리포트는 model_dump_json(indent=2) 로 출력합니다.
필드 순서 = 모델 정의 순서, 리스트는 계산 단계에서 이미 정렬되어 있으므로
같은 입력/seed 에 대해 출력이 바이트 단위로 같습니다.
"""

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

from config import REPORT_SCHEMA_VERSION, TOOL_VERSION


class ErrorReport(BaseModel):
    error: str
    detail: str


class GroupReport(BaseModel):
    label: str
    field: Any
    dimension: int
    order: int
    generators: List[List[List[Any]]]


class MinimalSubspaceRecord(BaseModel):
    lattice_index: int
    codim: int
    basis: List[List[Any]]


class ClassificationReport(BaseModel):
    order: int
    dimension: int
    codim_profile: List[int]
    generating_r: int
    minimal: List[MinimalSubspaceRecord]
    r_star: int
    rigid_r: Dict[int, bool]
    rigid_isotropy: Dict[int, bool]
    criteria_agree: bool
    rigid_reflection_group: bool
    lattice_size: int


class PosetNodeRecord(BaseModel):
    subspace_id: int
    coset_rep: int
    codim: int


class PosetReport(BaseModel):
    nodes: int
    layer_sizes: Dict[int, int]
    components: int
    dump: Optional[Dict[str, Any]] = None


class NodeHomologyRecord(BaseModel):
    node: int
    subspace_id: int
    coset_rep: int
    codim: int
    betti: List[int] = Field(..., description="β̃ from degree −1 upward")


class HomologyReport(BaseModel):
    characteristic: int
    Q: List[int]
    contributors: Dict[int, List[int]]
    betti_above_bottom: Optional[List[int]] = None
    entries: List[NodeHomologyRecord] = Field(default_factory=list)


class CheckRecord(BaseModel):
    name: str
    ok: bool
    detail: str = ""
    witness: List[int] = Field(default_factory=list)


class BoundsReport(BaseModel):
    bound_cohomological: int
    reflection_bound: int
    reflection_degrees: List[int]
    connectivity_bound: int
    embedding_dimension: int
    consistent: bool
    checks: List[CheckRecord]


class ShellingReport(BaseModel):
    status: Literal["verified", "failed", "not-applicable"]
    facets: int = 0
    witness: Optional[List[int]] = None
    reason: str = ""
    order: Optional[List[List[int]]] = None
    copies: List[Dict[str, Any]] = Field(default_factory=list)


class ExtensionRecord(BaseModel):
    degree: int
    field: str
    mode: Literal["exhaustive", "sampled", "skipped"]
    verdict: Literal["separating", "not-separating", "skipped"]
    probabilistic: bool
    points: int
    orbits: int
    orbit_sizes_ok: Optional[bool] = None
    witness: Optional[List[List[Any]]] = None
    diagnostic: str = ""


class SeparationRecord(BaseModel):
    candidates: List[str]
    verdict: Literal["separating", "not-separating", "inconclusive"]
    extensions_covered: List[int]
    results: List[ExtensionRecord]
    note: str = "verified over the listed finite extensions only"


class SearchRecord(BaseModel):
    target_size: int
    found: Optional[List[str]]
    nodes: int
    leaves: int
    separation: Optional[SeparationRecord] = None


class TriangleRecord(BaseModel):
    size: int
    diagonal_sums: int
    expected: int
    separation: SeparationRecord


class RelationRecord(BaseModel):
    name: str
    where: List[int] = Field(default_factory=list)
    holds: bool


class ExpectationRecord(BaseModel):
    key: str
    expected: Any
    actual: Any
    provenance: Literal["PUBLISHED", "TRIVIAL", "DERIVED"]
    source: str
    ok: bool


class FullReport(BaseModel):
    tool_version: str = TOOL_VERSION
    schema_version: int = REPORT_SCHEMA_VERSION
    scenario: str
    group: Optional[GroupReport] = None
    classification: Optional[ClassificationReport] = None
    poset: Optional[PosetReport] = None
    homology: Optional[HomologyReport] = None
    bounds: Optional[BoundsReport] = None
    shelling: Optional[ShellingReport] = None
    separating: Optional[SeparationRecord] = None
    profile: Optional[List[int]] = None
    relations: List[RelationRecord] = Field(default_factory=list)
    summary: Dict[str, Any] = Field(default_factory=dict)
    expectations: List[ExpectationRecord] = Field(default_factory=list)
