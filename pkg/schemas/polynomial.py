"""
schemas/polynomial.py
============================================================
다항식 / 후보 집합 / 삼각형 파일 스키마

다항식: {"name": "S2", "terms": [{"exps": [2, 0], "coef": 1}, ...]}
"""

from typing import Any, List, Optional

from pydantic import BaseModel, Field, model_validator

from config import REPORT_SCHEMA_VERSION


class TermSpec(BaseModel):
    exps: List[int]
    coef: Any = 1

    @model_validator(mode="after")
    def _non_negative(self) -> "TermSpec":
        if any(e < 0 for e in self.exps):
            raise ValueError(f"negative exponent in {self.exps}")
        return self


class PolynomialSpec(BaseModel):
    name: Optional[str] = None
    terms: List[TermSpec] = Field(default_factory=list)


class CandidateFile(BaseModel):
    """후보 불변식 목록. coordinates=true 이면 x1..xd 를 앞에 덧붙입니다."""

    schema_version: int = REPORT_SCHEMA_VERSION
    coordinates: bool = False
    candidates: List[PolynomialSpec] = Field(default_factory=list)


class TriangleEntrySpec(BaseModel):
    i: int = Field(..., ge=1)
    j: int = Field(..., ge=1)
    terms: List[TermSpec] = Field(default_factory=list)

    @model_validator(mode="after")
    def _upper(self) -> "TriangleEntrySpec":
        if self.i > self.j:
            raise ValueError(f"triangle entry ({self.i}, {self.j}) below the diagonal")
        return self


class TriangleFile(BaseModel):
    """
    Attributes:
        size (int): 삼각형 한 변 n
        entries (list[TriangleEntrySpec]): u_{i,j} (i ≤ j ≤ n)
        extra (list[PolynomialSpec]): 대각선 합과 함께 검증할 추가 후보
    """

    schema_version: int = REPORT_SCHEMA_VERSION
    size: int = Field(..., ge=1)
    entries: List[TriangleEntrySpec] = Field(..., min_length=1)
    extra: List[PolynomialSpec] = Field(default_factory=list)

    @model_validator(mode="after")
    def _inside(self) -> "TriangleFile":
        for e in self.entries:
            if e.j > self.size:
                raise ValueError(f"triangle entry ({e.i}, {e.j}) outside size {self.size}")
        return self
