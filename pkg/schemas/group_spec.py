"""
schemas/group_spec.py
============================================================
군 정의 파일(GroupSpecFile) 스키마

{
  "schema_version": 1,
  "label": "v3-c3",
  "field": {"p": 3, "k": 1} | "Q",
  "dimension": 3,
  "matrix_convention": "point" | "substitution",
  "generators": [[[1, 0, 0], [1, 1, 0], [0, 1, 1]]]
}

스칼라 표기: 소수체는 정수, 확대체는 정수 표현 또는 계수 배열(최고차항부터),
유리수는 정수 또는 "a/b" 문자열.
"""

from typing import Any, List, Literal, Optional, Union

from pydantic import BaseModel, Field, model_validator

from config import REPORT_SCHEMA_VERSION


class FieldSpec(BaseModel):
    """
    Attributes:
        p (int): 표수 (0 이면 유리수체)
        k (int): 확대 차수
        modulus (list[int] | None): monic 기약다항식 계수 (최고차항부터)
    """

    p: int = Field(..., ge=0)
    k: int = Field(1, ge=1)
    modulus: Optional[List[int]] = None


class GroupSpecFile(BaseModel):
    schema_version: int = REPORT_SCHEMA_VERSION
    label: str = ""
    field: Union[FieldSpec, Literal["Q"]]
    dimension: int = Field(..., ge=1)
    matrix_convention: Literal["point", "substitution"] = "point"
    generators: List[List[List[Any]]] = Field(..., min_length=1)

    @model_validator(mode="after")
    def _square_generators(self) -> "GroupSpecFile":
        d = self.dimension
        for n, g in enumerate(self.generators):
            if len(g) != d or any(len(row) != d for row in g):
                raise ValueError(f"generator {n} is not {d}x{d}")
        return self

    def field_descriptor(self) -> Any:
        if isinstance(self.field, str):
            return self.field
        return self.field.model_dump()
