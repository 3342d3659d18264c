"""
services/spec_loader.py
============================================================
입력 파일(JSON) 로더

1. JSON 문자열 → dict (json.loads)
2. pydantic 모델로 스키마 검증 (model_validate)
3. 도메인 객체로 변환 (FiniteMatrixGroup, MultiPoly, TriangleFamily)

실패하면 SpecFileError 를 던집니다. 메시지에는 JSON 줄/열 번호나
스키마 위치(loc)가 들어갑니다.
"""

import json
import logging
from pathlib import Path
from typing import Type, TypeVar

from pydantic import BaseModel, ValidationError

from schemas.group_spec import GroupSpecFile
from schemas.polynomial import CandidateFile, PolynomialSpec, TermSpec, TriangleFile
from services.errors import SepboundError, SpecFileError
from services.field import Field, field_from_descriptor
from services.invariants import TriangleFamily
from services.linalg import Matrix
from services.matrix_group import FiniteMatrixGroup, close_group
from services.polynomials import MultiPoly

logger = logging.getLogger(__name__)

M = TypeVar("M", bound=BaseModel)


def parse_json(text: str, model: Type[M], source: str = "<input>") -> M:
    """JSON 문자열을 model 로 파싱/검증합니다."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecFileError(f"{source}: line {e.lineno} column {e.colno}: {e.msg}") from None
    try:
        return model.model_validate(data)
    except ValidationError as e:
        problems = "; ".join(
            f"{'.'.join(str(x) for x in err['loc']) or '<root>'}: {err['msg']}" for err in e.errors()
        )
        raise SpecFileError(f"{source}: {problems}") from None


def _read(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SpecFileError(f"{path}: {e.strerror}") from None


# ============================================================
# 군
# ============================================================
def group_from_spec(spec: GroupSpecFile, source: str = "<input>") -> FiniteMatrixGroup:
    try:
        field = field_from_descriptor(spec.field_descriptor())
    except SepboundError as e:
        raise SpecFileError(f"{source}: field: {e}") from None
    mats = []
    for n, rows in enumerate(spec.generators):
        try:
            mats.append(Matrix.from_rows(field, [[field.scalar_from_json(x) for x in row] for row in rows]))
        except (SepboundError, ValueError, TypeError) as e:
            raise SpecFileError(f"{source}: generators.{n}: {e}") from None
    return close_group(mats, convention=spec.matrix_convention, label=spec.label or Path(source).stem)


def load_group(path: str | Path) -> FiniteMatrixGroup:
    """
    GroupSpecFile 을 읽어 닫힌 군을 만듭니다 (규약 변환 포함).

    Note:
        - 스키마/체 오류는 SpecFileError
        - 닫힘 상한 초과는 GroupClosureError 그대로 전파
    """
    spec = parse_json(_read(path), GroupSpecFile, str(path))
    g = group_from_spec(spec, str(path))
    logger.info("loaded group %s: |G|=%d on %s^%d", g.label, g.order, g.field.label, g.dim)
    return g


# ============================================================
# 다항식
# ============================================================
def poly_from_terms(terms: list[TermSpec], field: Field, nvars: int, source: str = "<input>") -> MultiPoly:
    out = MultiPoly.zero(field, nvars)
    for t in terms:
        if len(t.exps) != nvars:
            raise SpecFileError(f"{source}: exponent vector {t.exps} does not have {nvars} entries")
        try:
            coef = field.scalar_from_json(t.coef)
        except SepboundError as e:
            raise SpecFileError(f"{source}: coefficient {t.coef!r}: {e}") from None
        out = out + MultiPoly(field, nvars, {tuple(t.exps): coef})
    return out


def poly_from_spec(spec: PolynomialSpec, field: Field, nvars: int, source: str = "<input>") -> MultiPoly:
    return poly_from_terms(spec.terms, field, nvars, source)


def load_candidates(path: str | Path, g: FiniteMatrixGroup) -> list[tuple[str, MultiPoly]]:
    """후보 파일 → [(이름, 다항식)]. 이름이 없으면 f1, f2, ..."""
    spec = parse_json(_read(path), CandidateFile, str(path))
    out = []
    if spec.coordinates:
        out.extend((f"x{i + 1}", x) for i, x in enumerate(MultiPoly.variables(g.field, g.dim)))
    for k, c in enumerate(spec.candidates):
        out.append((c.name or f"f{k + 1}", poly_from_spec(c, g.field, g.dim, str(path))))
    if not out:
        raise SpecFileError(f"{path}: no candidates")
    return out


def load_triangle(path: str | Path, g: FiniteMatrixGroup) -> tuple[TriangleFamily, list[tuple[str, MultiPoly]]]:
    """삼각형 파일 → (TriangleFamily, 추가 후보)."""
    spec = parse_json(_read(path), TriangleFile, str(path))
    entries = {}
    for e in spec.entries:
        if (e.i, e.j) in entries:
            raise SpecFileError(f"{path}: duplicate triangle entry ({e.i}, {e.j})")
        entries[(e.i, e.j)] = poly_from_terms(e.terms, g.field, g.dim, str(path))
    extra = [
        (c.name or f"e{k + 1}", poly_from_spec(c, g.field, g.dim, str(path))) for k, c in enumerate(spec.extra)
    ]
    return TriangleFamily(g.field, g.dim, spec.size, entries), extra
