"""
services/polynomials.py
============================================================
희소(sparse) 정확 다변수 다항식 MultiPoly

- terms: 지수 벡터 → 0 이 아닌 계수 (0 계수는 저장하지 않음)
- 직렬화 순서: graded lexicographic 내림차순 (x1 > x2 > ... )
- 변수 이름은 x1..xd (출력용), 내부 번호는 0부터
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from services.errors import DimensionError
from services.field import Field, Scalar

Exps = tuple[int, ...]


def grlex_key(exps: Exps) -> tuple:
    return (sum(exps), exps)


@dataclass(frozen=True, eq=False)
class MultiPoly:
    """
    Attributes:
        field (Field): 계수체
        nvars (int): 변수 개수
        terms (Mapping[Exps, Scalar]): 지수 → 계수
    """

    field: Field
    nvars: int
    terms: Mapping[Exps, Scalar] = dc_field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for e, c in self.terms.items():
            if len(e) != self.nvars:
                raise DimensionError(f"exponent {e} does not match {self.nvars} variables")
            if not self.field.is_zero(c):
                clean[tuple(int(x) for x in e)] = c
        object.__setattr__(self, "terms", clean)

    # ------------------------------------------------------------
    # 생성자
    # ------------------------------------------------------------
    @classmethod
    def zero(cls, field: Field, nvars: int) -> MultiPoly:
        return cls(field, nvars, {})

    @classmethod
    def constant(cls, field: Field, nvars: int, c: Any) -> MultiPoly:
        return cls(field, nvars, {(0,) * nvars: field.coerce(c)})

    @classmethod
    def variable(cls, field: Field, nvars: int, i: int) -> MultiPoly:
        if not 0 <= i < nvars:
            raise DimensionError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, {tuple(e): field.one})

    @classmethod
    def variables(cls, field: Field, nvars: int) -> list[MultiPoly]:
        return [cls.variable(field, nvars, i) for i in range(nvars)]

    @classmethod
    def monomial(cls, field: Field, exps: Exps, c: Any = 1) -> MultiPoly:
        return cls(field, len(exps), {tuple(exps): field.coerce(c)})

    @classmethod
    def linear_form(cls, field: Field, coeffs: Sequence[Any]) -> MultiPoly:
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = field.coerce(c)
        return cls(field, n, terms)

    # ------------------------------------------------------------
    # 조회
    # ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self) -> list[tuple[Exps, Scalar]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def leading_monomial(self) -> Exps | None:
        items = self.sorted_terms()
        return items[0][0] if items else None

    def coefficient(self, exps: Exps) -> Scalar:
        return self.terms.get(tuple(exps), self.field.zero)

    def uses_variable(self, i: int) -> bool:
        return any(e[i] for e in self.terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.field == other.field and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    # ------------------------------------------------------------
    # 산술
    # ------------------------------------------------------------
    def _check(self, other: MultiPoly) -> None:
        if self.field != other.field or self.nvars != other.nvars:
            raise DimensionError("polynomials over different rings")

    def __add__(self, other: MultiPoly) -> MultiPoly:
        self._check(other)
        f = self.field
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = f.add(out[e], c) if e in out else c
        return MultiPoly(f, self.nvars, out)

    def __neg__(self) -> MultiPoly:
        return MultiPoly(self.field, self.nvars, {e: self.field.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: MultiPoly) -> MultiPoly:
        return self + (-other)

    def scale(self, c: Scalar) -> MultiPoly:
        return MultiPoly(self.field, self.nvars, {e: self.field.mul(c, v) for e, v in self.terms.items()})

    def __mul__(self, other: MultiPoly) -> MultiPoly:
        self._check(other)
        f = self.field
        out: dict[Exps, Scalar] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = f.mul(c1, c2)
                out[e] = f.add(out[e], v) if e in out else v
        return MultiPoly(f, self.nvars, out)

    def __pow__(self, k: int) -> MultiPoly:
        if k < 0:
            raise ValueError("negative polynomial power")
        result = MultiPoly.constant(self.field, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # ------------------------------------------------------------
    # 대입 / 평가
    # ------------------------------------------------------------
    def substitute(self, images: Sequence[MultiPoly]) -> MultiPoly:
        """x_i ↦ images[i] 대입."""
        if len(images) != self.nvars:
            raise DimensionError(f"{len(images)} images for {self.nvars} variables")
        if not images:
            return self
        target = images[0]
        powers: dict[tuple[int, int], MultiPoly] = {}

        def power(i: int, k: int) -> MultiPoly:
            key = (i, k)
            if key not in powers:
                powers[key] = images[i] ** k if k <= 1 else power(i, k - 1) * images[i]
            return powers[key]

        out = MultiPoly.zero(target.field, target.nvars)
        for e, c in self.terms.items():
            term = MultiPoly.constant(target.field, target.nvars, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def evaluate(self, point: Sequence[Scalar]) -> Scalar:
        f = self.field
        total = f.zero
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = f.mul(v, f.pow(x, k))
            total = f.add(total, v)
        return total

    def evaluate_array(self, points: np.ndarray, coef_map: np.ndarray | None = None) -> np.ndarray:
        """
        galois 배열 points (N × d) 에서 한 번에 평가합니다.

        Args:
            points: 확대체(또는 같은 체) 위의 점들
            coef_map: 계수 정수표현 → points 체 정수표현 lookup table (확대체 매장)
        """
        gf = type(points)
        out = gf.Zeros(points.shape[0])
        for e, c in self.terms.items():
            coef = int(coef_map[int(c)]) if coef_map is not None else int(c)
            term = gf.Ones(points.shape[0]) * gf(coef)
            for i, k in enumerate(e):
                if k:
                    term = term * points[:, i] ** k
            out = out + term
        return out

    # ------------------------------------------------------------
    # 직렬화
    # ------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "terms": [
                {"exps": list(e), "coef": self.field.scalar_to_json(c)} for e, c in self.sorted_terms()
            ]
        }

    @classmethod
    def from_json(cls, field: Field, nvars: int, data: Mapping[str, Any]) -> MultiPoly:
        out = MultiPoly.zero(field, nvars)
        for t in data.get("terms", []):
            exps = tuple(int(x) for x in t["exps"])
            out = out + MultiPoly(field, nvars, {exps: field.scalar_from_json(t["coef"])})
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                f"x{i + 1}" if k == 1 else f"x{i + 1}^{k}" for i, k in enumerate(e) if k
            )
            coef = self.field.scalar_to_json(c)
            if not mono:
                parts.append(str(coef))
            elif c == self.field.one:
                parts.append(mono)
            else:
                parts.append(f"{coef}*{mono}")
        return " + ".join(parts)

    __repr__ = __str__


def poly_sum(polys: Iterable[MultiPoly], field: Field, nvars: int) -> MultiPoly:
    out = MultiPoly.zero(field, nvars)
    for p in polys:
        out = out + p
    return out


def poly_product(polys: Iterable[MultiPoly], field: Field, nvars: int) -> MultiPoly:
    out = MultiPoly.constant(field, nvars, 1)
    for p in polys:
        out = out * p
    return out


def monomials_of_degree(nvars: int, degree: int) -> list[Exps]:
    """차수 degree 단항식 전체를 grlex 내림차순으로."""
    out: list[Exps] = []

    def rec(prefix: list[int], left: int, slots: int) -> None:
        if slots == 1:
            out.append(tuple(prefix + [left]))
            return
        for k in range(left, -1, -1):
            rec(prefix + [k], left - k, slots - 1)

    if nvars == 0:
        return [()] if degree == 0 else []
    rec([], degree, nvars)
    return out
