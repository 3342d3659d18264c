"""
services/ideals.py
============================================================
작은 ideal membership 검사

1. 일차식으로 생성된 ideal: RREF 로 pivot 변수를 소거하는 대입 (정규형)
2. 일반 ideal: sympy groebner (modulus=p, grevlex) 후 reduce 나머지 확인

두 번째는 GF(p) 소수체에서만, 그리고 desk 규모에서만 씁니다.
"""

from __future__ import annotations

import logging
from typing import Sequence

import sympy

from services.errors import FieldError
from services.linalg import rref
from services.polynomials import MultiPoly

logger = logging.getLogger(__name__)


# ============================================================
# 일차 ideal
# ============================================================
def linear_substitution(forms: Sequence[MultiPoly]) -> list[MultiPoly]:
    """
    일차식 ℓ_1..ℓ_s 가 생성하는 ideal 로의 정규형 대입 x_i ↦ image_i.

    RREF 의 각 행 x_pc + Σ a_j x_j (j 는 비-pivot) 에서 x_pc ↦ −Σ a_j x_j.
    """
    if not forms:
        return []
    field, n = forms[0].field, forms[0].nvars
    rows = []
    for f in forms:
        if f.degree > 1 or not f.is_homogeneous():
            raise ValueError(f"{f} is not a linear form")
        row = [field.zero] * n
        for e, c in f.terms.items():
            row[e.index(1)] = c
        rows.append(row)
    reduced, r, pivots = rref(field, field.array(rows))
    images = MultiPoly.variables(field, n)
    for row, pc in enumerate(pivots[:r]):
        coeffs = [field.zero] * n
        for j in range(n):
            if j != pc:
                coeffs[j] = field.neg(field.scalar_of(reduced[row, j]))
        images[pc] = MultiPoly.linear_form(field, coeffs)
    return images


def reduce_mod_linear(f: MultiPoly, forms: Sequence[MultiPoly]) -> MultiPoly:
    if not forms:
        return f
    return f.substitute(linear_substitution(forms))


def congruent_mod_linear(a: MultiPoly, b: MultiPoly, forms: Sequence[MultiPoly]) -> bool:
    return reduce_mod_linear(a - b, forms).is_zero()


# ============================================================
# sympy groebner
# ============================================================
def _symbols(nvars: int) -> list[sympy.Symbol]:
    return list(sympy.symbols(f"x1:{nvars + 1}"))


def to_sympy(f: MultiPoly, gens: Sequence[sympy.Symbol]) -> sympy.Expr:
    expr = sympy.Integer(0)
    for e, c in f.sorted_terms():
        term = sympy.Integer(int(c))
        for x, k in zip(gens, e):
            if k:
                term = term * x**k
        expr = expr + term
    return expr


def ideal_member(f: MultiPoly, ideal: Sequence[MultiPoly]) -> bool:
    """
    f ∈ (ideal) 인지 groebner 기저로 판정합니다 (소수체 전용).

    Note:
        - 빈 ideal 은 0 ideal
        - 기저 계산은 grevlex, reduce 의 나머지가 0 이면 member
    """
    field = f.field
    if not field.is_finite or field.degree != 1:
        raise FieldError("groebner membership is only wired for prime fields")
    if f.is_zero():
        return True
    gens = _symbols(f.nvars)
    polys = [to_sympy(p, gens) for p in ideal if not p.is_zero()]
    if not polys:
        return False
    basis = sympy.groebner(polys, *gens, modulus=field.characteristic, order="grevlex")
    _, remainder = basis.reduce(to_sympy(f, gens))
    logger.debug("groebner basis of %d generators has %d elements", len(polys), len(basis.exprs))
    return sympy.expand(remainder) == 0


def congruent_mod_ideal(a: MultiPoly, b: MultiPoly, ideal: Sequence[MultiPoly]) -> bool:
    return ideal_member(a - b, ideal)
