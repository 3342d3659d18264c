"""
services/invariants.py
============================================================
다항식 위의 군 작용과 불변식 계산

작용 규약 (왼쪽 작용):
    act(σ, f) = f ∘ ρ(σ)^{-1}
    즉 x_i ↦ (ρ(σ)^{-1} 의 i번째 행) 대입
    → act(στ, f) = act(σ, act(τ, f))

invariant_space 는 차수 D 단항식 좌표에서 (A_σ − I) 들을 쌓은 행렬의 kernel 입니다.
단항식 좌표 순서는 변수 순서 x1 < ... < xd 의 graded-lex 내림차순이라
echelon 기저의 pivot(선행 단항식)이 그 순서로 정해집니다.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from config import DEGREE_CAP
from services.errors import BudgetExceeded, DimensionError
from services.field import Field
from services.linalg import kernel, rank, rref, vstack
from services.matrix_group import FiniteMatrixGroup
from services.polynomials import Exps, MultiPoly, monomials_of_degree, poly_product, poly_sum

logger = logging.getLogger(__name__)


# ============================================================
# 작용
# ============================================================
def substitution_images(g: FiniteMatrixGroup, sigma: int) -> list[MultiPoly]:
    """x_i 의 상 = ρ(σ)^{-1} 의 i번째 행을 계수로 하는 일차식."""
    inv = g.elements[g.inv(sigma)]
    return [
        MultiPoly.linear_form(g.field, [inv.entry(i, j) for j in range(g.dim)]) for i in range(g.dim)
    ]


def act(g: FiniteMatrixGroup, sigma: int, f: MultiPoly) -> MultiPoly:
    if f.nvars != g.dim:
        raise DimensionError(f"polynomial in {f.nvars} variables, group acts on dimension {g.dim}")
    if sigma == 0:
        return f
    return f.substitute(substitution_images(g, sigma))


def is_invariant(g: FiniteMatrixGroup, f: MultiPoly) -> bool:
    """생성원 전부에 대해 act(σ, f) = f."""
    return all(act(g, s, f) == f for s in g.generator_indices())


def element_order(g: FiniteMatrixGroup, sigma: int) -> int:
    k, x = 1, sigma
    while x != 0:
        x = g.mul(x, sigma)
        k += 1
    return k


def norm_trace(g: FiniteMatrixGroup, sigma: int, f: MultiPoly) -> tuple[MultiPoly, MultiPoly]:
    """
    σ 가 생성하는 순환군에 대한 (노름, 트레이스) = (∏ σ^i·f, Σ σ^i·f).
    """
    images = []
    x = 0
    for _ in range(element_order(g, sigma)):
        images.append(act(g, x, f))
        x = g.mul(x, sigma)
    return poly_product(images, g.field, g.dim), poly_sum(images, g.field, g.dim)


def orbit_norm(g: FiniteMatrixGroup, f: MultiPoly) -> MultiPoly:
    """G-궤도의 서로 다른 상들의 곱 (원소 순서대로 처음 나온 것부터)."""
    seen: list[MultiPoly] = []
    for s in range(g.order):
        img = act(g, s, f)
        if img not in seen:
            seen.append(img)
    return poly_product(seen, g.field, g.dim)


def power_sum(p: int, j: int) -> int:
    """Σ_{a=1}^{p−1} a^j mod p (−1 이면 p−1 로 표기)."""
    return sum(pow(a, j, p) for a in range(1, p)) % p


# ============================================================
# 차수별 불변식 공간
# ============================================================
def monomial_basis(nvars: int, degree: int) -> list[Exps]:
    """
    차수 D 단항식을 변수 순서 x1 < ... < xd 기준 graded-lex 내림차순으로.
    (x_d 의 지수가 큰 것이 앞)
    """
    monos = monomials_of_degree(nvars, degree)
    return sorted(monos, key=lambda e: tuple(reversed(e)), reverse=True)


def to_vectors(field: Field, polys: Sequence[MultiPoly], monos: Sequence[Exps]) -> np.ndarray:
    index = {m: i for i, m in enumerate(monos)}
    rows = [[field.zero] * len(monos) for _ in polys]
    for r, p in enumerate(polys):
        for e, c in p.terms.items():
            if e not in index:
                raise DimensionError(f"monomial {e} outside the coordinate basis")
            rows[r][index[e]] = c
    if not rows:
        return field.zeros((0, len(monos)))
    return field.array(rows)


def from_vector(field: Field, vec: np.ndarray, monos: Sequence[Exps]) -> MultiPoly:
    nvars = len(monos[0]) if monos else 0
    terms = {}
    for i, m in enumerate(monos):
        c = field.scalar_of(vec[i])
        if not field.is_zero(c):
            terms[m] = c
    return MultiPoly(field, nvars, terms)


class _ActionCache:
    """단항식 상 act(σ, m) 을 차수를 올려 가며 memo 합니다 (m = (m / x_i) · x_i)."""

    def __init__(self, g: FiniteMatrixGroup, sigma: int):
        self.g = g
        self.images = substitution_images(g, sigma)
        self.memo: dict[Exps, MultiPoly] = {(0,) * g.dim: MultiPoly.constant(g.field, g.dim, 1)}

    def image(self, mono: Exps) -> MultiPoly:
        out = self.memo.get(mono)
        if out is not None:
            return out
        i = next(k for k, e in enumerate(mono) if e)
        lower = list(mono)
        lower[i] -= 1
        out = self.image(tuple(lower)) * self.images[i]
        self.memo[mono] = out
        return out


def _cache(g: FiniteMatrixGroup, sigma: int) -> _ActionCache:
    # memo 는 군 객체에 둠
    cache = g._actions.get(sigma)
    if cache is None:
        cache = g._actions[sigma] = _ActionCache(g, sigma)
    return cache


def invariant_space(g: FiniteMatrixGroup, degree: int, *, cap: int = DEGREE_CAP) -> list[MultiPoly]:
    """
    차수 degree 동차 불변식 공간의 echelon 기저.

    Args:
        g (FiniteMatrixGroup): 군
        degree (int): 차수 D
        cap (int): 허용 최대 차수

    Returns:
        list[MultiPoly]: pivot(선행 단항식) 순서의 기저
    """
    if degree > cap:
        raise BudgetExceeded(f"degree {degree} exceeds the degree cap {cap}")
    if degree < 0:
        return []
    monos = monomial_basis(g.dim, degree)
    field = g.field
    blocks = []
    for s in g.generator_indices():
        if s == 0:
            continue
        cache = _cache(g, s)
        images = [cache.image(m) - MultiPoly.monomial(field, m) for m in monos]
        # 열 = 단항식, 행 = 좌표 → 전치해서 쌓는다
        blocks.append(to_vectors(field, images, monos).T)
    if not blocks:
        return [MultiPoly.monomial(field, m) for m in monos]
    stacked = vstack(field, blocks, len(monos))
    ker = kernel(field, stacked)
    out = [from_vector(field, ker.basis[i], monos) for i in range(ker.dim)]
    logger.debug("invariant space degree %d: dim %d", degree, len(out))
    return out


def span_rank(field: Field, polys: Sequence[MultiPoly], monos: Sequence[Exps]) -> int:
    if not polys:
        return 0
    return rank(field, to_vectors(field, polys, monos))


def decomposable_span(
    g: FiniteMatrixGroup,
    degree: int,
    spaces: dict[int, list[MultiPoly]],
) -> list[MultiPoly]:
    """Σ_a I_a · I_{D−a} (1 ≤ a ≤ D/2) 를 생성하는 곱들."""
    out = []
    for a in range(1, degree // 2 + 1):
        for f in spaces.get(a, []):
            for h in spaces.get(degree - a, []):
                out.append(f * h)
    return out


def minimal_generator_profile(
    g: FiniteMatrixGroup,
    max_degree: int,
    *,
    cap: int = DEGREE_CAP,
) -> list[int]:
    """
    차수별 새 생성원 개수 (graded Nakayama):
        new_D = dim I_D − dim span(Σ_a I_a · I_{D−a})
    """
    if max_degree > cap:
        raise BudgetExceeded(f"degree {max_degree} exceeds the degree cap {cap}")
    spaces: dict[int, list[MultiPoly]] = {}
    counts = []
    for D in range(1, max_degree + 1):
        spaces[D] = invariant_space(g, D, cap=cap)
        monos = monomial_basis(g.dim, D)
        products = decomposable_span(g, D, spaces)
        counts.append(len(spaces[D]) - span_rank(g.field, products, monos))
    logger.info("minimal generator profile up to degree %d: %s", max_degree, counts)
    return counts


def new_generators(
    g: FiniteMatrixGroup,
    degree: int,
    spaces: dict[int, list[MultiPoly]],
) -> list[MultiPoly]:
    """
    I_D 를 분해 가능한 부분 공간으로 나눈 나머지 (정규형) 의 echelon 기저.

    곱 공간의 RREF 로 I_D 의 각 기저를 축약하고, 남은 것들을 다시 RREF.
    """
    field = g.field
    monos = monomial_basis(g.dim, degree)
    basis = spaces[degree]
    products = decomposable_span(g, degree, spaces)
    if not products:
        return list(basis)
    prod_rref, r, pivots = rref(field, to_vectors(field, products, monos))
    reduced = []
    for f in basis:
        vec = to_vectors(field, [f], monos)[0].copy()
        for row, pc in enumerate(pivots[:r]):
            c = vec[pc]
            if c != 0:
                vec = vec - c * prod_rref[row]
        reduced.append(vec)
    if not reduced:
        return []
    stacked = vstack(field, [v.reshape(1, -1) for v in reduced], len(monos))
    red, rr, _ = rref(field, stacked)
    return [from_vector(field, red[i], monos) for i in range(rr)]


def subalgebra_products(
    generators: Sequence[tuple[str, MultiPoly]],
    degree: int,
) -> list[tuple[tuple[str, ...], MultiPoly]]:
    """생성원 단항식 (이름 튜플) 중 총차수가 degree 인 곱 전부."""
    out = []
    gens = [(n, p) for n, p in generators if p.degree > 0]

    def rec(start: int, left: int, names: tuple[str, ...], acc: MultiPoly | None) -> None:
        if left == 0:
            out.append((names, acc))
            return
        for k in range(start, len(gens)):
            name, p = gens[k]
            if p.degree <= left:
                rec(k, left - p.degree, names + (name,), p if acc is None else acc * p)

    rec(0, degree, (), None)
    return out


def in_subalgebra(
    target: MultiPoly,
    generators: Sequence[tuple[str, MultiPoly]],
) -> bool:
    """동차 target 이 생성원들의 다항식 (같은 차수 곱들의 선형결합) 인지."""
    if target.is_zero():
        return True
    degree = target.degree
    products = [p for _, p in subalgebra_products(generators, degree)]
    monos = monomial_basis(target.nvars, degree)
    base = span_rank(target.field, products, monos)
    return span_rank(target.field, products + [target], monos) == base


# ============================================================
# 삼각형 (anti-diagonal 합)
# ============================================================
@dataclass
class TriangleFamily:
    """
    Attributes:
        field (Field): 계수체
        nvars (int): 변수 개수
        size (int): 삼각형 한 변 n
        entries (dict[tuple[int, int], MultiPoly]): (i, j) (1 ≤ i ≤ j ≤ n) → u_{i,j}
    """

    field: Field
    nvars: int
    size: int
    entries: dict[tuple[int, int], MultiPoly] = dc_field(default_factory=dict)

    def diagonal_sums(self) -> dict[int, MultiPoly]:
        """S_k = Σ_{i+j=k} u_{i,j}, 빈 대각선은 제외."""
        sums: dict[int, list[MultiPoly]] = {}
        for (i, j), u in self.entries.items():
            sums.setdefault(i + j, []).append(u)
        return {k: poly_sum(v, self.field, self.nvars) for k, v in sorted(sums.items())}

    def candidates(self) -> list[MultiPoly]:
        return list(self.diagonal_sums().values())

    def candidate_labels(self) -> list[str]:
        return [f"S{k}" for k in self.diagonal_sums()]


def entries_invariant(g: FiniteMatrixGroup, family: TriangleFamily) -> list[tuple[int, int]]:
    """불변이 아닌 항목 위치 목록 (빈 목록이면 전부 불변)."""
    return [pos for pos, u in sorted(family.entries.items()) if not is_invariant(g, u)]

