"""
services/scenarios.py
============================================================
예제 군과 명시적 분리 집합 구성

군:
- trivial_group / c2_sign_group / s3_perm_group / s3_diag_group
- c2c2_group : 2n+1 차원, α 는 u·w 를, β 는 v·w 를 부호 반전
- cp_vn_group : C_p 의 n 차원 Jordan 블록 (σ·x_i = x_i + x_{i+1})
- v2_sum_group : V_2^{⊕n} (σ·x_i = x_i, σ·y_i = y_i + x_i)
- gl7_group : F_2 위 7 차원, 하단 블록 α 네 개로 만든 C_2^4
- diagonal_cyclic_group : F_q 위 x_i ↦ ζ^{d_i} x_i

분리 집합:
- cp_triangle : 노름/트레이스 삼각형의 anti-diagonal 합 (2n−2 개)
- v2_candidates : x_i 와 S_ℓ (3n−1 개) + 관계식 검사
- gl7_scenario : 9 개 후보 + 관계식 검사
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field as dc_field

import numpy as np

from services.errors import PreconditionError
from services.field import RATIONALS, Field, field_make
from services.ideals import congruent_mod_ideal, congruent_mod_linear, reduce_mod_linear
from services.invariants import (
    TriangleFamily,
    entries_invariant,
    in_subalgebra,
    invariant_space,
    monomial_basis,
    new_generators,
    norm_trace,
    orbit_norm,
    to_vectors,
)
from services.linalg import Matrix, kernel
from services.matrix_group import FiniteMatrixGroup, close_group
from services.polynomials import MultiPoly

logger = logging.getLogger(__name__)

Candidate = tuple[str, MultiPoly]


@dataclass
class RelationCheck:
    """
    Attributes:
        name (str): 관계식 이름
        where (tuple[int, ...]): 첨자 (i, j, k ...)
        holds (bool): 다항식으로 성립하는지
    """

    name: str
    where: tuple[int, ...] = ()
    holds: bool = False


# ============================================================
# 행렬 도우미
# ============================================================
def _eye_rows(field: Field, n: int) -> list[list]:
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def _diag(field: Field, values: list) -> Matrix:
    rows = _eye_rows(field, len(values))
    for i, v in enumerate(values):
        rows[i][i] = v
    return Matrix.from_rows(field, rows)


def _block_diag(field: Field, block: list[list], copies: int) -> Matrix:
    b = len(block)
    rows = [[field.zero] * (b * copies) for _ in range(b * copies)]
    for c in range(copies):
        for i in range(b):
            for j in range(b):
                rows[c * b + i][c * b + j] = block[i][j]
    return Matrix.from_rows(field, rows)


def coordinates(field: Field, d: int) -> list[Candidate]:
    return [(f"x{i + 1}", x) for i, x in enumerate(MultiPoly.variables(field, d))]


# ============================================================
# 군 생성자
# ============================================================
def trivial_group(d: int, field: Field | None = None) -> FiniteMatrixGroup:
    field = field or field_make(2)
    return close_group([Matrix.identity(field, d)], label=f"trivial-{d}")


def c2_sign_group(field: Field | None = None) -> FiniteMatrixGroup:
    """x ↦ −x on 𝕜¹ (표수 2 가 아니어야 의미가 있음)."""
    field = field or field_make(3)
    if field.characteristic == 2:
        raise PreconditionError("the sign action is trivial in characteristic 2")
    return close_group([_diag(field, [field.neg(field.one)])], label="c2-sign")


_S3_GENERATORS = (
    [[0, 1, 0], [1, 0, 0], [0, 0, 1]],
    [[1, 0, 0], [0, 0, 1], [0, 1, 0]],
)


def s3_perm_group(field: Field = RATIONALS) -> FiniteMatrixGroup:
    return s3_diag_group(1, field)


def s3_diag_group(n: int, field: Field = RATIONALS) -> FiniteMatrixGroup:
    """S_3 순열 표현 n 개의 직합 (좌표는 사본 단위로 3 개씩)."""
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    gens = [_block_diag(field, [[field.from_int(x) for x in row] for row in m], n) for m in _S3_GENERATORS]
    return close_group(gens, label="s3-perm" if n == 1 else f"s3-diag-{n}")


def c2c2_group(n: int, field: Field = RATIONALS) -> FiniteMatrixGroup:
    """
    기저 u_1..u_n, v_1..v_n, w 위의 C_2 × C_2 = ⟨α, β⟩.

    α: u_i ↦ −u_i, v_i ↦ v_i, w ↦ −w
    β: u_i ↦ u_i, v_i ↦ −v_i, w ↦ −w
    """
    if n < 1:
        raise PreconditionError(f"n must be >= 1, got {n}")
    if field.characteristic == 2:
        raise PreconditionError("the C2 x C2 sign example needs characteristic != 2")
    one, minus = field.one, field.neg(field.one)
    alpha = _diag(field, [minus] * n + [one] * n + [minus])
    beta = _diag(field, [one] * n + [minus] * n + [minus])
    return close_group([alpha, beta], label=f"c2c2-{2 * n + 1}")


def cp_vn_group(p: int, n: int, k: int = 1) -> FiniteMatrixGroup:
    """V_n: σ·x_i = x_i + x_{i+1} (i < n), σ·x_n = x_n (substitution 규약)."""
    field = field_make(p, k)
    rows = _eye_rows(field, n)
    for i in range(n - 1):
        rows[i + 1][i] = field.one
    return close_group([Matrix.from_rows(field, rows)], convention="substitution", label=f"cp-v{n}-p{p}")


def v2_index(i: int, which: str) -> int:
    """x_i / y_i 의 변수 번호 (x_1, y_1, x_2, y_2, ... 순서, i 는 1부터)."""
    return 2 * (i - 1) + (0 if which == "x" else 1)


def v2_sum_group(p: int, n: int, k: int = 1) -> FiniteMatrixGroup:
    field = field_make(p, k)
    rows = _eye_rows(field, 2 * n)
    for i in range(1, n + 1):
        rows[v2_index(i, "x")][v2_index(i, "y")] = field.one
    return close_group([Matrix.from_rows(field, rows)], convention="substitution", label=f"cp-v2x{n}-p{p}")


def gl7_generator(alphas: tuple[int, int, int, int]) -> Matrix:
    """
    [[I_4, 0], [A, I_3]],  A = [[α1,0,0,α4],[0,α2,0,α4],[0,0,α3,α4]]  (F_2, point 규약)
    """
    field = field_make(2)
    a1, a2, a3, a4 = alphas
    rows = _eye_rows(field, 7)
    for r, a in enumerate((a1, a2, a3)):
        rows[4 + r][r] = a
        rows[4 + r][3] = a4
    return Matrix.from_rows(field, rows)


def gl7_group() -> FiniteMatrixGroup:
    gens = [gl7_generator(tuple(int(i == j) for j in range(4))) for i in range(4)]
    return close_group(gens, label="gl7-f2")


def diagonal_cyclic_group(p: int, k: int, m: int, exponents: list[int]) -> FiniteMatrixGroup:
    """
    F_q (q = p^k) 위 x_i ↦ ζ^{d_i} x_i,  ζ 는 원시 m 차 단위근.

    Args:
        exponents (list[int]): 1 = d_1 | d_2 | ... | d_n | m

    Note:
        - q ≡ 1 (mod m) 이어야 ζ 가 F_q 안에 존재
        - ζ = (원시원소)^{(q−1)/m}
    """
    field = field_make(p, k)
    q = field.order
    if m < 1 or (q - 1) % m:
        raise PreconditionError(f"F_{q} has no primitive {m}-th root of unity")
    if not exponents or exponents[0] != 1:
        raise PreconditionError("exponent chain must start at 1")
    for a, b in zip(exponents, list(exponents[1:]) + [m]):
        if a <= 0 or b % a:
            raise PreconditionError(f"exponent chain {exponents} does not divide up to {m}")
    zeta = field.gf.primitive_element ** ((q - 1) // m)
    diag = [int(zeta**e) for e in exponents]
    return close_group(
        [_diag(field, diag)], convention="substitution", label=f"diag-c{m}-q{q}-{len(exponents)}"
    )


# ============================================================
# C_p 삼각형
# ============================================================
def cp_triangle(p: int, n: int, g: FiniteMatrixGroup | None = None) -> tuple[FiniteMatrixGroup, TriangleFamily]:
    """
    (i,i) = N(x_i) (i ≤ n−1), (i,j) = Tr(x_i x_j^{p−1}) (i < j ≤ n−1), (n,n) = x_n^p.

    Returns:
        tuple[FiniteMatrixGroup, TriangleFamily]: V_n 작용과 삼각형 (후보 = 대각선 합 2n−2 개)
    """
    if n < 2:
        raise PreconditionError(f"the triangle needs n >= 2, got {n}")
    if n > p:
        raise PreconditionError(f"n = {n} exceeds p = {p}")
    g = g or cp_vn_group(p, n)
    field = g.field
    sigma = g.generator_indices()[0]
    xs = MultiPoly.variables(field, n)
    entries: dict[tuple[int, int], MultiPoly] = {}
    for i in range(1, n):
        entries[(i, i)] = norm_trace(g, sigma, xs[i - 1])[0]
        for j in range(i + 1, n):
            entries[(i, j)] = norm_trace(g, sigma, xs[i - 1] * xs[j - 1] ** (p - 1))[1]
    entries[(n, n)] = xs[n - 1] ** p
    family = TriangleFamily(field, n, n, entries)
    bad = entries_invariant(g, family)
    if bad:
        raise PreconditionError(f"triangle entries {bad} are not invariant")
    logger.info("C_%d triangle on V_%d: %d diagonal sums", p, n, len(family.candidates()))
    return g, family


def triangle_candidates(family: TriangleFamily) -> list[Candidate]:
    return list(zip(family.candidate_labels(), family.candidates()))


# ============================================================
# V_2^{⊕n}
# ============================================================
@dataclass
class V2Scenario:
    """
    Attributes:
        group (FiniteMatrixGroup): V_2^{⊕n} 위 C_p
        family (TriangleFamily): u_{i,j}
        candidates (list[Candidate]): x_1..x_n, S_2..S_{2n}
        relations (list[RelationCheck]): 관계식 검사 결과
    """

    group: FiniteMatrixGroup
    family: TriangleFamily
    candidates: list[Candidate]
    relations: list[RelationCheck] = dc_field(default_factory=list)

    def family_holds(self, name: str) -> bool:
        return all(r.holds for r in self.relations if r.name == name)

    def family_fails_somewhere(self, name: str) -> bool:
        return any(not r.holds for r in self.relations if r.name == name)


def v2_candidates(p: int, n: int) -> V2Scenario:
    """
    u_{i,i} = y_i^p − x_i^{p−1} y_i, u_{i,j} = x_i y_j − x_j y_i,
    S_ℓ = Σ_{i+j=ℓ} u_{i,j} (2 ≤ ℓ ≤ 2n), 후보 = {x_i} ∪ {S_ℓ}.

    관계식:
        plucker        : x_i u_{j,k} − x_j u_{i,k} + x_k u_{i,j} = 0   (i<j<k)
        norm           : x_i^p u_{j,j} − x_j^p u_{i,i} + x_i^{p−1}x_j^{p−1}u_{i,j} − u_{i,j}^p = 0
        norm_as_printed: x 를 1 제곱으로 쓴 형태 (항등식이 아님, 실패가 기대됨)
    """
    g = v2_sum_group(p, n)
    field = g.field
    d = 2 * n
    var = MultiPoly.variables(field, d)

    def x(i: int) -> MultiPoly:
        return var[v2_index(i, "x")]

    def y(i: int) -> MultiPoly:
        return var[v2_index(i, "y")]

    u: dict[tuple[int, int], MultiPoly] = {}
    for i in range(1, n + 1):
        u[(i, i)] = y(i) ** p - x(i) ** (p - 1) * y(i)
        for j in range(i + 1, n + 1):
            u[(i, j)] = x(i) * y(j) - x(j) * y(i)
    family = TriangleFamily(field, d, n, u)
    bad = entries_invariant(g, family)
    if bad:
        raise PreconditionError(f"u entries {bad} are not invariant")

    candidates = [(f"x{i}", x(i)) for i in range(1, n + 1)] + triangle_candidates(family)

    relations = []
    for i, j, k in itertools.combinations(range(1, n + 1), 3):
        expr = x(i) * u[(j, k)] - x(j) * u[(i, k)] + x(k) * u[(i, j)]
        relations.append(RelationCheck("plucker", (i, j, k), expr.is_zero()))
    for i, j in itertools.combinations(range(1, n + 1), 2):
        cross = x(i) ** (p - 1) * x(j) ** (p - 1) * u[(i, j)] - u[(i, j)] ** p
        fixed = x(i) ** p * u[(j, j)] - x(j) ** p * u[(i, i)] + cross
        printed = x(i) * u[(j, j)] - x(j) * u[(i, i)] + cross
        relations.append(RelationCheck("norm", (i, j), fixed.is_zero()))
        relations.append(RelationCheck("norm_as_printed", (i, j), printed.is_zero()))
    out = V2Scenario(g, family, candidates, relations)
    if not (out.family_holds("plucker") and out.family_holds("norm")):
        logger.warning("V2 relation families do not all vanish for p=%d n=%d", p, n)
    return out


# ============================================================
# GL_7(F_2)
# ============================================================
@dataclass
class Gl7Scenario:
    """
    Attributes:
        group (FiniteMatrixGroup): |G| = 16
        invariants (dict[str, MultiPoly]): x1..x4, f1..f3, g1..g3, r
        designation (dict[str, str]): f_i → 순수 3차 기저 h_k 이름
        candidates (list[Candidate]): 9 개 후보
        relations (list[RelationCheck]): 관계식 검사 결과
    """

    group: FiniteMatrixGroup
    invariants: dict[str, MultiPoly]
    designation: dict[str, str]
    candidates: list[Candidate]
    relations: list[RelationCheck] = dc_field(default_factory=list)

    def relation(self, name: str) -> RelationCheck:
        return next(r for r in self.relations if r.name == name)


def _pure_cubics(g: FiniteMatrixGroup) -> list[MultiPoly]:
    """
    3차 불변식 중 x1..x4 만으로 된 단항식의 계수가 모두 0 인 것들.
    h_k 는 그 중 x_{4+k} 를 쓰지 않는 (유일한) 원소.
    """
    field = g.field
    cubics = invariant_space(g, 3)
    monos = monomial_basis(g.dim, 3)
    basis = to_vectors(field, cubics, monos)

    def restrict(space: np.ndarray, cols: list[int]) -> np.ndarray:
        coeffs = kernel(field, space[:, cols].T)
        return coeffs.basis @ space

    pure_cols = [c for c, e in enumerate(monos) if not any(e[4:])]
    pure = restrict(basis, pure_cols)
    if pure.shape[0] != 3:
        raise PreconditionError(f"expected three pure cubic invariants, found {pure.shape[0]}")
    out = []
    for k in range(1, 4):
        cols = [c for c, e in enumerate(monos) if e[3 + k]]
        h = restrict(pure, cols)
        if h.shape[0] != 1:
            raise PreconditionError(f"pure cubic avoiding x{4 + k} is not unique ({h.shape[0]} found)")
        out.append(MultiPoly(field, g.dim, {m: int(h[0, c]) for c, m in enumerate(monos) if h[0, c] != 0}))
    return out


def gl7_relations(
    inv: dict[str, MultiPoly],
) -> list[RelationCheck]:
    """선형 관계, 두 합동식, 선형 ideal 소속을 검사합니다."""
    x = [inv[f"x{i}"] for i in range(1, 5)]
    ell = [x[i] + x[3] for i in range(3)]
    f1, f2, f3, g3 = inv["f1"], inv["f2"], inv["f3"], inv["g3"]
    out = [
        RelationCheck("linear_relation", (), (ell[2] * f3 - ell[1] * f1 - ell[0] * f2).is_zero()),
        RelationCheck("linear_relation_as_printed", (), (ell[2] * f3 - ell[1] * f2 - ell[0] * f1).is_zero()),
    ]
    for i, f in ((1, f1), (2, f2)):
        out.append(
            RelationCheck("square_congruence", (i,), congruent_mod_linear(ell[i - 1] ** 2 * g3, f**2, [ell[2]]))
        )
    out.append(RelationCheck("f3_in_linear_ideal", (), reduce_mod_linear(f3, ell).is_zero()))
    return out


def gl7_scenario(deep: bool = False) -> Gl7Scenario:
    """
    Note:
        - g_i = x_{4+i} 의 궤도 노름 (4차)
        - f 지정: h_1, h_2, h_3 의 순열 중 선형 관계·합동식·ideal 소속을 모두
          만족하는 첫 번째 (itertools.permutations 순서)
        - 3차 echelon 기저의 선행 단항식 순서로 f 를 정하지 않음: 그 순서는 관계식을
          만족하지 않으므로 위 순열 탐색 결과를 지정으로 씀 (결과 f1=h2, f2=h1, f3=h3)
        - r = 5차 새 생성원 echelon 기저의 첫 원소
        - deep=True: f_i·r ∈ 𝕜[x, f, g] (8차 선형대수) 와
          r² ≡ (x1+x4)² g2 g3 mod (f1, f2, f3) (groebner) 도 검사
    """
    g = gl7_group()
    field = g.field
    xs = MultiPoly.variables(field, 7)
    h = _pure_cubics(g)
    inv: dict[str, MultiPoly] = {f"x{i + 1}": xs[i] for i in range(4)}
    for i in range(1, 4):
        inv[f"g{i}"] = orbit_norm(g, xs[3 + i])

    designation: dict[str, str] = {}
    relations: list[RelationCheck] = []
    for perm in itertools.permutations(range(3)):
        trial = dict(inv)
        for slot, k in enumerate(perm, start=1):
            trial[f"f{slot}"] = h[k]
        checks = gl7_relations(trial)
        if all(c.holds for c in checks if c.name != "linear_relation_as_printed"):
            inv = trial
            designation = {f"f{slot}": f"h{k + 1}" for slot, k in enumerate(perm, start=1)}
            relations = checks
            break
    if not designation:
        logger.warning("no relabeling of the pure cubics satisfies the relations; keeping h1, h2, h3")
        for k in range(3):
            inv[f"f{k + 1}"] = h[k]
        designation = {f"f{k + 1}": f"h{k + 1}" for k in range(3)}
        relations = gl7_relations(inv)
    logger.info("cubic designation: %s", designation)

    spaces = {D: invariant_space(g, D) for D in range(1, 6)}
    fifth = new_generators(g, 5, spaces)
    if not fifth:
        raise PreconditionError("no new generator in degree 5")
    inv["r"] = fifth[0]

    if deep:
        gens = [(k, v) for k, v in inv.items() if k != "r"]
        for i in range(1, 4):
            ok = in_subalgebra(inv[f"f{i}"] * inv["r"], gens)
            relations.append(RelationCheck("fr_in_subalgebra", (i,), ok))
        ell1 = xs[0] + xs[3]
        ok = congruent_mod_ideal(inv["r"] ** 2, ell1**2 * inv["g2"] * inv["g3"], [inv["f1"], inv["f2"], inv["f3"]])
        relations.append(RelationCheck("r_square_congruence", (), ok))

    names = ["x1", "x2", "x3", "x4", "f1", "f2", "g1", "g2"]
    candidates = [(n, inv[n]) for n in names] + [("f3+g3", inv["f3"] + inv["g3"])]
    return Gl7Scenario(g, inv, designation, candidates, relations)


def gl7_search_pool(scn: Gl7Scenario) -> list[Candidate]:
    """순수 3차 f1..f3, 노름 g1..g3, 그리고 f_i + g_j 9 개."""
    inv = scn.invariants
    cubics = [(f"f{i}", inv[f"f{i}"]) for i in range(1, 4)]
    quartics = [(f"g{i}", inv[f"g{i}"]) for i in range(1, 4)]
    sums = [(f"{a}+{b}", fa + gb) for (a, fa), (b, gb) in itertools.product(cubics, quartics)]
    return cubics + quartics + sums