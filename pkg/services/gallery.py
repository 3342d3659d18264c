"""
services/gallery.py
============================================================
예제 갤러리: 이름 → 구성된 시나리오 + 기대값

각 기대값에는 출처 태그가 붙습니다.
- PUBLISHED : 공개된 예제/명제에 명시된 값
- TRIVIAL   : 정의에서 바로 나오는 값
- DERIVED   : 손 계산 / 공식 대입으로 얻은 값

갤러리 회귀 검사는 chains/report_chain.py 의 summary 와 비교합니다.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from typing import Any, Callable, Literal

from config import DEFAULT_EXTENSIONS
from services.errors import UnknownScenario
from services.field import RATIONALS, field_make
from services.matrix_group import FiniteMatrixGroup
from services.polynomials import MultiPoly
from services.scenarios import (
    RelationCheck,
    c2_sign_group,
    c2c2_group,
    coordinates,
    cp_triangle,
    gl7_scenario,
    gl7_search_pool,
    s3_diag_group,
    trivial_group,
    triangle_candidates,
    v2_candidates,
)

logger = logging.getLogger(__name__)

Provenance = Literal["PUBLISHED", "TRIVIAL", "DERIVED"]


@dataclass
class Expectation:
    key: str
    value: Any
    provenance: Provenance
    source: str


@dataclass
class Scenario:
    """
    Attributes:
        name (str): 갤러리 이름
        params (dict): 생성 파라미터
        group (FiniteMatrixGroup): 군
        candidates (list[tuple[str, MultiPoly]]): 검증할 후보 (없으면 분리 검증 생략)
        extensions (tuple[int, ...]): 분리 검증 확대 차수
        profile_degrees (int): >0 이면 생성원 차수 분포를 그 차수까지 계산
        relations (list[RelationCheck]): 구성 시 계산한 관계식 검사
        pool (list[tuple[str, MultiPoly]]): separating search 에 쓸 후보 풀 (없으면 불변식 공간에서 생성)
    """

    name: str
    params: dict
    group: FiniteMatrixGroup
    candidates: list[tuple[str, MultiPoly]] = dc_field(default_factory=list)
    extensions: tuple[int, ...] = DEFAULT_EXTENSIONS
    profile_degrees: int = 0
    relations: list[RelationCheck] = dc_field(default_factory=list)
    extras: dict = dc_field(default_factory=dict)
    pool: list[tuple[str, MultiPoly]] = dc_field(default_factory=list)


@dataclass
class GalleryEntry:
    name: str
    description: str
    defaults: dict
    build: Callable[..., Scenario]
    expectations: Callable[..., list[Expectation]]


# ============================================================
# 시나리오 생성
# ============================================================
def _trivial(d: int = 3, p: int = 2) -> Scenario:
    g = trivial_group(d, field_make(p))
    return Scenario("trivial-d", {"d": d, "p": p}, g, coordinates(g.field, d), extensions=(1, 2))


def _trivial_expect(d: int = 3, p: int = 2) -> list[Expectation]:
    return [
        Expectation("order", 1, "TRIVIAL", "the identity alone"),
        Expectation("poset_nodes", 1, "TRIVIAL", "one component, the diagonal"),
        Expectation("Q", [d], "TRIVIAL", "empty upper interval contributes degree d"),
        Expectation("bound", d, "TRIVIAL", "coordinates are needed"),
        Expectation("reflection_bound", d, "TRIVIAL", "no minimal reflecting subspace"),
        Expectation("separating", "separating", "TRIVIAL", "coordinates separate points"),
    ]


def _c2_sign(p: int = 3) -> Scenario:
    g = c2_sign_group(field_make(p))
    x = MultiPoly.variable(g.field, 1, 0)
    return Scenario("c2-sign", {"p": p}, g, [("x1^2", x * x)], extensions=(1, 2), profile_degrees=3)


def _c2_sign_expect(p: int = 3) -> list[Expectation]:
    return [
        Expectation("order", 2, "TRIVIAL", "x -> -x"),
        Expectation("generating_r", 1, "TRIVIAL", "a reflection on a line"),
        Expectation("Q", [1], "DERIVED", "two components meeting in a point"),
        Expectation("bound", 1, "DERIVED", "max Q"),
        Expectation("profile", [0, 1, 0], "DERIVED", "invariants are k[x^2]"),
        Expectation("separating", "separating", "DERIVED", "x^2 separates +-a"),
    ]


def _s3_diag(n: int = 2) -> Scenario:
    g = s3_diag_group(n, RATIONALS)
    return Scenario("s3-diag-n", {"n": n}, g)


def _s3_diag_expect(n: int = 2) -> list[Expectation]:
    out = [
        Expectation("bound", 5 * n - 2, "PUBLISHED", "diagonal S3 example, at least 5n-2 elements"),
        Expectation("reflection_bound", 4 * n - 1, "PUBLISHED", "diagonal S3 example, the floor d+r-1 is 4n-1"),
    ]
    if n == 2:
        out.append(Expectation("Q", [6, 7, 8], "DERIVED", "component and bottom contributions"))
    return out


def _s3_perm() -> Scenario:
    scn = _s3_diag(1)
    scn.name, scn.params = "s3-perm", {}
    return scn


def _s3_perm_expect() -> list[Expectation]:
    return [
        Expectation("poset_nodes", 16, "PUBLISHED", "Hasse diagram of the S3 separating variety"),
        Expectation("layer_sizes", [6, 9, 1], "PUBLISHED", "Hasse diagram of the S3 separating variety"),
        Expectation("betti_above_bottom", [0, 4], "PUBLISHED", "upper interval of the bottom has k^4 homology"),
        Expectation("Q", [3], "DERIVED", "rigid reflection group, homology in one degree"),
        Expectation("bound", 3, "PUBLISHED", "rigid reflection groups need d invariants"),
        Expectation("shelling_facets", 18, "DERIVED", "6 components x 3 hyperplanes"),
        Expectation("shelling_verified", True, "PUBLISHED", "separating posets of rigid reflection groups shell"),
    ]


def _c2c2(n: int = 2) -> Scenario:
    return Scenario("c2c2-2n1", {"n": n}, c2c2_group(n, RATIONALS))


def _c2c2_expect(n: int = 2) -> list[Expectation]:
    return [
        Expectation("generating_r", n + 1, "PUBLISHED", "generated by (n+1)-reflections"),
        Expectation("r_star", 2 * n, "PUBLISHED", "isotropy group generated by a (2n)-reflection"),
        Expectation("rigid_below_r_star", False, "PUBLISHED", "not a rigid (<2n)-reflection group"),
        Expectation("reflection_bound", 2 * n + 1 + 2 * n - 1, "DERIVED", "d + r* - 1"),
    ]


def _cp_vn(p: int = 3, n: int = 3) -> Scenario:
    g, family = cp_triangle(p, n)
    return Scenario("cp-vn", {"p": p, "n": n}, g, triangle_candidates(family), extensions=(1,))


def _cp_vn_expect(p: int = 3, n: int = 3) -> list[Expectation]:
    return [
        Expectation("order", p, "TRIVIAL", "cyclic group of order p"),
        Expectation("candidate_count", 2 * n - 2, "DERIVED", "nonempty anti-diagonals of the triangle"),
        Expectation("reflection_bound", 2 * n - 2, "PUBLISHED", "floor d + (n-1) - 1 is attained"),
        Expectation("bound", 2 * n - 2, "DERIVED", "bottom node contributes 2n-2"),
        Expectation("separating", "separating", "PUBLISHED", "diagonal sums form a separating set"),
    ]


def _cp_v2(p: int = 3, n: int = 2) -> Scenario:
    v2 = v2_candidates(p, n)
    return Scenario("cp-v2-vec", {"p": p, "n": n}, v2.group, v2.candidates, extensions=(1, 2), relations=v2.relations)


def _cp_v2_expect(p: int = 3, n: int = 2) -> list[Expectation]:
    return [
        Expectation("candidate_count", 3 * n - 1, "PUBLISHED", "at least 3n-1 elements"),
        Expectation("bound", 3 * n - 1, "PUBLISHED", "generated by n-reflections"),
        Expectation("separating", "separating", "PUBLISHED", "the x_i and S_l separate"),
        Expectation("extensions_verified", [1, 2], "DERIVED", "exhaustive over F_p and F_p^2"),
        Expectation("relations_hold", True, "PUBLISHED", "relation families vanish"),
    ]


def _gl7(deep: bool = False) -> Scenario:
    scn = gl7_scenario(deep=deep)
    return Scenario(
        "gl7-f2",
        {"deep": deep},
        scn.group,
        scn.candidates,
        extensions=(1, 2),
        profile_degrees=5,
        relations=scn.relations,
        extras={"designation": scn.designation},
        pool=gl7_search_pool(scn),
    )


def _gl7_expect(deep: bool = False) -> list[Expectation]:
    return [
        Expectation("order", 16, "PUBLISHED", "isomorphic to C2^4"),
        Expectation("profile", [4, 0, 3, 3, 1], "PUBLISHED", "generators x1..x4, f1..f3, g1..g3, r"),
        Expectation("has_codim3_minimal", True, "PUBLISHED", "all alphas equal to 1 give a codim-3 minimal subspace"),
        Expectation("bound", 9, "PUBLISHED", "at least 9 elements"),
        Expectation("candidate_count", 9, "PUBLISHED", "nine listed invariants"),
        Expectation("separating", "separating", "PUBLISHED", "the nine invariants separate"),
    ]


GALLERY: dict[str, GalleryEntry] = {
    "trivial-d": GalleryEntry("trivial-d", "trivial group on k^d", {"d": 3, "p": 2}, _trivial, _trivial_expect),
    "c2-sign": GalleryEntry("c2-sign", "sign action on k^1", {"p": 3}, _c2_sign, _c2_sign_expect),
    "s3-perm": GalleryEntry("s3-perm", "S3 permuting coordinates of Q^3", {}, _s3_perm, _s3_perm_expect),
    "s3-diag-n": GalleryEntry("s3-diag-n", "S3 on n copies of Q^3", {"n": 2}, _s3_diag, _s3_diag_expect),
    "c2c2-2n1": GalleryEntry("c2c2-2n1", "C2 x C2 sign action on Q^(2n+1)", {"n": 2}, _c2c2, _c2c2_expect),
    "cp-vn": GalleryEntry("cp-vn", "C_p on the Jordan block V_n", {"p": 3, "n": 3}, _cp_vn, _cp_vn_expect),
    "cp-v2-vec": GalleryEntry("cp-v2-vec", "C_p on n copies of V_2", {"p": 3, "n": 2}, _cp_v2, _cp_v2_expect),
    "gl7-f2": GalleryEntry("gl7-f2", "C2^4 inside GL7(F2)", {"deep": False}, _gl7, _gl7_expect),
}


def gallery(name: str, **params: Any) -> tuple[GalleryEntry, Scenario, list[Expectation]]:
    """
    이름으로 시나리오를 만들고 기대값 목록을 돌려줍니다.

    Args:
        name (str): GALLERY 의 키
        params: 기본값을 덮어쓸 생성 파라미터 (None 값은 무시)
    """
    entry = GALLERY.get(name)
    if entry is None:
        raise UnknownScenario(f"unknown gallery entry {name!r}; choose from {', '.join(GALLERY)}")
    merged = dict(entry.defaults)
    for k, v in params.items():
        if v is None:
            continue
        if k not in merged:
            raise UnknownScenario(f"gallery entry {name!r} takes no parameter {k!r}")
        merged[k] = v
    logger.info("building gallery entry %s with %s", name, merged)
    return entry, entry.build(**merged), entry.expectations(**merged)
