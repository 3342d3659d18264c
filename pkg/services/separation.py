"""
services/separation.py
============================================================
궤도 분리 검증 (exhaustive / 표본)

F_{q^e}^d 의 점들을 정수 번호로 다룹니다:
    번호 = Σ c_i q^{d−1−i}   (c_i 는 확대체 원소의 정수 표현)
점의 궤도 대표 = 군 원소 전체의 상(image) 번호 중 최솟값.

후보 값 벡터가 같은 점들(bucket)이 모두 한 궤도에 있으면 분리 집합.
확대체 e 마다 결과를 따로 기록하고, 대수적 폐포 수준의 분리는 주장하지 않습니다.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Literal, Sequence

import numpy as np
from tqdm import tqdm

from config import DEFAULT_EXTENSIONS, POINT_BUDGET, POINT_CHUNK, SAMPLE_SIZE, SEARCH_BUDGET, THREADS
from services.errors import BudgetExceeded, CandidateError, DimensionError, FieldError, PreconditionError
from services.field import Field
from services.invariants import TriangleFamily, entries_invariant, is_invariant
from services.matrix_group import FiniteMatrixGroup
from services.polynomials import MultiPoly

logger = logging.getLogger(__name__)

Candidate = tuple[str, MultiPoly]
Mode = Literal["exhaustive", "sampled", "skipped"]
Verdict = Literal["separating", "not-separating", "skipped"]
OnBudget = Literal["sample", "skip", "error"]

_INDEX_LIMIT = 2**62


# ============================================================
# 리포트 타입
# ============================================================
@dataclass
class ExtensionResult:
    """
    Attributes:
        degree (int): 확대 차수 e
        field (str): F_{q^e} 표기
        mode (Mode): exhaustive / sampled / skipped
        verdict (Verdict): 분리 여부
        points (int): 검사한 점 개수
        orbits (int): 검사한 점들이 속한 궤도 개수
        witness (list[list] | None): 값이 같지만 궤도가 다른 두 점 (좌표)
        orbit_sizes_ok (bool | None): 궤도 크기 합 = q^{ed}, 각 크기 | |G| (exhaustive 에서만)
        diagnostic (str): 건너뜀/표본 사유
    """

    degree: int
    field: str
    mode: Mode
    verdict: Verdict
    points: int = 0
    orbits: int = 0
    witness: list[list] | None = None
    orbit_sizes_ok: bool | None = None
    diagnostic: str = ""

    @property
    def probabilistic(self) -> bool:
        return self.mode == "sampled" and self.verdict == "separating"


@dataclass
class SeparationReport:
    """
    Attributes:
        candidates (list[str]): 후보 이름
        results (list[ExtensionResult]): 확대 차수별 결과
    """

    candidates: list[str]
    results: list[ExtensionResult] = dc_field(default_factory=list)

    @property
    def verdict(self) -> Literal["separating", "not-separating", "inconclusive"]:
        if any(r.verdict == "not-separating" for r in self.results):
            return "not-separating"
        if any(r.verdict == "separating" for r in self.results):
            return "separating"
        return "inconclusive"

    @property
    def separating(self) -> bool:
        return self.verdict == "separating"

    @property
    def extensions_covered(self) -> list[int]:
        return [r.degree for r in self.results if r.mode != "skipped"]

    @property
    def witness(self) -> list[list] | None:
        return next((r.witness for r in self.results if r.witness is not None), None)


# ============================================================
# 점 / 궤도 표
# ============================================================
def _coords(ext: Field, indices: np.ndarray, d: int) -> np.ndarray:
    # 점 번호 = 좌표의 q 진 전개 (x_1 이 최상위 자리)
    q = ext.order
    out = np.zeros((indices.shape[0], d), dtype=np.int64)
    rest = indices.copy()
    for i in range(d - 1, -1, -1):
        out[:, i] = rest % q
        rest //= q
    return ext.gf(out)


class OrbitTable:
    """
    한 확대체 위의 점 집합과 그 궤도 대표, 후보 값 캐시.

    Args:
        g (FiniteMatrixGroup): 유한체 위의 군
        e (int): 확대 차수
        indices (np.ndarray | None): 표본 점 번호 (None 이면 전체 열거)
    """

    def __init__(
        self,
        g: FiniteMatrixGroup,
        e: int,
        indices: np.ndarray | None = None,
        *,
        threads: int = THREADS,
        chunk: int = POINT_CHUNK,
        progress: bool = False,
    ):
        if not g.field.is_finite:
            raise FieldError("orbit enumeration needs a finite field")
        self.group = g
        self.degree = e
        self.ext = g.field.extension(e)
        self.table = g.field.embedding_into(self.ext)
        q, d = self.ext.order, g.dim
        if q**d >= _INDEX_LIMIT:
            raise BudgetExceeded(f"{self.ext.label}^{d} is too large to index")
        self.total = q**d
        self.sampled = indices is not None
        self.indices = np.arange(self.total, dtype=np.int64) if indices is None else np.asarray(indices, dtype=np.int64)
        self.weights = np.array([q ** (d - 1 - i) for i in range(d)], dtype=np.int64)
        self.matrices = [self.ext.gf(self.table[g.field.to_ints(m.data)]) for m in g.elements]

        starts = list(range(0, self.indices.shape[0], max(1, chunk)))

        def work(start: int) -> tuple[np.ndarray, np.ndarray]:
            pts = _coords(self.ext, self.indices[start : start + chunk], d)
            return pts, self._orbit_reps(pts)

        if threads > 1 and len(starts) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                parts = list(tqdm(pool.map(work, starts), total=len(starts), disable=not progress, desc=f"e={e}"))
        else:
            parts = [work(s) for s in tqdm(starts, disable=not progress, desc=f"e={e}")]
        if parts:
            self.points = self.ext.gf(np.vstack([self.ext.to_ints(p) for p, _ in parts]))
            self.reps = np.concatenate([r for _, r in parts])
        else:
            self.points = self.ext.gf.Zeros((0, d))
            self.reps = np.zeros(0, dtype=np.int64)
        self._values: dict[MultiPoly, np.ndarray] = {}
        logger.debug("orbit table over %s: %d points", self.ext.label, self.indices.shape[0])

    def _orbit_reps(self, pts: np.ndarray) -> np.ndarray:
        # 궤도 대표 = 궤도 안에서 점 번호가 가장 작은 점
        best = None
        for m in self.matrices:
            idx = self.ext.to_ints(pts @ m.T) @ self.weights
            best = idx if best is None else np.minimum(best, idx)
        return best

    @property
    def size(self) -> int:
        return int(self.indices.shape[0])

    def values(self, f: MultiPoly) -> np.ndarray:
        out = self._values.get(f)
        if out is None:
            out = self.ext.to_ints(f.evaluate_array(self.points, self.table))
            self._values[f] = out
        return out

    def point_json(self, row: int) -> list:
        return [self.ext.scalar_to_json(int(c)) for c in self.ext.to_ints(self.points[row])]

    def orbit_sizes_ok(self) -> bool:
        """궤도 크기 합이 전체 점 수이고 모두 |G| 의 약수인지 (전체 열거에서만 의미)."""
        _, counts = np.unique(self.reps, return_counts=True)
        return int(counts.sum()) == self.total and all(self.group.order % int(c) == 0 for c in counts)

    def orbit_count(self) -> int:
        return int(np.unique(self.reps).shape[0])

    def first_collision(self, polys: Sequence[MultiPoly]) -> tuple[int, int] | None:
        """
        값 벡터가 같은데 궤도가 다른 두 점 (행 번호). 없으면 None.

        bucket 은 np.unique 정렬 순서, 그 안에서 궤도 대표 최소/최대 점을 고릅니다.
        """
        n = self.size
        if n == 0:
            return None
        if polys:
            values = np.column_stack([self.values(f) for f in polys])
            _, inverse = np.unique(values, axis=0, return_inverse=True)
            inverse = inverse.reshape(-1)
        else:
            inverse = np.zeros(n, dtype=np.int64)
        # 같은 값 bucket 안에서 대표의 최소 != 최대 이면 궤도가 둘 이상 섞임
        buckets = int(inverse.max()) + 1
        lo = np.full(buckets, np.iinfo(np.int64).max, dtype=np.int64)
        hi = np.full(buckets, -1, dtype=np.int64)
        np.minimum.at(lo, inverse, self.reps)
        np.maximum.at(hi, inverse, self.reps)
        bad = np.flatnonzero(lo != hi)
        if bad.size == 0:
            return None
        b = int(bad[0])
        members = np.flatnonzero(inverse == b)
        i = int(members[self.reps[members] == lo[b]][0])
        j = int(members[self.reps[members] == hi[b]][0])
        return i, j

    def separates(self, polys: Sequence[MultiPoly]) -> bool:
        return self.first_collision(polys) is None


def orbit_table(
    g: FiniteMatrixGroup,
    e: int,
    *,
    budget: int = POINT_BUDGET,
    on_budget: OnBudget = "sample",
    seed: int = 0,
    sample_size: int = SAMPLE_SIZE,
    threads: int = THREADS,
    progress: bool = False,
) -> OrbitTable | None:
    """
    예산 안이면 전체 열거, 넘으면 on_budget 에 따라 표본 / None(건너뜀) / 예외.
    """
    ext = g.field.extension(e)
    total = ext.order**g.dim
    if total <= budget:
        return OrbitTable(g, e, threads=threads, progress=progress)
    if on_budget == "error":
        raise BudgetExceeded(f"{ext.label}^{g.dim} has {total} points, budget {budget}")
    if on_budget == "skip":
        logger.warning("skipping %s: %d points exceed budget %d", ext.label, total, budget)
        return None
    logger.warning("sampling %d of %d points over %s (seed %d)", sample_size, total, ext.label, seed)
    rng = np.random.default_rng(seed)
    if total >= _INDEX_LIMIT:
        raise BudgetExceeded(f"{ext.label}^{g.dim} is too large to sample by index")
    indices = np.unique(rng.integers(0, total, size=sample_size, dtype=np.int64))
    return OrbitTable(g, e, indices, threads=threads, progress=progress)


# ============================================================
# 검증
# ============================================================
def _normalize(candidates: Sequence[Candidate] | Sequence[MultiPoly]) -> list[Candidate]:
    out = []
    for k, c in enumerate(candidates):
        out.append(c if isinstance(c, tuple) else (f"f{k + 1}", c))
    return out


def check_candidates(g: FiniteMatrixGroup, candidates: Sequence[Candidate]) -> None:
    """변수 개수와 불변성을 검증 이전에 확인합니다."""
    for name, f in candidates:
        if f.nvars != g.dim or f.field != g.field:
            raise DimensionError(f"candidate {name} does not live in {g.field.label}[x1..x{g.dim}]")
    bad = [name for name, f in candidates if not is_invariant(g, f)]
    if bad:
        raise CandidateError(f"candidates are not invariant: {', '.join(bad)}")


def verify_separating(
    g: FiniteMatrixGroup,
    candidates: Sequence[Candidate] | Sequence[MultiPoly],
    extension_degrees: Sequence[int] = DEFAULT_EXTENSIONS,
    budget: int = POINT_BUDGET,
    *,
    on_budget: OnBudget = "sample",
    seed: int = 0,
    sample_size: int = SAMPLE_SIZE,
    threads: int = THREADS,
    tables: dict[int, OrbitTable | None] | None = None,
    progress: bool = False,
) -> SeparationReport:
    """
    후보 집합이 G-궤도를 분리하는지 확대 차수별로 검사합니다.

    Args:
        g (FiniteMatrixGroup): 유한체 위의 군
        candidates: (이름, 다항식) 또는 다항식 목록
        extension_degrees (Sequence[int]): 검사할 e 목록
        budget (int): 전체 열거 허용 점 개수
        on_budget (OnBudget): 예산 초과 시 sample / skip / error
        tables (dict | None): 재사용할 OrbitTable 캐시 (e → table)

    Returns:
        SeparationReport: e 별 판정과 실패 시 증인 점 쌍
    """
    if not g.field.is_finite:
        raise FieldError("exhaustive separation checks need a finite field; characteristic 0 is not enumerable")
    cands = _normalize(candidates)
    check_candidates(g, cands)
    polys = [f for _, f in cands]
    tables = tables if tables is not None else {}
    report = SeparationReport(candidates=[n for n, _ in cands])
    for e in extension_degrees:
        if e < 1:
            raise PreconditionError(f"extension degree must be >= 1, got {e}")
        if e not in tables:
            tables[e] = orbit_table(
                g, e, budget=budget, on_budget=on_budget, seed=seed,
                sample_size=sample_size, threads=threads, progress=progress,
            )
        table = tables[e]
        label = g.field.extension(e).label
        if table is None:
            report.results.append(
                ExtensionResult(e, label, "skipped", "skipped", diagnostic=f"more than {budget} points")
            )
            continue
        collision = table.first_collision(polys)
        result = ExtensionResult(
            degree=e,
            field=label,
            mode="sampled" if table.sampled else "exhaustive",
            verdict="separating" if collision is None else "not-separating",
            points=table.size,
            orbits=table.orbit_count(),
            orbit_sizes_ok=None if table.sampled else table.orbit_sizes_ok(),
            diagnostic=f"random sample, seed {seed}" if table.sampled else "",
        )
        if collision is not None:
            result.witness = [table.point_json(collision[0]), table.point_json(collision[1])]
        report.results.append(result)
        logger.info("%s: %s (%d points, %d orbits)", label, result.verdict, result.points, result.orbits)
    return report


# ============================================================
# 탐색
# ============================================================
@dataclass
class SearchResult:
    """
    Attributes:
        found (list[Candidate] | None): 찾은 후보 집합 (base 포함)
        report (SeparationReport | None): 찾은 집합의 전체 검증 리포트
        nodes (int): 방문한 탐색 노드 수
        leaves (int): 검사한 leaf 수
    """

    found: list[Candidate] | None
    report: SeparationReport | None
    nodes: int
    leaves: int

    @property
    def exhausted(self) -> bool:
        return self.found is None


def space_pool(spaces: dict[int, list[MultiPoly]]) -> list[Candidate]:
    """차수별 기저 원소와, 서로 다른 차수 기저 원소들의 합."""
    basis = [(f"I{D}[{k}]", f) for D in sorted(spaces) for k, f in enumerate(spaces[D])]
    sums = []
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            (na, fa), (nb, fb) = basis[a], basis[b]
            if fa.degree != fb.degree:
                sums.append((f"{na}+{nb}", fa + fb))
    return basis + sums


def search_separating(
    g: FiniteMatrixGroup,
    base: Sequence[Candidate],
    pool: Sequence[Candidate],
    target_size: int,
    *,
    extensions: Sequence[int] = (1, 2),
    budget: int = POINT_BUDGET,
    search_budget: int = SEARCH_BUDGET,
    threads: int = THREADS,
) -> SearchResult:
    """
    base 에 pool 에서 (target_size − |base|) 개를 더해 분리 집합을 찾습니다.

    Note:
        - 깊이 우선, pool 순서대로 (결정적)
        - 가지치기: 지금까지 고른 것 + 남은 pool 전부를 더해도 바닥체에서
          분리하지 못하면 그 가지에는 해가 없음
        - leaf: 바닥체 검사 통과 후 extensions 전체로 verify_separating
        - 방문 노드가 search_budget 을 넘으면 BudgetExceeded
    """
    need = target_size - len(base)
    if need < 0:
        raise PreconditionError(f"base already has {len(base)} > {target_size} elements")
    check_candidates(g, list(base) + list(pool))
    tables: dict[int, OrbitTable | None] = {1: orbit_table(g, 1, budget=budget, on_budget="error", threads=threads)}
    ground = tables[1]
    base_polys = [f for _, f in base]
    counters = {"nodes": 0, "leaves": 0}

    def rec(start: int, chosen: list[int]) -> tuple[list[Candidate], SeparationReport] | None:
        counters["nodes"] += 1
        if counters["nodes"] > search_budget:
            raise BudgetExceeded(f"search visited more than {search_budget} nodes")
        picked = [pool[k][1] for k in chosen]
        if len(chosen) == need:
            counters["leaves"] += 1
            if not ground.separates(base_polys + picked):
                return None
            cands = list(base) + [pool[k] for k in chosen]
            report = verify_separating(g, cands, extensions, budget, on_budget="skip", threads=threads, tables=tables)
            return (cands, report) if report.separating else None
        if len(pool) - start < need - len(chosen):
            return None
        if not ground.separates(base_polys + picked + [f for _, f in pool[start:]]):
            return None
        for k in range(start, len(pool)):
            hit = rec(k + 1, chosen + [k])
            if hit is not None:
                return hit
        return None

    hit = rec(0, [])
    if hit is None:
        logger.info("search exhausted: no set of size %d (%d nodes)", target_size, counters["nodes"])
        return SearchResult(None, None, counters["nodes"], counters["leaves"])
    logger.info("separating set of size %d found: %s", target_size, [n for n, _ in hit[0]])
    return SearchResult(hit[0], hit[1], counters["nodes"], counters["leaves"])


# ============================================================
# 사용자 삼각형
# ============================================================
@dataclass
class TriangleReport:
    """
    Attributes:
        size (int): 삼각형 한 변 n
        sums (int): 비어 있지 않은 대각선 합 개수
        expected (int): 2n − 1
        report (SeparationReport): 대각선 합 (+ extra) 의 분리 검증
    """

    size: int
    sums: int
    expected: int
    report: SeparationReport


def verify_triangle(
    g: FiniteMatrixGroup,
    family: TriangleFamily,
    extra: Sequence[Candidate] = (),
    extension_degrees: Sequence[int] = DEFAULT_EXTENSIONS,
    budget: int = POINT_BUDGET,
    **kwargs,
) -> TriangleReport:
    """삼각형 항목의 불변성 확인 → 대각선 합으로 분리 검증 → 2n−1 과 비교."""
    if family.nvars != g.dim:
        raise DimensionError(f"triangle entries in {family.nvars} variables, group on dimension {g.dim}")
    bad = entries_invariant(g, family)
    if bad:
        raise CandidateError(f"triangle entries at {bad} are not invariant")
    sums = list(zip(family.candidate_labels(), family.candidates()))
    report = verify_separating(g, list(extra) + sums, extension_degrees, budget, **kwargs)
    return TriangleReport(family.size, len(sums), 2 * family.size - 1, report)
