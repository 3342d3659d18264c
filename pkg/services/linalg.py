"""
services/linalg.py
============================================================
정확한 선형대수: 행렬, RREF, 핵(kernel), 부분공간

구현 방식:
- 유한체: galois.FieldArray.row_reduce()
- 유리수: sympy DomainMatrix(QQ).rref()

부분공간은 RREF 기저(행 = 기저 벡터, 0행 없음)로 저장하므로
같은 부분공간이면 기저 행렬이 원소 단위로 동일합니다.
덕분에 poset 구성이 "딕셔너리 문제"가 됩니다.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, Iterable, Sequence

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from services.errors import DimensionError, PreconditionError
from services.field import Field

logger = logging.getLogger(__name__)


# ============================================================
# 키(해시) 생성
# ============================================================
def array_key(field: Field, arr: np.ndarray) -> bytes | tuple:
    """행렬의 정규 직렬화 (원소 해시/동등 비교용)."""
    if field.is_finite:
        return arr.shape + (field.to_ints(arr).tobytes(),)
    return arr.shape + tuple((x.numerator, x.denominator) for x in arr.flat)


# ============================================================
# RREF
# ============================================================
def _rref_rationals(arr: np.ndarray) -> tuple[np.ndarray, list[int]]:
    m, n = arr.shape
    rows = [[QQ(x.numerator, x.denominator) for x in row] for row in arr]
    reduced, pivots = DomainMatrix(rows, (m, n), QQ).rref()
    out = np.empty((m, n), dtype=object)
    for i, row in enumerate(reduced.to_list()):
        for j, x in enumerate(row):
            out[i, j] = Fraction(int(x.numerator), int(x.denominator))
    return out, list(pivots)


def _rref_finite(field: Field, arr: np.ndarray) -> tuple[np.ndarray, list[int]]:
    reduced = arr.row_reduce()
    ints = field.to_ints(reduced)
    pivots = []
    for row in ints:
        nz = np.flatnonzero(row)
        if nz.size == 0:
            break
        pivots.append(int(nz[0]))
    return reduced, pivots


def rref(field: Field, arr: np.ndarray) -> tuple[np.ndarray, int, list[int]]:
    """
    유일한 기약 행사다리꼴(RREF)을 계산합니다.

    Args:
        field (Field): 계수체
        arr (np.ndarray): m×n 행렬 (field.array 로 만든 배열)

    Returns:
        tuple[np.ndarray, int, list[int]]: (RREF 행렬(m×n), rank, pivot 열 목록)
    """
    m, n = arr.shape
    if m == 0 or n == 0:
        return field.zeros((m, n)), 0, []
    if field.is_finite:
        reduced, pivots = _rref_finite(field, arr)
    else:
        reduced, pivots = _rref_rationals(arr)
    return reduced, len(pivots), pivots


def rank(field: Field, arr: np.ndarray) -> int:
    return rref(field, arr)[1]


def vstack(field: Field, blocks: Sequence[np.ndarray], cols: int) -> np.ndarray:
    blocks = [b for b in blocks if b.shape[0]]
    if not blocks:
        return field.zeros((0, cols))
    if field.is_finite:
        return field.gf(np.vstack([field.to_ints(b) for b in blocks]))
    return np.vstack(blocks)


def hstack(field: Field, blocks: Sequence[np.ndarray]) -> np.ndarray:
    if field.is_finite:
        return field.gf(np.hstack([field.to_ints(b) for b in blocks]))
    return np.hstack(blocks)


# ============================================================
# 행렬
# ============================================================
@dataclass(frozen=True, eq=False)
class Matrix:
    """
    체 위의 조밀(dense) 행렬.

    Attributes:
        field (Field): 모든 원소가 속한 체
        data (np.ndarray): rows × cols 배열
    """

    field: Field
    data: np.ndarray
    key: Any = dc_field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.data.ndim != 2:
            raise DimensionError(f"matrix data must be 2-dimensional, got shape {self.data.shape}")
        object.__setattr__(self, "key", array_key(self.field, self.data))

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Iterable[Any]]) -> Matrix:
        rows = [list(r) for r in rows]
        if not rows:
            raise DimensionError("matrix needs at least one row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise DimensionError("ragged matrix rows")
        return cls(field, field.array(rows))

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        return cls(field, field.eye(n))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Matrix) and self.field == other.field and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        return Matrix(self.field, self.data @ other.data)

    def __sub__(self, other: Matrix) -> Matrix:
        return Matrix(self.field, self.data - other.data)

    def transpose(self) -> Matrix:
        return Matrix(self.field, self.data.T.copy())

    def is_identity(self) -> bool:
        return self.is_square and self == Matrix.identity(self.field, self.rows)

    def rank(self) -> int:
        return rank(self.field, self.data)

    def inverse(self) -> Matrix:
        """[A | I] 를 RREF 해서 역행렬을 얻습니다. 특이 행렬이면 PreconditionError."""
        if not self.is_square:
            raise DimensionError("only square matrices are invertible")
        n = self.rows
        aug = hstack(self.field, [self.data, self.field.eye(n)])
        reduced, _, pivots = rref(self.field, aug)
        if pivots[:n] != list(range(n)):
            raise PreconditionError("matrix is singular")
        return Matrix(self.field, reduced[:, n:].copy())

    def entry(self, i: int, j: int) -> Any:
        return self.field.scalar_of(self.data[i, j])

    def to_json(self) -> list[list[Any]]:
        return [[self.field.scalar_to_json(self.entry(i, j)) for j in range(self.cols)] for i in range(self.rows)]


# ============================================================
# 부분공간
# ============================================================
@dataclass(frozen=True, eq=False)
class Subspace:
    """
    k^d 의 부분공간 (정규형 RREF 기저).

    Attributes:
        field (Field): 계수체
        ambient (int): 주변 공간 차원 d
        basis (np.ndarray): dim × d RREF 행렬, 0행 없음
    """

    field: Field
    ambient: int
    basis: np.ndarray
    key: Any = dc_field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "key", array_key(self.field, self.basis))

    @classmethod
    def span(cls, field: Field, ambient: int, vectors: np.ndarray) -> Subspace:
        """임의의 생성 벡터(행)로부터 정규 기저 부분공간을 만듭니다."""
        if vectors.shape[0] == 0:
            return cls.zero(field, ambient)
        if vectors.shape[1] != ambient:
            raise DimensionError(f"vectors of length {vectors.shape[1]} in ambient dimension {ambient}")
        reduced, r, _ = rref(field, vectors)
        return cls(field, ambient, reduced[:r].copy())

    @classmethod
    def zero(cls, field: Field, ambient: int) -> Subspace:
        return cls(field, ambient, field.zeros((0, ambient)))

    @classmethod
    def full(cls, field: Field, ambient: int) -> Subspace:
        return cls(field, ambient, field.eye(ambient))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def codim(self) -> int:
        return self.ambient - self.dim

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient == other.ambient
            and self.key == other.key
        )

    def __hash__(self) -> int:
        return hash((self.ambient, self.key))

    def annihilator(self) -> Subspace:
        """{c : <b, c> = 0 for every basis row b}."""
        if self.dim == 0:
            return Subspace.full(self.field, self.ambient)
        return kernel(self.field, self.basis)

    def contains_vector(self, vec: np.ndarray) -> bool:
        stacked = vstack(self.field, [self.basis, vec.reshape(1, -1)], self.ambient)
        return rank(self.field, stacked) == self.dim

    def basis_json(self) -> list[list[Any]]:
        return Matrix(self.field, self.basis).to_json() if self.dim else []

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient}, field={self.field.label})"


def _check_same(a: Subspace, b: Subspace) -> None:
    if a.ambient != b.ambient or a.field != b.field:
        raise DimensionError(
            f"subspaces live in different spaces: {a.field.label}^{a.ambient} vs {b.field.label}^{b.ambient}"
        )


def kernel(field: Field, arr: np.ndarray) -> Subspace:
    """
    {v : arr·v = 0} 를 정규 RREF 기저로 돌려줍니다. dim = cols − rank.
    """
    m, n = arr.shape
    if m == 0:
        return Subspace.full(field, n)
    reduced, r, pivots = rref(field, arr)
    free = [j for j in range(n) if j not in set(pivots)]
    if not free:
        return Subspace.zero(field, n)
    vectors = field.zeros((len(free), n))
    for t, f in enumerate(free):
        vectors[t, f] = field.one
        for i, pc in enumerate(pivots):
            vectors[t, pc] = -reduced[i, f]
    return Subspace.span(field, n, vectors)


def subspace_meet(a: Subspace, b: Subspace) -> Subspace:
    """두 부분공간의 교집합 = 쌓은 annihilator 제약식들의 kernel."""
    _check_same(a, b)
    if a == b:
        return a
    constraints = vstack(a.field, [a.annihilator().basis, b.annihilator().basis], a.ambient)
    return kernel(a.field, constraints)


def subspace_meet_all(spaces: Iterable[Subspace], field: Field, ambient: int) -> Subspace:
    """여러 부분공간의 교집합 (빈 목록이면 전체 공간)."""
    out = Subspace.full(field, ambient)
    for s in spaces:
        out = subspace_meet(out, s)
    return out


def subspace_leq(a: Subspace, b: Subspace) -> bool:
    """a ⊆ b 여부."""
    _check_same(a, b)
    if a.dim > b.dim:
        return False
    if a.dim == 0:
        return True
    stacked = vstack(a.field, [b.basis, a.basis], a.ambient)
    return rank(a.field, stacked) == b.dim


def fixed_space(m: Matrix) -> Subspace:
    """V^σ = kernel(σ − I)."""
    if not m.is_square:
        raise DimensionError("fixed space of a non-square matrix")
    return kernel(m.field, (m - Matrix.identity(m.field, m.rows)).data)
