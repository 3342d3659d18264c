"""
services/field.py
============================================================
정확한(exact) 체 연산

지원하는 체:
1. 소수체 F_p              - 스칼라는 0..p-1 정수
2. 확대체 F_{p^k}          - 스칼라는 galois의 정수 표현 (Σ c_i p^i)
3. 유리수체 Q              - 스칼라는 fractions.Fraction

행렬은 numpy 배열로 다룹니다:
- 유한체: galois.FieldArray
- 유리수: dtype=object 배열 (원소는 Fraction)

부동소수점은 어디에서도 사용하지 않습니다.
"""

from __future__ import annotations

import functools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Literal, Sequence

import galois
import numpy as np

from config import FIELD_SEARCH_LIMIT
from services.errors import FieldError

logger = logging.getLogger(__name__)

Scalar = int | Fraction
FieldKind = Literal["prime-field", "extension-field", "rationals"]


@functools.lru_cache(maxsize=None)
def _gf_class(p: int, k: int, modulus: tuple[int, ...] | None) -> type[galois.FieldArray]:
    """galois 체 클래스를 (p, k, modulus) 단위로 캐시합니다."""
    if k == 1:
        return galois.GF(p)
    poly = galois.Poly(list(modulus), field=galois.GF(p))
    return galois.GF(p**k, irreducible_poly=poly)


@dataclass(frozen=True)
class Field:
    """
    체 핸들 (불변, 해시 가능)

    Attributes:
        characteristic (int): 표수 p (유리수체는 0)
        degree (int): 확대 차수 k (소수체/유리수체는 1)
        modulus (tuple[int, ...] | None): 최고차항부터의 계수 (monic, 확대체에만 존재)
    """

    characteristic: int
    degree: int = 1
    modulus: tuple[int, ...] | None = None

    # ------------------------------------------------------------
    # 기본 정보
    # ------------------------------------------------------------
    @property
    def kind(self) -> FieldKind:
        if self.characteristic == 0:
            return "rationals"
        return "prime-field" if self.degree == 1 else "extension-field"

    @property
    def is_finite(self) -> bool:
        return self.characteristic > 0

    @property
    def order(self) -> int | None:
        return self.characteristic**self.degree if self.is_finite else None

    @property
    def label(self) -> str:
        if not self.is_finite:
            return "Q"
        return f"F_{self.order}"

    @property
    def gf(self) -> type[galois.FieldArray]:
        if not self.is_finite:
            raise FieldError("rationals have no galois field class")
        return _gf_class(self.characteristic, self.degree, self.modulus)

    def descriptor(self) -> dict[str, Any]:
        if not self.is_finite:
            return {"p": 0, "k": 1}
        out: dict[str, Any] = {"p": self.characteristic, "k": self.degree}
        if self.modulus is not None:
            out["modulus"] = list(self.modulus)
        return out

    # ------------------------------------------------------------
    # 스칼라 연산
    # ------------------------------------------------------------
    @property
    def zero(self) -> Scalar:
        return 0 if self.is_finite else Fraction(0)

    @property
    def one(self) -> Scalar:
        return 1 if self.is_finite else Fraction(1)

    def from_int(self, n: int) -> Scalar:
        if not self.is_finite:
            return Fraction(n)
        # 정수 n은 소수 부분체의 원소 n mod p 로 해석
        return n % self.characteristic

    def is_zero(self, a: Scalar) -> bool:
        return a == 0

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        if not self.is_finite:
            return a + b
        if self.degree == 1:
            return (a + b) % self.characteristic
        return int(self.gf(a) + self.gf(b))

    def neg(self, a: Scalar) -> Scalar:
        if not self.is_finite:
            return -a
        if self.degree == 1:
            return (-a) % self.characteristic
        return int(-self.gf(a))

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return self.add(a, self.neg(b))

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        if not self.is_finite:
            return a * b
        if self.degree == 1:
            return (a * b) % self.characteristic
        return int(self.gf(a) * self.gf(b))

    def inv(self, a: Scalar) -> Scalar:
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if not self.is_finite:
            return 1 / a
        if self.degree == 1:
            return pow(a, -1, self.characteristic)
        return int(self.gf(a) ** -1)

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def pow(self, a: Scalar, e: int) -> Scalar:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if not self.is_finite:
            return a**e
        if self.degree == 1:
            return pow(a, e, self.characteristic)
        return int(self.gf(a) ** e)

    def elements(self) -> list[Scalar]:
        if not self.is_finite:
            raise FieldError("rationals are not enumerable")
        return list(range(self.order))

    # ------------------------------------------------------------
    # 배열 (행렬/벡터) 변환
    # ------------------------------------------------------------
    def coerce(self, x: Any) -> Scalar:
        """정수/Fraction/문자열/galois 원소를 이 체의 스칼라로 변환."""
        if not self.is_finite:
            if isinstance(x, str):
                return Fraction(x)
            return Fraction(x)
        if isinstance(x, galois.FieldArray):
            return int(x)
        if isinstance(x, (int, np.integer)):
            value = int(x)
            if self.degree == 1:
                return value % self.characteristic
            if not 0 <= value < self.order:
                raise FieldError(f"integer {value} is not an element of {self.label}")
            return value
        raise FieldError(f"cannot coerce {x!r} into {self.label}")

    def array(self, values: Any) -> np.ndarray:
        """중첩 리스트/배열을 이 체의 numpy 배열로 변환합니다."""
        if self.is_finite:
            raw = np.asarray(values, dtype=object)
            ints = np.vectorize(self.coerce, otypes=[np.int64])(raw) if raw.size else raw.astype(np.int64)
            return self.gf(ints)
        raw = np.asarray(values, dtype=object)
        out = np.empty(raw.shape, dtype=object)
        for idx, v in np.ndenumerate(raw):
            out[idx] = self.coerce(v)
        return out

    def zeros(self, shape: int | tuple[int, ...]) -> np.ndarray:
        if self.is_finite:
            return self.gf.Zeros(shape)
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out

    def eye(self, n: int) -> np.ndarray:
        if self.is_finite:
            return self.gf.Identity(n)
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = Fraction(1)
        return out

    def scalar_of(self, x: Any) -> Scalar:
        """배열 원소 하나를 파이썬 스칼라로 꺼냅니다."""
        return int(x) if self.is_finite else Fraction(x)

    def to_ints(self, arr: np.ndarray) -> np.ndarray:
        """유한체 배열의 정수 표현 (np.int64)."""
        return np.asarray(arr.view(np.ndarray), dtype=np.int64)

    # ------------------------------------------------------------
    # 직렬화
    # ------------------------------------------------------------
    def scalar_to_json(self, x: Scalar) -> int | str | list[int]:
        """
        소수체 → 정수, 확대체 → 계수 배열(최고차항부터), 유리수 → "a/b" 문자열.
        """
        if not self.is_finite:
            f = Fraction(x)
            return f"{f.numerator}/{f.denominator}"
        if self.degree == 1:
            return int(x)
        digits = []
        value = int(x)
        for _ in range(self.degree):
            digits.append(value % self.characteristic)
            value //= self.characteristic
        return digits[::-1]

    def scalar_from_json(self, v: Any) -> Scalar:
        if not self.is_finite:
            if isinstance(v, (int, str)):
                return Fraction(v)
            raise FieldError(f"rational scalar must be int or 'a/b' string, got {v!r}")
        if isinstance(v, list):
            if self.degree == 1 and len(v) == 1:
                return self.coerce(v[0])
            if len(v) != self.degree:
                raise FieldError(f"coefficient array of length {len(v)} for {self.label}")
            value = 0
            for c in v:
                value = value * self.characteristic + (int(c) % self.characteristic)
            return value
        if isinstance(v, bool) or not isinstance(v, int):
            raise FieldError(f"finite-field scalar must be int or coefficient list, got {v!r}")
        if self.degree == 1:
            return v % self.characteristic
        return self.coerce(v)

    # ------------------------------------------------------------
    # 확대체 / 매장(embedding)
    # ------------------------------------------------------------
    def extension(self, e: int) -> Field:
        """F_{q^e} (modulus는 사전순 최소 monic 기약다항식)."""
        if not self.is_finite:
            raise FieldError("extensions are only defined for finite fields")
        if e == 1:
            return self
        return field_make(self.characteristic, self.degree * e)

    def embedding_into(self, ext: Field) -> np.ndarray:
        """
        이 체의 원소 → ext 체 원소 정수 표현으로 가는 lookup table.

        소수 부분체는 정수 표현이 그대로 보존되고, 확대체는 modulus의
        (정수 표현이 가장 작은) 근 α로 t ↦ α 를 보냅니다.
        """
        if ext.characteristic != self.characteristic or ext.degree % self.degree:
            raise FieldError(f"{self.label} does not embed into {ext.label}")
        q = self.order
        if self.degree == 1:
            return np.arange(q, dtype=np.int64)
        big = ext.gf
        roots = galois.Poly(list(self.modulus), field=big).roots()
        alpha = big(int(np.min(ext.to_ints(roots))))
        powers = [big(1)]
        for _ in range(self.degree - 1):
            powers.append(powers[-1] * alpha)
        table = np.zeros(q, dtype=np.int64)
        for value in range(q):
            digits = self.scalar_to_json(value)[::-1]
            acc = big(0)
            for c, pw in zip(digits, powers):
                acc = acc + big(c) * pw
            table[value] = int(acc)
        return table


RATIONALS = Field(0)


def field_make(
    p: int,
    k: int = 1,
    modulus: Sequence[int] | None = None,
    *,
    search_limit: int = FIELD_SEARCH_LIMIT,
) -> Field:
    """
    체 기술자(p, k, modulus)를 검증하고 Field를 만듭니다.

    Args:
        p (int): 표수 (0이면 유리수체)
        k (int): 확대 차수
        modulus (Sequence[int] | None): 최고차항부터의 계수, 생략하면 탐색

    Returns:
        Field: 검증된 체

    Note:
        - modulus를 생략하면 사전순 최소 monic 기약다항식을 고릅니다
          (실행/언어가 달라도 같은 출력을 내기 위함)
        - 탐색은 p^k ≤ search_limit 에서만 허용
    """
    if p == 0:
        if k != 1 or modulus:
            raise FieldError("the rationals take no extension degree or modulus")
        return RATIONALS
    if p < 0 or not galois.is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if k < 1:
        raise FieldError(f"extension degree must be >= 1, got {k}")
    if k == 1:
        if modulus:
            # 소수체에는 monic 일차식만 허용 (x − a 는 모두 같은 체)
            coeffs = [int(c) % p for c in modulus]
            if len(coeffs) != 2 or coeffs[0] != 1:
                raise FieldError(f"a prime field takes no modulus other than a monic linear one: {list(modulus)}")
        return Field(p, 1, None)

    if modulus is not None:
        coeffs = tuple(int(c) % p for c in modulus)
        if len(coeffs) != k + 1 or coeffs[0] != 1:
            raise FieldError(f"modulus must be monic of degree {k}: {list(modulus)}")
        poly = galois.Poly(list(coeffs), field=galois.GF(p))
        if not poly.is_irreducible():
            raise FieldError(f"modulus {poly} is reducible over F_{p}")
        return Field(p, k, coeffs)

    if p**k > search_limit:
        raise FieldError(f"F_{p}^{k} exceeds the modulus search limit {search_limit}")
    poly = galois.irreducible_poly(p, k, method="min")
    if poly is None or poly.degree != k:
        raise FieldError(f"no irreducible polynomial of degree {k} over F_{p} found")
    coeffs = tuple(int(c) for c in poly.coeffs)
    logger.debug("F_%d^%d modulus chosen: %s", p, k, poly)
    return Field(p, k, coeffs)


def field_from_descriptor(desc: Any) -> Field:
    """JSON 체 기술자({p, k, modulus?} 또는 "Q")를 Field로 변환."""
    if isinstance(desc, str):
        if desc.upper() in ("Q", "QQ"):
            return RATIONALS
        raise FieldError(f"unknown field descriptor {desc!r}")
    if isinstance(desc, dict):
        return field_make(int(desc.get("p", 0)), int(desc.get("k", 1)), desc.get("modulus"))
    raise FieldError(f"unknown field descriptor {desc!r}")


def scalars_equal(field: Field, a: Iterable[Scalar], b: Iterable[Scalar]) -> bool:
    return all(x == y for x, y in zip(a, b, strict=True))
