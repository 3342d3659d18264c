"""
tests/test_field.py
============================================================
정확한 체 연산 테스트
"""

from fractions import Fraction

import pytest

from services.errors import FieldError
from services.field import RATIONALS, field_from_descriptor, field_make


def test_prime_field_arithmetic():
    f5 = field_make(5)
    assert f5.add(3, 4) == 2
    assert f5.mul(3, 4) == 2
    assert f5.inv(2) == 3
    assert f5.pow(2, -1) == 3
    assert f5.sub(1, 3) == 3
    assert f5.label == "F_5"
    assert f5.elements() == [0, 1, 2, 3, 4]


def test_extension_field_uses_lexicographically_least_modulus():
    f4 = field_make(2, 2)
    assert f4.modulus == (1, 1, 1)
    # α = 2, α² = α + 1 = 3
    assert f4.mul(2, 2) == 3
    assert f4.mul(2, 3) == 1
    assert field_make(3, 2).modulus == (1, 0, 1)


def test_rationals_are_exact():
    q = RATIONALS
    assert q.add(Fraction(1, 3), Fraction(2, 3)) == 1
    assert q.inv(Fraction(-2, 7)) == Fraction(-7, 2)
    assert q.scalar_to_json(Fraction(-3, 4)) == "-3/4"
    assert q.scalar_from_json("5/6") == Fraction(5, 6)
    with pytest.raises(FieldError):
        q.elements()


@pytest.mark.parametrize(
    "p,k,modulus",
    [
        (4, 1, None),       # 소수가 아님
        (-3, 1, None),
        (2, 0, None),
        (2, 2, [1, 0, 1]),  # x² + 1 = (x + 1)² 는 기약이 아님
        (2, 2, [1, 1]),     # 차수 불일치
        (3, 1, [2, 1]),     # 소수체: monic 이 아님
        (3, 1, [1, 0, 1]),  # 소수체: 일차식이 아님
    ],
)
def test_invalid_descriptors_raise(p, k, modulus):
    with pytest.raises(FieldError):
        field_make(p, k, modulus)


def test_prime_field_accepts_only_a_monic_linear_modulus():
    assert field_make(3, 1, [1, 0]) == field_make(3)
    assert field_make(3, 1, []) == field_make(3)


def test_descriptor_round_trip():
    f8 = field_make(2, 3)
    assert field_from_descriptor(f8.descriptor()) == f8
    assert field_from_descriptor("Q") is RATIONALS
    with pytest.raises(FieldError):
        field_from_descriptor("R")


def test_extension_scalar_json_is_coefficient_array():
    f4 = field_make(2, 2)
    assert f4.scalar_to_json(2) == [1, 0]
    assert f4.scalar_from_json([1, 1]) == 3
    with pytest.raises(FieldError):
        f4.scalar_from_json([1, 0, 1])


def test_embedding_is_a_ring_homomorphism():
    f4 = field_make(2, 2)
    f16 = f4.extension(2)
    assert f16.order == 16
    table = f4.embedding_into(f16)
    for a in f4.elements():
        for b in f4.elements():
            assert table[f4.add(a, b)] == f16.add(int(table[a]), int(table[b]))
            assert table[f4.mul(a, b)] == f16.mul(int(table[a]), int(table[b]))


def test_embedding_between_characteristics_fails():
    with pytest.raises(FieldError):
        field_make(2).embedding_into(field_make(3, 2))
