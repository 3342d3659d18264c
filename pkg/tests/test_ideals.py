"""
tests/test_ideals.py
============================================================
일차 ideal 정규형 / groebner 소속 판정
"""

import pytest

from services.errors import FieldError
from services.field import RATIONALS, field_make
from services.ideals import congruent_mod_ideal, congruent_mod_linear, ideal_member, linear_substitution, reduce_mod_linear
from services.polynomials import MultiPoly

F2 = field_make(2)
F3 = field_make(3)


def test_linear_substitution_eliminates_pivots():
    x1, x2, x3 = MultiPoly.variables(F3, 3)
    images = linear_substitution([x1 + x2])
    assert images[0] == MultiPoly.constant(F3, 3, 2) * x2
    assert images[1:] == [x2, x3]


def test_reduce_mod_linear():
    x1, x2, x3 = MultiPoly.variables(F2, 3)
    ell = x1 + x3
    assert reduce_mod_linear(ell * x2, [ell]).is_zero()
    assert reduce_mod_linear(x1 * x1, [ell]) == x3 * x3
    assert congruent_mod_linear(x1 * x2, x3 * x2, [ell])
    assert not congruent_mod_linear(x1, x2, [ell])
    assert reduce_mod_linear(x1, []) == x1


def test_non_linear_forms_are_rejected():
    x1, x2 = MultiPoly.variables(F3, 2)
    with pytest.raises(ValueError):
        linear_substitution([x1 * x2])


def test_groebner_membership():
    x1, x2 = MultiPoly.variables(F3, 2)
    ideal = [x1 * x1 - x2, x2 * x2]
    assert ideal_member(x1**4, ideal)
    assert ideal_member(x1 * x2 * x2 + x1**4, ideal)
    assert not ideal_member(x1, ideal)
    assert ideal_member(MultiPoly.zero(F3, 2), ideal)
    assert not ideal_member(x1, [])
    assert congruent_mod_ideal(x1 * x1, x2, ideal)


def test_groebner_needs_a_prime_field():
    x1, x2 = MultiPoly.variables(RATIONALS, 2)
    with pytest.raises(FieldError):
        ideal_member(x1, [x2])
    y1, y2 = MultiPoly.variables(field_make(2, 2), 2)
    with pytest.raises(FieldError):
        ideal_member(y1, [y2])
