"""
tests/test_polynomials.py
============================================================
MultiPoly 산술 / 대입 / 평가 / 직렬화
"""

from fractions import Fraction

import pytest

from services.errors import DimensionError
from services.field import RATIONALS, field_make
from services.polynomials import MultiPoly, monomials_of_degree, poly_product, poly_sum

F3 = field_make(3)


def xs(field, n):
    return MultiPoly.variables(field, n)


def test_zero_coefficients_are_dropped():
    f = MultiPoly(F3, 2, {(1, 0): 0, (0, 1): 1})
    assert list(f.terms) == [(0, 1)]
    x, y = xs(F3, 2)
    assert (x + y - x - y).is_zero()


def test_frobenius_in_characteristic_three():
    x, y = xs(F3, 2)
    assert (x + y) ** 3 == x**3 + y**3


def test_binomial_over_the_rationals():
    x, y = xs(RATIONALS, 2)
    f = (x + y) ** 2
    assert f.coefficient((1, 1)) == Fraction(2)
    assert f.degree == 2
    assert f.is_homogeneous()
    assert not (f + MultiPoly.constant(RATIONALS, 2, 1)).is_homogeneous()


def test_leading_monomial_is_graded_lex():
    x, y, z = xs(F3, 3)
    f = y * z + x + z**3 + x * x * y
    assert f.leading_monomial() == (2, 1, 0)
    assert [e for e, _ in f.sorted_terms()] == [(2, 1, 0), (0, 0, 3), (0, 1, 1), (1, 0, 0)]


def test_substitute_and_evaluate_agree():
    x, y = xs(F3, 2)
    f = x * x * y + MultiPoly.constant(F3, 2, 2) * y
    g = f.substitute([x + y, y])
    for a in range(3):
        for b in range(3):
            assert g.evaluate([a, b]) == f.evaluate([(a + b) % 3, b])


def test_evaluate_array_in_an_extension():
    f9 = field_make(3, 2)
    x, y = xs(F3, 2)
    f = x * y + y**2
    points = f9.gf([[1, 2], [3, 4], [0, 8]])
    values = f.evaluate_array(points)
    for row, value in zip(points, values):
        a, b = row
        assert value == a * b + b**2


def test_mixed_rings_are_rejected():
    x = MultiPoly.variable(F3, 2, 0)
    y = MultiPoly.variable(F3, 3, 0)
    with pytest.raises(DimensionError):
        x + y
    with pytest.raises(DimensionError):
        x.substitute([x])
    with pytest.raises(DimensionError):
        MultiPoly.variable(F3, 2, 2)
    with pytest.raises(DimensionError):
        MultiPoly(F3, 2, {(1,): 1})


def test_json_and_string_forms():
    x, y = xs(F3, 2)
    f = x**2 * y + MultiPoly.constant(F3, 2, 2) * y + MultiPoly.constant(F3, 2, 1)
    data = f.to_json()
    assert data["terms"][0] == {"exps": [2, 1], "coef": 1}
    assert MultiPoly.from_json(F3, 2, data) == f
    assert str(f) == "x1^2*x2 + 2*x2 + 1"
    assert str(MultiPoly.zero(F3, 2)) == "0"


def test_helpers():
    x, y = xs(F3, 2)
    assert poly_sum([x, y, x], F3, 2) == MultiPoly.constant(F3, 2, 2) * x + y
    assert poly_product([x, y, x], F3, 2) == x * x * y
    assert poly_sum([], F3, 2).is_zero()
    assert monomials_of_degree(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert len(monomials_of_degree(3, 3)) == 10
    assert monomials_of_degree(0, 0) == [()]
    assert monomials_of_degree(0, 1) == []
