from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from merocurve.extrat import INF, NEG_INF, ExtRat, ext_max, ext_min, ext_sum, parse_extrat


rationals = st.fractions(max_denominator=50)


def test_ordering():
    assert NEG_INF < ExtRat(-100) < ExtRat(Fraction(1, 3)) < INF
    assert INF == INF and NEG_INF == NEG_INF
    assert not (INF < INF)


def test_infinity_sum_convention():
    assert (INF + 5) == INF
    assert ext_sum([ExtRat(1), INF, ExtRat(-7)]) == INF
    assert ext_sum([]) == ExtRat(0)
    with pytest.raises(ArithmeticError):
        _ = INF + NEG_INF


def test_zero_times_infinity_is_zero():
    assert ExtRat(0) * INF == ExtRat(0)
    assert INF * ExtRat(0) == ExtRat(0)
    assert ExtRat(-2) * INF == NEG_INF


def test_min_max_empty_families():
    assert ext_min([]) == INF
    assert ext_max([]) == NEG_INF


def test_text_roundtrip():
    for v in (INF, NEG_INF, ExtRat(Fraction(-7, 3)), ExtRat(4)):
        assert parse_extrat(v.text()) == v


@given(rationals, rationals)
def test_field_ops_match_fractions(a, b):
    x, y = ExtRat(a), ExtRat(b)
    assert (x + y).as_fraction() == a + b
    assert (x * y).as_fraction() == a * b
    assert (x - y).as_fraction() == a - b
    if b:
        assert (x / y).as_fraction() == a / b


@given(st.lists(rationals, min_size=1, max_size=8))
def test_min_le_max(vals):
    xs = [ExtRat(v) for v in vals]
    assert ext_min(xs) <= ext_max(xs)
