from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from merocurve.errors import InsufficientPrecision
from merocurve.extrat import INF, ExtRat
from merocurve.numfield import QQ
from merocurve.series import PuiseuxSeries as PS


def xpoly(d):
    return PS.from_x_poly(QQ, d)


def test_ord_examples():
    assert xpoly({-3: 1, 1: 2}).ord() == ExtRat(-3)
    assert PS.zero(QQ).ord() == INF
    with pytest.raises(InsufficientPrecision):
        PS(QQ, 1, {}, trunc=5, checked=True).ord()


def test_inco_info_coef():
    s = xpoly({-2: 3, 1: 1})
    assert s.inco() == 3
    assert s.info().terms == {-2: s.inco()}
    assert PS.monomial(QQ, 1, 3, nu=2).coef(Fraction(3, 2)) == 1
    # off-grid coefficient is zero by convention
    assert xpoly({1: 1, 2: 1}).coef(Fraction(1, 2)) == 0
    assert xpoly({1: 1}).coef(INF) == 0


def test_derivative_example():
    d = xpoly({-1: 1}).derivative_x()
    assert d.terms == {-2: d.ctx.rational(-1)} or repr(d) == "(-1)*X^-2"
    assert d.coef(Fraction(-2)) == -1


def test_ramify_and_invert():
    r = xpoly({-1: 1, 1: 1}).ramify(2)
    assert sorted(r.terms) == [-2, 2]
    inv = xpoly({0: 1, 1: -1}).invert(prec=3)
    assert [inv.coef_exp(i) == 1 for i in range(3)] == [True, True, True]
    assert inv.trunc == 3


def test_trunc_propagation_mul():
    a = PS(QQ, 1, {1: QQ.one()}, trunc=4, checked=True)
    b = xpoly({2: 1})
    p = a * b
    assert p.trunc == 6 and sorted(p.terms) == [3]


def test_twist():
    s = PS.from_x_poly(QQ, {1: 1, 2: 3}, nu=2)
    t = s.twist(QQ.rational(-1), 2)
    assert t.coef_exp(1) == -1 and t.coef_exp(2) == 3


exact_series = st.dictionaries(
    st.integers(min_value=-4, max_value=6),
    st.fractions(max_denominator=8),
    max_size=5,
).map(lambda d: PS.from_x_poly(QQ, {k: v for k, v in d.items() if v}))


@settings(max_examples=60, deadline=None)
@given(exact_series, exact_series)
def test_ord_laws(a, b):
    oa, ob = a.ord(), b.ord()
    assert (a * b).ord() == oa + ob
    s = a + b
    if s.terms or s.is_exact():
        assert s.ord() >= min(oa, ob)
        if oa != ob:
            assert s.ord() == min(oa, ob)


@settings(max_examples=40, deadline=None)
@given(exact_series, exact_series)
def test_derivative_product_rule(a, b):
    lhs = (a * b).derivative_x()
    rhs = a.derivative_x() * b + a * b.derivative_x()
    assert (lhs - rhs).is_zero_certified()


@settings(max_examples=40, deadline=None)
@given(exact_series, st.integers(min_value=1, max_value=4))
def test_ramify_scales_ord(a, k):
    assert a.ramify(k).ord() == a.ord() * k
