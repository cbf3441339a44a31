from fractions import Fraction

import pytest

from conftest import mero, random_laurent_curve
from merocurve.errors import HypothesisNotMet, NonpositiveDegree, ZeroInput
from merocurve.extrat import INF, ExtRat
from merocurve.newton import (
    Relation,
    enp_relation,
    eval_at_slope,
    related,
    unp,
    unp_relation,
    verify_main_lemma,
)
from merocurve.meropoly import MeroPoly
from merocurve.numfield import QQ, Poly


def hull_oracle(f):
    """Independent lower-hull of the support points (test oracle)."""
    pts = []
    for j in range(len(f.coeffs)):
        c = f.coeff(j)
        if c.terms:
            pts.append((j, Fraction(min(c.terms), c.nu)))
    best = {}
    for j, q in pts:
        if j not in best or q < best[j]:
            best[j] = q
    items = sorted(best.items())
    hull = []
    for j, q in items:
        while len(hull) >= 2:
            (j1, q1), (j2, q2) = hull[-2], hull[-1]
            if (q2 - q1) * (j - j1) >= (q - q1) * (j2 - j1):
                hull.pop()
            else:
                break
        hull.append((j, q))
    return hull


def test_unp_polygon_demo():
    p = unp(mero({(0, 3): 1, (1, 1): 1, (2, 0): 1}))
    assert p.iota == 2
    assert p.orders == [ExtRat(0), ExtRat(Fraction(1, 2)), ExtRat(1)]
    assert p.labels == [3, 1, 0]
    assert p.levels == [ExtRat(0), ExtRat(1), ExtRat(2)]
    # placed polynomials: Y^3 + Y and Y + 1
    assert p.sides[0].degree() == 3 and p.sides[0].ord_y() == 1
    assert p.sides[1].degree() == 1 and p.sides[1].ord_y() == 0
    # hull oracle agreement
    oracle = hull_oracle(mero({(0, 3): 1, (1, 1): 1, (2, 0): 1}))
    assert [(j, q) for j, q in oracle] == [(0, Fraction(2)), (1, Fraction(1)), (3, Fraction(0))]


def test_unp_small_cases():
    p = unp(mero({(0, 1): 1, (1, 0): -1}))
    assert (p.iota, p.orders[1], p.labels) == (1, ExtRat(1), [1, 0])
    cusp = unp(mero({(0, 2): 1, (3, 0): -1}))
    assert cusp.orders == [ExtRat(0), ExtRat(Fraction(3, 2))]
    assert cusp.levels == [ExtRat(0), ExtRat(3)]
    with pytest.raises(NonpositiveDegree):
        unp(mero({(1, 0): 1}))


def test_unp_degenerate_zero_constant_term():
    p = unp(mero({(0, 3): 1, (1, 1): 1}))
    assert p.orders[-1] == INF
    assert p.labels[-1] == 1
    assert p.levels[-1] == INF
    pure = unp(mero({(0, 2): 1}))
    assert pure.iota == 1 and pure.orders[1] == INF and pure.labels == [2, 2]


def test_hypotenuse_closure(rng):
    # the postfinal side arithmetic: Lam_tilde = Lam_1 + sum (L_j - L_{j+1}) O_j
    # (the degenerate F(X,0) = 0 polygons close with a half-infinite ray instead)
    checked = 0
    for _ in range(25):
        f = random_laurent_curve(rng)
        if f.deg_y_int() < 1:
            continue
        p = unp(f)
        if not p.levels[-1].finite:
            continue
        acc = p.levels[0]
        for i in range(1, p.iota + 1):
            acc = acc + ExtRat(p.labels[i - 1] - p.labels[i]) * p.orders[i]
        assert acc == p.levels[-1]
        checked += 1
    assert checked > 3


def test_eval_at_slope_examples():
    f = mero({(0, 3): 1, (1, 1): 1, (2, 0): 1})
    L, Ls, lam, lams, P = eval_at_slope(f, Fraction(1, 2))
    assert (L, Ls) == (3, 1) and lam == ExtRat(1) and lams == ExtRat(Fraction(3, 2))
    L, Ls, lam, lams, P = eval_at_slope(f, 1)
    assert (L, Ls) == (1, 0) and (P.degree(), P.ord_y()) == (1, 0)
    L, Ls, lam, lams, P = eval_at_slope(mero({(0, 1): 1, (1, 0): -1}), INF)
    assert (L, Ls) == (0, 0)


def test_slope_substitution_crosscheck(rng):
    # ord F(X^v, Y X^{cv}) = Lam*(F,c) v and its initial form is P^(F,c)
    for _ in range(25):
        f = random_laurent_curve(rng)
        if f.deg_y_int() < 1:
            continue
        c = Fraction(rng.randint(-3, 5), rng.randint(1, 3))
        v = c.denominator
        _L, _Ls, _lam, lams, P = eval_at_slope(f, c)
        sub = f.ramify_x(v).scale_y_xexp(c.numerator * (v // c.denominator))
        assert sub.ord_x() == lams * v
        got = sub.inco_x()
        assert (got - P).is_zero_poly()


def test_related():
    y = Poly.gen(QQ)
    assert related(y**2, y**3)
    assert not related(y + 1, y)
    assert related(2 * (y - 1) ** 2, (y - 1) ** 4)
    with pytest.raises(ZeroInput):
        related(Poly.zero(QQ), y)


def test_related_equivalence_properties(rng):
    y = Poly.gen(QQ)
    polys = [y, y**2, 3 * y**2, (y - 1) * y, ((y - 1) * y) ** 2, y + 1]
    for p in polys:
        assert related(p, p)
    for p in polys:
        for q in polys:
            assert related(p, q) == related(q, p)
    for p in polys:
        for q in polys:
            for r in polys:
                if related(p, q) and related(q, r):
                    assert related(p, r)


def test_unp_relation_examples():
    f = mero({(0, 3): 1, (1, 1): 1, (2, 0): 1})
    assert unp_relation(f, f).kind == Relation.PARALLEL
    r = unp_relation(mero({(0, 1): 1, (1, 0): -1}), mero({(0, 2): 1, (2, 0): -1}))
    assert r.kind == Relation.PARALLEL
    assert enp_relation(f, f).kind == Relation.PARALLEL


def test_main_lemma_pass_example():
    rep = verify_main_lemma(mero({(0, 1): 1}), mero({(-1, 0): 1, (0, 2): 1}))
    assert rep.passed
    assert rep.relation.kind == Relation.G_SMALLER
    rep2 = verify_main_lemma(
        mero({(-1, 0): 1, (0, 2): 1}), mero({(-1, 0): 1, (0, 2): 1})
    )
    assert rep2.passed and rep2.relation.kind == Relation.PARALLEL


def test_main_lemma_hypotheses():
    # proportionality of the order-zero labels fails
    with pytest.raises(HypothesisNotMet):
        verify_main_lemma(
            mero({(0, 1): 1, (-1, 0): 1}), mero({(0, 2): 1, (-1, 0): 1})
        )
    # no negative intersection with Y on either side
    with pytest.raises(HypothesisNotMet):
        verify_main_lemma(mero({(0, 1): 1, (1, 0): 1}), mero({(0, 1): 1, (2, 0): 1}))
    # jacobian involves Y
    with pytest.raises(HypothesisNotMet):
        verify_main_lemma(
            mero({(0, 2): 1, (-1, 0): 1}), mero({(0, 3): 1, (-1, 1): 1})
        )
