from fractions import Fraction

import pytest

from conftest import mero, random_laurent_curve, run_all, run_one
from merocurve.extrat import INF, NEG_INF, ExtRat
from merocurve.meropoly import common_integer_grid, int_mult
from merocurve.numfield import QQ, run_cases
from merocurve.puiseux import (
    branch_int,
    contact,
    factor,
    joint_separation_bound,
    noc,
    pair_int,
    rnoc,
    self_derivative_int,
)


def branches_of(f, **kw):
    def task(sess):
        fac = factor(sess, f, **kw)
        return [(b.z.text(), b.n, b.mult) for b in fac.branches]

    return run_one(task)


def test_expand_examples():
    assert branches_of(mero({(0, 2): 1, (3, 0): -1})) == [("X^(3/2)", 2, 1)]
    assert branches_of(mero({(0, 1): 1, (1, 0): -1})) == [("X", 1, 1)]
    sq = mero({(0, 1): 1, (1, 0): -1}) ** 2
    assert branches_of(sq) == [("X", 1, 2)]


def test_factor_examples():
    # two rational branches of the node
    out = branches_of(mero({(0, 2): 1, (2, 0): -1}))
    assert sorted(n for _z, n, _m in out) == [1, 1]
    # the Laurent content is carried by F0, one branch remains
    def task(sess):
        fac = factor(sess, mero({(-1, 1): 1, (0, 0): -1}))
        return fac.f0.text(), fac.chi

    f0, chi = run_one(task)
    assert chi == 1 and f0 == "X^-1"


def test_char_exponents_cusp():
    def task(sess):
        fac = factor(sess, mero({(0, 2): 1, (3, 0): -1}))
        b = fac.branches[0]
        m, d, h, m_hat, d_hat = b.char_data()
        return (
            [x.text() for x in m],
            [x.text() for x in d],
            h,
            m_hat.text(),
            d_hat.text(),
        )

    m, d, h, m_hat, d_hat = run_one(task)
    assert m == ["2", "3", "inf"] and d == ["0", "2", "1"]
    assert (h, m_hat, d_hat) == (1, "3", "2")


def test_degree_one_branch_has_empty_sequence():
    def task(sess):
        fac = factor(sess, mero({(0, 1): 1, (5, 0): -1}))
        b = fac.branches[0]
        return b.h, b.m_hat == NEG_INF

    h, mhat_neg = run_one(task)
    assert h == 0 and mhat_neg


def test_position_and_truncation():
    def task(sess):
        fac = factor(sess, mero({(0, 2): 1, (3, 0): -1}))
        b = fac.branches[0]
        p_at = b.position(Fraction(3, 2))
        t, deg, d_c = b.truncation(sess, Fraction(1))
        return p_at, (t.deg_y_int(), deg, d_c.text())

    (p, m_c, d_c), (tdeg, deg, d1) = run_one(task)
    assert p == 0 and m_c == ExtRat(3) and d_c == ExtRat(2)
    assert (tdeg, deg, d1) == (1, 1, "2")


def test_noc_rnoc_examples():
    def task(sess):
        f1 = factor(sess, mero({(0, 1): 1}))
        g1 = factor(sess, mero({(0, 2): 1, (-1, 0): 1}))
        cusp = factor(sess, mero({(0, 2): 1, (3, 0): -1}))
        line = factor(sess, mero({(0, 1): 1, (1, 0): -1}))
        return (
            noc(sess, f1, g1).text(),
            noc(sess, line, line).text(),
            rnoc(sess, cusp, cusp).text(),
        )

    a, b, c = run_one(task)
    assert a == "-1/2"
    assert b == "inf"
    assert c == "3/2"


def test_rnoc_self_of_multiple_line():
    # all roots equal and of degree one: the restricted contact is -inf
    def task(sess):
        fac = factor(sess, mero({(0, 1): 1, (1, 0): -1}) ** 2)
        return rnoc(sess, fac, fac).text()

    assert run_one(task) == "-inf"


def test_reconstruction_exact():
    f = mero({(0, 2): 1, (2, 0): -1}) * mero({(0, 1): 1, (1, 0): -3})

    def task(sess):
        fac = factor(sess, f)
        rec = fac.reconstruct(sess)
        return (rec - f).is_zero_mero()

    assert run_one(task)


def test_reconstruction_beyond_precision():
    f = mero({(0, 3): 1, (1, 1): 1, (2, 0): 1})

    def task(sess):
        fac = factor(sess, f)
        rec = fac.reconstruct(sess)
        d = rec - f
        for j in range(len(d.coeffs)):
            c = d.coeff(j)
            assert not c.terms, "difference must vanish below certification"
        return True

    assert run_one(task)


def test_int_cross_oracle_random(rng):
    # int via expanded roots equals ord of the resultant, exactly
    for _ in range(20):
        f = random_laurent_curve(rng, max_deg=3)
        g = random_laurent_curve(rng, max_deg=2)
        if f.deg_y_int() == 0:
            continue

        def task(sess):
            (fi, gi), nu = common_integer_grid(f, g)
            fac = factor(sess, fi)
            tot = fac.f0.ord() * (gi.deg_y_int() if not gi.is_zero_mero() else 0)
            for b in fac.branches:
                tot = tot + ExtRat(b.mult) * branch_int(b, gi)
            return tot / nu

        for _sess, got in run_cases(QQ, task):
            assert got == int_mult(f, g)


def test_pair_int_and_self_derivative():
    def task(sess):
        fac = factor(sess, mero({(0, 2): 1, (3, 0): -1}))
        b = fac.branches[0]
        return self_derivative_int(sess, b).text()

    assert run_one(task) == "3"

    def task2(sess):
        f = mero({(0, 2): 1, (2, 0): -1})
        fac = factor(sess, f)
        a, b = fac.branches
        return pair_int(sess, a, b, fac.sep_bound).text()

    assert run_one(task2) == "1"


def test_contact_symmetry(rng):
    def task(sess):
        f = mero({(0, 2): 1, (3, 0): -1})
        g = mero({(0, 2): 1, (2, 0): -1, (3, 0): -1})
        bound = joint_separation_bound([f, g])
        ff = factor(sess, f, lower_bound=bound)
        gg = factor(sess, g, lower_bound=bound)
        for b1 in ff.branches:
            for b2 in gg.branches:
                assert contact(sess, b1, b2, None) == contact(sess, b2, b1, None)
        return True

    assert run_one(task)


def test_overcognate_equal_char_data():
    # branches of Y^2 - X^2 have h = 0 and form an overcognate pair
    def task(sess):
        fac = factor(sess, mero({(0, 2): 1, (2, 0): -1}))
        a, b = fac.branches
        assert a.h == 0 and b.h == 0
        assert a.n == b.n
        c = contact(sess, a, b, None)
        return (c > a.m_hat_over_n()) and (c > b.m_hat_over_n())

    assert run_one(task)
