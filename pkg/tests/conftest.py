import random
from fractions import Fraction

import pytest

from merocurve.meropoly import MeroPoly
from merocurve.numfield import QQ, run_cases


def mero(terms):
    """Curve from {(x_exp, y_pow): coeff}."""
    return MeroPoly.from_terms(QQ, terms)


def run_one(task, **kw):
    """Run a session task expecting a single terminal context."""
    out = run_cases(QQ, task, **kw)
    assert len(out) == 1, f"expected one case, got {len(out)}"
    return out[0][1]


def run_all(task, **kw):
    return run_cases(QQ, task, **kw)


def random_laurent_curve(rng, max_deg=3, x_lo=-3, x_hi=3, terms=4, monic=False):
    """Random exact Laurent-polynomial curve, optionally k-monic."""
    d = rng.randint(1, max_deg)
    out = {}
    if monic:
        out[(Fraction(0), d)] = Fraction(1)
    for _ in range(terms):
        a = Fraction(rng.randint(x_lo, x_hi))
        b = rng.randint(0, d - 1 if monic else d)
        c = Fraction(rng.randint(-3, 3))
        if c:
            out[(a, b)] = out.get((a, b), Fraction(0)) + c
    out = {k: v for k, v in out.items() if v}
    if not out or all(b == 0 for (_a, b) in out):
        out[(Fraction(0), d)] = Fraction(1)
    return mero(out)


@pytest.fixture
def rng():
    return random.Random(20260809)
