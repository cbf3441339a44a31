"""Residues, alpha/beta invariants, and the jacobian-identity verifiers.

The beta report is computed branch by branch (residues and excess
intersections along Puiseux roots); the identity verifiers recompute their
other side through exact resultants, so a PASS really does cross two
independent routes.

All intersection-type values honor the fractional-input normalization: the
pair is brought to a common integer grid X -> X^nu and every order divided
back by nu.
"""

from fractions import Fraction

from .errors import HypothesisNotMet, NotKMonic, ZeroInput
from .extrat import INF, ExtRat, ext_min
from .meropoly import (
    MeroPoly,
    common_integer_grid,
    divides_mero,
    int_mult,
    jacobian,
    radical,
)
from .puiseux import (
    Branch,
    branch_eval,
    branch_int,
    common_value_bound,
    factor,
    joint_separation_bound,
    pair_int,
    residue,
    self_derivative_int,
)


class BetaReport:
    """alpha/beta data of G relative to F."""

    __slots__ = (
        "nu",
        "minint",
        "int_fg",
        "alpha",
        "alpha_sets",
        "beta_lambda",
        "beta",
        "generic",
        "residues",
        "chi",
    )

    def __init__(self, nu, minint, int_fg, alpha, alpha_sets, beta_lambda, beta, generic, residues, chi):
        self.nu = nu
        self.minint = minint
        self.int_fg = int_fg
        self.alpha = alpha  # irregular values (field elements), zero included
        self.alpha_sets = alpha_sets  # [(value, [branch indices])]
        self.beta_lambda = beta_lambda  # [(value, ExtRat)]
        self.beta = beta
        self.generic = generic
        self.residues = residues  # per branch: field element or None (= inf)
        self.chi = chi

    def alpha_nonzero(self):
        return [v for v in self.alpha if not v.is_zero()]

    def alpha_subset_zero(self):
        return all(v.is_zero() for v in self.alpha)

    def to_json(self):
        return {
            "minint": self.minint.text(),
            "int": self.int_fg.text(),
            "alpha": [repr(v) for v in self.alpha],
            "beta": self.beta.text(),
            "beta_lambda": [[repr(v), b.text()] for v, b in self.beta_lambda],
            "generic": self.generic,
            "residues": [("inf" if r is None else repr(r)) for r in self.residues],
            "chi": self.chi,
        }


def beta_report(sess, f, g):
    """The full Section-1 invariant bundle for a pair (F, G), F nonzero."""
    if f.is_zero_mero():
        raise ZeroInput("beta report needs F != 0")
    (fi, gi), nu = common_integer_grid(f, g)
    scale = ExtRat(Fraction(1, nu))
    bound = joint_separation_bound([fi, gi])
    fac = factor(sess, fi, lower_bound=bound)
    com = common_value_bound(fi, gi) if not gi.is_zero_mero() else None
    m_deg = 0 if gi.is_zero_mero() else gi.deg_y_int()
    f0_ord = fac.f0.ord()
    residues_list = []
    ints_at_res = []
    for b in fac.branches:
        lam = residue(b, gi, com_bound=com)
        residues_list.append(lam)
        if lam is None:
            ints_at_res.append(None)
        else:
            v = branch_eval(b, gi) - lam
            ints_at_res.append(_eval_ord_int(b, v, com))
    # group the finite residues into the alpha sets
    alpha_sets = []
    for idx, lam in enumerate(residues_list):
        if lam is None:
            continue
        placed = False
        for slot in alpha_sets:
            if (slot[0] - lam).is_zero():
                slot[1].append(idx)
                placed = True
                break
        if not placed:
            alpha_sets.append((lam, [idx]))
    alpha = [slot[0] for slot in alpha_sets]
    beta_lambda = []
    beta = ExtRat(0)
    for lam, idxs in alpha_sets:
        bl = ExtRat(0)
        for idx in idxs:
            bl = bl + ExtRat(fac.branches[idx].mult) * ints_at_res[idx]
        bl = bl * scale
        beta_lambda.append((lam, bl))
        if not lam.is_zero():
            beta = beta + bl
    # minint and int(F,G), both through the branch route
    base = ExtRat(m_deg) * f0_ord
    minint = base
    int_fg = base
    for idx, b in enumerate(fac.branches):
        v = branch_int(b, gi, com_bound=com)
        int_fg = int_fg + ExtRat(b.mult) * v
        minint = minint + ExtRat(b.mult) * ext_min([v, ExtRat(0)])
    minint = minint * scale
    int_fg = int_fg * scale
    generic = int_fg == minint
    return BetaReport(
        nu,
        minint,
        int_fg,
        alpha,
        alpha_sets,
        beta_lambda,
        beta,
        generic,
        residues_list,
        fac.chi,
    )


def _eval_ord_int(b, v, com):
    """n * ord(v) with the beyond-the-bound infinity rule."""
    if v.terms:
        return ExtRat(b.n) * v.ord()
    if v.is_exact():
        return INF
    if com is not None and v.trunc is not None and Fraction(v.trunc, v.nu) > com:
        return INF
    from .errors import InsufficientPrecision

    raise InsufficientPrecision("excess intersection needs more terms")


def betabar_report(sess, f):
    """alphabar/betabar of F: the beta report of (F_Y, F)."""
    if f.is_zero_mero() or f.deg_y_int() <= 0:
        raise ZeroInput("betabar needs deg_Y F > 0")
    return beta_report(sess, f.derivative_y(), f)


def minint(sess, f, g):
    return beta_report(sess, f, g).minint


class IdentityReport:
    def __init__(self, name, passed, lhs, rhs, terms, notes=()):
        self.name = name
        self.passed = passed
        self.lhs = lhs
        self.rhs = rhs
        self.terms = terms
        self.notes = list(notes)

    def to_json(self):
        out = {
            "id": self.name,
            "pass": self.passed,
            "lhs": self.lhs.text() if isinstance(self.lhs, ExtRat) else self.lhs,
            "rhs": self.rhs.text() if isinstance(self.rhs, ExtRat) else self.rhs,
            "terms": {k: (v.text() if isinstance(v, ExtRat) else v) for k, v in self.terms.items()},
        }
        if self.notes:
            out["notes"] = self.notes
        return out


def _require_no_divisible_shift(report, f, g, side="G"):
    """GCD(F, G-c) = 1 for all c: only residues can make a shift divisible,
    so the finite residue set is the only thing to check."""
    for lam, _idxs in report.alpha_sets:
        if int_mult(f, g - lam) == INF:
            raise HypothesisNotMet(
                f"GCD(F,{side}-c)=1 for all c",
                f"fails at c = {lam!r}",
            )


def verify_identity(sess, name, f, g=None):
    """Exact two-sided check of the beta-jacobian family of identities.

    Supported names: 2.1, 2.2, 2.3, 3.3, 11.6.
    """
    if name == "2.1":
        return _verify_21(sess, f, g)
    if name == "2.2":
        return _verify_22(sess, f, g)
    if name == "2.3":
        return _verify_23(sess, f)
    if name == "3.3":
        return _verify_33(sess, f)
    if name == "11.6":
        return _verify_116(sess, f)
    raise ValueError(f"unknown identity {name}")


def _verify_21(sess, f, g):
    """int(F,J(E,G)) = int(F,G) + int(F,E_Y) - N + beta(F,G), E = rad(F)."""
    if not f.is_k_monic():
        raise NotKMonic("the beta-jacobian identity needs k-monic F")
    n = f.deg_y_int()
    rep = beta_report(sess, f, g)
    _require_no_divisible_shift(rep, f, g)
    if rep.beta == INF:
        raise HypothesisNotMet("beta finite")
    e = radical(f)
    lhs = int_mult(f, jacobian(e, g))
    rhs = rep.int_fg + int_mult(f, e.derivative_y()) - ExtRat(n) + rep.beta
    terms = {
        "int(F,J(E,G))": lhs,
        "int(F,G)": rep.int_fg,
        "int(F,E_Y)": int_mult(f, e.derivative_y()),
        "N": ExtRat(n),
        "beta": rep.beta,
    }
    _assert_integers(terms)
    return IdentityReport("2.1", lhs == rhs, lhs, rhs, terms)


def _verify_22(sess, f, g):
    """int(F,G_X) = int(F,G) - N + beta(F,G), when G_Y lies in every F_j R."""
    if not f.is_k_monic():
        raise NotKMonic("the beta-derivative identity needs k-monic F")
    n = f.deg_y_int()
    rep = beta_report(sess, f, g)
    _require_no_divisible_shift(rep, f, g)
    if rep.beta == INF:
        raise HypothesisNotMet("beta finite")
    gy = g.derivative_y()
    if n > 0 and not (gy.is_zero_mero() or divides_mero(radical(f), gy)):
        raise HypothesisNotMet("G_Y in F_j R", "some branch of F does not divide G_Y")
    lhs = int_mult(f, g.derivative_x())
    rhs = rep.int_fg - ExtRat(n) + rep.beta
    terms = {
        "int(F,G_X)": lhs,
        "int(F,G)": rep.int_fg,
        "N": ExtRat(n),
        "beta": rep.beta,
    }
    _assert_integers(terms)
    return IdentityReport("2.2", lhs == rhs, lhs, rhs, terms)


def _verify_23(sess, f):
    """int(F_X,F_Y) = int(F,F_Y) - N + 1 + betabar(F)."""
    if not f.is_k_monic():
        raise NotKMonic("the betabar-derivative identity needs k-monic F")
    n = f.deg_y_int()
    if n <= 0:
        raise HypothesisNotMet("N > 0")
    fy = f.derivative_y()
    rep = beta_report(sess, fy, f)
    _require_no_divisible_shift(rep, fy, f, side="F")
    if rep.beta == INF:
        raise HypothesisNotMet("betabar finite")
    lhs = int_mult(f.derivative_x(), fy)
    rhs = rep.int_fg - ExtRat(n) + ExtRat(1) + rep.beta
    terms = {
        "int(F_X,F_Y)": lhs,
        "int(F,F_Y)": rep.int_fg,
        "N": ExtRat(n),
        "betabar": rep.beta,
    }
    _assert_integers(terms)
    return IdentityReport("2.3", lhs == rhs, lhs, rhs, terms)


def delta_distinguished(sess, f):
    """Conductor length of a k-distinguished squarefree F, production route:
    delta = (int(F,F_Y) - N + chi(F)) / 2."""
    if not f.is_k_distinguished():
        raise HypothesisNotMet("F k-distinguished")
    n = f.deg_y_int()
    if n <= 0:
        return ExtRat(0)
    (fi,), nu = common_integer_grid(f)
    fac = factor(sess, fi)
    v = int_mult(f, f.derivative_y())
    if v == INF:
        return INF
    num = v - ExtRat(n) + ExtRat(fac.chi)
    half = num / 2
    if half.finite and (half.as_fraction().denominator != 1):
        from .errors import SoundnessViolation

        raise SoundnessViolation("conductor length is not an integer")
    return half


def delta_branch_route(sess, f):
    """Independent conductor length: characteristic exponents plus pairwise
    intersections of the branches (test oracle for the production route)."""
    if not f.is_k_distinguished():
        raise HypothesisNotMet("F k-distinguished")
    (fi,), nu = common_integer_grid(f)
    fac = factor(sess, fi)
    if any(b.mult > 1 for b in fac.branches):
        return INF
    total2 = ExtRat(0)  # twice delta
    for b in fac.branches:
        m_seq, d_seq, h, _, _ = b.char_data()
        for i in range(1, h + 1):
            total2 = total2 + (m_seq[i] - ExtRat(1)) * (d_seq[i] - d_seq[i + 1])
    brs = fac.branches
    for i in range(len(brs)):
        for j in range(i + 1, len(brs)):
            total2 = total2 + ExtRat(2) * pair_int(sess, brs[i], brs[j], fac.sep_bound)
    half = total2 / 2
    if half.finite and half.as_fraction().denominator != 1:
        from .errors import SoundnessViolation

        raise SoundnessViolation("branch-route delta is not an integer")
    return half


def chi_branches(sess, f):
    """Branch number chi(F) (with multiplicity)."""
    if f.is_zero_mero() or f.deg_y_int() == 0:
        return 0
    (fi,), _ = common_integer_grid(f)
    return factor(sess, fi).chi


def _verify_33(sess, f):
    """The conductor-derivative formula, with delta from the branch route."""
    if not f.is_k_distinguished():
        raise HypothesisNotMet("F k-distinguished")
    n = f.deg_y_int()
    if n <= 0:
        raise HypothesisNotMet("N > 0")
    fy = f.derivative_y()
    v = int_mult(f, fy)
    if v == INF:
        raise HypothesisNotMet("rad(F) = F")
    lhs1 = int_mult(f.derivative_x(), fy)
    rhs1 = v - ExtRat(n) + ExtRat(1)
    delta = delta_branch_route(sess, f)
    chi = chi_branches(sess, f)
    rhs2 = ExtRat(2) * delta - ExtRat(chi) + ExtRat(1)
    terms = {
        "int(F_X,F_Y)": lhs1,
        "int(F,F_Y)-N+1": rhs1,
        "2delta-chi+1": rhs2,
        "delta": delta,
        "chi": ExtRat(chi),
    }
    _assert_integers(terms)
    ok = lhs1 == rhs1 == rhs2
    return IdentityReport("3.3", ok, lhs1, rhs2, terms)


def _verify_116(sess, f):
    """mu(F) + chibar(F) = 2 delta(F) for k-distinguished squarefree F."""
    if not f.is_k_distinguished():
        raise HypothesisNotMet("F k-distinguished")
    n = f.deg_y_int()
    if n <= 0:
        raise HypothesisNotMet("N > 0")
    if int_mult(f, f.derivative_y()) == INF:
        raise HypothesisNotMet("rad(F) = F")
    mu = int_mult(f.derivative_x(), f.derivative_y())
    chi = chi_branches(sess, f)
    delta = delta_branch_route(sess, f)
    lhs = mu + ExtRat(chi - 1)
    rhs = ExtRat(2) * delta
    terms = {"mu": mu, "chibar": ExtRat(chi - 1), "delta": delta}
    _assert_integers(terms)
    return IdentityReport("11.6", lhs == rhs, lhs, rhs, terms)


def _assert_integers(terms):
    from .errors import SoundnessViolation

    for k, v in terms.items():
        if isinstance(v, ExtRat) and v.finite and v.as_fraction().denominator != 1:
            raise SoundnessViolation(f"term {k} = {v} is not an integer")
