"""Branch-contact machinery: equilateral/equicognate sequences, balanced
bisequences, packet extraction and partition, and the strict minimal
intersection with its certifying two-variable polynomial.

Every packet constructed here is pushed through the full well-balanced
battery (degree ratio, intersection balance, the negative proportionality
constants, and the divisibility clauses); a violation raises
SoundnessViolation, so a returned packet is a verified one.
"""

from fractions import Fraction

from .errors import (
    HypothesisNotMet,
    NotCoprime,
    SoundnessViolation,
    ZeroInput,
)
from .extrat import INF, NEG_INF, ExtRat
from .meropoly import (
    MeroPoly,
    common_integer_grid,
    int_mult,
    jacobian,
    resultant_y,
)
from .numfield import Poly
from .puiseux import (
    branch_int,
    common_value_bound,
    contact,
    factor,
    joint_separation_bound,
    pair_contact_orders,
)
from .series import PuiseuxSeries


class PairData:
    """Shared branch data for a pair (F, G) on a joint integer grid."""

    __slots__ = ("f", "g", "nu", "fac_f", "fac_g", "scale", "com_f", "com_g")

    def __init__(self, sess, f, g):
        (fi, gi), nu = common_integer_grid(f, g)
        bound = joint_separation_bound([fi, gi])
        self.f = fi
        self.g = gi
        self.nu = nu
        self.scale = ExtRat(Fraction(1, nu))
        self.fac_f = factor(sess, fi, lower_bound=bound)
        self.fac_g = factor(sess, gi, lower_bound=bound)
        self.com_f = common_value_bound(fi, gi)
        self.com_g = self.com_f

    def int_branch_g(self, b):
        """int(F_j, G), normalized."""
        return branch_int(b, self.g, com_bound=self.com_f) * self.scale

    def int_f_branch(self, b):
        """int(F, G_l), normalized."""
        return branch_int(b, self.f, com_bound=self.com_g) * self.scale

    def contact(self, sess, b1, b2):
        return contact(sess, b1, b2, None) * self.scale


def classify_sequence(sess, branches, scale=ExtRat(1)):
    """Equilateral test plus the cognate/overcognate/subcognate verdict.

    Returns ('equilateral', c, kind, special_index) or ('not_equilateral',).
    `branches` is a list of Branch objects in one context."""
    if len(branches) < 2:
        raise ZeroInput("a sequence needs at least two branches")
    c = None
    for i in range(len(branches)):
        for j in range(i + 1, len(branches)):
            v = contact(sess, branches[i], branches[j], None) * scale
            if c is None:
                c = v
            elif v != c:
                return ("not_equilateral",)
    for b in branches:
        if b.m_hat_over_n() * scale > c:
            return ("not_equilateral",)
    below = [i for i, b in enumerate(branches) if b.m_hat_over_n() * scale < c]
    if not below:
        kind, special = "cognate", None
    elif len(below) == len(branches):
        kind, special = "overcognate", None
    elif len(below) == 1:
        kind, special = "subcognate", below[0]
    else:
        raise SoundnessViolation("equilateral sequence fails the equicognate trichotomy")
    return ("equilateral", c, kind, special)


class Packet:
    """A balanced equicognate bisequence of (F, G), fully verified."""

    __slots__ = (
        "j_idx",
        "jp_idx",
        "diameter",
        "kind",
        "special",
        "ints_f",
        "ints_g",
        "dhat_f",
        "dhat_g",
        "nprime",
        "mprime",
        "e_max",
        "checks",
    )

    def __init__(self, **kw):
        for k in self.__slots__:
            setattr(self, k, kw.get(k))

    def to_json(self):
        return {
            "J": self.j_idx,
            "J'": self.jp_idx,
            "diameter": self.diameter.text(),
            "kind": self.kind,
            "special": self.special,
            "int(F_j,G)": [v.text() for v in self.ints_f],
            "int(F,G_l)": [v.text() for v in self.ints_g],
            "dhat_F": [v.text() for v in self.dhat_f],
            "dhat_G": [v.text() for v in self.dhat_g],
            "N'": self.nprime.text(),
            "M'": self.mprime.text(),
            "E": self.e_max,
            "checks": self.checks,
        }


def _require_pair_hypotheses(pd, need_jac=True):
    if pd.fac_f.n <= 0 or pd.fac_g.n <= 0:
        raise HypothesisNotMet("N > 0 and M > 0")
    if not (pd.f.is_k_monic() and pd.g.is_k_monic()):
        raise HypothesisNotMet("F and G Y-monic")
    if need_jac:
        jac = jacobian(pd.f, pd.g)
        if not jac.is_zero_mero() and jac.deg_y_int() > 0:
            raise HypothesisNotMet("J(F,G) in k((X))")


def packet_at(sess, f, g, seed_side, seed_index, pd=None):
    """The packet of (F,G) grown from one branch with negative intersection.

    seed_side is 'F' or 'G'; seed_index is the branch index on that side."""
    pd = pd or PairData(sess, f, g)
    _require_pair_hypotheses(pd)
    if seed_side == "G":
        seed = pd.fac_g.branches[seed_index]
        if not (pd.int_f_branch(seed) < 0):
            raise HypothesisNotMet("int(F,G_l*) < 0")
        c = _contact_with_curve(sess, pd.fac_f, seed, pd.scale)
        j_idx = [
            j
            for j, b in enumerate(pd.fac_f.branches)
            if pd.contact(sess, b, seed) >= c
        ]
        jp_idx = [
            l
            for l, b in enumerate(pd.fac_g.branches)
            if pd.contact(sess, b, seed) >= c
        ]
    else:
        seed = pd.fac_f.branches[seed_index]
        if not (pd.int_branch_g(seed) < 0):
            raise HypothesisNotMet("int(F_j*,G) < 0")
        c = _contact_with_curve(sess, pd.fac_g, seed, pd.scale)
        j_idx = [
            j
            for j, b in enumerate(pd.fac_f.branches)
            if pd.contact(sess, seed, b) >= c
        ]
        jp_idx = [
            l
            for l, b in enumerate(pd.fac_g.branches)
            if pd.contact(sess, seed, b) >= c
        ]
    if not j_idx or not jp_idx:
        raise SoundnessViolation("packet construction produced an empty side")
    return _verify_packet(sess, pd, j_idx, jp_idx, c)


def _contact_with_curve(sess, fac, seed, scale):
    best = NEG_INF
    for b in fac.branches:
        v = contact(sess, b, seed, None) * scale
        if v > best:
            best = v
    return best


def _verify_packet(sess, pd, j_idx, jp_idx, c):
    """Check saturation, balance, equicognateness and the well-balanced
    battery; return the Packet."""
    checks = {}
    fbr = [pd.fac_f.branches[j] for j in j_idx]
    gbr = [pd.fac_g.branches[l] for l in jp_idx]
    # equilateral + kind on the induced sequence
    verdict = classify_sequence(sess, fbr + gbr, pd.scale)
    if verdict[0] != "equilateral" or verdict[1] != c:
        raise SoundnessViolation("packet is not equilateral of the right diameter")
    _c, kind, special = verdict[1], verdict[2], verdict[3]
    if special is not None:
        special = ("F", j_idx[special]) if special < len(fbr) else (
            "G",
            jp_idx[special - len(fbr)],
        )
    checks["equicognate"] = kind
    # saturation (9.32.11)-(9.32.13)
    for i, b in enumerate(pd.fac_f.branches):
        if i in j_idx:
            continue
        if any(pd.contact(sess, b, x) >= c for x in fbr + gbr):
            raise SoundnessViolation("saturation fails on the F side")
    for i, b in enumerate(pd.fac_g.branches):
        if i in jp_idx:
            continue
        if any(pd.contact(sess, b, x) >= c for x in fbr + gbr):
            raise SoundnessViolation("saturation fails on the G side")
    for b in fbr:
        if _contact_with_curve(sess, pd.fac_g, b, pd.scale) != c:
            raise SoundnessViolation("noc(F_j, G) != diameter")
    for b in gbr:
        if _contact_with_curve(sess, pd.fac_f, b, pd.scale) != c:
            raise SoundnessViolation("noc(F, G_l) != diameter")
    checks["saturated"] = True
    # balance (9.32.14)-(9.32.15)
    n, m = pd.fac_f.n, pd.fac_g.n
    ints_f = [pd.int_branch_g(b) for b in fbr]
    ints_g = [pd.int_f_branch(b) for b in gbr]
    if any(not (v < 0) for v in ints_f + ints_g):
        raise SoundnessViolation("a packet branch has nonnegative intersection")
    for bi, b in enumerate(fbr):
        for li, bl in enumerate(gbr):
            lhs = ints_g[li] / ints_f[bi]
            rhs = ExtRat(Fraction(n * bl.n, m * b.n))
            if lhs != rhs:
                raise SoundnessViolation("intersection ratio is unbalanced")
    dhat_f = [b.position(c * ExtRat(pd.nu))[2] for b in fbr]
    dhat_g = [b.position(c * ExtRat(pd.nu))[2] for b in gbr]
    sum_df = sum(v.as_fraction() for v in dhat_f)
    sum_dg = sum(v.as_fraction() for v in dhat_g)
    if Fraction(sum_df, 1) * m != Fraction(sum_dg, 1) * n:
        raise SoundnessViolation("the d-hat ratio is unbalanced")
    checks["balanced"] = True
    # well-balanced (9.32.16)-(9.32.19)
    if sum(b.n for b in fbr) * m != sum(b.n for b in gbr) * n:
        raise SoundnessViolation("(9.32.16) degree ratio fails")
    if _ext_sum(ints_f) != _ext_sum(ints_g):
        raise SoundnessViolation("(9.32.17) intersection sums differ")
    nprime = ExtRat(fbr[0].n) / ints_f[0]
    mprime = ExtRat(gbr[0].n) / ints_g[0]
    for b, v in zip(fbr, ints_f):
        if ExtRat(b.n) / v != nprime:
            raise SoundnessViolation("(9.32.18) N' is not constant")
    for b, v in zip(gbr, ints_g):
        if ExtRat(b.n) / v != mprime:
            raise SoundnessViolation("(9.32.18) M' is not constant")
    if not (nprime < 0 and mprime < 0 and ExtRat(m) * nprime == ExtRat(n) * mprime):
        raise SoundnessViolation("(9.32.18) proportionality fails")
    degs = [b.n for b in fbr] + [b.n for b in gbr]
    e_max = max(degs)
    d_f = min(b.n for b in fbr)
    d_g = min(b.n for b in gbr)
    for side, dmin, side_br, idxs in (
        ("F", d_f, fbr, j_idx),
        ("G", d_g, gbr, jp_idx),
    ):
        if dmin == e_max:
            continue
        small = [i for i, b in enumerate(side_br) if b.n < e_max]
        if len(small) != 1:
            raise SoundnessViolation("(9.32.19) more than one small branch")
        s = small[0]
        if e_max % side_br[s].n != 0:
            raise SoundnessViolation("(9.32.19) divisibility N_s | E fails")
        others = [b.n for i, b in enumerate(side_br) if i != s]
        other_side = gbr if side == "F" else fbr
        if any(x != e_max for x in others) or any(b.n != e_max for b in other_side):
            raise SoundnessViolation("(9.32.19) non-special degrees differ from E")
    checks["well_balanced"] = True
    return Packet(
        j_idx=j_idx,
        jp_idx=jp_idx,
        diameter=c,
        kind=kind,
        special=special,
        ints_f=ints_f,
        ints_g=ints_g,
        dhat_f=dhat_f,
        dhat_g=dhat_g,
        nprime=nprime,
        mprime=mprime,
        e_max=e_max,
        checks=checks,
    )


def _ext_sum(vals):
    t = ExtRat(0)
    for v in vals:
        t = t + v
    return t


def packet_partition(sess, f, g):
    """The unique packet partition of the negative-intersection branches."""
    pd = PairData(sess, f, g)
    _require_pair_hypotheses(pd)
    jbar = [j for j, b in enumerate(pd.fac_f.branches) if pd.int_branch_g(b) < 0]
    jpbar = [l for l, b in enumerate(pd.fac_g.branches) if pd.int_f_branch(b) < 0]
    packets = []
    left_j = list(jbar)
    left_jp = list(jpbar)
    while left_j or left_jp:
        if left_j:
            pk = packet_at(sess, f, g, "F", left_j[0], pd=pd)
        else:
            pk = packet_at(sess, f, g, "G", left_jp[0], pd=pd)
        for j in pk.j_idx:
            if j not in jbar or j not in left_j:
                raise SoundnessViolation("packet escapes the negative index set")
            left_j.remove(j)
        for l in pk.jp_idx:
            if l not in jpbar or l not in left_jp:
                raise SoundnessViolation("packet escapes the negative index set")
            left_jp.remove(l)
        packets.append(pk)
    packets.sort(key=lambda p: (p.diameter.text(), min(p.j_idx)))
    return packets


# ---------------------------------------------------------------------------
# strict minimal intersection and its certifying polynomial


class ThetaPoly:
    """Polynomial in the two shift variables certifying generic shifts."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx, terms):
        self.ctx = ctx
        self.terms = {k: v for k, v in terms.items() if not v.is_zero()}

    def eval(self, u, v):
        acc = self.ctx.zero()
        for (a, b), c in self.terms.items():
            acc = acc + c * (u**a) * (v**b)
        return acc

    def is_zero(self):
        return not self.terms

    def text(self, uvar="U", vvar="V"):
        if not self.terms:
            return "0"
        parts = []
        for (a, b) in sorted(self.terms):
            c = self.terms[(a, b)]
            mono = "".join(
                ([uvar if a == 1 else f"{uvar}^{a}"] if a else [])
                + ([vvar if b == 1 else f"{vvar}^{b}"] if b else [])
            )
            cs = repr(c)
            parts.append(f"({cs})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def __repr__(self):
        return self.text()


def sminint(sess, f, g):
    """(value, Theta): min over constant shifts of int(F-u, G-v), plus the
    polynomial whose nonvanishing at (u,v) certifies a generic shift."""
    if int_mult(f, g) == INF:
        raise NotCoprime("sminint needs GCD(F,G) = 1")
    (fi, gi), nu = common_integer_grid(f, g)
    n, m = fi.deg_y_int(), gi.deg_y_int()
    if n <= 0 or m <= 0:
        raise HypothesisNotMet("N > 0 and M > 0")
    us = [sess.ctx.rational(i) for i in range(m + 1)]
    vs = [sess.ctx.rational(i) for i in range(n + 1)]
    grid = {}
    best = None
    for a, u in enumerate(us):
        for b, v in enumerate(vs):
            r = resultant_y(fi - u, gi - v)
            grid[(a, b)] = r
            o = r.ord()
            if best is None or o < best:
                best = o
    i_star = int(best.as_fraction())
    # interpolate Theta from the grid values of the X^i coefficient
    vals = {}
    for (a, b), r in grid.items():
        vals[(a, b)] = r.coef_exp(i_star)
    theta_terms = _bilagrange(sess.ctx, us, vs, vals)
    theta = ThetaPoly(sess.ctx, theta_terms)
    if theta.is_zero():
        raise SoundnessViolation("Theta interpolated to zero")
    return ExtRat(Fraction(i_star, nu)), theta


def _bilagrange(ctx, us, vs, vals):
    """Bivariate Lagrange interpolation on a product grid."""
    lag_u = _lagrange_basis(ctx, us)
    lag_v = _lagrange_basis(ctx, vs)
    out = {}
    for (a, b), val in vals.items():
        if val.is_zero():
            continue
        pu = lag_u[a]
        pv = lag_v[b]
        for i, cu in enumerate(pu.coeffs):
            for j, cv in enumerate(pv.coeffs):
                key = (i, j)
                add = val * cu * cv
                out[key] = out[key] + add if key in out else add
    return out


def _lagrange_basis(ctx, xs):
    out = []
    for i in range(len(xs)):
        num = Poly.const(ctx, 1)
        den = ctx.one()
        for j in range(len(xs)):
            if j == i:
                continue
            num = num * Poly(ctx, [-xs[j], ctx.one()])
            den = den * (xs[i] - xs[j])
        out.append(num * den.inv())
    return out


# ---------------------------------------------------------------------------
# the corollaries 9.33 / 9.34


def verify_first_corollary(sess, f, g, y_series):
    """Checks of the shifted-origin corollary for a supplied series y(X).

    y is given in true X units (fractional exponents welcome); the witness
    ramification nu is the lcm of the branch degrees and y's grid."""
    if f.nu != 1 or g.nu != 1:
        raise HypothesisNotMet("integer-grid curves", "ramify fractional inputs first")
    pd = PairData(sess, f, g)
    _require_pair_hypotheses(pd)
    y = y_series
    fy = pd.f.eval_series(y)
    if not (fy.ord() < 0):
        raise HypothesisNotMet("ord F(X^nu, y(X)) < 0")
    nu = y.nu
    for b in pd.fac_f.branches + pd.fac_g.branches:
        nu = nu * b.n // _gcd(nu, b.n)
    c, i_count, j_idx = _series_contact(sess, pd.fac_f, y)
    cp, ip_count, jp_idx = _series_contact(sess, pd.fac_g, y)
    notes = []
    ok = True
    if c.finite and (c.as_fraction() * nu).denominator != 1:
        ok = False
        notes.append("c*nu is not an integer")
    if c < cp:
        ok1 = ip_count == 1
        notes.append(f"(9.33.1) |I(G)| = {ip_count}: {'pass' if ok1 else 'fail'}")
        ok = ok and ok1
    elif c == cp:
        gy = pd.g.eval_series(y)
        ok2a = gy.ord() < 0
        lhs = fy.ord() / gy.ord()
        rhs = ExtRat(Fraction(pd.fac_f.n, pd.fac_g.n))
        dsum_f = _ext_sum([pd.fac_f.branches[j].position(c)[2] for j in j_idx])
        dsum_g = _ext_sum([pd.fac_g.branches[l].position(c)[2] for l in jp_idx])
        ok2b = lhs == rhs and dsum_g != 0 and dsum_f / dsum_g == rhs
        notes.append(f"(9.33.2) {'pass' if ok2a and ok2b else 'fail'}")
        ok = ok and ok2a and ok2b
        # (9.33.3) coefficient distinctness, when the hypothesis holds
        zc = [_root_coef_at(sess, pd.fac_f.branches[j], c) for j in j_idx]
        wc = [_root_coef_at(sess, pd.fac_g.branches[l], cp) for l in jp_idx]
        zvals = [x for sub in zc for x in sub]
        wvals = [x for sub in wc for x in sub]
        eps_exists = any(all(not (w - z).is_zero() for z in zvals) for w in wvals)
        if eps_exists:
            ok3 = _pairwise_distinct(zvals + wvals) and all(
                not (w - z).is_zero() for z in zvals for w in wvals
            )
            notes.append(f"(9.33.3) {'pass' if ok3 else 'fail'}")
            ok = ok and ok3
    return ok, notes, c, cp


def _series_contact(sess, fac, y):
    """(c in grid units, count of attaining roots, attaining branch indices)."""
    from .puiseux import conjugates

    best = NEG_INF
    data = []
    for b in fac.branches:
        vals = []
        for tw in conjugates(sess, b):
            nu = tw.nu * y.nu // _gcd(tw.nu, y.nu)
            d = tw.with_nu(nu) - y.with_nu(nu)
            if d.terms:
                vals.append(d.ord())
            elif d.trunc is None:
                vals.append(INF)
            else:
                from .errors import InsufficientPrecision

                raise InsufficientPrecision("contact with y undecided")
        data.append(vals)
        for v in vals:
            if v > best:
                best = v
    count = sum(
        b.mult for b, vals in zip(fac.branches, data) for v in vals if v == best
    )
    idxs = [i for i, vals in enumerate(data) if any(v == best for v in vals)]
    return best, count, idxs


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _root_coef_at(sess, b, c):
    """coef_X(z_i, c) over the conjugate roots of a branch."""
    from .puiseux import conjugates

    out = []
    for tw in conjugates(sess, b):
        out.append(tw.coef(c))
    return out


def _pairwise_distinct(vals):
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            if (vals[i] - vals[j]).is_zero():
                return False
    return True


def verify_second_corollary(sess, f, g):
    """For every G-branch with negative intersection, the (9.34) index sets
    form a balanced equilateral bisequence; checked via the packet battery."""
    pd = PairData(sess, f, g)
    _require_pair_hypotheses(pd)
    tested = 0
    for l, b in enumerate(pd.fac_g.branches):
        if pd.int_f_branch(b) < 0:
            packet_at(sess, f, g, "G", l, pd=pd)
            tested += 1
    if tested == 0:
        raise HypothesisNotMet("int(F,G_v) < 0 for some v")
    return tested
