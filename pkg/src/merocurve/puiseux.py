"""Newton-Puiseux expansion and branch-level invariants.

`factor` decomposes F into its leading coefficient and a list of branches,
each an irreducible monic factor represented by one symbolic Puiseux root
(true X units, ramification n = branch degree).  The n grid conjugates of
the stored root are implicit; constant-field conjugation is handled by the
dynamic-evaluation contexts, so within one terminal context every branch
object stands for exactly one irreducible factor.

Along a polygon side of slope p/q the side polynomial is a polynomial in
Y^q; the expansion adjoins one root gamma of that deflated polynomial and
one q-th root of gamma, then recurses on the shifted curve.  Each path is
pushed until the roots it follows are separated and certified past every
characteristic exponent, plus a caller-chosen slack; this makes branch
ramification, characteristic exponents and pairwise contacts exact.
"""

from fractions import Fraction
from math import gcd as _igcd

from .errors import (
    CapacityExceeded,
    InsufficientPrecision,
    NonpositiveDegree,
    SoundnessViolation,
    ZeroInput,
)
from .extrat import INF, NEG_INF, ExtRat, ext_max, ext_sum
from .meropoly import (
    MeroPoly,
    gcd_mero,
    int_mult,
    squarefree_decomposition,
)
from .numfield import Poly
from .series import PuiseuxSeries


def _lcm(a, b):
    return a * b // _igcd(a, b)


class Branch:
    """One irreducible monic factor of F, via a certified symbolic root."""

    __slots__ = ("z", "n", "mult", "_char")

    def __init__(self, z, n, mult):
        self.z = z  # PuiseuxSeries, nu == n, true X units
        self.n = n  # deg_Y of the factor = ramification
        self.mult = mult
        self._char = None

    def __repr__(self):
        return f"Branch(n={self.n}, mult={self.mult}, z={self.z})"

    def char_data(self):
        """Newtonian characteristic exponents: (m_seq, d_seq, h, m_hat, d_hat).

        m_seq = (m_0 .. m_{h+1}) with m_0 = n and m_{h+1} = +inf;
        d_seq = (d_0 .. d_{h+1}) with d_0 = 0, d_1 = n, d_{h+1} = 1.
        Degree-one branches have h = 0 and m_hat = -inf.
        """
        if self._char is not None:
            return self._char
        n = self.n
        supp = sorted(self.z.terms)
        m_seq = [ExtRat(n)]
        d_seq = [ExtRat(0), ExtRat(n)]
        d = n
        if d > 1:
            # the newtonian sequence starts with the order itself
            m1 = supp[0]
            m_seq.append(ExtRat(m1))
            d = _igcd(d, m1)
            d_seq.append(ExtRat(d))
            while d > 1:
                nxt = None
                for e in supp:
                    if e % d != 0:
                        nxt = e
                        break
                if nxt is None:
                    raise SoundnessViolation("characteristic chain did not terminate")
                m_seq.append(ExtRat(nxt))
                d = _igcd(d, nxt)
                d_seq.append(ExtRat(d))
        h = len(m_seq) - 1
        m_seq.append(INF)
        m_hat = m_seq[h] if h > 0 else NEG_INF
        d_hat = d_seq[h]
        self._char = (tuple(m_seq), tuple(d_seq), h, m_hat, d_hat)
        return self._char

    @property
    def h(self):
        return self.char_data()[2]

    @property
    def m_hat(self):
        return self.char_data()[3]

    @property
    def d_hat(self):
        return self.char_data()[4]

    def m_hat_over_n(self):
        return self.m_hat / ExtRat(self.n)

    def position(self, c):
        """(p(f,c), m_hat(f,c), d_hat(f,c)) for a rational or infinite c."""
        m_seq, d_seq, h, _, _ = self.char_data()
        c = ExtRat.of(c)
        p = 0
        for i in range(1, h + 1):
            if m_seq[i] / ExtRat(self.n) < c:
                p = i
            else:
                break
        m_c = m_seq[p + 1]
        d_c = d_seq[p + 1] if p + 1 < len(d_seq) else ExtRat(1)
        return p, m_c, d_c

    def truncated_root(self, c):
        """The root with every term at exponent >= c removed (exact)."""
        cf = ExtRat.of(c)
        keep = {}
        for e, v in self.z.terms.items():
            if cf.finite and Fraction(e, self.n) >= cf.as_fraction():
                continue
            keep[e] = v
        return PuiseuxSeries(self.z.ctx, self.z.nu, keep)

    def truncation(self, sess, c):
        """The c-normalized truncation of the branch.

        Returns (t as MeroPoly, degree, d_hat(f,c)): the minimal monic
        polynomial of the root truncated below c, of degree n/d_hat(f,c)."""
        _, _, d_c = self.position(c)
        deg = self.n // d_c.as_int()
        cut = self.truncated_root(c)
        if deg == 1 or self.n == 1:
            lin = MeroPoly(cut.ctx, (-cut, PuiseuxSeries.one(cut.ctx, cut.nu)))
            return lin, deg, d_c
        zeta = sess.root_of_unity(self.n)
        seen = []
        for j in range(self.n):
            tw = cut.twist(zeta**j, self.n)
            if not any(tw.eq_exact(s) for s in seen):
                seen.append(tw)
        if len(seen) != deg:
            raise SoundnessViolation("truncation degree mismatch")
        acc = None
        for s in seen:
            lin = MeroPoly(s.ctx, (-s, PuiseuxSeries.one(s.ctx, s.nu)))
            acc = lin if acc is None else acc * lin
        return acc, deg, d_c

    def to_poly(self, sess):
        """The monic factor as a MeroPoly (product over grid conjugates)."""
        z = self.z
        if self.n == 1:
            return MeroPoly(z.ctx, (-z, PuiseuxSeries.one(z.ctx, z.nu)))
        zeta = sess.root_of_unity(self.n)
        acc = None
        for j in range(self.n):
            tw = z.twist(zeta**j, self.n)
            lin = MeroPoly(z.ctx, (-tw, PuiseuxSeries.one(z.ctx, z.nu)))
            acc = lin if acc is None else acc * lin
        return acc


def _ceil_frac(q):
    q = Fraction(q)
    return -((-q.numerator) // q.denominator)


class Factorization:
    """F = F0 * prod branches^mult, per terminal field context."""

    __slots__ = ("f0", "branches", "n", "sep_bound", "source")

    def __init__(self, f0, branches, n, sep_bound, source):
        self.f0 = f0
        self.branches = branches
        self.n = n
        self.sep_bound = sep_bound
        self.source = source

    @property
    def chi(self):
        return sum(b.mult for b in self.branches)

    def distinct(self):
        return list(self.branches)

    def reconstruct(self, sess):
        """F0 * prod F_j^mult, exact when every root is exact."""
        acc = MeroPoly.const_series(self.f0)
        for b in self.branches:
            acc = acc * (b.to_poly(sess) ** b.mult)
        return acc


# ---------------------------------------------------------------------------
# the expansion proper


def _positive_sides(w):
    """Sides of w's polygon with strictly positive slope, plus the inf side.

    Returns (finite_sides, inf_mult) where finite_sides is a list of
    (slope Fraction, side polynomial Poly)."""
    out = []
    pts = []
    for j in range(len(w.coeffs)):
        c = w.coeff(j)
        if c.terms:
            pts.append((j, Fraction(min(c.terms), c.nu)))
        elif not c.is_exact():
            c.ord()
    if not pts:
        raise ZeroInput("expansion of the zero polynomial")
    s = pts[0][0]
    hull = []
    for j, q in sorted(pts, key=lambda t: -t[0]):
        while len(hull) >= 2:
            (j1, q1), (j2, q2) = hull[-2], hull[-1]
            if (q2 - q1) * (j1 - j) >= (q - q1) * (j1 - j2):
                hull.pop()
            else:
                break
        hull.append((j, q))
    for (j1, q1), (j2, q2) in zip(hull, hull[1:]):
        slope = Fraction(q2 - q1, j1 - j2)
        out.append(slope)
    return out, s, hull


def _side_poly(w, slope):
    """Side polynomial of w at a finite slope, in the field coefficients."""
    best = None
    for j in range(len(w.coeffs)):
        col = w.coeff(j)
        for e in col.terms:
            v = Fraction(e, col.nu) + slope * j
            if best is None or v < best:
                best = v
    coeffs = {}
    for j in range(len(w.coeffs)):
        col = w.coeff(j)
        for e, cf in col.terms.items():
            if Fraction(e, col.nu) + slope * j == best:
                coeffs[j] = coeffs.get(j, w.ctx.zero()) + cf
    top = max(coeffs)
    return Poly(w.ctx, [coeffs.get(j, w.ctx.zero()) for j in range(top + 1)])


def _normalize_x(w):
    """Divide out the X-content so the minimal coefficient order is zero."""
    o = w.ord_x()
    if not o.finite or o == 0:
        return w
    shift = -int(o.as_fraction() * w.nu)
    return w.map_coeffs(lambda c: c.shift_exp(shift))


def expand_leaves(sess, f, target):
    """Symbolic root leaves of f, each certified below X^target.

    Returns a list of (prefix_terms {Fraction exp: coeff}, n_acc, exact).
    Multiplicity handling is the caller's job (f should be squarefree)."""
    n0 = f.nu
    # reinterpret the (1/n0) grid as an integer grid
    w0 = MeroPoly(f.ctx, [PuiseuxSeries(c.ctx, 1, dict(c.terms), c.trunc, checked=True) for c in f.coeffs], 1)
    leaves = []
    stack = [({}, Fraction(0), n0, w0, True)]
    guard = 0
    while stack:
        prefix, base, n_acc, w, first = stack.pop()
        guard += 1
        if guard > 4000:
            raise CapacityExceeded("expansion exceeded its step budget")
        w = _normalize_x(w)
        slopes, s, _hull = _positive_sides(w)
        if s > 0:
            # s roots equal to the prefix exactly
            leaves.append((dict(prefix), n_acc, True, s))
        for slope in slopes:
            if not first and slope <= 0:
                continue
            true_exp = base + slope / n_acc
            if true_exp >= Fraction(target):
                # certified to the target; stop refining this direction
                leaves.append((dict(prefix), n_acc, False, _slope_root_count(w, slope)))
                continue
            p = _side_poly(w, slope)
            q = slope.denominator
            pnum = slope.numerator
            # the side polynomial is a polynomial in Y^q
            low = p.ord_y()
            deflated = [p.coeff(low + t * q) for t in range((p.degree() - low) // q + 1)]
            r_poly = Poly(w.ctx, deflated)
            gammas = _all_roots_nonzero(sess, r_poly)
            for gamma, m_g in gammas:
                theta = _qth_root(sess, gamma, q)
                w2 = w.ramify_x(q).scale_y_xexp(pnum).shift_y(theta)
                new_prefix = dict(prefix)
                new_prefix[true_exp] = theta
                stack.append((new_prefix, true_exp, n_acc * q, w2, False))
    return leaves


def _slope_root_count(w, slope):
    p = _side_poly(w, slope)
    return p.degree() - p.ord_y()


def _all_roots_nonzero(sess, p):
    """Nonzero roots of p with multiplicities, via session adjunction."""
    out = []
    low = p.ord_y()
    if low:
        p = Poly(p.ctx, p.coeffs[low:])
    rad = p.squarefree_radical()
    roots = []
    while rad.degree() >= 1:
        theta = sess.adjoin(rad)
        roots.append(theta)
        rad = Poly(sess.ctx, rad.coeffs).exact_div(Poly(sess.ctx, [-theta, 1]))
    rem = Poly(sess.ctx, p.coeffs)
    for theta in roots:
        m = rem.root_multiplicity(theta)
        out.append((theta, m))
        lin = Poly(sess.ctx, [-theta, 1])
        for _ in range(m):
            rem = rem.exact_div(lin)
    return out


def _qth_root(sess, gamma, q):
    """One q-th root of a nonzero field element."""
    if q == 1:
        return gamma
    ctx = sess.ctx
    g = ctx.convert(gamma) if gamma.ctx is not ctx else gamma
    coeffs = [-g] + [ctx.zero()] * (q - 1) + [ctx.one()]
    return sess.adjoin(Poly(ctx, coeffs))


def separation_bound(parts):
    """A rational bound exceeding every pairwise root contact.

    `parts` is a list of squarefree, pairwise coprime MeroPoly factors (the
    Yun pieces of one or several curves)."""
    total = ExtRat(0)
    npairs = 0
    omin = ExtRat(0)
    for s in parts:
        d = s.deg_y_int()
        if d == 0:
            continue
        lo = _lowest_order(s)
        if lo < omin:
            omin = lo
        if d >= 2:
            v = int_mult(s, s.derivative_y())
            if v == INF:
                raise SoundnessViolation("squarefree part is not squarefree")
            total = total + v - ExtRat(2 * d - 1) * s.lc_series().ord()
            npairs += d * (d - 1)
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            a, b = parts[i], parts[j]
            da, db = a.deg_y_int(), b.deg_y_int()
            if da == 0 or db == 0:
                continue
            v = int_mult(a, b)
            if v == INF:
                raise SoundnessViolation("parts are not coprime")
            total = total + v - ExtRat(db) * a.lc_series().ord() - ExtRat(da) * b.lc_series().ord()
            npairs += da * db
    if npairs == 0:
        return Fraction(1)
    worst = total - ExtRat(npairs - 1) * omin
    if not worst.finite:
        raise SoundnessViolation("contact bound is infinite")
    return worst.as_fraction() + 1


def _lowest_order(s):
    """Lower bound for the orders of s's roots (lowest polygon slope)."""
    pts = []
    for j in range(len(s.coeffs)):
        c = s.coeff(j)
        if c.terms:
            pts.append((j, Fraction(min(c.terms), c.nu)))
    lo = ExtRat(0)
    for (j1, q1) in pts:
        for (j2, q2) in pts:
            if j1 > j2:
                sl = ExtRat(Fraction(q2 - q1, j1 - j2))
                if sl < lo:
                    lo = sl
    return lo


def joint_separation_bound(curves):
    """Bound exceeding every contact between distinct roots across `curves`.

    Shared branches between two curves are fine: equal-root pairs carry no
    contact, and the nearby distinct roots are covered through the gcd
    splitting below."""
    parts = []
    for c in curves:
        if c is None or c.is_zero_mero() or c.deg_y_int() == 0:
            continue
        parts.extend(p for p, _ in squarefree_decomposition(c)[1])
    bound = Fraction(1)
    for p in parts:
        bound = max(bound, separation_bound([p]))
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            a, b = parts[i], parts[j]
            g = gcd_mero(a, b)
            if g.deg_y_int() > 0:
                from .meropoly import exact_div_mero

                sub = [g]
                aa = exact_div_mero(a, g)
                bb = exact_div_mero(b, g)
                for u, v in ((g, bb), (aa, bb), (aa, g)):
                    if u.deg_y_int() > 0 and v.deg_y_int() > 0:
                        bound = max(bound, separation_bound([u, v]))
                if g.deg_y_int() >= 2:
                    bound = max(bound, separation_bound([g]))
            else:
                bound = max(bound, separation_bound([a, b]))
    return bound


def factor(sess, f, need=0, lower_bound=None):
    """Branch factorization of a nonzero F, certified past separation.

    `need` adds extra certified X-order beyond the automatic bound (callers
    escalate through the session when downstream evaluations run dry);
    `lower_bound` forces at least that much certified order, e.g. a joint
    separation bound shared with another curve."""
    if f.is_zero_mero():
        raise ZeroInput("factorization of the zero polynomial")
    if f.nu != 1:
        raise ValueError("factor needs an integer-grid curve; ramify first")
    n = f.deg_y_int()
    f0 = f.lc_series()
    if n == 0:
        return Factorization(f0, [], 0, Fraction(0), f)
    _, parts = squarefree_decomposition(f)
    bound = separation_bound([p for p, _ in parts])
    if lower_bound is not None:
        bound = max(bound, Fraction(lower_bound))
    target = Fraction(bound) + sess.extra + need
    branches = []
    for part, mult in parts:
        for prefix, n_acc, exact, cnt in expand_leaves(sess, part, target):
            grid = 1
            for e in prefix:
                grid = _lcm(grid, e.denominator)
            terms = {int(e * grid): c for e, c in prefix.items()}
            trunc = None if exact else _ceil_frac(target * grid)
            z = PuiseuxSeries(sess.ctx, grid, terms, trunc)
            if cnt != 1 and not exact:
                raise SoundnessViolation("unseparated non-exact leaf")
            for _ in range(cnt):
                branches.append(Branch(z, grid, mult))
    got = sum(b.n * b.mult for b in branches)
    if got != n:
        raise SoundnessViolation(f"branch degrees sum to {got}, expected {n}")
    branches.sort(key=lambda b: (b.n, sorted(b.z.terms) or [0]))
    return Factorization(f0, branches, n, Fraction(bound), f)


# ---------------------------------------------------------------------------
# branch-level evaluations and contacts


def branch_eval(b, g):
    """g(X, z) along the branch root."""
    return g.eval_series(b.z)


def branch_int(b, g, f_source=None, com_bound=None):
    """int(F_j, G) = n * ord g(X, z); +inf when the branch divides g."""
    v = branch_eval(b, g)
    if v.terms:
        return ExtRat(b.n) * v.ord()
    if v.is_exact():
        return INF
    if com_bound is not None and v.trunc is not None and Fraction(v.trunc, v.nu) > com_bound:
        return INF
    raise InsufficientPrecision("branch evaluation vanished below its certification")


def common_value_bound(f, g):
    """Bound B: ord g(X,z) <= B for every branch z of f not dividing g."""
    b = separation_bound([p for p, _ in squarefree_decomposition(f)[1]] +
                         [p for p, _ in squarefree_decomposition(g)[1]])
    m = g.deg_y_int() if not g.is_zero_mero() else 0
    lc_ord = g.lc_series().ord() if not g.is_zero_mero() else ExtRat(0)
    extra = lc_ord.as_fraction() if lc_ord.finite else 0
    return Fraction(b) * max(m, 1) + abs(extra) + 1


def residue(b, g, com_bound=None):
    """res(F_j, G): the unique constant lambda with int(F_j, G - lambda) > 0,
    or +inf when int(F_j, G) < 0."""
    v = branch_eval(b, g)
    if v.terms:
        o = v.ord()
        if o < 0:
            return None  # infinity marker
        return v.coef(ExtRat(0))
    if v.is_exact():
        return v.ctx.zero()
    if com_bound is not None and v.trunc is not None and Fraction(v.trunc, v.nu) > com_bound:
        return v.ctx.zero()
    raise InsufficientPrecision("residue needs more certified terms")


def conjugates(sess, b):
    """The n grid conjugates of the branch root (includes the root itself)."""
    if b.n == 1:
        return [b.z]
    zeta = sess.root_of_unity(b.n)
    return [b.z.twist(zeta**j, b.n) for j in range(b.n)]


def pair_contact_orders(sess, b1, b2, same=False):
    """Orders ord(z1 - tw_j(z2)) over the grid conjugates of b2.

    With same=True (b1 is b2) the identity conjugate is skipped."""
    out = []
    twists = conjugates(sess, b2)
    for j, w in enumerate(twists):
        if same and j == 0:
            continue
        nu = _lcm(b1.z.nu, w.nu)
        d = b1.z.with_nu(nu) - w.with_nu(nu)
        if d.terms:
            out.append(d.ord())
        elif d.trunc is None:
            out.append(INF)
        else:
            out.append(None)  # undecided at this precision
    return out


def pair_int(sess, b1, b2, sep_bound):
    """int(F_j, G_l) between distinct branch objects (per single copies)."""
    vals = pair_contact_orders(sess, b1, b2)
    total = ExtRat(0)
    for v in vals:
        if v is None:
            raise InsufficientPrecision("contact undecided; escalate precision")
        total = total + v
    return ExtRat(b1.n) * total


def self_derivative_int(sess, b):
    """int(F_j, (F_j)_Y) from the conjugate contacts."""
    if b.n == 1:
        return ExtRat(0)
    vals = pair_contact_orders(sess, b, b, same=True)
    total = ExtRat(0)
    for v in vals:
        if v is None:
            raise InsufficientPrecision("self-contact undecided; escalate precision")
        total = total + v
    return ExtRat(b.n) * total


def contact(sess, b1, b2, sep_bound, same=False):
    """noc between two branch objects: max contact order, +inf if equal."""
    vals = pair_contact_orders(sess, b1, b2, same=same)
    best = NEG_INF
    for v in vals:
        if v is None:
            # zero to certified precision: equal iff past the separation bound
            return INF
        if v > best:
            best = v
    return best


def noc(sess, ff, fg):
    """Normalized contact of two factorizations (of F and G)."""
    if ff.n <= 0 or fg.n <= 0:
        return NEG_INF
    best = NEG_INF
    for b1 in ff.branches:
        for b2 in fg.branches:
            c = contact(sess, b1, b2, None)
            if c > best:
                best = c
    return best


def rnoc(sess, ff, fg):
    """Restricted normalized contact: equal root pairs are excluded."""
    if ff.n <= 0 or fg.n <= 0:
        return NEG_INF
    best = NEG_INF
    for b1 in ff.branches:
        for b2 in fg.branches:
            c = contact(sess, b1, b2, None)
            if c == INF:
                # the same factor on both sides: cross-conjugate contacts
                if b1.n > 1:
                    c = ext_max(
                        v for v in pair_contact_orders(sess, b1, b1, same=True) if v is not None
                    )
                else:
                    continue
            if c > best:
                best = c
    return best
