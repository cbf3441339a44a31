"""Affine/projective dictionary: plane curves over k, their meromorphic
associates, incarnations at finite and infinite points, local intersection
data, and the delta/genus/classification layer.

A curve is a MeroPoly with nonnegative integer X-exponents.  The affine
intersection number of a pair with leading Y-coefficient in k is computed
through the meromorphic associate (int(F,G) = -int(f,g;A)); other inputs are
first made Y-monic by the shear X -> X + Y^q, which preserves every affine
intersection number.  Per-point localizations run through the Puiseux branch
machinery on the translated curve.
"""

from fractions import Fraction

from .errors import (
    HypothesisNotMet,
    NotIrreducible,
    NotPolynomialAssociate,
    NotSquarefree,
    SoundnessViolation,
    ZeroInput,
)
from .extrat import INF, ExtRat, ext_sum
from .meropoly import (
    ClearedPoly,
    MeroPoly,
    common_integer_grid,
    exact_div_mero,
    gcd_mero,
    int_mult,
    jacobian,
    squarefree_decomposition,
)
from .numfield import Poly, all_roots
from .puiseux import (
    branch_int,
    factor,
    joint_separation_bound,
    pair_int,
)
from .series import PuiseuxSeries


# ---------------------------------------------------------------------------
# the curve type and the meromorphic dictionary


def curve_terms(f):
    """{(x_exp int, y_pow int): FieldElem} over the nonzero terms."""
    out = {}
    for j in range(len(f.coeffs)):
        c = f.coeff(j)
        for e, v in c.terms.items():
            q = Fraction(e, c.nu)
            if q.denominator != 1:
                raise NotPolynomialAssociate("fractional X-exponent in a plane curve")
            out[(int(q), j)] = v
    return out


def is_plane_curve(f):
    try:
        return all(a >= 0 for a, _ in curve_terms(f))
    except NotPolynomialAssociate:
        return False


def total_degree(f):
    """deg_(X,Y): -1 for the zero curve."""
    terms = curve_terms(f)
    return max((a + b for a, b in terms), default=-1)


def x_degree(f):
    terms = curve_terms(f)
    return max((a for a, _ in terms), default=-1)


def is_y_monic_curve(f):
    """Y-monic in the total-degree sense: the degree form is c * Y^N."""
    terms = curve_terms(f)
    if not terms:
        return False
    n = max(a + b for a, b in terms)
    tops = [(a, b) for a, b in terms if a + b == n]
    return tops == [(0, n)]

def top_coefficient(f):
    """The k-coefficient of the top X-power inside the leading Y-coefficient."""
    if f.is_zero_mero():
        return f.ctx.zero()
    lc = f.lc_series()
    return lc.terms[max(lc.terms)]


def to_mero(f):
    """The meromorphic associate F(X,Y) = f(X^-1, Y)."""
    terms = curve_terms(f)
    return MeroPoly.from_terms(f.ctx, {(-a, b): v for (a, b), v in terms.items()})


def to_poly(F):
    """The polynomial associate; every X-exponent of F must be <= 0."""
    out = {}
    for j in range(len(F.coeffs)):
        c = F.coeff(j)
        for e, v in c.terms.items():
            q = Fraction(e, c.nu)
            if q.denominator != 1 or q > 0:
                raise NotPolynomialAssociate("positive or fractional X-exponent")
            out[(-int(q), j)] = v
    return MeroPoly.from_terms(F.ctx, out)


def curve_from_terms(ctx, terms):
    return MeroPoly.from_terms(ctx, {(a, b): v for (a, b), v in terms.items()})


def substitute_xy(f, x_image_terms, y_image_terms):
    """Substitute X and Y by polynomial images given as term dicts."""
    ximg = MeroPoly.from_terms(f.ctx, x_image_terms)
    yimg = MeroPoly.from_terms(f.ctx, y_image_terms)
    acc = MeroPoly.zero(f.ctx)
    terms = curve_terms(f)
    xpows = {0: MeroPoly.from_terms(f.ctx, {(0, 0): 1})}
    ypows = {0: MeroPoly.from_terms(f.ctx, {(0, 0): 1})}

    def pw(cache, base, k):
        if k not in cache:
            cache[k] = pw(cache, base, k - 1) * base
        return cache[k]

    for (a, b), v in sorted(terms.items()):
        acc = acc + pw(xpows, ximg, a) * pw(ypows, yimg, b) * v
    return acc


def monicize(fs, q=None):
    """The shear sigma(X) = X + Y^q, sigma(Y) = Y making every curve Y-monic.

    q defaults to (total degree of the product) + 1.  Returns (q, images);
    q = 0 encodes the identity (product already in k[Y])."""
    prod = None
    for f in fs:
        if f.is_zero_mero():
            raise ZeroInput("monicize needs nonzero curves")
        prod = f if prod is None else prod * f
    if x_degree(prod) <= 0:
        return 0, list(fs)
    if q is None:
        q = total_degree(prod) + 1
    images = [
        substitute_xy(f, {(1, 0): 1, (0, q): 1}, {(0, 1): 1}) for f in fs
    ]
    for img in images:
        if not is_y_monic_curve(img):
            raise SoundnessViolation("shear failed to produce a Y-monic curve")
    return q, images


def unmonicize(f, q):
    """Inverse shear X -> X - Y^q."""
    if q == 0:
        return f
    return substitute_xy(f, {(1, 0): 1, (0, q): -1}, {(0, 1): 1})


# ---------------------------------------------------------------------------
# incarnations


class Incarnation:
    """Local Weierstrass data of a curve at a point.

    f(X+u, Y+v) = unit * X^a * D(X,Y) with D monic in Y of degree b whose
    roots all have positive order; the incarnation is X^a * D.  `branches`
    lists D's branches (of the translated curve), each with positive-order
    root."""

    __slots__ = ("point", "a", "b", "branches", "translated", "sep_bound")

    def __init__(self, point, a, b, branches, translated, sep_bound):
        self.point = point
        self.a = a
        self.b = b
        self.branches = branches
        self.translated = translated
        self.sep_bound = sep_bound

    @property
    def chi(self):
        """Branch number of the incarnation as an element of k((X))[Y]."""
        return sum(br.mult for br in self.branches)

    def on_curve(self):
        return self.a > 0 or self.b > 0

    def is_unit(self):
        return not self.on_curve()


def x_content(f):
    """Largest a with X^a dividing the curve."""
    a = None
    for j in range(len(f.coeffs)):
        c = f.coeff(j)
        if c.terms:
            lo = min(c.terms) // c.nu
            a = lo if a is None else min(a, lo)
    return int(a or 0)


def local_data(sess, ft, need=0):
    """Incarnation data of a translated curve at the origin."""
    if ft.is_zero_mero():
        raise ZeroInput("incarnation of the zero curve")
    a = x_content(ft)
    if a:
        phi = ft.map_coeffs(lambda c: c.shift_exp(-a * c.nu))
    else:
        phi = ft
    if phi.deg_y_int() == 0:
        return Incarnation(None, a, 0, [], ft, Fraction(0))
    fac = factor(sess, phi, need=need)
    pos = []
    b = 0
    for br in fac.branches:
        o = br.z.ord() if br.z.terms or br.z.is_exact() else br.z.ord()
        if o > 0:
            pos.append(br)
            b += br.n * br.mult
    return Incarnation(None, a, b, pos, ft, fac.sep_bound)


def delta_local(sess, inc):
    """Conductor length of the incarnation (branch route).

    delta(X^a * D) = delta(D) + a*b; repeated branches make it infinite."""
    if any(br.mult > 1 for br in inc.branches) or inc.a > 1:
        return INF
    total2 = ExtRat(0)
    for br in inc.branches:
        m_seq, d_seq, h, _, _ = br.char_data()
        for i in range(1, h + 1):
            total2 = total2 + (m_seq[i] - ExtRat(1)) * (d_seq[i] - d_seq[i + 1])
    for i in range(len(inc.branches)):
        for j in range(i + 1, len(inc.branches)):
            total2 = total2 + ExtRat(2) * pair_int(
                sess, inc.branches[i], inc.branches[j], inc.sep_bound
            )
    half = total2 / 2 + ExtRat(inc.a * inc.b)
    if half.finite and half.as_fraction().denominator != 1:
        raise SoundnessViolation("local delta is not an integer")
    return half


def local_int(sess, ft, gt):
    """int(f,g;Q) for curves translated so that Q is the origin."""
    inc_f = local_data(sess, ft)
    a_g = x_content(gt)
    if inc_f.a and a_g:
        return INF
    g_strip = gt.map_coeffs(lambda c: c.shift_exp(-a_g * c.nu)) if a_g else gt
    b_g = _weierstrass_degree(g_strip)
    total = ExtRat(inc_f.a * b_g + a_g * inc_f.b)
    if inc_f.branches:
        com = _local_common_bound(ft, gt)
        for br in inc_f.branches:
            v = branch_int(br, g_strip, com_bound=com)
            if v == INF:
                return INF
            total = total + ExtRat(br.mult) * (v - ExtRat(br.n * a_g))
    return total


def _weierstrass_degree(g):
    """Number of roots with positive order (polygon only, no expansion)."""
    if g.is_zero_mero() or g.deg_y_int() == 0:
        return 0
    pts = []
    for j in range(len(g.coeffs)):
        c = g.coeff(j)
        if c.terms:
            pts.append((j, Fraction(min(c.terms), c.nu)))
    s = pts[0][0]
    count = s
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
        if Fraction(q2 - q1, j1 - j2) > 0:
            count += j1 - j2
    return count


def _local_common_bound(ft, gt):
    try:
        return Fraction(joint_separation_bound([ft, gt])) * max(
            gt.deg_y_int() if not gt.is_zero_mero() else 1, 1
        ) + abs(Fraction(x_degree(gt) + 1)) + 1
    except SoundnessViolation:
        return None


# ---------------------------------------------------------------------------
# common points


def common_points(sess, f, g):
    """All common zeros of two coprime curves, with field extensions.

    Returns a list of (u, v) FieldElem pairs in the session context."""
    if f.is_zero_mero() or g.is_zero_mero():
        raise ZeroInput("common points of a zero curve")
    if f.deg_y_int() == 0 and g.deg_y_int() == 0:
        fu = _content_poly(f)
        gu = _content_poly(g)
        h = fu.gcd(gu)
        return [(u, None) for u, _m in all_roots(sess, h)]
    if f.deg_y_int() == 0:
        f, g = g, f
    pts = []
    if g.deg_y_int() == 0:
        # g = g(X): points on the vertical lines over roots of g
        for u, _m in all_roots(sess, _content_poly(g)):
            fu = _eval_x(f, u)
            if fu.is_zero_poly():
                raise SoundnessViolation("common vertical component")
            for v, _mv in all_roots(sess, fu):
                pts.append((u, v))
        return pts
    res = resultant_in_x(f, g)
    if res.is_zero_poly():
        raise SoundnessViolation("curves share a component")
    for u, _m in all_roots(sess, res):
        fu = _eval_x(f, u)
        gu = _eval_x(g, u)
        if fu.is_zero_poly() and gu.is_zero_poly():
            raise SoundnessViolation("common vertical component")
        if fu.is_zero_poly():
            h = gu
        elif gu.is_zero_poly():
            h = fu
        else:
            h = fu.gcd(gu)
        if h.degree() < 1:
            continue
        for v, _mv in all_roots(sess, h):
            pts.append((u, v))
    return pts


def resultant_in_x(f, g):
    """Res_Y(f,g) as a Poly in X (curves with polynomial coefficients)."""
    from .meropoly import resultant_y

    r = resultant_y(f, g)
    if r.is_zero_certified():
        return Poly.zero(f.ctx)
    top = max(r.terms)
    if min(r.terms) < 0:
        raise SoundnessViolation("curve resultant has a pole")
    cs = [r.ctx.zero()] * (top // r.nu + 1)
    for e, v in r.terms.items():
        cs[e // r.nu] = v
    return Poly(r.ctx, cs)


def _content_poly(f):
    """A deg_Y = 0 curve as a Poly in X."""
    c = f.coeff(0)
    if not c.terms:
        return Poly.zero(f.ctx)
    top = max(c.terms) // c.nu
    cs = [f.ctx.zero()] * (top + 1)
    for e, v in c.terms.items():
        cs[e // c.nu] = v
    return Poly(f.ctx, cs)


def _eval_x(f, u):
    """f(u, Y) as a Poly in Y."""
    out = []
    for j in range(len(f.coeffs)):
        c = f.coeff(j)
        acc = f.ctx.zero()
        for e, v in c.terms.items():
            acc = acc + v * (u ** (e // c.nu))
        out.append(acc)
    return Poly(f.ctx, out)


def translate(f, u, v):
    """f(X+u, Y+v)."""
    g = f.shift_y(v) if v is not None else f
    if u is None:
        return g
    # shift X by u: substitute on the polynomial view
    terms = curve_terms(g)
    ctx = g.ctx
    out = {}
    # binomial expansion per X power
    from math import comb

    upow = {0: ctx.one()}
    for (a, b), val in terms.items():
        for i in range(a + 1):
            if i not in upow:
                upow[i] = upow[i - 1] * u
            key = (a - i, b)
            add = val * comb(a, i) * upow[i]
            out[key] = out[key] + add if key in out else add
    return MeroPoly.from_terms(ctx, out)


def affine_gcd_trivial(f, g):
    """No common component in k[X,Y] (vertical lines included)."""
    if f.is_zero_mero() or g.is_zero_mero():
        return (not f.is_zero_mero() and f.deg_y_int() == 0 and x_degree(f) == 0) or (
            not g.is_zero_mero() and g.deg_y_int() == 0 and x_degree(g) == 0
        )
    if f.deg_y_int() > 0 and g.deg_y_int() > 0 and gcd_mero(f, g).deg_y_int() > 0:
        return False
    cf = _x_content_poly(f)
    cg = _x_content_poly(g)
    return cf.gcd(cg).degree() <= 0


def _x_content_poly(f):
    """gcd of the Y-coefficients, as a Poly in X (detects vertical lines)."""
    acc = None
    for j in range(len(f.coeffs)):
        c = f.coeff(j)
        if not c.terms:
            continue
        p = Poly(f.ctx, [c.coef_exp(e * c.nu) for e in range(max(c.terms) // c.nu + 1)])
        acc = p if acc is None else acc.gcd(p)
        if acc.degree() == 0:
            break
    return acc if acc is not None else Poly.zero(f.ctx)


# ---------------------------------------------------------------------------
# affine and projective intersection multiplicity


def int_affine(sess, f, g, per_point=False):
    """int(f,g;A), via the meromorphic dictionary (shearing first when the
    leading Y-coefficient is not constant); optional per-point breakdown."""
    if f.is_zero_mero() or g.is_zero_mero():
        nz = g if f.is_zero_mero() else f
        if nz.is_zero_mero():
            return (INF, []) if per_point else INF
        val = ExtRat(0) if (nz.deg_y_int() == 0 and x_degree(nz) == 0) else INF
        return (val, []) if per_point else val
    if not affine_gcd_trivial(f, g):
        return (INF, []) if per_point else INF
    total = _int_affine_total(sess, f, g)
    if not per_point:
        return total
    pts = common_points(sess, f, g)
    breakdown = []
    acc = ExtRat(0)
    for u, v in pts:
        ft = translate(f, u, v)
        gt = translate(g, u, v)
        li = local_int(sess, ft, gt)
        breakdown.append(((u, v), li))
        acc = acc + li
    if acc != total:
        raise SoundnessViolation(
            f"per-point intersection sum {acc} disagrees with the total {total}"
        )
    return total, breakdown


def _int_affine_total(sess, f, g):
    if f.deg_y_int() == 0 and g.deg_y_int() == 0:
        # two curves without Y: no common points unless shared roots (gcd)
        return ExtRat(0)
    if _is_k_lc(f) or _is_k_lc(g):
        a, b = (f, g) if _is_k_lc(f) else (g, f)
        val = int_mult(to_mero(a), to_mero(b))
        return -val
    _q, (fm, gm) = monicize([f, g])
    val = int_mult(to_mero(fm), to_mero(gm))
    return -val


def _is_k_lc(f):
    """Leading Y-coefficient a nonzero constant (enough for the dictionary)."""
    if f.is_zero_mero() or f.deg_y_int() == 0:
        return False
    return f.is_k_monic()


def points_at_infinity(sess, f):
    """Points of f on the line at infinity: list of ('finite', b) and/or
    ('updir',) for the vertical direction [0:1:0]."""
    n = total_degree(f)
    terms = curve_terms(f)
    form = {b: v for (a, b), v in terms.items() if a + b == n}
    # f^(N)(1, Y) as a Poly
    top = max(form)
    phi = Poly(f.ctx, [form.get(j, f.ctx.zero()) for j in range(top + 1)])
    pts = []
    for b, _m in all_roots(sess, phi):
        pts.append(("finite", b))
    if top < n:
        pts.append(("updir", None))
    return pts


def incarnation_at_infinity(f, point):
    """The dehomogenized, translated curve whose origin is the given
    infinite point; feed the result to local_data."""
    n = total_degree(f)
    terms = curve_terms(f)
    kind = point[0]
    out = {}
    if kind == "finite":
        # f_h(1, Y, X): (a,b) -> X^(n-a-b) Y^b, then Y -> Y + b0
        for (a, b), v in terms.items():
            key = (n - a - b, b)
            out[key] = out[key] + v if key in out else v
        g = MeroPoly.from_terms(f.ctx, out)
        b0 = point[1]
        if b0 is not None and not (not isinstance(b0, int) and b0.is_zero()):
            g = g.shift_y(b0)
        elif b0 is not None and isinstance(b0, int) and b0 != 0:
            g = g.shift_y(b0)
        return g
    # the [0:1:0] direction: f_h(X, 1, Y)
    for (a, b), v in terms.items():
        key = (a, n - a - b)
        out[key] = out[key] + v if key in out else v
    return MeroPoly.from_terms(f.ctx, out)


def incarnation(sess, f, point, need=0):
    """Incarnation of f at a point: ('affine', u, v), ('finite', b), or
    ('updir', None)."""
    if point[0] == "affine":
        ft = translate(f, point[1], point[2])
    else:
        ft = incarnation_at_infinity(f, point)
    inc = local_data(sess, ft, need=need)
    inc_point = point
    return Incarnation(inc_point, inc.a, inc.b, inc.branches, inc.translated, inc.sep_bound)


def int_projective(sess, f, g):
    """int(f,g;P) = affine total plus the contributions on the infinite line."""
    if f.is_zero_mero() or g.is_zero_mero():
        nz = g if f.is_zero_mero() else f
        if nz.is_zero_mero():
            return INF
        return ExtRat(0) if (nz.deg_y_int() == 0 and x_degree(nz) == 0) else INF
    if not affine_gcd_trivial(f, g):
        return INF
    total = _int_affine_total(sess, f, g)
    fpts = points_at_infinity(sess, f)
    for pt in fpts:
        ft = incarnation_at_infinity(f, pt)
        gt = incarnation_at_infinity(g, pt)
        inc_g = local_data(sess, gt)
        if not inc_g.on_curve():
            continue
        total = total + local_int(sess, ft, gt)
    return total
