"""Polynomials in Y over truncated Puiseux series: the ring k((X))[Y].

Houses degrees, monicity predicates, derivatives, jacobians, exact
resultants, intersection multiplicities, radicals, and the substitution
toolkit.  Exact inputs (Laurent-polynomial coefficients) admit exact
resultants and gcds; truncated coefficients are tolerated everywhere else
with certified-precision propagation.

The resultant follows the Sylvester-determinant sign convention (the one
sympy and the classical textbooks use); intersection multiplicities only
ever consume its X-order, so the convention is cosmetic but fixed.
"""

from fractions import Fraction
from math import gcd as _igcd

from .errors import (
    DivisionByZero,
    InsufficientPrecision,
    NotDivisible,
    NotKMonic,
    ZeroInput,
)
from .extrat import INF, NEG_INF, ExtRat, ext_min
from .numfield import FieldElem, Poly
from .series import PuiseuxSeries


def _lcm(a, b):
    return a * b // _igcd(a, b)


class MeroPoly:
    """Element of k((X))[Y] with PuiseuxSeries coefficients (index = Y power)."""

    __slots__ = ("ctx", "nu", "coeffs")

    def __init__(self, ctx, coeffs, nu=None):
        cs = list(coeffs)
        grid = nu or 1
        for c in cs:
            grid = _lcm(grid, c.nu)
        cs = [c.with_nu(grid) for c in cs]
        tall = ctx
        for c in cs:
            if c.ctx.height > tall.height:
                tall = c.ctx
        cs = [c.convert(tall) if c.ctx is not tall else c for c in cs]
        while cs and cs[-1].is_zero_certified():
            cs.pop()
        self.ctx = tall
        self.nu = grid
        self.coeffs = tuple(cs)

    # -- constructors

    @staticmethod
    def zero(ctx):
        return MeroPoly(ctx, ())

    @staticmethod
    def from_terms(ctx, terms):
        """Build from {(x_exponent Fraction, y_power int): coefficient}."""
        grid = 1
        for (xe, _), _c in terms.items():
            grid = _lcm(grid, Fraction(xe).denominator)
        ymax = max((yp for _, yp in terms), default=-1)
        cols = [dict() for _ in range(ymax + 1)]
        for (xe, yp), c in terms.items():
            e = int(Fraction(xe) * grid)
            col = cols[yp]
            col[e] = col.get(e, 0) + Fraction(c) if not isinstance(c, FieldElem) else c
        coeffs = [PuiseuxSeries(ctx, grid, col) for col in cols]
        return MeroPoly(ctx, coeffs, grid)

    @staticmethod
    def y_var(ctx):
        return MeroPoly(ctx, (PuiseuxSeries.zero(ctx), PuiseuxSeries.one(ctx)))

    @staticmethod
    def const_series(s):
        return MeroPoly(s.ctx, (s,), s.nu)

    @staticmethod
    def from_y_poly(p, ctx=None):
        """Lift a Poly in Y with field coefficients to a MeroPoly."""
        ctx = ctx or p.ctx
        return MeroPoly(ctx, [PuiseuxSeries.constant(ctx, c) for c in p.coeffs])

    # -- structure

    def is_zero_mero(self):
        return not self.coeffs

    def deg_y(self):
        """Y-degree: an int for nonzero F, -inf (ExtRat) for F = 0."""
        if not self.coeffs:
            return NEG_INF
        top = self.coeffs[-1]
        if top.known_zero_to_trunc() and not top.is_exact():
            raise InsufficientPrecision("leading Y-coefficient is not certified nonzero")
        return len(self.coeffs) - 1

    def deg_y_int(self):
        d = self.deg_y()
        if isinstance(d, ExtRat):
            raise ZeroInput("zero polynomial has no integer degree")
        return d

    def lc_series(self):
        """F0: the coefficient of Y^deg (the zero series for F = 0)."""
        if not self.coeffs:
            return PuiseuxSeries.zero(self.ctx)
        return self.coeffs[-1]

    def coeff(self, j):
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        return PuiseuxSeries.zero(self.ctx, self.nu)

    def is_k_monic(self):
        """True when the leading coefficient is a nonzero constant of k."""
        if not self.coeffs:
            return False
        top = self.coeffs[-1]
        if top.terms and (min(top.terms) != 0 or len(top.terms) > 1):
            return False
        if not top.is_exact():
            raise InsufficientPrecision("leading coefficient not certified constant")
        return bool(top.terms)

    def is_k_distinguished(self):
        """k-monic with every lower coefficient of positive X-order."""
        if not self.is_k_monic():
            return False
        for c in self.coeffs[:-1]:
            o = c.ord() if (c.terms or c.is_exact()) else c.ord()
            if not (o > 0):
                return False
        return True

    def is_y_monic_poly(self):
        """Leading coefficient in k and every coefficient X-exponent >= 0."""
        if not self.is_k_monic():
            return False
        return all((not c.terms) or min(c.terms) >= 0 for c in self.coeffs)

    def ord_x(self):
        """min_j ord(coeff_j); +inf for the zero polynomial."""
        return ext_min((c.ord() for c in self.coeffs), empty=INF)

    def coef_x(self, a):
        """Coefficient of X^a as a Poly in Y over the field (zero off-grid)."""
        return Poly(self.ctx, [c.coef(a) for c in self.coeffs])

    def inco_x(self):
        return self.coef_x(self.ord_x())

    def eval_y0(self):
        """F(X, 0)."""
        return self.coeff(0)

    def is_exact(self):
        return all(c.is_exact() for c in self.coeffs)

    # -- arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return MeroPoly(
            self.ctx, [self.coeff(j) + other.coeff(j) for j in range(n)], _lcm(self.nu, other.nu)
        )

    __radd__ = __add__

    def __neg__(self):
        return MeroPoly(self.ctx, [-c for c in self.coeffs], self.nu)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElem, PuiseuxSeries)):
            s = other if isinstance(other, PuiseuxSeries) else PuiseuxSeries.constant(self.ctx, other)
            return MeroPoly(self.ctx, [c * s for c in self.coeffs])
        other = self._coerce(other)
        if self.is_zero_mero() or other.is_zero_mero():
            return MeroPoly.zero(self.ctx)
        out = [PuiseuxSeries.zero(self.ctx, 1) for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] = out[i + j] + x * y
        return MeroPoly(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = MeroPoly(self.ctx, (PuiseuxSeries.one(self.ctx),))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def _coerce(self, other):
        if isinstance(other, MeroPoly):
            return other
        if isinstance(other, PuiseuxSeries):
            return MeroPoly.const_series(other)
        return MeroPoly(self.ctx, (PuiseuxSeries.constant(self.ctx, other),))

    # -- calculus

    def derivative_y(self):
        return MeroPoly(self.ctx, [c * j for j, c in enumerate(self.coeffs)][1:], self.nu)

    def derivative_x(self):
        return MeroPoly(self.ctx, [c.derivative_x() for c in self.coeffs], self.nu)

    def derivative(self, wrt):
        if wrt in ("X", "x"):
            return self.derivative_x()
        if wrt in ("Y", "y"):
            return self.derivative_y()
        raise ValueError("wrt must be 'X' or 'Y'")

    # -- substitutions

    def ramify_x(self, k):
        """F(X^k, Y)."""
        return MeroPoly(self.ctx, [c.ramify(k) for c in self.coeffs], self.nu)

    def shift_y(self, s):
        """F(X, Y + s) for a series or field element s."""
        if isinstance(s, (int, Fraction, FieldElem)):
            s = PuiseuxSeries.constant(self.ctx, s)
        lin = MeroPoly(self.ctx, (s, PuiseuxSeries.one(self.ctx)))
        acc = MeroPoly.zero(self.ctx)
        for c in reversed(self.coeffs):
            acc = acc * lin + MeroPoly.const_series(c)
        return acc

    def scale_y_xexp(self, num, den=1):
        """F(X, Y * X^(num/den))."""
        nu = _lcm(self.nu, den)
        k = nu // den
        out = []
        for j, c in enumerate(self.coeffs):
            out.append(c.with_nu(nu).shift_exp(j * num * k))
        return MeroPoly(self.ctx, out, nu)

    def scale_y(self, c):
        """F(X, c*Y) for a field element c."""
        out = []
        p = self.ctx.one()
        for j, s in enumerate(self.coeffs):
            out.append(s * p)
            p = p * c
        return MeroPoly(self.ctx, out, self.nu)

    def eval_series(self, z):
        """F(X, z(X)) by Horner."""
        acc = PuiseuxSeries.zero(self.ctx, 1)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def eval_elem(self, v):
        """F(X, v) for a field element v."""
        return self.eval_series(PuiseuxSeries.constant(self.ctx, v))

    def map_coeffs(self, fn):
        return MeroPoly(self.ctx, [fn(c) for c in self.coeffs], self.nu)

    def convert(self, ctx):
        return MeroPoly(ctx, [c.convert(ctx) for c in self.coeffs], self.nu)

    def truncate_to(self, bound_frac):
        """Cap every coefficient's certification at X^bound."""
        out = []
        for c in self.coeffs:
            out.append(c.truncate_to(int(Fraction(bound_frac) * c.nu)))
        return MeroPoly(self.ctx, out, self.nu)

    # -- text

    def text(self, xvar="X", yvar="Y"):
        if not self.coeffs:
            return "0"
        parts = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeff(j)
            if not c.terms and c.is_exact():
                continue
            cs = c.text(xvar)
            if j == 0:
                parts.append(f"({cs})" if "+" in cs or cs.startswith("-") else cs)
                continue
            mono = yvar if j == 1 else f"{yvar}^{j}"
            if cs == "1":
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return self.text()


def jacobian(f, g):
    """J(F,G) = F_X G_Y - F_Y G_X."""
    return f.derivative_x() * g.derivative_y() - f.derivative_y() * g.derivative_x()


def as_integer_grid(f):
    """Reinterpret a (1/nu)-grid polynomial as F(X^nu, Y) on the integer grid."""
    return MeroPoly(
        f.ctx,
        [PuiseuxSeries(c.ctx, 1, dict(c.terms), c.trunc, checked=True) for c in f.coeffs],
        1,
    )


def common_integer_grid(*fs):
    """Bring curves to one integer grid: returns (list of F_i(X^nu, Y), nu).

    Intersection-type values computed on the ramified curves are divided by
    nu to recover the fractional-input normalization."""
    nu = 1
    for f in fs:
        nu = _lcm(nu, f.nu)
    return [as_integer_grid(MeroPoly(f.ctx, f.coeffs, nu)) for f in fs], nu


# ---------------------------------------------------------------------------
# cleared-polynomial view: X-denominators removed, coefficients in ctx[x]


def _series_to_xpoly(s, nu):
    """Exact series -> (shift, Poly) with s = x^(-shift) * poly on grid nu."""
    if not s.is_exact():
        raise InsufficientPrecision("operation requires exact coefficients")
    t = s.with_nu(nu)
    if not t.terms:
        return 0, Poly.zero(t.ctx)
    lo = min(min(t.terms), 0)
    size = max(t.terms) - lo + 1
    cs = [t.ctx.zero()] * size
    for e, c in t.terms.items():
        cs[e - lo] = c
    return -lo, Poly(t.ctx, cs)


def _xpoly_to_series(ctx, p, nu, shift=0):
    return PuiseuxSeries(ctx, nu, {i - shift: c for i, c in enumerate(p.coeffs)})


class ClearedPoly:
    """F written as x^(-shift) * sum poly_j(x) Y^j with polynomial coefficients."""

    __slots__ = ("ctx", "nu", "shift", "cols")

    def __init__(self, ctx, nu, shift, cols):
        self.ctx = ctx
        self.nu = nu
        self.shift = shift
        self.cols = cols  # list[Poly], index = Y power

    @staticmethod
    def of(f):
        shifts_polys = [_series_to_xpoly(c, f.nu) for c in f.coeffs]
        shift = max((s for s, _ in shifts_polys), default=0)
        x = Poly.gen(f.ctx)
        cols = []
        for s, p in shifts_polys:
            cols.append(p * x ** (shift - s) if not p.is_zero_poly() else p)
        return ClearedPoly(f.ctx, f.nu, shift, cols)

    def to_mero(self):
        return MeroPoly(
            self.ctx,
            [_xpoly_to_series(self.ctx, p, self.nu, self.shift) for p in self.cols],
            self.nu,
        )

    def deg_y(self):
        d = len(self.cols) - 1
        while d >= 0 and self.cols[d].is_zero_poly():
            d -= 1
        return d

    def max_deg_x(self):
        return max((p.degree() for p in self.cols if not p.is_zero_poly()), default=-1)


def _content(cols, ctx):
    g = Poly.zero(ctx)
    for p in cols:
        if p.is_zero_poly():
            continue
        g = p if g.is_zero_poly() else g.gcd(p)
        if g.degree() == 0:
            break
    return g


def _strip_x_power(cols, ctx):
    """Divide out the largest common x^k (cheap content pre-pass)."""
    k = None
    for p in cols:
        if p.is_zero_poly():
            continue
        o = p.ord_y()
        k = o if k is None else min(k, o)
        if k == 0:
            return cols, 0
    if not k:
        return cols, 0
    out = []
    for p in cols:
        out.append(Poly(ctx, p.coeffs[k:]) if not p.is_zero_poly() else p)
    return out, k


def _yp_trim(cols):
    while cols and cols[-1].is_zero_poly():
        cols.pop()
    return cols


def _yp_prem(a, b, ctx):
    """Pseudo-remainder of Y-polynomials with Poly coefficients."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        da = len(a) - 1
        lead = a[-1]
        # lb * a - lead * Y^(da-db) * b
        new = [p * lb for p in a[:-1]]
        off = da - db
        for i in range(db):
            new[off + i] = new[off + i] - lead * b[i]
        a = _yp_trim(new)
    return a


def _yp_primitive(cols, ctx):
    cols = _yp_trim(list(cols))
    if not cols:
        return cols
    cols, _ = _strip_x_power(cols, ctx)
    g = _content(cols, ctx)
    if g.degree() <= 0:
        return cols
    return [p.exact_div(g) if not p.is_zero_poly() else p for p in cols]


def gcd_mero(f, g):
    """Primitive gcd of exact F, G in k((X))[Y] (content in X dropped).

    The result is a MeroPoly with Laurent-polynomial coefficients, primitive
    with respect to X, well-defined up to a constant.
    """
    nu = _lcm(f.nu, g.nu)
    a = _yp_primitive([p for p in ClearedPoly.of(MeroPoly(f.ctx, f.coeffs, nu)).cols], f.ctx)
    b = _yp_primitive([p for p in ClearedPoly.of(MeroPoly(g.ctx, g.coeffs, nu)).cols], g.ctx)
    if not a:
        return ClearedPoly(g.ctx, nu, 0, b).to_mero()
    if not b:
        return ClearedPoly(f.ctx, nu, 0, a).to_mero()
    if len(a) < len(b):
        a, b = b, a
    while True:
        r = _yp_prem(a, b, f.ctx)
        if not r:
            break
        if len(r) == 1:
            b = [Poly.const(f.ctx, 1)]
            break
        a, b = b, _yp_primitive(r, f.ctx)
    ctx = b[0].ctx if b else f.ctx
    return ClearedPoly(ctx, nu, 0, _yp_trim(list(b))).to_mero()


def divides_mero(d, f):
    """Does d divide f in k((X))[Y]?  Both exact; ignores X-content units."""
    if d.is_zero_mero():
        return f.is_zero_mero()
    if f.is_zero_mero():
        return True
    nu = _lcm(d.nu, f.nu)
    dd = _yp_primitive(list(ClearedPoly.of(MeroPoly(d.ctx, d.coeffs, nu)).cols), d.ctx)
    ff = list(ClearedPoly.of(MeroPoly(f.ctx, f.coeffs, nu)).cols)
    try:
        _yp_exact_div(ff, dd, f.ctx)
        return True
    except NotDivisible:
        return False


def _yp_exact_div(num, den, ctx):
    """Exact division of Y-polynomials over ctx[x]; raises NotDivisible."""
    num = _yp_trim(list(num))
    den = _yp_trim(list(den))
    if not den:
        raise DivisionByZero("division by zero polynomial")
    if not num:
        return []
    dn = len(den) - 1
    quot = [Poly.zero(ctx)] * max(len(num) - dn, 1)
    while num and len(num) - 1 >= dn:
        lead = num[-1]
        q = lead.exact_div(den[-1])
        off = len(num) - 1 - dn
        quot[off] = q
        for i in range(dn + 1):
            num[off + i] = num[off + i] - q * den[i]
        num = _yp_trim(num)
        if num and len(num) - 1 >= off + dn:
            raise NotDivisible("division stalled")
    if num:
        raise NotDivisible("remainder is nonzero")
    return quot


def exact_div_mero(f, d):
    """Exact quotient F/D in k((X))[Y] for exact inputs (with X-content)."""
    nu = _lcm(d.nu, f.nu)
    fc = ClearedPoly.of(MeroPoly(f.ctx, f.coeffs, nu))
    dc = ClearedPoly.of(MeroPoly(d.ctx, d.coeffs, nu))
    dd = _yp_primitive(list(dc.cols), d.ctx)
    quot = _yp_exact_div(list(fc.cols), dd, f.ctx)
    # divide out the stripped content of d, column by column
    rest = _yp_exact_div(list(dc.cols), dd, d.ctx)
    if len(rest) != 1:
        raise NotDivisible("divisor content is not univariate")
    cont = rest[0]
    if cont.degree() > 0 or not (cont.coeff(0) - cont.ctx.one()).is_zero():
        quot = [p.exact_div(cont) if not p.is_zero_poly() else p for p in quot]
    return ClearedPoly(f.ctx, nu, fc.shift - dc.shift, quot).to_mero()


def radical(f):
    """Squarefree part of a k-monic exact F, with the same leading F0."""
    if f.is_zero_mero():
        raise ZeroInput("radical of the zero polynomial")
    if not f.is_k_monic():
        raise NotKMonic("radical requires a k-monic polynomial")
    if f.deg_y_int() == 0:
        return f
    g = gcd_mero(f, f.derivative_y())
    if g.deg_y_int() == 0:
        return f
    q = exact_div_mero(f, g)
    # normalize so that rad(F) keeps the leading coefficient F0
    lc = q.lc_series()
    fix = f.lc_series() * lc.invert()
    return q * fix


def squarefree_decomposition(f):
    """Yun decomposition: F = unit_in_x * prod S_e^e with S_e primitive squarefree.

    Returns (x_content_series, [(S_e as MeroPoly, e)]).  Requires exact F.
    """
    if f.is_zero_mero():
        raise ZeroInput("squarefree decomposition of zero")
    nu = f.nu
    fc = ClearedPoly.of(f)
    cols, xpow = _strip_x_power(list(fc.cols), f.ctx)
    cont = _content(cols, f.ctx)
    if cont.degree() > 0:
        cols = [p.exact_div(cont) if not p.is_zero_poly() else p for p in cols]
    content_series = _xpoly_to_series(f.ctx, cont, nu, fc.shift - xpow)
    if len(cols) == 1:
        one = MeroPoly(f.ctx, (PuiseuxSeries.one(f.ctx),))
        return content_series * cols[0].coeffs[0] if cols[0].degree() == 0 else content_series, []
    a = cols
    aprime = _yp_derivative(a, f.ctx)
    g = _yp_gcd(a, aprime, f.ctx)
    out = []
    if len(g) == 1:
        out.append((ClearedPoly(f.ctx, nu, 0, a).to_mero(), 1))
        return content_series, out
    c = _yp_exact_div(list(a), g, f.ctx)
    d = _yp_sub(_yp_exact_div(list(aprime), g, f.ctx), _yp_derivative(c, f.ctx), f.ctx)
    e = 1
    while True:
        if len(c) == 1:
            break
        p = _yp_gcd(c, d, f.ctx)
        if len(p) > 1:
            out.append((ClearedPoly(f.ctx, nu, 0, p).to_mero(), e))
        c = _yp_exact_div(c, p, f.ctx)
        d = _yp_sub(_yp_exact_div(d, p, f.ctx), _yp_derivative(c, f.ctx), f.ctx)
        e += 1
    return content_series, out


def _yp_derivative(cols, ctx):
    return _yp_trim([p * i for i, p in enumerate(cols)][1:])


def _yp_sub(a, b, ctx):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else Poly.zero(ctx)
        y = b[i] if i < len(b) else Poly.zero(ctx)
        out.append(x - y)
    return _yp_trim(out)


def _yp_gcd(a, b, ctx):
    a = _yp_primitive(list(a), ctx)
    b = _yp_primitive(list(b), ctx)
    if not a:
        return b if b else [Poly.const(ctx, 1)]
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while True:
        r = _yp_prem(a, b, ctx)
        if not r:
            return b
        if len(r) == 1:
            return [Poly.const(ctx, 1)]
        a, b = b, _yp_primitive(r, ctx)


# ---------------------------------------------------------------------------
# resultants and intersection multiplicity


def _res_field(a, b, ctx):
    """Resultant of two Poly over the field, Sylvester convention."""
    if a.is_zero_poly() or b.is_zero_poly():
        return ctx.zero()
    sign = 1
    acc = ctx.one()
    while True:
        m, n = a.degree(), b.degree()
        if n == 0:
            return acc * b.lc() ** m * (1 if sign > 0 else -1)
        if m < n:
            a, b = b, a
            if m % 2 and n % 2:
                sign = -sign
            continue
        r = a.rem(b)
        if r.is_zero_poly():
            return ctx.zero()
        if m % 2 and n % 2:
            sign = -sign
        acc = acc * b.lc() ** (m - r.degree())
        a, b = b, r


def _interp(ctx, xs, ys):
    """Lagrange interpolation through (xs, ys), returns Poly."""
    n = len(xs)
    result = Poly.zero(ctx)
    for i in range(n):
        num = Poly.const(ctx, ys[i])
        den = ctx.one()
        for j in range(n):
            if j == i:
                continue
            num = num * Poly(ctx, [-xs[j], ctx.one()])
            den = den * (xs[i] - xs[j])
        result = result + num * den.inv()
    return result


def resultant_y(f, g):
    """Res_Y(F, G) as an exact PuiseuxSeries; inputs must be exact, nonzero."""
    if f.is_zero_mero() or g.is_zero_mero():
        raise ZeroInput("resultant of the zero polynomial")
    n, m = f.deg_y_int(), g.deg_y_int()
    if n == 0 and m == 0:
        return PuiseuxSeries.one(f.ctx)
    if n == 0:
        return f.coeff(0) ** m
    if m == 0:
        return g.coeff(0) ** n
    nu = _lcm(f.nu, g.nu)
    fc = ClearedPoly.of(MeroPoly(f.ctx, f.coeffs, nu))
    gc = ClearedPoly.of(MeroPoly(g.ctx, g.coeffs, nu))
    ctx = fc.cols[0].ctx if fc.cols else f.ctx
    bound = n * max(gc.max_deg_x(), 0) + m * max(fc.max_deg_x(), 0) + 1
    xs, ys = [], []
    r = 0
    lcf, lcg = fc.cols[n], gc.cols[m]
    while len(xs) < bound:
        point = ctx.rational(r)
        r += 1
        if lcf.eval(point).is_zero() or lcg.eval(point).is_zero():
            continue
        pa = Poly(ctx, [p.eval(point) for p in fc.cols[: n + 1]])
        pb = Poly(ctx, [p.eval(point) for p in gc.cols[: m + 1]])
        xs.append(point)
        ys.append(_res_field(pa, pb, ctx))
    res_poly = _interp(ctx, xs, ys)
    shift = fc.shift * m + gc.shift * n
    return _xpoly_to_series(ctx, res_poly, nu, shift)


def int_mult(f, g):
    """Intersection multiplicity int(F,G), all degenerate cases included."""
    fz, gz = f.is_zero_mero(), g.is_zero_mero()
    if fz and gz:
        return INF
    if fz or gz:
        nz = g if fz else f
        return ExtRat(0) if nz.deg_y_int() == 0 else INF
    n, m = f.deg_y_int(), g.deg_y_int()
    if n == 0:
        return ExtRat(m) * f.coeff(0).ord()
    if m == 0:
        return ExtRat(n) * g.coeff(0).ord()
    res = resultant_y(f, g)
    if res.is_zero_certified():
        return INF
    return res.ord()


def gcd_trivial(f, g):
    """GCD(F,G) = 1 in the paper's sense: int(F,G) is finite."""
    return int_mult(f, g) != INF


def is_squarefree_mero(f):
    """rad(F) = F, via GCD(F, F_Y) = 1."""
    if f.is_zero_mero():
        return False
    if f.deg_y_int() == 0:
        return True
    return gcd_trivial(f, f.derivative_y())


def sylvester_resultant(f, g):
    """Sylvester-matrix resultant by fraction-free elimination (test oracle)."""
    if f.is_zero_mero() or g.is_zero_mero():
        raise ZeroInput("resultant of the zero polynomial")
    n, m = f.deg_y_int(), g.deg_y_int()
    if n == 0:
        return f.coeff(0) ** m
    if m == 0:
        return g.coeff(0) ** n
    nu = _lcm(f.nu, g.nu)
    size = n + m
    fr = [f.coeff(n - i).with_nu(nu) for i in range(n + 1)]
    gr = [g.coeff(m - i).with_nu(nu) for i in range(m + 1)]
    zero = PuiseuxSeries.zero(f.ctx, nu)
    rows = []
    for i in range(m):
        rows.append([zero] * i + fr + [zero] * (m - 1 - i))
    for i in range(n):
        rows.append([zero] * i + gr + [zero] * (n - 1 - i))
    # Bareiss fraction-free elimination over the Laurent-polynomial domain
    prev = PuiseuxSeries.one(f.ctx, nu)
    sign = 1
    for k in range(size - 1):
        if rows[k][k].is_zero_certified():
            swap = None
            for i in range(k + 1, size):
                if not rows[i][k].is_zero_certified():
                    swap = i
                    break
            if swap is None:
                return zero
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        piv = rows[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = rows[i][j] * piv - rows[i][k] * rows[k][j]
                rows[i][j] = _series_exact_div(num, prev)
            rows[i][k] = zero
        prev = piv
    out = rows[size - 1][size - 1]
    return out * sign


def _series_exact_div(num, den):
    """Exact division of Laurent-polynomial series (Bareiss steps)."""
    if num.is_zero_certified():
        return num
    if len(den.terms) == 1:
        e = min(den.terms)
        c = den.terms[e].inv()
        return PuiseuxSeries(num.ctx, num.nu, {k - e: v * c for k, v in num.with_nu(den.nu).terms.items()})
    # long division by the lowest term, must terminate exactly
    num = num.with_nu(den.nu)
    den = den.with_nu(num.nu)
    e0 = min(den.terms)
    c0inv = den.terms[e0].inv()
    out = {}
    guard = 0
    work = num
    while work.terms:
        guard += 1
        if guard > 10000:
            raise NotDivisible("series division does not terminate")
        e = min(work.terms)
        q = work.terms[e] * c0inv
        out[e - e0] = q
        work = work - PuiseuxSeries(num.ctx, num.nu, {e - e0: q}) * den
    return PuiseuxSeries(num.ctx, num.nu, out)
