"""Exact arithmetic in a tower of algebraic extensions of the rationals.

The tower realizes "an algebraically closed field of characteristic zero" at
desk scale: whenever a computation demands a root of a polynomial, the root
is adjoined as a new tower level (dynamic evaluation).  Defining polynomials
are only required to be monic and squarefree, not irreducible; whenever a
zero divisor turns up, a ZeroDivisorEncountered error carries the data needed
to split the context in two, and the caller replays the computation per
child.  `run_cases` is the standard driver for that replay loop.

Element representation: an element of the level-h field is a canonical
nested tuple - a polynomial in the level-h generator whose coefficients are
level-(h-1) elements, reduced modulo the defining polynomial.  Level-0
elements are plain Fractions.
"""

from fractions import Fraction

from .errors import (
    CapacityExceeded,
    DivisionByZero,
    InsufficientPrecision,
    NotSquarefree,
    NotZeroDivisor,
    ZeroDivisorEncountered,
)

# ---------------------------------------------------------------------------
# raw representation helpers (recursive on tower height)


def _r_zero(h):
    return Fraction(0) if h == 0 else ()


def _r_one(h):
    r = Fraction(1)
    for _ in range(h):
        r = (r,)
    return r


def _r_szero(r, h):
    """Structural zero test (no field semantics)."""
    return (r == 0) if h == 0 else (len(r) == 0)


def _r_from_frac(q, h):
    q = Fraction(q)
    if q == 0:
        return _r_zero(h)
    r = q
    for _ in range(h):
        r = (r,)
    return r


def _r_lift(r, h_from, h_to):
    if _r_szero(r, h_from):
        return _r_zero(h_to)
    for _ in range(h_to - h_from):
        r = (r,)
    return r


def _trim(coeffs, hc):
    """Drop trailing structural zeros; hc is the coefficient height."""
    n = len(coeffs)
    while n and _r_szero(coeffs[n - 1], hc):
        n -= 1
    return tuple(coeffs[:n])


def _r_add(a, b, h):
    if h == 0:
        return a + b
    la, lb = len(a), len(b)
    if la < lb:
        a, b, la, lb = b, a, lb, la
    out = list(a)
    for i in range(lb):
        out[i] = _r_add(out[i], b[i], h - 1)
    return _trim(out, h - 1)


def _r_neg(a, h):
    if h == 0:
        return -a
    return tuple(_r_neg(x, h - 1) for x in a)


def _r_sub(a, b, h):
    return _r_add(a, _r_neg(b, h), h)


def _r_reduce(coeffs, h, ctx):
    """Remainder of a coefficient list modulo the monic level-h polynomial."""
    p = ctx.levels[h - 1].poly
    d = len(p) - 1
    work = list(coeffs)
    while len(work) > d:
        lead = work.pop()
        if _r_szero(lead, h - 1):
            continue
        off = len(work) - d
        for i in range(d):
            if not _r_szero(p[i], h - 1):
                work[off + i] = _r_sub(work[off + i], _r_mul(lead, p[i], h - 1, ctx), h - 1)
    return _trim(work, h - 1)


def _r_mul(a, b, h, ctx):
    if h == 0:
        return a * b
    if not a or not b:
        return ()
    prod = [_r_zero(h - 1)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if _r_szero(x, h - 1):
            continue
        for j, y in enumerate(b):
            if _r_szero(y, h - 1):
                continue
            prod[i + j] = _r_add(prod[i + j], _r_mul(x, y, h - 1, ctx), h - 1)
    return _r_reduce(prod, h, ctx)


def _r_canon(r, h, ctx):
    """Re-canonicalize a rep that was formed over a compatible tower."""
    if h == 0:
        return r
    coeffs = [_r_canon(c, h - 1, ctx) for c in r]
    return _r_reduce(coeffs, h, ctx)


# raw polynomials over level-h coefficients (used for gcd/inversion only)


def _rp_monic_divstep(num, den, h, ctx, den_lc_inv):
    """One long-division pass of num by den given the inverse of den's lc."""
    num = list(num)
    dd = len(den) - 1
    quot = [_r_zero(h)] * max(len(num) - dd, 0)
    while len(num) - 1 >= dd and num:
        lead = num[-1]
        if _r_szero(lead, h):
            num.pop()
            continue
        q = _r_mul(lead, den_lc_inv, h, ctx)
        off = len(num) - 1 - dd
        quot[off] = q
        for i in range(dd + 1):
            if not _r_szero(den[i], h):
                num[off + i] = _r_sub(num[off + i], _r_mul(q, den[i], h, ctx), h)
        num.pop()
    return quot, list(_trim(num, h))


def _rp_half_xgcd(a, b, h, ctx):
    """Monic gcd g of a and b plus s with s*a = g mod b (coefficients at height h)."""
    r0, s0 = list(_trim(a, h)), [_r_one(h)]
    r1, s1 = list(_trim(b, h)), []
    while r1:
        lc_inv = _r_inv(r1[-1], h, ctx)
        q, rem = _rp_monic_divstep(r0, r1, h, ctx, lc_inv)
        s2 = list(s0)
        # s2 = s0 - q*s1
        prod = [_r_zero(h)] * (len(q) + len(s1) - 1 if q and s1 else 0)
        for i, x in enumerate(q):
            if _r_szero(x, h):
                continue
            for j, y in enumerate(s1):
                if _r_szero(y, h):
                    continue
                prod[i + j] = _r_add(prod[i + j], _r_mul(x, y, h, ctx), h)
        n = max(len(s2), len(prod))
        s2 += [_r_zero(h)] * (n - len(s2))
        for i in range(len(prod)):
            s2[i] = _r_sub(s2[i], prod[i], h)
        r0, s0, r1, s1 = r1, s1, rem, list(_trim(s2, h))
    if not r0:
        return [], []
    lc_inv = _r_inv(r0[-1], h, ctx)
    g = [_r_mul(c, lc_inv, h, ctx) for c in r0]
    s = [_r_mul(c, lc_inv, h, ctx) for c in s0]
    return g, s


def _r_inv(r, h, ctx):
    if h == 0:
        if r == 0:
            raise DivisionByZero("inverse of zero")
        return Fraction(1) / r
    if not r:
        raise DivisionByZero("inverse of zero")
    if len(r) == 1:
        return (_r_inv(r[0], h - 1, ctx),)
    p = list(ctx.levels[h - 1].poly)
    g, s = _rp_half_xgcd(list(r), p, h - 1, ctx)
    if len(g) == 1:
        red = _r_reduce(s, h, ctx)
        return red
    raise ZeroDivisorEncountered(ctx, h, tuple(g))


def _r_is_zero(r, h, ctx):
    if h == 0:
        return r == 0
    if not r:
        return True
    if len(r) == 1:
        return _r_is_zero(r[0], h - 1, ctx)
    p = list(ctx.levels[h - 1].poly)
    g, _ = _rp_half_xgcd(list(r), p, h - 1, ctx)
    if len(g) == 1:
        return False
    raise ZeroDivisorEncountered(ctx, h, tuple(g))


# ---------------------------------------------------------------------------
# contexts and elements


class Level:
    __slots__ = ("name", "poly", "tag")

    def __init__(self, name, poly, tag=-1):
        self.name = name
        self.poly = tuple(poly)
        self.tag = tag

    @property
    def degree(self):
        return len(self.poly) - 1


class FieldCtx:
    """A tower of monic squarefree extensions of the rationals."""

    __slots__ = ("levels", "cap")

    def __init__(self, levels=(), cap=64):
        self.levels = tuple(levels)
        self.cap = cap

    @property
    def height(self):
        return len(self.levels)

    def total_degree(self):
        d = 1
        for lv in self.levels:
            d *= lv.degree
        return d

    def describe(self):
        """Human-readable tower description for reports."""
        out = []
        for i, lv in enumerate(self.levels):
            out.append(f"{lv.name}: {_render_poly(lv.poly, i, self, lv.name)}")
        return out

    # -- element constructors

    def zero(self):
        return FieldElem(self, _r_zero(self.height))

    def one(self):
        return FieldElem(self, _r_one(self.height))

    def rational(self, q):
        return FieldElem(self, _r_from_frac(q, self.height))

    def gen(self, idx):
        """Generator of level idx (0-based), as an element of this context."""
        lv = self.levels[idx]
        if lv.degree == 1:
            rep = _r_lift(_r_neg(lv.poly[0], idx), idx, self.height)
        else:
            rep = _r_lift((_r_zero(idx), _r_one(idx)), idx + 1, self.height)
        return FieldElem(self, rep)

    def convert(self, elem):
        """Re-canonicalize an element born in a compatible (ancestor) tower."""
        rep = _r_lift(elem.rep, elem.ctx.height, self.height)
        return FieldElem(self, _r_canon(rep, self.height, self))

    def extends(self, other):
        if other.height > self.height:
            return False
        return all(
            a.name == b.name and len(a.poly) == len(b.poly)
            for a, b in zip(self.levels, other.levels)
        )

    def split_level(self, level, factor):
        """Children obtained by factoring the defining polynomial of `level`."""
        h = level - 1
        p = self.levels[h].poly
        one_inv = _r_one(h)
        quot, rem = _rp_monic_divstep(list(p), list(factor), h, self, one_inv)
        if rem:
            raise NotZeroDivisor("split factor does not divide the defining polynomial")
        children = []
        old = self.levels[h]
        for newp in (tuple(factor), _trim(quot, h)):
            child = FieldCtx(self.levels[:h] + (Level(old.name, newp, old.tag),), self.cap)
            for lv in self.levels[h + 1 :]:
                redpoly = [_r_canon(c, child.height, child) for c in lv.poly]
                child = FieldCtx(child.levels + (Level(lv.name, tuple(redpoly), lv.tag),), self.cap)
            children.append(child)
        return children


class FieldElem:
    """An element of a FieldCtx, in canonical form."""

    __slots__ = ("ctx", "rep")

    def __init__(self, ctx, rep):
        self.ctx = ctx
        self.rep = rep

    __hash__ = None

    def _pair(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.rational(other)
        if other.ctx is self.ctx:
            return self, other
        if other.ctx.extends(self.ctx):
            return other.ctx.convert(self), other
        if self.ctx.extends(other.ctx):
            return self, self.ctx.convert(other)
        raise ValueError("elements from unrelated field contexts")

    def __add__(self, other):
        a, b = self._pair(other)
        return FieldElem(a.ctx, _r_add(a.rep, b.rep, a.ctx.height))

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.ctx, _r_neg(self.rep, self.ctx.height))

    def __sub__(self, other):
        a, b = self._pair(other)
        return FieldElem(a.ctx, _r_sub(a.rep, b.rep, a.ctx.height))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        return FieldElem(a.ctx, _r_mul(a.rep, b.rep, a.ctx.height, a.ctx))

    __rmul__ = __mul__

    def inv(self):
        return FieldElem(self.ctx, _r_inv(self.rep, self.ctx.height, self.ctx))

    def __truediv__(self, other):
        a, b = self._pair(other)
        return a * b.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        out = self.ctx.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def is_zero(self):
        return _r_is_zero(self.rep, self.ctx.height, self.ctx)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if other is None:
            return False
        a, b = self._pair(other)
        return (a - b).is_zero()

    def as_fraction(self):
        """The rational value, if the element is rational."""
        r, h = self.rep, self.ctx.height
        while h > 0:
            if _r_szero(r, h):
                return Fraction(0)
            if len(r) != 1:
                raise ValueError("element is not rational")
            r, h = r[0], h - 1
        return r

    def is_rational(self):
        r, h = self.rep, self.ctx.height
        while h > 0:
            if _r_szero(r, h):
                return True
            if len(r) != 1:
                return False
            r, h = r[0], h - 1
        return True

    def __repr__(self):
        return _render_elem(self.rep, self.ctx.height, self.ctx)


def _render_elem(rep, h, ctx):
    if h == 0:
        return str(rep)
    if _r_szero(rep, h):
        return "0"
    name = ctx.levels[h - 1].name
    parts = []
    for i, c in enumerate(rep):
        if _r_szero(c, h - 1):
            continue
        inner = _render_elem(c, h - 1, ctx)
        if i == 0:
            parts.append(inner)
        else:
            mono = name if i == 1 else f"{name}^{i}"
            parts.append(mono if inner == "1" else f"({inner})*{mono}")
    return " + ".join(parts) if parts else "0"


def _render_poly(poly, h, ctx, var):
    parts = []
    for i, c in enumerate(poly):
        if _r_szero(c, h):
            continue
        inner = _render_elem(c, h, ctx)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        parts.append(inner if not mono else (mono if inner == "1" else f"({inner})*{mono}"))
    return " + ".join(parts) if parts else "0"


QQ = FieldCtx()


# ---------------------------------------------------------------------------
# polynomials over field elements


class Poly:
    """Dense univariate polynomial with FieldElem coefficients."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs, trusted=False):
        self.ctx = ctx
        if trusted:
            self.coeffs = tuple(coeffs)
            return
        cs = [c if isinstance(c, FieldElem) else ctx.rational(c) for c in coeffs]
        tall = ctx
        for c in cs:
            if c.ctx.height > tall.height:
                tall = c.ctx
        cs = [tall.convert(c) if c.ctx is not tall else c for c in cs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.ctx = tall
        self.coeffs = tuple(cs)

    @staticmethod
    def zero(ctx):
        return Poly(ctx, (), trusted=True)

    @staticmethod
    def const(ctx, value):
        return Poly(ctx, [value])

    @staticmethod
    def gen(ctx):
        return Poly(ctx, [0, 1])

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero_poly(self):
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1]

    def coeff(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.ctx.zero()

    def ord_y(self):
        """Index of the lowest nonzero coefficient (None for the zero poly)."""
        if not self.coeffs:
            return None
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        return None

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.ctx, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __neg__(self):
        return Poly(self.ctx, [-c for c in self.coeffs], trusted=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            return Poly(self.ctx, [c * other for c in self.coeffs])
        other = self._coerce(other)
        if self.is_zero_poly() or other.is_zero_poly():
            return Poly.zero(self.ctx)
        out = [self.ctx.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                out[i + j] = out[i + j] + x * y
        return Poly(self.ctx, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Poly.const(self.ctx, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return Poly.const(self.ctx, other)

    def divmod(self, other):
        if other.is_zero_poly():
            raise DivisionByZero("polynomial division by zero")
        lc_inv = other.lc().inv()
        rem = list(self.coeffs)
        dd = other.degree()
        qd = len(rem) - 1 - dd
        if qd < 0:
            return Poly.zero(self.ctx), self
        quot = [self.ctx.zero()] * (qd + 1)
        while len(rem) - 1 >= dd:
            lead = rem[-1]
            if lead.is_zero():
                rem.pop()
                continue
            q = lead * lc_inv
            off = len(rem) - 1 - dd
            quot[off] = q
            for i in range(dd + 1):
                rem[off + i] = rem[off + i] - q * other.coeffs[i]
            rem.pop()
        return Poly(self.ctx, quot), Poly(self.ctx, rem)

    def rem(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        from .errors import NotDivisible

        q, r = self.divmod(other)
        if not r.is_zero_poly():
            raise NotDivisible("polynomial division left a remainder")
        return q

    def monic(self):
        if self.is_zero_poly():
            return self
        inv = self.lc().inv()
        return Poly(self.ctx, [c * inv for c in self.coeffs])

    def gcd(self, other):
        a, b = self, self._coerce(other)
        while not b.is_zero_poly():
            a, b = b, a.rem(b)
        return a.monic() if not a.is_zero_poly() else a

    def xgcd(self, other):
        """(g, s, t) with g monic and s*self + t*other = g."""
        one = Poly.const(self.ctx, 1)
        zero = Poly.zero(self.ctx)
        r0, s0, t0 = self, one, zero
        r1, s1, t1 = self._coerce(other), zero, one
        while not r1.is_zero_poly():
            q, r2 = r0.divmod(r1)
            r0, s0, t0, r1, s1, t1 = r1, s1, t1, r2, s0 - q * s1, t0 - q * t1
        if r0.is_zero_poly():
            return r0, s0, t0
        inv = r0.lc().inv()
        return r0 * inv, s0 * inv, t0 * inv

    def derivative(self):
        return Poly(self.ctx, [c * i for i, c in enumerate(self.coeffs)][1:])

    def squarefree_radical(self):
        """Monic product of the distinct roots' linear factors."""
        if self.degree() <= 0:
            return self.monic()
        g = self.gcd(self.derivative())
        if g.degree() <= 0:
            return self.monic()
        return self.exact_div(g).monic()

    def is_squarefree(self):
        return self.degree() <= 0 or self.gcd(self.derivative()).degree() == 0

    def eval(self, x):
        acc = self.ctx.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other):
        acc = Poly.zero(self.ctx)
        for c in reversed(self.coeffs):
            acc = acc * other + Poly.const(self.ctx, c)
        return acc

    def shift(self, a):
        """self(t + a)."""
        return self.compose(Poly(self.ctx, [a, 1]))

    def root_multiplicity(self, root):
        lin = Poly(self.ctx, [-root, 1])
        m, p = 0, self
        while not p.is_zero_poly():
            q, r = p.divmod(lin)
            if not r.is_zero_poly():
                break
            m, p = m + 1, q
        return m

    def raw(self):
        """Coefficient reps at the context height (tower-internal form)."""
        return tuple(c.rep for c in self.coeffs)

    def __eq__(self, other):
        other = self._coerce(other)
        return (self - other).is_zero_poly()

    __hash__ = None

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            parts.append(f"({c!r})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)


# ---------------------------------------------------------------------------
# adjunction, splitting, root enumeration


_GEN_NAMES = "abcdefghijklmnopqrstuvw"


def _fresh_name(ctx):
    i = ctx.height
    base = _GEN_NAMES[i % len(_GEN_NAMES)]
    return base if i < len(_GEN_NAMES) else f"{base}{i // len(_GEN_NAMES)}"


def adjoin_root(ctx, p, name=None, tag=-1):
    """Extend ctx by a root of the squarefree polynomial p.

    Returns (new_ctx, root).  Degree-one polynomials are solved in place and
    leave the tower unchanged.
    """
    if p.degree() < 1:
        raise NotSquarefree("cannot adjoin a root of a constant")
    if not p.is_squarefree():
        raise NotSquarefree("defining polynomial must be squarefree")
    pm = p.monic()
    if pm.degree() == 1:
        return ctx, -pm.coeffs[0]
    host = pm.ctx if pm.ctx.height >= ctx.height else ctx
    if host.total_degree() * pm.degree() > host.cap:
        raise CapacityExceeded(
            f"tower degree {host.total_degree() * pm.degree()} exceeds cap {host.cap}"
        )
    level = Level(name or _fresh_name(host), pm.raw(), tag)
    new_ctx = FieldCtx(host.levels + (level,), host.cap)
    return new_ctx, new_ctx.gen(new_ctx.height - 1)


def _rational_root(p):
    """A rational root of p, or None.

    Only inspects polynomials whose coefficients are structurally rational,
    so the outcome is stable under context splits (replay safety).
    """
    try:
        cs = [c.as_fraction() for c in p.coeffs]
    except ValueError:
        return None
    den = 1
    for c in cs:
        den = den * c.denominator // _gcd_int(den, c.denominator)
    ints = [int(c * den) for c in cs]
    if ints[0] == 0:
        return Fraction(0)
    a0, an = abs(ints[0]), abs(ints[-1])
    if a0 > 10**6 or an > 10**6:
        return None
    for num in sorted(_divisors(a0)):
        for dq in sorted(_divisors(an)):
            for sgn in (1, -1):
                cand = Fraction(sgn * num, dq)
                if _eval_frac(cs, cand) == 0:
                    return cand
    return None


def _gcd_int(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n):
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return out


def _eval_frac(cs, x):
    acc = Fraction(0)
    for c in reversed(cs):
        acc = acc * x + c
    return acc


def invert(e):
    """Field inverse; DivisionByZero on zero, split error on a zero divisor."""
    return e.inv()


def split_on_zero_divisor(ctx, e):
    """Split ctx so that e is zero or invertible in every child context."""
    out = []
    stack = [(ctx, e if e.ctx is ctx else ctx.convert(e))]
    saw_split = False
    while stack:
        c, x = stack.pop()
        try:
            x.is_zero()
            out.append((c, x))
        except ZeroDivisorEncountered as ex:
            saw_split = True
            for child in ex.children():
                stack.append((child, child.convert(x)))
    if not saw_split:
        raise NotZeroDivisor("element is zero or invertible; nothing to split")
    out.sort(key=lambda pair: pair[0].total_degree(), reverse=True)
    return out


def all_roots(sess, p):
    """All roots of p with multiplicities, adjoining extensions on demand.

    Returns a list of (root, multiplicity); the session context grows as
    needed and the returned elements live in the final context.
    """
    if p.degree() < 1:
        return []
    rad = p.squarefree_radical()
    roots = []
    while rad.degree() >= 1:
        theta = sess.adjoin(rad)
        roots.append(theta)
        rad = Poly(sess.ctx, rad.coeffs).exact_div(Poly(sess.ctx, [-theta, 1]))
    out = []
    rem = Poly(sess.ctx, p.coeffs)
    for theta in roots:
        m = rem.root_multiplicity(theta)
        out.append((theta, m))
        lin = Poly(sess.ctx, [-theta, 1])
        for _ in range(m):
            rem = rem.exact_div(lin)
    return out


_CYCLO_CACHE = {1: (Fraction(-1), Fraction(1))}


def cyclotomic_coeffs(n):
    """Rational coefficient tuple of the n-th cyclotomic polynomial."""
    if n in _CYCLO_CACHE:
        return _CYCLO_CACHE[n]
    num = Poly(QQ, [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)])
    for d in range(1, n):
        if n % d == 0:
            num = num.exact_div(Poly(QQ, cyclotomic_coeffs(d)))
    coeffs = tuple(c.as_fraction() for c in num.coeffs)
    _CYCLO_CACHE[n] = coeffs
    return coeffs


# ---------------------------------------------------------------------------
# sessions: deterministic adjunction log + split replay + precision state


class Session:
    """Carries the growing field context through one deterministic run.

    Replays after a context split reuse the existing tower levels in
    creation order, so the run picks up the split constraints instead of
    stacking duplicate extensions.
    """

    def __init__(self, ctx, start_height=None, extra=8, tower_cap=None):
        if tower_cap is not None and ctx.cap != tower_cap:
            ctx = FieldCtx(ctx.levels, tower_cap)
        self.ctx = ctx
        self.start_height = ctx.height if start_height is None else start_height
        self.extra = extra
        self._request = 0
        self._zeta = {}

    def adjoin(self, p):
        """Root of squarefree p, replay-aware.

        Every call consumes one deterministic request id.  If an earlier
        attempt of the same run already created a tower level for this
        request (possibly since shrunk by splits), that level's generator is
        reused; this is what lets a split replay pick up its constraints.
        """
        tag = self._request
        self._request += 1
        for idx in range(self.start_height, self.ctx.height):
            if self.ctx.levels[idx].tag == tag:
                return self.ctx.gen(idx)
        pm = p.monic()
        if pm.degree() == 1:
            return self.ctx.convert(-pm.coeffs[0])
        r = _rational_root(pm)
        if r is not None:
            return self.ctx.rational(r)
        new_ctx, theta = adjoin_root(self.ctx, pm, tag=tag)
        self.ctx = new_ctx
        return theta

    def lift(self, e):
        if isinstance(e, (int, Fraction)):
            return self.ctx.rational(e)
        return self.ctx.convert(e)

    def root_of_unity(self, n):
        """A primitive n-th root of unity in the session context."""
        if n == 1:
            return self.ctx.one()
        if n == 2:
            return self.ctx.rational(-1)
        if n in self._zeta:
            return self.ctx.convert(self._zeta[n])
        phi = Poly(self.ctx, [self.ctx.rational(q) for q in cyclotomic_coeffs(n)])
        z = self.adjoin(phi)
        self._zeta[n] = z
        return z


def run_cases(ctx, task, extra=8, max_escalations=4, tower_cap=None):
    """Run task(session) across all dynamic-evaluation splits.

    Returns a list of (final_ctx, result) pairs, one per terminal context.
    InsufficientPrecision restarts the affected case with doubled working
    precision, up to max_escalations doublings.
    """
    base_height = ctx.height
    results = []
    stack = [ctx]
    while stack:
        c = stack.pop()
        bump = 0
        cur = extra
        while True:
            sess = Session(c, start_height=base_height, extra=cur, tower_cap=tower_cap)
            try:
                results.append((sess, task(sess)))
                break
            except ZeroDivisorEncountered as ex:
                stack.extend(ex.children())
                break
            except InsufficientPrecision:
                bump += 1
                if bump > max_escalations:
                    raise CapacityExceeded(
                        f"precision escalation cap ({max_escalations}) exhausted"
                    )
                cur *= 2
    return results


def irreducible_factors_q(p):
    """Irreducible factors over Q of a rational-coefficient Poly.

    Returns a list of (monic Poly over QQ, multiplicity); falls back to the
    unfactored input when the coefficients are not rational or sympy is
    unavailable.  Certified-irreducible levels never split, which keeps the
    per-class point drivers tight."""
    try:
        cs = [c.as_fraction() for c in p.coeffs]
    except ValueError:
        return [(p, 1)]
    try:
        import sympy
    except ImportError:  # pragma: no cover
        return [(p, 1)]
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(cs))
    _c, facs = sympy.Poly(expr, x).factor_list()
    out = []
    for fp, mult in facs:
        coeffs = fp.all_coeffs()[::-1]
        qs = [Fraction(str(sympy.nsimplify(c))) for c in coeffs]
        lead = qs[-1]
        qs = [q / lead for q in qs]
        out.append((Poly(QQ, qs), int(mult)))
    out.sort(key=lambda t: (t[0].degree(), [str(c.as_fraction()) for c in t[0].coeffs]))
    return out
