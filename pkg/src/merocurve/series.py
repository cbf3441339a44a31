"""Truncated Laurent/Puiseux series with certified order bookkeeping.

A series stores a ramification index nu, a finite term map
exponent -> coefficient (exponent e stands for X^(e/nu)), and a truncation
bound: every term with exponent strictly below `trunc` is present and exact.
`trunc is None` means the series is an exact Laurent polynomial on its grid.

Certified truncation is what makes exact zero-tests possible: a series that
is zero up to a finite bound raises InsufficientPrecision instead of lying,
and the caller escalates the producing computation's precision.
"""

from fractions import Fraction
from math import gcd

from .errors import DivisionByZero, InsufficientPrecision
from .extrat import INF, ExtRat
from .numfield import FieldElem


def _lcm(a, b):
    return a * b // gcd(a, b)


class PuiseuxSeries:
    __slots__ = ("ctx", "nu", "terms", "trunc")

    def __init__(self, ctx, nu, terms, trunc=None, checked=False):
        self.nu = nu
        if checked:
            self.ctx = ctx
            self.terms = dict(terms)
            self.trunc = trunc
            return
        clean = {}
        tall = ctx
        for e, c in terms.items():
            if not isinstance(c, FieldElem):
                c = ctx.rational(c)
            if trunc is not None and e >= trunc:
                continue
            if c.is_zero():
                continue
            clean[e] = c
            if c.ctx.height > tall.height:
                tall = c.ctx
        self.ctx = tall
        self.terms = {
            e: (tall.convert(c) if c.ctx is not tall else c) for e, c in clean.items()
        }
        self.trunc = trunc

    # -- constructors

    @staticmethod
    def zero(ctx, nu=1, trunc=None):
        return PuiseuxSeries(ctx, nu, {}, trunc, checked=True)

    @staticmethod
    def one(ctx, nu=1):
        return PuiseuxSeries(ctx, nu, {0: ctx.one()}, None, checked=True)

    @staticmethod
    def constant(ctx, value, nu=1):
        return PuiseuxSeries(ctx, nu, {0: value})

    @staticmethod
    def monomial(ctx, coeff, exp, nu=1):
        """coeff * X^(exp/nu)."""
        return PuiseuxSeries(ctx, nu, {exp: coeff})

    @staticmethod
    def from_x_poly(ctx, coeff_map, nu=1):
        """Exact series from {exponent: coefficient} on the (1/nu) grid."""
        return PuiseuxSeries(ctx, nu, dict(coeff_map))

    # -- basic queries

    def is_exact(self):
        return self.trunc is None

    def is_zero_certified(self):
        return self.trunc is None and not self.terms

    def known_zero_to_trunc(self):
        return not self.terms

    def ord(self):
        """Least exponent with nonzero coefficient, as an ExtRat."""
        if self.terms:
            return ExtRat(Fraction(min(self.terms), self.nu))
        if self.trunc is None:
            return INF
        raise InsufficientPrecision(
            f"series vanishes below its truncation bound X^{Fraction(self.trunc, self.nu)}"
        )

    def ord_exp(self):
        """Least exponent in grid units (terms must be nonempty)."""
        if not self.terms:
            if self.trunc is None:
                return None
            raise InsufficientPrecision("series has no certified leading term")
        return min(self.terms)

    def inco(self):
        """Leading coefficient; zero for the certified zero series."""
        if self.terms:
            return self.terms[min(self.terms)]
        if self.trunc is None:
            return self.ctx.zero()
        raise InsufficientPrecision("series has no certified leading term")

    def info(self):
        """Leading monomial as a series (0 for the certified zero series)."""
        if self.terms:
            e = min(self.terms)
            return PuiseuxSeries(self.ctx, self.nu, {e: self.terms[e]}, None, checked=True)
        if self.trunc is None:
            return PuiseuxSeries.zero(self.ctx, self.nu)
        raise InsufficientPrecision("series has no certified leading term")

    def coef(self, a):
        """Coefficient of X^a for an ExtRat/Fraction a.

        Zero when a is infinite or off the exponent grid; raises when a is
        at or beyond the truncation bound.
        """
        a = ExtRat.of(a)
        if not a.finite:
            return self.ctx.zero()
        e = a.as_fraction() * self.nu
        if e.denominator != 1:
            return self.ctx.zero()
        e = int(e)
        if self.trunc is not None and e >= self.trunc:
            raise InsufficientPrecision(f"coefficient of X^{a} is beyond the certified bound")
        return self.terms.get(e, self.ctx.zero())

    def coef_exp(self, e):
        """Coefficient at grid exponent e (no certification check)."""
        return self.terms.get(e, self.ctx.zero())

    def support(self):
        return sorted(self.terms)

    # -- grid handling

    def with_nu(self, new_nu):
        """Rewrite on a finer grid; new_nu must be a multiple of nu."""
        if new_nu == self.nu:
            return self
        k = new_nu // self.nu
        if k * self.nu != new_nu:
            raise ValueError("grid refinement must be by an integer factor")
        return PuiseuxSeries(
            self.ctx,
            new_nu,
            {e * k: c for e, c in self.terms.items()},
            None if self.trunc is None else self.trunc * k,
            checked=True,
        )

    def reduce_grid(self):
        """Smallest equivalent grid (cosmetic canonical form)."""
        g = self.nu
        for e in self.terms:
            g = gcd(g, e)
            if g == 1:
                return self
        if g == 1 or not self.terms:
            return self
        trunc = None
        if self.trunc is not None:
            trunc = (self.trunc - 1) // g + 1 if self.trunc > 0 else -((-self.trunc) // g)
        return PuiseuxSeries(
            self.ctx,
            self.nu // g,
            {e // g: c for e, c in self.terms.items()},
            trunc,
            checked=True,
        )

    def _common(self, other):
        nu = _lcm(self.nu, other.nu)
        return self.with_nu(nu), other.with_nu(nu)

    # -- arithmetic

    def __add__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            other = PuiseuxSeries.constant(self.ctx, other, 1)
        a, b = self._common(other)
        trunc = _min_trunc(a.trunc, b.trunc)
        terms = dict(a.terms)
        for e, c in b.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return PuiseuxSeries(a.ctx, a.nu, terms, trunc)

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries(
            self.ctx, self.nu, {e: -c for e, c in self.terms.items()}, self.trunc, checked=True
        )

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            other = PuiseuxSeries.constant(self.ctx, other, 1)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, FieldElem)):
            return PuiseuxSeries(
                self.ctx, self.nu, {e: c * other for e, c in self.terms.items()}, self.trunc
            )
        a, b = self._common(other)
        oa = min(a.terms) if a.terms else a.trunc
        ob = min(b.terms) if b.terms else b.trunc
        if a.trunc is None and b.trunc is None:
            trunc = None
        elif not a.terms and a.trunc is None:
            trunc = None  # exact zero
        elif not b.terms and b.trunc is None:
            trunc = None
        else:
            cands = []
            if a.trunc is not None:
                cands.append(a.trunc + (ob if ob is not None else 0))
            if b.trunc is not None:
                cands.append(b.trunc + (oa if oa is not None else 0))
            trunc = min(cands)
        terms = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = e1 + e2
                if trunc is not None and e >= trunc:
                    continue
                prod = c1 * c2
                terms[e] = terms[e] + prod if e in terms else prod
        return PuiseuxSeries(a.ctx, a.nu, terms, trunc)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers: use invert")
        out = PuiseuxSeries.one(self.ctx, self.nu)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def invert(self, prec=None):
        """Multiplicative inverse, exact for monomials.

        For non-monomial series, `prec` (grid units on this grid) bounds the
        exponents of the computed inverse when the input is exact; truncated
        inputs default to their own maximal attainable precision.
        """
        if not self.terms:
            if self.trunc is None:
                raise DivisionByZero("inverse of the zero series")
            raise InsufficientPrecision("inverse needs a certified leading term")
        m = min(self.terms)
        lead = self.terms[m]
        lead_inv = lead.inv()
        if len(self.terms) == 1 and self.trunc is None:
            return PuiseuxSeries(self.ctx, self.nu, {-m: lead_inv}, None, checked=True)
        if self.trunc is not None:
            natural = self.trunc - 2 * m
            prec = natural if prec is None else min(prec, natural)
        elif prec is None:
            raise ValueError("inverting an exact non-monomial series needs a precision bound")
        # s = lead * X^(m/nu) (1 + u); 1/s = X^(-m/nu)/lead * sum (-u)^k
        rel = prec + m  # exponent bound for 1/(1+u)
        u_terms = {}
        for e, c in self.terms.items():
            if e == m:
                continue
            u_terms[e - m] = c * lead_inv
        u = PuiseuxSeries(self.ctx, self.nu, u_terms, None, checked=True)
        acc = PuiseuxSeries.one(self.ctx, self.nu)
        out = PuiseuxSeries.one(self.ctx, self.nu)
        min_u = min(u_terms) if u_terms else None
        k = 1
        while min_u is not None and k * min_u < rel:
            acc = (acc * (-1)) * u
            acc = acc.truncate_to(rel)
            if not acc.terms:
                break
            out = out + acc
            k += 1
        result = {e - m: c * lead_inv for e, c in out.terms.items() if e - m < prec}
        return PuiseuxSeries(self.ctx, self.nu, result, prec, checked=True)

    def derivative_x(self):
        """d/dX: X^q maps to q X^(q-1)."""
        terms = {}
        for e, c in self.terms.items():
            terms[e - self.nu] = c * Fraction(e, self.nu)
        trunc = None if self.trunc is None else self.trunc - self.nu
        return PuiseuxSeries(self.ctx, self.nu, terms, trunc)

    def ramify(self, k):
        """Substitute X -> X^k (k a positive integer)."""
        return PuiseuxSeries(
            self.ctx,
            self.nu,
            {e * k: c for e, c in self.terms.items()},
            None if self.trunc is None else self.trunc * k,
            checked=True,
        )

    def shift_exp(self, e0):
        """Multiply by X^(e0/nu)."""
        return PuiseuxSeries(
            self.ctx,
            self.nu,
            {e + e0: c for e, c in self.terms.items()},
            None if self.trunc is None else self.trunc + e0,
            checked=True,
        )

    def twist(self, zeta, order):
        """Substitute X^(1/nu) -> zeta * X^(1/nu) for an order-`order` root of unity."""
        powers = {}
        terms = {}
        for e, c in self.terms.items():
            r = e % order
            if r not in powers:
                powers[r] = zeta**r
            terms[e] = c * powers[r]
        return PuiseuxSeries(self.ctx, self.nu, terms, self.trunc)

    def truncate_to(self, bound):
        """Forget terms at exponent >= bound and cap the certification there."""
        trunc = bound if self.trunc is None else min(self.trunc, bound)
        return PuiseuxSeries(
            self.ctx,
            self.nu,
            {e: c for e, c in self.terms.items() if e < trunc},
            trunc,
            checked=True,
        )

    def map_coeff(self, fn):
        return PuiseuxSeries(self.ctx, self.nu, {e: fn(c) for e, c in self.terms.items()}, self.trunc)

    def convert(self, ctx):
        return PuiseuxSeries(
            ctx, self.nu, {e: ctx.convert(c) for e, c in self.terms.items()}, self.trunc
        )

    # -- comparisons

    def eq_exact(self, other):
        """Mathematical equality; both series must be exact."""
        if isinstance(other, (int, Fraction, FieldElem)):
            other = PuiseuxSeries.constant(self.ctx, other, 1)
        d = self - other
        if d.trunc is not None:
            raise InsufficientPrecision("equality test on truncated series")
        return not d.terms

    def agrees_below(self, other, bound_frac):
        """Certified agreement of all terms with exponent < bound (in X units)."""
        d = self - other
        lim = bound_frac * d.nu
        if d.trunc is not None and d.trunc < lim:
            raise InsufficientPrecision("agreement bound exceeds certified precision")
        return all(Fraction(e, d.nu) >= bound_frac for e in d.terms)

    def __repr__(self):
        return self.text("X")

    def text(self, var="X"):
        if not self.terms:
            base = "0"
        else:
            parts = []
            for e in sorted(self.terms):
                c = self.terms[e]
                q = Fraction(e, self.nu)
                cs = repr(c)
                if q == 0:
                    parts.append(cs)
                    continue
                mono = var if q == 1 else f"{var}^{q}" if q.denominator == 1 else f"{var}^({q})"
                parts.append(mono if cs == "1" else f"({cs})*{mono}")
            base = " + ".join(parts)
        if self.trunc is None:
            return base
        return f"{base} + O({var}^{Fraction(self.trunc, self.nu)})"


def _min_trunc(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)
