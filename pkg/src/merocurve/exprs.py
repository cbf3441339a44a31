"""The curve expression grammar and its printer.

Expressions are sums of products of powers of X, Y, and parenthesized
rationals: "Y^3 + (3/2)*X^(-1/2)*Y", "Y^2 - X^3".  X exponents may be any
rational (explicit fractions give the series grid); Y exponents must be
nonnegative integers.  print(parse(s)) reparses to an equal value.
"""

from fractions import Fraction

from .errors import ParseError
from .meropoly import MeroPoly


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self):
        ch = self.peek()
        self.pos += 1
        return ch

    def expect(self, ch):
        got = self.take()
        if got != ch:
            raise ParseError(f"expected '{ch}', found '{got or 'end of input'}'", self.pos)

    def number(self):
        start = self.pos
        digits = ""
        while self.peek().isdigit():
            digits += self.take()
        if not digits:
            raise ParseError("expected a number", start)
        if self.peek() == "/":
            self.take()
            den = ""
            while self.peek().isdigit():
                den += self.take()
            if not den:
                raise ParseError("expected a denominator", self.pos)
            return Fraction(int(digits), int(den))
        return Fraction(int(digits))


def _parse_expr(sc):
    terms = _parse_term(sc)
    while sc.peek() and sc.peek() in "+-":
        op = sc.take()
        nxt = _parse_term(sc)
        if op == "-":
            nxt = {k: -v for k, v in nxt.items()}
        terms = _add(terms, nxt)
    return terms


def _parse_term(sc):
    sign = Fraction(1)
    while sc.peek() and sc.peek() in "+-":
        if sc.take() == "-":
            sign = -sign
    acc = _parse_factor(sc)
    while True:
        ch = sc.peek()
        if ch == "*":
            sc.take()
            acc = _mul(acc, _parse_factor(sc))
        elif ch and (ch in "XYxy(" or ch.isdigit()):
            acc = _mul(acc, _parse_factor(sc))
        else:
            break
    if sign != 1:
        acc = {k: v * sign for k, v in acc.items()}
    return acc


def _parse_factor(sc):
    base = _parse_atom(sc)
    if sc.peek() == "^":
        sc.take()
        if sc.peek() == "^":
            raise ParseError("repeated exponentiation operator", sc.pos)
        e = _parse_exponent(sc)
        return _pow(base, e, sc)
    return base


def _parse_exponent(sc):
    if sc.peek() == "(":
        sc.take()
        sign = Fraction(1)
        while sc.peek() and sc.peek() in "+-":
            if sc.take() == "-":
                sign = -sign
        v = sc.number() * sign
        sc.expect(")")
        return v
    sign = Fraction(1)
    while sc.peek() and sc.peek() in "+-":
        if sc.take() == "-":
            sign = -sign
    return sc.number() * sign


def _parse_atom(sc):
    ch = sc.peek()
    if ch == "(":
        sc.take()
        inner = _parse_expr(sc)
        sc.expect(")")
        return inner
    if ch and ch in "Xx":
        sc.take()
        return {(Fraction(1), 0): Fraction(1)}
    if ch and ch in "Yy":
        sc.take()
        return {(Fraction(0), 1): Fraction(1)}
    if ch and ch.isdigit():
        return {(Fraction(0), 0): sc.number()}
    raise ParseError(f"unexpected character '{ch or 'end of input'}'", sc.pos)


def _add(a, b):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, Fraction(0)) + v
    return {k: v for k, v in out.items() if v != 0}


def _mul(a, b):
    out = {}
    for (xa, ya), va in a.items():
        for (xb, yb), vb in b.items():
            k = (xa + xb, ya + yb)
            out[k] = out.get(k, Fraction(0)) + va * vb
    return {k: v for k, v in out.items() if v != 0}


def _pow(base, e, sc):
    if len(base) == 1:
        ((xe, ye), c) = next(iter(base.items()))
        if c == 1 and ye == 0:
            return {(xe * e, 0): Fraction(1)}
        if c == 1 and xe == 0:
            if e.denominator != 1 or e < 0:
                raise ParseError("Y exponents must be nonnegative integers", sc.pos)
            return {(Fraction(0), ye * int(e)): Fraction(1)}
    if e.denominator != 1 or e < 0:
        raise ParseError("only X admits fractional or negative exponents", sc.pos)
    acc = {(Fraction(0), 0): Fraction(1)}
    for _ in range(int(e)):
        acc = _mul(acc, base)
    return acc


def parse_curve(ctx, text):
    """Parse an expression into a MeroPoly over the given field context."""
    sc = _Scanner(text)
    terms = _parse_expr(sc)
    if sc.peek():
        raise ParseError(f"trailing input '{sc.text[sc.pos:]}'", sc.pos)
    for (_xe, ye), _v in terms.items():
        if ye < 0:
            raise ParseError("negative Y exponent")
    if not terms:
        return MeroPoly.zero(ctx)
    return MeroPoly.from_terms(ctx, terms)


def print_curve(f, xvar="X", yvar="Y"):
    """Canonical text form; parses back to an equal curve."""
    parts = []
    terms = []
    for j in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeff(j)
        for e in sorted(c.terms):
            q = Fraction(e, c.nu)
            terms.append((j, q, c.terms[e]))
    if not terms:
        return "0"
    for j, q, v in terms:
        v = v.as_fraction() if hasattr(v, "as_fraction") else Fraction(v)
        mono = []
        if q != 0:
            mono.append(
                xvar
                if q == 1
                else (f"{xvar}^{q}" if q.denominator == 1 and q > 0 else f"{xvar}^({q})")
            )
        if j != 0:
            mono.append(yvar if j == 1 else f"{yvar}^{j}")
        coeff = ""
        if v == -1 and mono:
            parts.append("-" + "*".join(mono))
            continue
        if v != 1 or not mono:
            coeff = str(v) if v.denominator == 1 else f"({v})"
        parts.append("*".join(([coeff] if coeff else []) + mono))
    return " + ".join(parts).replace("+ -", "- ")


def parse_series(ctx, text):
    """Parse a Y-free expression as a Puiseux series in X."""
    f = parse_curve(ctx, text)
    if not f.is_zero_mero() and f.deg_y_int() > 0:
        raise ParseError("expected a series in X only")
    return f.coeff(0)
