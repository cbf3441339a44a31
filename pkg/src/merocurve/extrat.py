"""Extended rationals: Fraction values together with +inf and -inf.

Conventions follow the intersection-multiplicity calculus: a finite sum is
infinite as soon as one summand is, the product of an infinity with a
positive quantity keeps the sign, zero times an infinity is zero, and the
empty sum is zero.  Adding +inf to -inf is a hard error.
"""

from fractions import Fraction


class ExtRat:
    """A rational number, +infinity, or -infinity, totally ordered."""

    __slots__ = ("sign", "value")

    def __init__(self, value=0, sign=0):
        # sign: 0 finite (value is a Fraction), +1 / -1 infinite.
        if sign:
            self.sign = sign
            self.value = None
        else:
            self.sign = 0
            self.value = Fraction(value)

    @property
    def finite(self):
        return self.sign == 0

    def as_fraction(self):
        if self.sign:
            raise ArithmeticError("infinite value has no Fraction form")
        return self.value

    def as_int(self):
        f = self.as_fraction()
        if f.denominator != 1:
            raise ArithmeticError(f"{f} is not an integer")
        return f.numerator

    @staticmethod
    def of(x):
        if isinstance(x, ExtRat):
            return x
        return ExtRat(x)

    def __add__(self, other):
        other = ExtRat.of(other)
        if self.sign == 0 and other.sign == 0:
            return ExtRat(self.value + other.value)
        if self.sign and other.sign and self.sign != other.sign:
            raise ArithmeticError("inf + (-inf) is undefined")
        return ExtRat(sign=self.sign or other.sign)

    __radd__ = __add__

    def __neg__(self):
        if self.sign:
            return ExtRat(sign=-self.sign)
        return ExtRat(-self.value)

    def __sub__(self, other):
        return self + (-ExtRat.of(other))

    def __rsub__(self, other):
        return ExtRat.of(other) + (-self)

    def __mul__(self, other):
        other = ExtRat.of(other)
        if self.sign == 0 and other.sign == 0:
            return ExtRat(self.value * other.value)
        # zero times an infinity is zero by convention
        if (self.sign == 0 and self.value == 0) or (other.sign == 0 and other.value == 0):
            return ExtRat(0)
        sa = self.sign if self.sign else (1 if self.value > 0 else -1)
        sb = other.sign if other.sign else (1 if other.value > 0 else -1)
        return ExtRat(sign=sa * sb)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = ExtRat.of(other)
        if other.sign:
            raise ArithmeticError("division by an infinity")
        if other.value == 0:
            raise ZeroDivisionError("division by zero")
        if self.sign:
            return ExtRat(sign=self.sign * (1 if other.value > 0 else -1))
        return ExtRat(self.value / other.value)

    def __eq__(self, other):
        if not isinstance(other, (ExtRat, int, Fraction)):
            return NotImplemented
        other = ExtRat.of(other)
        if self.sign or other.sign:
            return self.sign == other.sign
        return self.value == other.value

    def __lt__(self, other):
        other = ExtRat.of(other)
        if self.sign == other.sign:
            return self.sign == 0 and self.value < other.value
        return self.sign < other.sign

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        return ExtRat.of(other) < self

    def __ge__(self, other):
        return self == other or self > other

    def __hash__(self):
        if self.sign:
            return hash(("extrat-inf", self.sign))
        return hash(self.value)

    def __repr__(self):
        return self.text()

    def text(self):
        """Exact text form: "p/q", "p", "inf", or "-inf"."""
        if self.sign > 0:
            return "inf"
        if self.sign < 0:
            return "-inf"
        return str(self.value)


INF = ExtRat(sign=1)
NEG_INF = ExtRat(sign=-1)
ZERO = ExtRat(0)


def ext_min(items, empty=INF):
    """Minimum of an iterable of ExtRat, `empty` for an empty family."""
    best = None
    for x in items:
        x = ExtRat.of(x)
        if best is None or x < best:
            best = x
    return empty if best is None else best


def ext_max(items, empty=NEG_INF):
    best = None
    for x in items:
        x = ExtRat.of(x)
        if best is None or x > best:
            best = x
    return empty if best is None else best


def ext_sum(items):
    """Sum with the infinity convention; the empty sum is zero."""
    total = ZERO
    for x in items:
        total = total + ExtRat.of(x)
    return total


def parse_extrat(text):
    """Inverse of ExtRat.text()."""
    t = text.strip()
    if t == "inf":
        return INF
    if t == "-inf":
        return NEG_INF
    return ExtRat(Fraction(t))
