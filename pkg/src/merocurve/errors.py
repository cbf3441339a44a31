"""Exception hierarchy shared by all merocurve modules."""


class MerocurveError(Exception):
    """Base class for every error raised by this package."""


class ParseError(MerocurveError):
    """Malformed curve expression; carries the offending position."""

    def __init__(self, message, pos=None):
        super().__init__(message if pos is None else f"{message} (at position {pos})")
        self.pos = pos


class NotSquarefree(MerocurveError):
    pass


class NotZeroDivisor(MerocurveError):
    pass


class DivisionByZero(MerocurveError):
    pass


class ZeroDivisorEncountered(MerocurveError):
    """A zero divisor turned up mid-computation.

    Carries everything needed to split the ambient field context and replay
    the computation per child.  `ctx` is the context at the moment of the
    split, `level` the 1-based tower level whose defining polynomial admits
    the proper monic factor `factor` (a raw coefficient tuple over the level
    below).
    """

    def __init__(self, ctx, level, factor):
        super().__init__(f"zero divisor at tower level {level}")
        self.ctx = ctx
        self.level = level
        self.factor = factor

    def children(self):
        return self.ctx.split_level(self.level, self.factor)


class InsufficientPrecision(MerocurveError):
    """A series was zero (or undetermined) up to its truncation bound."""


class CapacityExceeded(MerocurveError):
    """Tower degree cap or precision-escalation cap exhausted."""


class HypothesisNotMet(MerocurveError):
    """A verifier's stated hypothesis fails on the given input."""

    def __init__(self, name, detail=""):
        super().__init__(f"hypothesis not met: {name}" + (f" ({detail})" if detail else ""))
        self.name = name


class SoundnessViolation(MerocurveError):
    """An internal consistency assertion failed; a bug, never user error."""


class NonpositiveDegree(MerocurveError):
    pass


class ZeroInput(MerocurveError):
    pass


class NotKMonic(MerocurveError):
    pass


class NotCoprime(MerocurveError):
    pass


class NotPolynomialAssociate(MerocurveError):
    pass


class NotIrreducible(MerocurveError):
    pass


class NotDivisible(MerocurveError):
    """Exact division was requested but the remainder is nonzero."""


class UnsupportedInvariant(MerocurveError):
    """Invariant outside the supported calculus (for example the torsion size)."""
