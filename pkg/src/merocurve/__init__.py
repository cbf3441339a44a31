"""Exact invariants of meromorphic plane curves.

Intersection multiplicities, residues, alpha/beta/betabar invariants,
Newton polygons, branch packets, and machine checks of the identities that
tie them together, over a dynamically extended exact number field.
"""

from .errors import (
    CapacityExceeded,
    DivisionByZero,
    HypothesisNotMet,
    InsufficientPrecision,
    MerocurveError,
    NotCoprime,
    NotIrreducible,
    NotKMonic,
    NotPolynomialAssociate,
    NotSquarefree,
    NotZeroDivisor,
    ParseError,
    SoundnessViolation,
    UnsupportedInvariant,
    ZeroDivisorEncountered,
)
from .extrat import INF, NEG_INF, ExtRat
from .numfield import (
    QQ,
    FieldCtx,
    FieldElem,
    Poly,
    Session,
    adjoin_root,
    all_roots,
    invert,
    run_cases,
    split_on_zero_divisor,
)
from .series import PuiseuxSeries
from .meropoly import (
    MeroPoly,
    gcd_mero,
    gcd_trivial,
    int_mult,
    jacobian,
    radical,
    resultant_y,
    squarefree_decomposition,
)
from .newton import (
    NewtonPolygon,
    Relation,
    enp_relation,
    eval_at_slope,
    related,
    unp,
    unp_relation,
    verify_main_lemma,
)
from .puiseux import Branch, Factorization, factor, noc, rnoc
from .invariants import (
    BetaReport,
    beta_report,
    betabar_report,
    delta_branch_route,
    delta_distinguished,
    verify_identity,
)
from .exprs import parse_curve, parse_series, print_curve

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
