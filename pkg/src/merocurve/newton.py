"""Usual and Enhanced Newton Polygon calculus.

The polygon is computed purely from the coefficient support of F (lower
convex hull in the (X-order, Y-power) plane); the Puiseux-root recomputation
is a test oracle only.  Side data: root orders O_i (strictly increasing,
the last possibly +inf), vertical labels L_i, horizontal labels Lam_i, and
the side polynomials P_i placed on the sides.

Degenerate case F(X,0) = 0: the polygon closes with a half-infinite side of
order +inf whose label counts the multiplicity of the root Y | F, and the
last horizontal label is +inf (= int(F,Y)).
"""

from fractions import Fraction

from .errors import HypothesisNotMet, NonpositiveDegree, ZeroInput
from .extrat import INF, ExtRat
from .meropoly import jacobian
from .numfield import Poly


class NewtonPolygon:
    """UNP data of a nonzero F with deg_Y F > 0."""

    __slots__ = ("n", "iota", "orders", "labels", "levels", "sides", "o_tilde")

    def __init__(self, n, orders, labels, levels, sides, o_tilde):
        self.n = n
        self.iota = len(orders) - 1
        self.orders = orders  # O_0 .. O_iota (ExtRat)
        self.labels = labels  # L_1 .. L_{iota+1} (int)
        self.levels = levels  # Lam_1 .. Lam_{iota+1} (ExtRat)
        self.sides = sides  # P_1 .. P_iota (Poly)
        self.o_tilde = o_tilde  # postfinal root order

    @property
    def o_hat(self):
        return self.orders[-1]

    @property
    def l_hat(self):
        return self.labels[self.iota - 1]

    @property
    def l_tilde(self):
        return self.labels[self.iota]

    @property
    def lam_hat(self):
        return self.levels[self.iota - 1]

    @property
    def lam_tilde(self):
        return self.levels[self.iota]

    @property
    def p_hat(self):
        return self.sides[-1]

    def vertices(self):
        """CNP vertex list [(Lam_i, L_i)] for i = 1..iota+1."""
        return list(zip(self.levels, self.labels))

    def __repr__(self):
        return (
            f"UNP(iota={self.iota}, O={self.orders}, L={self.labels}, "
            f"Lam={self.levels})"
        )


def _support(f):
    """[(j, ord_j)] over nonzero coefficients, plus full term grid."""
    pts = []
    for j in range(len(f.coeffs)):
        c = f.coeff(j)
        if c.terms:
            pts.append((j, Fraction(min(c.terms), c.nu)))
        elif not c.is_exact():
            c.ord()  # raises InsufficientPrecision
    return pts


def unp(f):
    """The Usual Newton Polygon of F (requires deg_Y F > 0)."""
    if f.is_zero_mero() or f.deg_y_int() <= 0:
        raise NonpositiveDegree("the Newton polygon needs positive Y-degree")
    n = f.deg_y_int()
    pts = _support(f)
    o0 = ExtRat(pts[-1][1])  # ord of the leading coefficient
    s = pts[0][0]  # lowest Y-power present = multiplicity of the root Y
    # lower convex hull walked from j = n down to j = s
    hull = []
    for j, q in sorted(pts, key=lambda t: -t[0]):
        while len(hull) >= 2:
            (j1, q1), (j2, q2) = hull[-2], hull[-1]
            # pop if hull[-1] lies on or above segment hull[-2] -> (j, q)
            if (q2 - q1) * (j1 - j) >= (q - q1) * (j1 - j2):
                hull.pop()
            else:
                break
        hull.append((j, q))
    orders = [o0]
    labels = []
    levels = [o0]
    sides = []
    for (j1, q1), (j2, q2) in zip(hull, hull[1:]):
        o = ExtRat(Fraction(q2 - q1, j1 - j2))
        orders.append(o)
        labels.append(j1)
        _, _, p = _slope_data(f, o.as_fraction())
        sides.append(p)
        levels.append(ExtRat(q2))
    if s > 0:
        # half-infinite side collecting the roots of order +inf (Y | F)
        orders.append(INF)
        labels.append(s)
        sides.append(Poly(f.ctx, [f.ctx.zero()] * s + [f.coeff(s).inco()]))
        labels.append(s)
        levels.append(INF)
    else:
        labels.append(0)
    o_tilde = f.eval_y0().ord() / ExtRat(n)
    poly = NewtonPolygon(n, orders, labels, levels, sides, o_tilde)
    _check_polygon(poly)
    return poly


def _check_polygon(poly):
    """Assert the defining label/level identities on the finite sides."""
    from .errors import SoundnessViolation

    if poly.labels[0] != poly.n:
        raise SoundnessViolation("L_1 != N")
    for i in range(1, poly.iota + 1):
        li, lnext = poly.labels[i - 1], poly.labels[i]
        oi = poly.orders[i]
        p = poly.sides[i - 1]
        if p.degree() != li or p.ord_y() != lnext:
            raise SoundnessViolation("side polynomial degree/order mismatch")
        if not oi.finite:
            continue
        lam, lam_next = poly.levels[i - 1], poly.levels[i]
        if lam + ExtRat(li - lnext) * oi != lam_next:
            raise SoundnessViolation("horizontal labels violate the side recurrence")


def _slope_data(f, c):
    """(Lam(F,c), Lam*(F,c), P^(F,c)) for a finite rational slope c."""
    best = None
    for j in range(len(f.coeffs)):
        col = f.coeff(j)
        for e in col.terms:
            v = Fraction(e, col.nu) + c * j
            if best is None or v < best:
                best = v
    coeffs = {}
    for j in range(len(f.coeffs)):
        col = f.coeff(j)
        for e, cf in col.terms.items():
            if Fraction(e, col.nu) + c * j == best:
                coeffs[j] = coeffs.get(j, f.ctx.zero()) + cf
    top = max(coeffs)
    p = Poly(f.ctx, [coeffs.get(j, f.ctx.zero()) for j in range(top + 1)])
    lam_star = ExtRat(best)
    lam = lam_star - ExtRat(c) * p.ord_y()
    return lam, lam_star, p


def eval_at_slope(f, c):
    """Vertical labels, horizontal levels and the polynomial of F at slope c.

    Returns (L, L*, Lam, Lam*, P).  c may be a rational or +inf.
    """
    if f.is_zero_mero() or f.deg_y_int() <= 0:
        raise NonpositiveDegree("slope data needs positive Y-degree")
    c = ExtRat.of(c)
    if not c.finite:
        if c < 0:
            raise ValueError("slope -inf is not part of the calculus")
        pts = _support(f)
        s = pts[0][0]
        if s == 0:
            return 0, 0, f.eval_y0().ord(), f.eval_y0().ord(), Poly.const(
                f.ctx, f.eval_y0().inco()
            )
        p = Poly(f.ctx, [f.ctx.zero()] * s + [f.coeff(s).inco()])
        return s, s, INF, INF, p
    lam, lam_star, p = _slope_data(f, c.as_fraction())
    return p.degree(), p.ord_y(), lam, lam_star, p


def related(p, q):
    """P and Q are related: P^deg(Q) is a nonzero constant times Q^deg(P)."""
    if p.is_zero_poly() or q.is_zero_poly():
        raise ZeroInput("relatedness is defined for nonzero polynomials")
    n, m = p.degree(), q.degree()
    a = p**m
    b = q**n
    c = a.lc() / b.lc()
    return (a - b * c).is_zero_poly()


class Relation:
    """Outcome of a polygon comparison."""

    PARALLEL = "parallel"
    F_SMALLER = "F_smaller"
    G_SMALLER = "G_smaller"
    FAIL = "pseudoparallel_fail"

    def __init__(self, kind, j_step):
        self.kind = kind
        self.j_step = j_step  # how far j-step parallelness extends

    @property
    def pseudoparallel(self):
        return self.kind != Relation.FAIL

    def __repr__(self):
        return f"Relation({self.kind}, j_step={self.j_step})"

    def __eq__(self, other):
        if isinstance(other, str):
            return self.kind == other
        return self.kind == other.kind and self.j_step == other.j_step


def _step_parallel(pf, pg, n, m, j, enhanced):
    """The ||_j test; for the enhanced polygons the side polynomials up to
    step j-1 must additionally be related."""
    if j > min(pf.iota, pg.iota) or m * pf.orders[0] != n * pg.orders[0]:
        return False
    for i in range(1, j + 1):
        if pf.orders[i] != pg.orders[i]:
            return False
        if m * pf.labels[i - 1] != n * pg.labels[i - 1]:
            return False
    if enhanced:
        for i in range(1, j):
            if not related(pf.sides[i - 1], pg.sides[i - 1]):
                return False
    return True


def _j_step_reach(pf, pg, n, m, enhanced):
    reach = -1
    for j in range(0, min(pf.iota, pg.iota) + 1):
        if _step_parallel(pf, pg, n, m, j, enhanced):
            reach = j
        else:
            break
    return reach


def _relation(pf, pg, n, m, enhanced):
    reach = _j_step_reach(pf, pg, n, m, enhanced)
    if reach < 0:
        return Relation(Relation.FAIL, -1)
    if pf.iota == pg.iota and _step_parallel(pf, pg, n, m, pf.iota, enhanced):
        return Relation(Relation.PARALLEL, reach)
    pairs = (
        (pf, pg, n, m, Relation.F_SMALLER),
        (pg, pf, m, n, Relation.G_SMALLER),
    )
    for a, b, da, db, kind in pairs:
        if not (a.o_hat < b.o_hat and b.l_hat == 1):
            continue
        if a.iota == b.iota:
            if db * a.l_hat == da * b.l_hat and _step_parallel(
                pf, pg, n, m, a.iota - 1, enhanced
            ):
                return Relation(kind, reach)
        elif a.iota == b.iota - 1:
            if _step_parallel(pf, pg, n, m, a.iota, enhanced):
                return Relation(kind, reach)
    return Relation(Relation.FAIL, reach)


def unp_relation(f, g):
    """Pseudoparallelness verdict for the usual polygons."""
    n, m = f.deg_y_int(), g.deg_y_int()
    if n <= 0 or m <= 0:
        raise NonpositiveDegree("polygon relations need positive degrees")
    return _relation(unp(f), unp(g), n, m, enhanced=False)


def enp(f):
    """Enhanced Newton Polygon: the orders plus the side polynomials."""
    p = unp(f)
    return p  # the UNP object already carries the side polynomials


def enp_relation(f, g):
    n, m = f.deg_y_int(), g.deg_y_int()
    if n <= 0 or m <= 0:
        raise NonpositiveDegree("polygon relations need positive degrees")
    return _relation(unp(f), unp(g), n, m, enhanced=True)


class MainLemmaReport:
    def __init__(self, passed, relation, enp_rel, related_pairs, equal_final, extras, failures):
        self.passed = passed
        self.relation = relation
        self.enp_relation = enp_rel
        self.related_pairs = related_pairs
        self.equal_final = equal_final
        self.extras = extras
        self.failures = failures

    def to_json(self):
        return {
            "pass": self.passed,
            "unp_relation": self.relation.kind,
            "enp_relation": self.enp_relation.kind,
            "j_step": self.relation.j_step,
            "related_pairs": self.related_pairs,
            "equal_final_order": self.equal_final,
            "extras": self.extras,
            "failures": self.failures,
        }


def verify_main_lemma(f, g, enhanced=False):
    """Check every conclusion of the parallelness lemma on a concrete pair.

    Hypotheses (raised as HypothesisNotMet when they fail): positive
    degrees, jacobian free of Y, proportional order-zero labels, and a
    negative intersection with Y on at least one side.
    """
    if f.is_zero_mero() or g.is_zero_mero():
        raise NonpositiveDegree("zero input")
    n, m = f.deg_y_int(), g.deg_y_int()
    if n <= 0 or m <= 0:
        raise NonpositiveDegree("positive Y-degrees required")
    jac = jacobian(f, g)
    if not jac.is_zero_mero() and jac.deg_y_int() > 0:
        raise HypothesisNotMet("J(F,G) in k((X))", "the jacobian involves Y")
    pf, pg = unp(f), unp(g)
    if m * pf.orders[0] != n * pg.orders[0]:
        raise HypothesisNotMet("O_0 proportionality", "M*O_0(F) != N*O_0(G)")
    int_fy = f.eval_y0().ord() if f.coeff(0).terms or f.coeff(0).is_exact() else f.coeff(0).ord()
    int_gy = g.eval_y0().ord() if g.coeff(0).terms or g.coeff(0).is_exact() else g.coeff(0).ord()
    if not (int_fy < 0 or int_gy < 0):
        raise HypothesisNotMet("int(F,Y)<0 or int(G,Y)<0")
    failures = []
    rel = _relation(pf, pg, n, m, enhanced=False)
    enp_rel = _relation(pf, pg, n, m, enhanced=True)
    if not rel.pseudoparallel:
        failures.append("UNP(F) |.| UNP(G) fails")
    if not enp_rel.pseudoparallel:
        failures.append("ENP(F) |.| ENP(G) fails")
    related_pairs = []
    for i in range(1, min(pf.iota, pg.iota)):
        ok = related(pf.sides[i - 1], pg.sides[i - 1])
        related_pairs.append(ok)
        if not ok:
            failures.append(f"side polynomials at step {i} are not related")
    equal_final = pf.o_hat == pg.o_hat
    extras = {}
    if equal_final:
        if rel.kind != Relation.PARALLEL:
            failures.append("equal final orders but polygons not parallel")
        lhs, rhs = ExtRat(m) * int_fy, ExtRat(n) * int_gy
        extras["M*int(F,Y) == N*int(G,Y)"] = lhs == rhs
        if lhs != rhs:
            failures.append("M*int(F,Y) != N*int(G,Y)")
        extras["M*Lhat(F) == N*Lhat(G)"] = m * pf.l_hat == n * pg.l_hat
        if m * pf.l_hat != n * pg.l_hat:
            failures.append("M*Lhat(F) != N*Lhat(G)")
    return MainLemmaReport(
        not failures, rel, enp_rel, related_pairs, equal_final, extras, failures
    )
