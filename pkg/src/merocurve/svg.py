"""SVG rendering of the customary Newton polygon picture.

Vertices sit at the horizontal/vertical label pairs, sides carry their root
orders, each side shows its placed polynomial, and the closing hypotenuse
of postfinal slope is optional.  Infinite coordinates are drawn as
half-infinite horizontal rays clipped at the viewport edge.
"""

from fractions import Fraction

W, H, PAD = 480, 360, 48


def _finite_points(poly):
    pts = []
    for lam, lab in zip(poly.levels, poly.labels):
        if lam.finite:
            pts.append((Fraction(lam.as_fraction()), Fraction(lab)))
    return pts


def polygon_svg(poly, side_texts=None, hypotenuse=True):
    """The picture as an SVG string."""
    pts = _finite_points(poly)
    if not pts:
        pts = [(Fraction(0), Fraction(poly.n))]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts] + [Fraction(0)]
    x0, x1 = min(xs), max(xs) + 1
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y1 = y0 + 1
    sx = (W - 2 * PAD) / float(x1 - x0)
    sy = (H - 2 * PAD) / float(y1 - y0)

    def px(x):
        return PAD + (float(x) - float(x0)) * sx

    def py(y):
        return H - PAD - (float(y) - float(y0)) * sy

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" '
        f'viewBox="0 0 {W} {H}">',
        f'<rect width="{W}" height="{H}" fill="white"/>',
    ]
    # axes
    out.append(
        f'<line x1="{PAD}" y1="{py(0)}" x2="{W - 8}" y2="{py(0)}" stroke="#999"/>'
    )
    out.append(f'<line x1="{px(0)}" y1="{H - PAD}" x2="{px(0)}" y2="8" stroke="#999"/>')
    verts = []
    for i in range(poly.iota + 1):
        lam, lab = poly.levels[i], poly.labels[i]
        if lam.finite:
            verts.append((px(lam.as_fraction()), py(lab), lam, lab))
    # sides
    for i in range(poly.iota):
        lam1, lab1 = poly.levels[i], poly.labels[i]
        lam2, lab2 = poly.levels[i + 1], poly.labels[i + 1]
        o = poly.orders[i + 1]
        if lam1.finite and lam2.finite:
            x1p, y1p = px(lam1.as_fraction()), py(lab1)
            x2p, y2p = px(lam2.as_fraction()), py(lab2)
        elif lam1.finite:
            x1p, y1p = px(lam1.as_fraction()), py(lab1)
            x2p, y2p = W - 8, py(lab1)
        else:
            continue
        out.append(
            f'<line x1="{x1p:.1f}" y1="{y1p:.1f}" x2="{x2p:.1f}" y2="{y2p:.1f}" '
            f'stroke="#1a55a0" stroke-width="2"/>'
        )
        mx, my = (x1p + x2p) / 2, (y1p + y2p) / 2
        out.append(
            f'<text x="{mx + 6:.1f}" y="{my - 6:.1f}" font-size="11" fill="#1a55a0">'
            f"O={o.text()}</text>"
        )
        if side_texts and i < len(side_texts) and side_texts[i]:
            out.append(
                f'<text x="{mx + 6:.1f}" y="{my + 14:.1f}" font-size="10" fill="#444">'
                f"{_esc(side_texts[i])}</text>"
            )
    # hypotenuse (the closing side of postfinal slope)
    if hypotenuse and poly.levels[0].finite:
        lam1, lab1 = poly.levels[0], poly.labels[0]
        lamt, labt = poly.levels[-1], poly.labels[-1]
        x1p, y1p = px(lam1.as_fraction()), py(lab1)
        if lamt.finite:
            x2p, y2p = px(lamt.as_fraction()), py(labt)
        else:
            x2p, y2p = W - 8, py(lab1)
        out.append(
            f'<line x1="{x1p:.1f}" y1="{y1p:.1f}" x2="{x2p:.1f}" y2="{y2p:.1f}" '
            f'stroke="#b06010" stroke-dasharray="5,4"/>'
        )
    for x, y, lam, lab in verts:
        out.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="3.4" fill="#c02020"/>')
        out.append(
            f'<text x="{x + 5:.1f}" y="{y - 5:.1f}" font-size="11">'
            f"({lam.text()},{lab})</text>"
        )
    out.append("</svg>")
    return "\n".join(out)


def _esc(s):
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
