"""The wild quotient singularity c^q - (ab)^{q-1} c - a^q Q(b) + b^q P(a).

a, b, c are the invariants w, w', w u' - w' u of the diagonal G-action on
the completed local ring of C x C' at the pair of fixed points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .curve import CurveSpec
from .gf import pderiv, peval, pgcd, ptrim
from .poly import MPoly, TruncSeries, hensel_w, substitute, substitute_separated

A, B, C = 0, 1, 2


@dataclass(frozen=True)
class SingularityEq:
    poly: MPoly  # variables (a, b, c)
    source: tuple  # (CurveSpec, CurveSpec)

    @property
    def q(self) -> int:
        return self.source[0].q

    @property
    def field(self):
        return self.poly.field


@dataclass
class ChartSingularPoint:
    chart: str  # "a" or "b"
    coords: tuple  # (exceptional coordinate, fibre coordinate, c-coordinate)
    psi_value: int  # Psi at the point; zero on the singular locus
    psi_slope: int  # d Psi / d(fibre coordinate); a unit certifies type A_{q-1}

    @property
    def certified(self) -> bool:
        return self.psi_value == 0 and self.psi_slope != 0

    def as_dict(self):
        return {"chart": self.chart, "coords": list(self.coords), "psi_value": self.psi_value,
                "psi_slope": self.psi_slope, "certified": self.certified}


def _lift(F, poly: MPoly, nvars: int, positions) -> MPoly:
    """Univariate/low-variable polynomial re-embedded into ``nvars`` variables."""
    out = {}
    for e, c in poly.terms.items():
        v = [0] * nvars
        for k, pos in zip(e, positions):
            v[pos] = k
        out[tuple(v)] = c
    return MPoly(F, nvars, out)


def build_equation(c: CurveSpec, c_prime: CurveSpec) -> SingularityEq:
    if (c.tower.p, c.tower.s, c.tower.seed) != (c_prime.tower.p, c_prime.tower.s, c_prime.tower.seed):
        raise ValueError("curves must share the field")
    F = c.F
    q = c.q
    a, b, cc = (MPoly.var(F, 3, i) for i in range(3))
    Pa = _lift(F, c.P(), 3, [A])
    Qb = _lift(F, c_prime.P(), 3, [B])
    eq = cc**q - (a * b) ** (q - 1) * cc - a**q * Qb + b**q * Pa
    return SingularityEq(eq, (c, c_prime))


def swap_identity_holds(eq: SingularityEq) -> bool:
    """eq_{C,C'}(b, a, -c) = -eq_{C',C}(a, b, c)."""
    c, c_prime = eq.source
    other = build_equation(c_prime, c)
    F = eq.field
    a, b, cc = (MPoly.var(F, 3, i) for i in range(3))
    return eq.poly.compose([b, a, -cc]) == -other.poly


# ---------------------------------------------------------------------------
# the invariant relation


def relation_polynomial(eq: SingularityEq) -> MPoly:
    """eq evaluated at a = w, b = w', c = w u' - w' u, in variables (u, w, u', w')."""
    F = eq.field
    u, w, u2, w2 = (MPoly.var(F, 4, i) for i in range(4))
    return eq.poly.compose([w, w2, w * u2 - w2 * u])


def verify_invariant_relation(eq: SingularityEq, N: int | None = None) -> dict:
    """Check the relation among w, w', wu' - w'u modulo (u, u')^N, and G-invariance."""
    q = eq.q
    if N is None:
        N = 2 * q * q
    if N < 2 * q * q:
        raise ValueError("truncation must be at least 2 q^2")
    c, c_prime = eq.source
    F = eq.field
    rel = relation_polynomial(eq)
    w = hensel_w(c.P(), q, N)
    w2 = hensel_w(c_prime.P(), q, N)
    u = TruncSeries.variable(F, N)
    coeffs = substitute_separated(rel, {0: u, 1: w}, {2: u, 3: w2}, N)
    first_bad = min(coeffs) if coeffs else None
    out = {"truncation": N, "relation_ok": not coeffs,
           "first_offending": None if first_bad is None else {"index": list(first_bad), "value": coeffs[first_bad]}}

    # invariance: polynomial level for w, w', wu' - w'u; series level for sigma on each curve
    U, W, U2, W2 = (MPoly.var(F, 4, i) for i in range(4))
    invariants = [W, W2, W * U2 - W2 * U]
    poly_ok, series_ok = True, True
    Nc = 3 * q + 1
    for lam in range(q):
        images = [U + W.scale(lam), W, U2 + W2.scale(lam), W2]
        for inv in invariants:
            if inv.compose(images) != inv:
                poly_ok = False
        for curve in (c, c_prime):
            if not _sigma_preserves_w(curve, lam, Nc):
                series_ok = False
    out["polynomial_invariance_ok"] = poly_ok
    out["series_invariance_ok"] = series_ok
    out["ok"] = out["relation_ok"] and poly_ok and series_ok
    return out


def _sigma_preserves_w(curve: CurveSpec, lam: int, N: int) -> bool:
    """sigma_lambda(u) = u + lambda w(u) satisfies the curve relation and fixes w."""
    F = curve.F
    w = hensel_w(curve.P(), curve.q, N)
    u = TruncSeries.variable(F, N)
    su = u + w.scale(lam)
    rel = curve.chart_equation()
    on_curve = substitute(rel, {0: su, 1: w}).order() is None
    fixed = w.compose(su) == w
    return on_curve and fixed


# ---------------------------------------------------------------------------
# blowing up the maximal ideal


def chart_transform(eq: SingularityEq, chart: str) -> MPoly:
    """Strict transform on one chart of the blow-up of (a, b, c).

    Variables: a-chart (a, b/a, c/a); b-chart (b, a/b, c/b); c-chart (c, a/c, b/c).
    The exceptional divisor is the first variable = 0.
    """
    F = eq.field
    e, t, z = (MPoly.var(F, 3, i) for i in range(3))
    if chart == "a":
        images = [e, e * t, e * z]
    elif chart == "b":
        images = [e * t, e, e * z]
    elif chart == "c":
        images = [e * t, e * z, e]
    else:
        raise ValueError(f"unknown chart {chart!r}")
    total = eq.poly.compose(images)
    for _ in range(eq.q):
        total = total.divide_by_variable(0)
    return total


def _roots_in_base(F, coeffs):
    return [x for x in F.elements() if peval(F, coeffs, x) == 0]


def _chart_points(eq: SingularityEq, chart: str):
    F = eq.field
    q = eq.q
    T = chart_transform(eq, chart)
    z = MPoly.var(F, 3, 2)
    if T.restrict(0, 0) != z**q:
        raise ArithmeticError(f"{chart}-chart: strict transform on the exceptional divisor is not z^q")
    psi = (z**q - T).divide_by_variable(0)
    # Jacobian ideal restricted to e = 0, z = 0 (forced by T = z^q there)
    gens = [T, *(T.partial_derivative(i) for i in range(3))]
    h = []
    for g in gens:
        r = g.restrict(0, 0).restrict(2, 0)
        h = pgcd(F, h, ptrim(r.univariate_coeffs(1)))
    if len(h) - 1 != q:
        raise ArithmeticError(f"{chart}-chart: singular locus polynomial has degree {len(h) - 1}, expected {q}")
    if len(pgcd(F, h, pderiv(F, h))) != 1:
        raise ArithmeticError(f"{chart}-chart: singular locus polynomial is not separable")
    roots = _roots_in_base(F, h)
    if len(roots) != q:
        raise ArithmeticError(f"{chart}-chart: only {len(roots)} of {q} singular points are F_q-rational")
    dpsi = psi.partial_derivative(1)
    pts = [ChartSingularPoint(chart, (0, t, 0), psi.evaluate([0, t, 0]), dpsi.evaluate([0, t, 0])) for t in roots]
    return T, psi, pts


@dataclass
class BlowupCertificate:
    points: list
    c_chart_disjoint: bool
    charts_agree: bool
    psi: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.c_chart_disjoint and self.charts_agree and all(p.certified for p in self.points)

    def as_dict(self):
        return {"count": len(self.points), "points": [p.as_dict() for p in self.points],
                "c_chart_disjoint": self.c_chart_disjoint, "charts_agree": self.charts_agree, "ok": self.ok}


def blowup_singular_points(eq: SingularityEq) -> BlowupCertificate:
    """Singular points of the blow-up, each with its A_{q-1} certificate.

    The a-chart contributes b/a in F_q; the b-chart adds a/b = 0.
    """
    F = eq.field
    _, psi_a, pts_a = _chart_points(eq, "a")
    _, psi_b, pts_b = _chart_points(eq, "b")
    ta = {p.coords[1] for p in pts_a}
    agree = all(F.inv(p.coords[1]) in ta for p in pts_b if p.coords[1])
    extra = [p for p in pts_b if p.coords[1] == 0]
    Tc = chart_transform(eq, "c")
    disjoint = Tc.restrict(0, 0) == MPoly.constant(F, 3, 1)
    return BlowupCertificate(pts_a + extra, disjoint, agree and len(extra) == 1, {"a": psi_a, "b": psi_b})


# ---------------------------------------------------------------------------
# fibres and the singular locus


def fiber_reduction_check(eq: SingularityEq) -> dict:
    F = eq.field
    q = eq.q
    cq = MPoly.var(F, 3, 2) ** q
    mod_c = eq.poly.restrict(C, 0)
    divisible = all(e[A] >= 1 and e[B] >= 1 for e in mod_c.terms)
    out = {
        "mod_a_is_c_pow_q": eq.poly.restrict(A, 0) == cq,
        "mod_b_is_c_pow_q": eq.poly.restrict(B, 0) == cq,
        "mod_c_divisible_by_ab": divisible,
    }
    out["ok"] = all(out.values())
    return out


EXHAUSTIVE_LIMIT = 60_000


def singular_locus_exhaustive(eq: SingularityEq, m: int = 2):
    """All F_{q^m}-points where eq and its partials vanish, or None above the size bound."""
    c = eq.source[0]
    tower = c.tower.with_extension(m)
    K = tower.field(m)
    if K.order**3 > EXHAUSTIVE_LIMIT:
        return None
    f = eq.poly.over(K)
    partials = [f.partial_derivative(i) for i in range(3)]
    found = []
    for pt in product(range(K.order), repeat=3):
        if partials[2].evaluate(pt):
            continue
        if f.evaluate(pt) or partials[0].evaluate(pt) or partials[1].evaluate(pt):
            continue
        found.append(pt)
    return found
