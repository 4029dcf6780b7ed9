"""Degree-q model of the contracted quotient surface in P^3, by interpolation.

Points of (C x C')/G are sampled through the invariant functions
(1 : y : y' : x - x') over F_{q^m}; the hypersurface is the one-dimensional
nullspace of the degree-q monomial evaluation matrix.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb

from .curve import CurveSpec
from .gf import peval, pgcd, ptrim, solve_artin_schreier
from .linalg import nullspace, rank
from .poly import MPoly, homogeneous_monomials

TABLE_LIMIT = 1 << 16
EMBED_MAX_Q = 9  # interpolation cost grows like q^9


class EscalationError(RuntimeError):
    """The candidate section basis failed validation."""

    def __init__(self, record: dict):
        super().__init__(record.get("reason", "section basis validation failed"))
        self.record = record


def section_map(K, pt, pt_prime) -> tuple:
    """(1 : y : y' : x - x') for affine points (x, y) on C and (x', y') on C'."""
    (x, y), (x2, y2) = pt, pt_prime
    return (1, y, y2, K.sub(x, x2))


def default_extension_degree(q: int) -> int:
    """Smallest m with q^(2m-1) >= 2 (3 C(q+3, 3) + 50)."""
    need = 2 * (3 * comb(q + 3, 3) + 50)
    m = 1
    while q ** (2 * m - 1) < need:
        m += 1
    return m


def default_sample_size(q: int) -> int:
    return 3 * comb(q + 3, 3)


class _ASTable:
    """Solutions of x^q - x = c over K, tabulated for small K."""

    def __init__(self, tower, K):
        self.tower, self.K = tower, K
        self.table = None
        if K.order <= TABLE_LIMIT:
            q = tower.q
            self.table = {}
            for x in range(K.order):
                self.table.setdefault(K.sub(K.pow(x, q), x), []).append(x)

    def __call__(self, c: int) -> list[int]:
        if self.table is not None:
            return self.table.get(c, [])
        return solve_artin_schreier(self.tower, self.K, c)


class PairSampler:
    """Seeded stream of distinct image points of pairs of affine points."""

    def __init__(self, c: CurveSpec, c_prime: CurveSpec, m: int, seed: int = 0):
        if c.tower != c_prime.tower:
            raise ValueError("curves must share the field tower")
        self.c, self.c_prime = c, c_prime
        self.tower = c.tower.with_extension(m)
        self.K = self.tower.field(m)
        self.m = m
        self.solve = _ASTable(self.tower, self.K)
        self.rng = random.Random(f"pairs:{c.q}:{c.mu}:{c_prime.mu}:{m}:{seed}")
        self.seen = set()
        self.pairs = []
        self.ys = self.ys2 = None
        if self.solve.table is not None:
            K = self.K
            self.ys = [y for y in range(K.order) if self.solve(c.evaluate_f(K, y))]
            self.ys2 = [y for y in range(K.order) if self.solve(c_prime.evaluate_f(K, y))]

    def capacity(self) -> int:
        """Number of image points, ~ q^(2m-1)."""
        if self.ys is None:
            raise ValueError("capacity is only tabulated for small fields")
        return len(self.ys) * len(self.ys2) * self.c.q

    def draw(self, n: int, max_tries: int | None = None) -> list[tuple]:
        K, rng = self.K, self.rng
        out = []
        tries = 0
        limit = max_tries if max_tries is not None else 200 * n + 10_000
        while len(out) < n:
            tries += 1
            if tries > limit:
                raise ValueError(f"could only draw {len(out)} of {n} distinct points over F_{{q^{self.m}}}")
            if self.ys is not None:
                y, y2 = rng.choice(self.ys), rng.choice(self.ys2)
            else:
                y, y2 = rng.randrange(K.order), rng.randrange(K.order)
            xs = self.solve(self.c.evaluate_f(K, y))
            xs2 = self.solve(self.c_prime.evaluate_f(K, y2))
            if not xs or not xs2:
                continue
            pt, pt2 = (rng.choice(xs), y), (rng.choice(xs2), y2)
            img = section_map(K, pt, pt2)
            if img in self.seen:
                continue
            self.seen.add(img)
            self.pairs.append((pt, pt2))
            out.append(img)
        return out


def orbit_invariance_holds(K, q: int, pairs, lam: int) -> bool:
    """The diagonal shift x -> x + lambda, x' -> x' + lambda leaves the image unchanged."""
    for (x, y), (x2, y2) in pairs:
        if section_map(K, (K.add(x, lam), y), (K.add(x2, lam), y2)) != section_map(K, (x, y), (x2, y2)):
            return False
    return True


def evaluation_matrix(K, points, d: int):
    mons = homogeneous_monomials(4, d)
    rows = []
    for pt in points:
        pw = [[1] for _ in range(4)]
        for i in range(4):
            for _ in range(d):
                pw[i].append(K.mul(pw[i][-1], pt[i]))
        row = []
        for e in mons:
            v = 1
            for i in range(4):
                if e[i]:
                    v = K.mul(v, pw[i][e[i]])
                    if not v:
                        break
            row.append(v)
        rows.append(row)
    return mons, rows


def interpolate(K, points, d: int):
    """Nullspace of the degree-d evaluation matrix, with its monomial list."""
    mons, rows = evaluation_matrix(K, points, d)
    if len(set(points)) < len(mons) + 10:
        raise ValueError(f"need at least {len(mons) + 10} distinct points for degree {d}")
    return mons, nullspace(K, rows, len(mons))


@dataclass
class HypersurfaceModel:
    q: int
    degree: int
    coeffs: dict  # exponent vector -> code in K
    K: object
    meta: dict = field(default_factory=dict)

    def poly(self) -> MPoly:
        return MPoly(self.K, 4, dict(self.coeffs))

    def evaluate(self, pt) -> int:
        return self.poly().evaluate(pt)

    def field_of_definition(self) -> int:
        """Order of the smallest subfield of K containing every coefficient."""
        K = self.K
        n = 1
        while K.p**n < K.order:
            n += 1
        for e in range(1, n + 1):
            if n % e:
                continue
            if all(K.pow(c, K.p**e) == c for c in self.coeffs.values()):
                return K.p**e
        return K.order

    def to_json(self, source=None) -> dict:
        out = {"q": self.q, "degree": self.degree,
               "monomials": [[list(e), str(c)] for e, c in sorted(self.coeffs.items(), reverse=True)],
               "field_of_definition": self.field_of_definition(), **self.meta}
        if source is not None:
            c, c2 = source
            out.update({"p": c.tower.p, "s": c.tower.s, "mu": list(c.mu), "mu_prime": list(c2.mu)})
        return out


def normalize(K, mons, vec) -> dict:
    """Scale so the first nonzero coefficient (decreasing lex order) is 1."""
    lead = next(v for v in vec if v)
    s = K.inv(lead)
    return {tuple(e): K.mul(s, v) for e, v in zip(mons, vec) if v}


def expected_form(c: CurveSpec, c_prime: CurveSpec, K=None) -> MPoly:
    """T3^q - T3 T0^(q-1) - T0 f_h(T1, T0) + T0 f'_h(T2, T0), from the two curve equations."""
    F = K or c.F
    q = c.q
    T = [MPoly.var(F, 4, i) for i in range(4)]
    out = T[3] ** q - T[3] * T[0] ** (q - 1)
    for k, (a, b) in enumerate(zip(c.f_coeffs(), c_prime.f_coeffs())):
        # degree-k term of f, homogenized to degree q - 1, times T0
        if a:
            out = out - (T[1] ** k * T[0] ** (q - k)).scale(a)
        if b:
            out = out + (T[2] ** k * T[0] ** (q - k)).scale(b)
    return out


@dataclass
class EmbedResult:
    model: HypersurfaceModel
    nullity_below: int
    nullity_at_q: int
    basis_rank: int
    held_out_ok: bool
    invariance_ok: bool
    sample_size: int

    def as_dict(self):
        return {"nullity_degree_q_minus_1": self.nullity_below, "nullity_degree_q": self.nullity_at_q,
                "basis_rank": self.basis_rank, "held_out_ok": self.held_out_ok,
                "orbit_invariance_ok": self.invariance_ok, "sample_size": self.sample_size,
                "monomial_count": comb(self.model.degree + 3, 3)}


def build_model(c: CurveSpec, c_prime: CurveSpec, m: int | None = None, n: int | None = None,
                seed: int = 0, held_out: int = 50, attempts: int = 3) -> EmbedResult:
    """Sample, validate the section basis, interpolate at degrees q-1 and q."""
    q = c.q
    m = m or default_extension_degree(q)
    n = n or default_sample_size(q)
    if n < comb(q + 3, 3) + 10:
        raise ValueError(f"need n >= {comb(q + 3, 3) + 10}")
    last = None
    for attempt in range(attempts):
        sampler = PairSampler(c, c_prime, m, seed + attempt)
        K = sampler.K
        pts = sampler.draw(n)
        basis_rank = rank(K, [list(p) for p in pts])
        if basis_rank < 4:
            last = {"reason": "sample lies on a hyperplane", "basis_rank": basis_rank, "seed": seed + attempt}
            continue
        _, low = interpolate(K, pts, q - 1)
        mons, null = interpolate(K, pts, q)
        if len(low) != 0 or len(null) != 1:
            raise EscalationError({"reason": "section basis failed interpolation", "q": q, "m": m,
                                   "nullity_degree_q_minus_1": len(low), "nullity_degree_q": len(null)})
        coeffs = normalize(K, mons, null[0])
        model = HypersurfaceModel(q, q, coeffs, K, {"m": m, "n": n, "seed": seed + attempt})
        fresh = sampler.draw(held_out)
        poly = model.poly()
        held_ok = all(poly.evaluate(p) == 0 for p in fresh)
        inv_ok = all(orbit_invariance_holds(K, q, sampler.pairs[:20], lam) for lam in range(q))
        return EmbedResult(model, len(low), len(null), basis_rank, held_ok, inv_ok, n)
    raise EscalationError(last or {"reason": "no valid sample"})


def _binary_form(K, poly: MPoly, a: int, b: int, deg: int) -> list[int]:
    """Coefficients of T_a^k T_b^(deg-k), k = 0..deg, for a form in T_a, T_b only."""
    out = [0] * (deg + 1)
    for e, c in poly.terms.items():
        out[e[a]] = c
    return out


def _common_roots(K, f, g, deg: int) -> int:
    """Degree of gcd of two binary forms of degree ``deg`` (zero forms allowed)."""
    def deficit(h):
        t = ptrim(h)
        return None if not t else deg - (len(t) - 1)

    forms = [h for h in (f, g) if ptrim(h)]
    if not forms:
        raise ArithmeticError("both transverse partials vanish on the line")
    aff = []
    for h in forms:
        aff = pgcd(K, aff, ptrim(h))
    inf = min(deficit(h) for h in forms)
    return len(aff) - 1 + inf


def singular_line_check(model: HypersurfaceModel) -> dict:
    """Containment of {T0 = T3 = 0} and the common roots of dF/dT0, dF/dT3 on it."""
    K, q = model.K, model.q
    F = model.poly()
    on_line = F.restrict(0, 0).restrict(3, 0)
    contained = not on_line
    d0 = F.partial_derivative(0).restrict(0, 0).restrict(3, 0)
    d3 = F.partial_derivative(3).restrict(0, 0).restrict(3, 0)
    # affine coordinate t = T1 / T2; coefficient lists in t
    f0 = _binary_form(K, d0, 1, 2, q - 1)
    f3 = _binary_form(K, d3, 1, 2, q - 1)
    out = {"line_contained": contained, "offending_monomials": [list(e) for e in sorted(on_line.terms)]}
    try:
        count = _common_roots(K, f0, f3, q - 1)
    except ArithmeticError as exc:
        out.update({"common_roots": None, "error": str(exc), "ok": False})
        return out
    forms = [ptrim(h) for h in (f0, f3) if ptrim(h)]
    g = []
    for h in forms:
        g = pgcd(K, g, h)
    # t = T1/T2 ranges over F_q, whose codes embed unchanged in K
    rational = [t for t in range(q) if peval(K, g, t) == 0]
    out.update({"common_roots": count, "rational_affine_roots": rational,
                "expected": q - 1, "ok": contained and count == q - 1})
    return out


def h0_bound_ledger(q: int) -> int:
    """sum over i < q of h^0(O(1 - i)), plus 1 for the last graded piece."""
    if q < 2:
        raise ValueError("q must be at least 2")
    return sum(max(0, (1 - i) + 1) for i in range(q)) + 1
