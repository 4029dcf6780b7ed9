"""Artin-Schreier curves f(y) = x^q - x with f monic of degree q - 1.

G = (F_q, +) acts by x -> x + lambda.  The only fixed point is the point at
infinity a = (0:1:0); near it the curve is u^q - u w^{q-1} - P(w) = 0 with
u = X/Y, w = Z/Y and P(w) = w^q f(1/w).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .gf import FieldTower, solve_artin_schreier
from .linalg import identity, matmul, nullspace, rank
from .poly import MPoly, TruncSeries, hensel_w, substitute


@dataclass(frozen=True)
class CurveSpec:
    tower: FieldTower
    mu: tuple  # codes of mu_2, ..., mu_q in F_q

    def __post_init__(self):
        mu = tuple(int(m) for m in self.mu)
        object.__setattr__(self, "mu", mu)
        if len(mu) != self.tower.q - 1:
            raise ValueError(f"need q - 1 = {self.tower.q - 1} coefficients, got {len(mu)}")
        for m in mu:
            if not 0 <= m < self.tower.q:
                raise ValueError(f"coefficient code {m} is not in F_q")

    @classmethod
    def make(cls, p, s=1, mu=None, seed=0):
        tower = FieldTower(p, s, seed)
        return cls(tower, tuple(mu) if mu is not None else (0,) * (tower.q - 1))

    @property
    def q(self) -> int:
        return self.tower.q

    @property
    def F(self):
        return self.tower.base

    def f_coeffs(self) -> list[int]:
        """f(y) = y^{q-1} + mu_2 y^{q-2} + ... + mu_q, low degree first."""
        q = self.q
        c = [0] * q
        c[q - 1] = 1
        for k, m in enumerate(self.mu, start=2):
            c[q - k] = m
        return c

    def f(self) -> MPoly:
        return MPoly.univariate(self.F, self.f_coeffs())

    def P(self) -> MPoly:
        """P(w) = w^q f(1/w) = w + mu_2 w^2 + ... + mu_q w^q."""
        return MPoly.univariate(self.F, [0, 1, *self.mu])

    def affine_equation(self) -> MPoly:
        """x^q - x - f(y) in variables (x, y)."""
        F = self.F
        x = MPoly.var(F, 2, 0)
        fy = MPoly(F, 2, {(0, e[0]): c for e, c in self.f().terms.items()})
        return x ** self.q - x - fy

    def chart_equation(self) -> MPoly:
        """u^q - u w^{q-1} - P(w) in variables (u, w)."""
        F = self.F
        u, w = MPoly.var(F, 2, 0), MPoly.var(F, 2, 1)
        Pw = MPoly(F, 2, {(0, e[0]): c for e, c in self.P().terms.items()})
        return u ** self.q - u * w ** (self.q - 1) - Pw

    def evaluate_f(self, F, y: int) -> int:
        acc = 0
        for c in reversed(self.f_coeffs()):
            acc = F.add(F.mul(acc, y), c)
        return acc


def genus(c) -> int:
    q = c if isinstance(c, int) else c.q
    return (q - 1) * (q - 2) // 2


def canonical_degree(c) -> int:
    q = c if isinstance(c, int) else c.q
    return q * (q - 3)


@dataclass
class SmoothnessCertificate:
    ok: bool
    checks: list = field(default_factory=list)

    def as_dict(self):
        return {"ok": self.ok, "checks": self.checks}


def verify_smooth(c: CurveSpec) -> SmoothnessCertificate:
    """Both affine charts are nonsingular.

    On the (x, y)-chart the x-partial of x^q - x - f(y) is the constant -1.
    Away from that chart the curve has the single point (0:1:0), where the
    w-partial of the chart equation is a unit.
    """
    F = c.F
    checks = []
    dx = c.affine_equation().partial_derivative(0)
    x_ok = dx == MPoly.constant(F, 2, F.neg(1))
    checks.append({"chart": "xy", "condition": "d/dx is the constant -1", "ok": x_ok})

    G = c.chart_equation()
    dw = G.partial_derivative(1)
    at_a = dw.evaluate([0, 0])
    checks.append({"chart": "uw", "condition": "d/dw is a unit at (0,0)", "value": at_a, "ok": at_a != 0})
    on_chart = G.evaluate([0, 0]) == 0
    checks.append({"chart": "uw", "condition": "fixed point lies on the chart curve", "ok": on_chart})
    return SmoothnessCertificate(all(ch["ok"] for ch in checks), checks)


@dataclass
class RamificationData:
    i_values: dict  # lambda code -> i_G(lambda), None when undetermined
    filtration: list  # |G_0|, |G_1|, ... down to the first trivial group
    artin_value: int | None
    leading: dict  # lambda -> leading coefficient of sigma(u) - u
    w: TruncSeries

    @property
    def determinate(self) -> bool:
        return all(v is not None for v in self.i_values.values())

    def as_dict(self):
        return {
            "i_values": {str(k): v for k, v in sorted(self.i_values.items())},
            "filtration": list(self.filtration),
            "artin_value": self.artin_value,
        }


def ramification(c: CurveSpec, N: int | None = None) -> RamificationData:
    """Higher ramification groups at the fixed point from the series w(u).

    sigma_lambda(u) = u + lambda w(u), so i_G(lambda) is the order of
    lambda w(u).
    """
    q = c.q
    if N is None:
        N = 3 * q + 1
    if N < q + 2:
        raise ValueError("truncation must be at least q + 2")
    F = c.F
    w = hensel_w(c.P(), q, N)
    i_values, leading = {}, {}
    for lam in range(1, q):
        diff = w.scale(lam)
        k = diff.order()
        i_values[lam] = k
        leading[lam] = diff.coeffs[k] if k is not None else None
    if any(v is None for v in i_values.values()):
        return RamificationData(i_values, [], None, leading, w)
    top = max(i_values.values())
    filtration = [1 + sum(1 for v in i_values.values() if v >= i + 1) for i in range(top + 1)]
    return RamificationData(i_values, filtration, sum(i_values.values()), leading, w)


def hurwitz_base_genus(c: CurveSpec, ram: RamificationData | None = None) -> int:
    """Genus g' of C/G from 2 - 2 g_C = q (2 - 2 g') - a_G(0)."""
    if ram is None:
        ram = ramification(c)
    if ram.artin_value is None:
        raise ValueError("ramification data is indeterminate")
    q = c.q
    two_minus_2g = Fraction(2 - 2 * genus(c) + ram.artin_value, q)
    g = 1 - two_minus_2g / 2
    if g.denominator != 1:
        raise ArithmeticError(f"non-integral base genus {g}")
    return int(g)


@dataclass(frozen=True)
class DifferentialBasis:
    monomials: tuple  # (i, j) for x^i y^j dy, ordered by j then i
    block_dims: tuple  # dim V_j = q - 2 - j

    def __len__(self):
        return len(self.monomials)


def differential_basis(c) -> DifferentialBasis:
    q = c if isinstance(c, int) else c.q
    mons = tuple((i, j) for j in range(q - 2) for i in range(q - 2 - j))
    return DifferentialBasis(mons, tuple(q - 2 - j for j in range(q - 2)))


def _binomial_mod(n, k, p):
    from math import comb

    return comb(n, k) % p


def differential_action(c: CurveSpec, lam: int) -> list[list[int]]:
    """Matrix over F_q of x^i y^j dy -> (x + lambda)^i y^j dy on the basis."""
    F = c.F
    basis = differential_basis(c)
    index = {m: k for k, m in enumerate(basis.monomials)}
    n = len(basis)
    M = [[0] * n for _ in range(n)]
    for col, (i, j) in enumerate(basis.monomials):
        for k in range(i + 1):
            coef = F.mul_int(F.pow(lam, i - k), _binomial_mod(i, k, F.p))
            if coef:
                M[index[(k, j)]][col] = coef
    return M


def block_slices(c) -> list[range]:
    dims = differential_basis(c).block_dims
    out, start = [], 0
    for d in dims:
        out.append(range(start, start + d))
        start += d
    return out


def block_fixed_dims(c: CurveSpec) -> list[int]:
    """dim V_j^G for each block, as the joint kernel of (A_g - I) over generators of G."""
    F = c.F
    gens = [differential_action(c, g) for g in c.tower.group_generators]
    dims = []
    for sl in block_slices(c):
        rows = []
        for A in gens:
            for r in sl:
                rows.append([F.sub(A[r][k], 1 if r == k else 0) for k in sl])
        dims.append(len(nullspace(F, rows, len(sl))))
    return dims


def block_rank_ladders(c: CurveSpec, lam: int = 1) -> list[list[int]]:
    """rank (M - I)^k on each block, k = 0, 1, ... until it reaches 0."""
    F = c.F
    A = differential_action(c, lam)
    out = []
    for sl in block_slices(c):
        N = [[F.sub(A[r][k], 1 if r == k else 0) for k in sl] for r in sl]
        ladder = [len(sl)]
        P = identity(len(sl))
        while ladder[-1] > 0:
            P = matmul(F, P, N)
            ladder.append(rank(F, P))
            if len(ladder) > len(sl) + 1:
                break
        out.append(ladder)
    return out


def sample_points(c: CurveSpec, m: int, n: int, seed: int = 0):
    """``n`` distinct affine points (x, y) over F_{q^m}, as FqElem pairs.

    y is drawn uniformly without replacement; x is a seeded choice among
    the q solutions of x^q - x = f(y).
    """
    tower = c.tower.with_extension(m)
    F = tower.field(m)
    rng = random.Random(f"points:{c.q}:{c.mu}:{m}:{seed}")
    out = []
    for y in _distinct_draws(rng, F.order):
        xs = solve_artin_schreier(tower, F, c.evaluate_f(F, y))
        if xs:
            out.append((F(rng.choice(xs)), F(y)))
            if len(out) == n:
                return out
    raise ValueError(f"only {len(out)} points with distinct y over F_{{q^{m}}}; use a larger m")


def _distinct_draws(rng, size):
    if size <= 1 << 20:
        order = list(range(size))
        rng.shuffle(order)
        yield from order
        return
    seen = set()
    while len(seen) < size:
        v = rng.randrange(size)
        if v not in seen:
            seen.add(v)
            yield v


def count_affine_points(c: CurveSpec, m: int) -> int:
    tower = c.tower.with_extension(m)
    F = tower.field(m)
    return sum(len(solve_artin_schreier(tower, F, c.evaluate_f(F, y))) for y in F.elements())


def residual(c: CurveSpec, w: TruncSeries) -> TruncSeries:
    """u^q - u w^{q-1} - P(w) for a candidate series w."""
    u = TruncSeries.variable(c.F, w.N)
    return u ** c.q - u * w ** (c.q - 1) - substitute(c.P(), {0: w})
