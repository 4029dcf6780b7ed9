"""Global invariants of the minimal resolution of (C x C')/G and its fibration over P^1."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .curve import CurveSpec, genus, hurwitz_base_genus, ramification
from .gf import is_prime, prime_factors
from .modrep import FIXED_DIM_MAX_Q, fixed_dim_tensor, h0_omega_quotient_prime
from .resgraph import (
    build_star_graph,
    canonical_cycle,
    euler_snc_tree,
    extended_fiber_graph,
    fundamental_cycle,
    fundamental_genus,
    pg_upper_bound,
)

IRREGULARITY = 0  # h^1(O_X); cited, not computed


class InvariantError(ArithmeticError):
    pass


def _check_q(q: int):
    if q < 2 or len(prime_factors(q)) != 1:
        raise ValueError(f"q = {q} is not a prime power")


def serre_delta(filtration, dim_M: int) -> Fraction:
    """sum_{i >= 1, G_i != 1} dim_M / [G : G_i], from |G_0|, |G_1|, ..."""
    if any(a < b for a, b in zip(filtration, filtration[1:])):
        raise ValueError("filtration is not non-increasing")
    if not filtration:
        return Fraction(0)
    order = filtration[0]
    return sum((Fraction(g, order) * dim_M for g in filtration[1:] if g > 1), Fraction(0))


def closed_euler_X(q: int) -> int:
    return q**3 - 4 * q**2 + 8 * q


@dataclass
class EulerPipeline:
    generic_euler: int  # 2 - 2g
    base_euler: int
    fiber_euler: int
    delta: Fraction
    e_X: int
    closed_form: int

    @property
    def ok(self) -> bool:
        return self.e_X == self.closed_form

    def as_dict(self):
        return {"generic_fiber_euler": self.generic_euler, "base_euler": self.base_euler,
                "special_fiber_euler": self.fiber_euler, "delta": str(self.delta), "e_X": self.e_X,
                "closed_form": self.closed_form, "ok": self.ok}


def euler_dolgachev(q: int, ram=None, fiber_graph_euler: int | None = None, curve: CurveSpec | None = None) -> EulerPipeline:
    """e(X) = e(generic) e(P^1) + (e(X_0) - e(generic) + delta_0).

    The ramification filtration comes from a curve (the zero-coefficient
    curve over F_q when none is given); dim M = 2 g(C').
    """
    _check_q(q)
    if ram is None:
        if curve is None:
            p = prime_factors(q)[0]
            s = 1
            while p**s < q:
                s += 1
            curve = CurveSpec.make(p, s)
        ram = ramification(curve)
        if hurwitz_base_genus(curve, ram) != 0:
            raise InvariantError("quotient curve is not rational")
    if fiber_graph_euler is None:
        fg = extended_fiber_graph(q)
        fiber_graph_euler = euler_snc_tree(fg.graph, fg.F1.support())
    g = genus(q)
    generic = 2 - 2 * g
    delta = serre_delta(ram.filtration, 2 * g)
    total = generic * 2 + (fiber_graph_euler - generic + delta)
    if Fraction(total).denominator != 1:
        raise InvariantError(f"non-integral Euler number {total}")
    return EulerPipeline(generic, 2, fiber_graph_euler, delta, int(total), closed_euler_X(q))


@dataclass(frozen=True)
class ChernNumbers:
    K_sq: int  # minimal model S~
    e: int
    chi: int
    K_X_sq: int

    @property
    def noether_ok(self) -> bool:
        return 12 * self.chi == self.K_sq + self.e


def chern(q: int) -> ChernNumbers:
    _check_q(q)
    K = q * (q - 4) ** 2
    e = q**3 - 4 * q**2 + 6 * q
    num = q**3 - 6 * q**2 + 11 * q
    if num % 6:
        raise InvariantError("non-integral chi")
    K_X = q * (q * q - 8 * q + 14)
    out = ChernNumbers(K, e, num // 6, K_X)
    if not out.noether_ok:
        raise InvariantError("Noether's formula fails")
    if K != K_X + 2 * q:
        raise InvariantError("blow-down of the two (-1)-curves does not match")
    return out


@dataclass(frozen=True)
class Genera:
    p_f: int
    p_g_global: int
    p_g_local: int
    local_exact: bool


def genera(q: int) -> Genera:
    _check_q(q)
    g = build_star_graph(q)
    p_f = fundamental_genus(g)
    num = (q - 1) * (q - 2) * (q - 3)
    p_g_global = num // 6
    bound = pg_upper_bound(q)
    prime = is_prime(q)
    if prime:
        if h0_omega_quotient_prime(q) - p_g_global != q * (q - 1) * (q - 2) // 6:
            raise InvariantError("h0(omega) - p_g(global) differs from the local geometric genus")
    if p_g_global != chern(q).chi - 1 + IRREGULARITY:
        raise InvariantError("chi != 1 + p_g")
    return Genera(p_f, p_g_global, bound, prime)


def plurigenera(q: int, m: int) -> int:
    if q < 5:
        raise ValueError("plurigenus formula requires q >= 5")
    if m < 2:
        raise ValueError("m must be at least 2")
    c = chern(q)
    return c.K_sq * (m * m - m) // 2 + c.chi


def classify(q: int) -> dict:
    _check_q(q)
    if q >= 5:
        kind = "general-type"
    elif q == 4:
        kind = "K3"
    else:
        kind = "weak-del-Pezzo"
    sing = {2: "rational-double-point-D4", 3: "minimally-elliptic"}.get(q, "higher")
    return {"surface": kind, "singularity": sing}


def quotient_surface_numbers(q: int) -> dict:
    _check_q(q)
    c = chern(q)
    margin = 3 * c.e - c.K_sq
    if margin != 2 * q * (q - 1) ** 2 or margin <= 0:
        raise InvariantError("BMY margin mismatch")
    return {"K_quotient_sq": 2 * q * (q - 3) ** 2, "bmy_margin": margin, "chern_slope": Fraction(c.K_sq, c.e)}


@dataclass
class SurfaceReport:
    q: int
    data: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"q": self.q, **self.data, "flags": list(self.flags)}


def surface_report(q: int, curve: CurveSpec | None = None, curve_prime: CurveSpec | None = None) -> SurfaceReport:
    _check_q(q)
    pipe = euler_dolgachev(q, curve=curve)
    if not pipe.ok:
        raise InvariantError(f"Euler pipeline gives {pipe.e_X}, closed form {pipe.closed_form}")
    c = chern(q)
    gen = genera(q)
    num = quotient_surface_numbers(q)
    star = build_star_graph(q)
    Z = fundamental_cycle(star)
    K = canonical_cycle(star)
    data = {
        "delta_0": str(pipe.delta),
        "e_X": pipe.e_X,
        "e_Stilde": c.e,
        "K_X_sq": c.K_X_sq,
        "K_Stilde_sq": c.K_sq,
        "chi": c.chi,
        "irregularity": IRREGULARITY,
        "p_f": gen.p_f,
        "p_g_global": gen.p_g_global,
        "p_g_local_bound": gen.p_g_local,
        "p_g_local_label": "upper bound (exact for prime q)",
        "Z_sq": Z.square(),
        "K_h_sq": str(K.square()),
        "K_quotient_sq": num["K_quotient_sq"],
        "bmy_margin": num["bmy_margin"],
        "chern_slope": str(num["chern_slope"]),
        "classification": classify(q),
        "euler_pipeline": pipe.as_dict(),
    }
    if gen.local_exact:
        data["p_g_local_exact"] = gen.p_g_local
        data["h0_omega_quotient"] = h0_omega_quotient_prime(q)
    if curve is not None and curve_prime is not None and q <= FIXED_DIM_MAX_Q:
        data["fixed_dim_tensor"] = fixed_dim_tensor(curve, curve_prime)
    if q >= 5:
        data["plurigenera"] = {str(m): plurigenera(q, m) for m in (2, 3, 4)}
        data["p_g_local_exceeds_p_f"] = gen.p_g_local > gen.p_f
    flags = []
    if q in (2, 3):
        flags.append("small-q: general formulas evaluated outside the general-type range")
    if q < 5:
        flags.append("plurigenus formula not applicable")
    return SurfaceReport(q, data, flags)
