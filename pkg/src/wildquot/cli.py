"""Command-line reports for the quotient surfaces (C x C')/G.

Exit status: 0 when every check passes, 2 when a certificate fails (the
report then carries a "failures" list), 1 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .curve import (
    CurveSpec,
    block_fixed_dims,
    block_rank_ladders,
    differential_basis,
    genus,
    hurwitz_base_genus,
    ramification,
    verify_smooth,
)
from .gf import FieldError, is_prime
from .invariants import InvariantError, surface_report
from .modrep import FIXED_DIM_MAX_Q, fixed_dim_tensor, h0_omega_quotient_prime, jordan_tensor
from .projmodel import EMBED_MAX_Q, EscalationError, build_model, h0_bound_ledger, singular_line_check
from .quotient import (
    blowup_singular_points,
    build_equation,
    fiber_reduction_check,
    singular_locus_exhaustive,
    swap_identity_holds,
    verify_invariant_relation,
)
from .resgraph import (
    build_star_graph,
    canonical_cycle,
    extended_fiber_graph,
    fundamental_cycle,
    fundamental_genus,
    kernel_degrees,
    negative_definite_report,
    pg_upper_bound,
    star_cycle_closed_form,
)

COMMANDS = ("curve", "quotient", "graph", "invariants", "embed", "modrep", "all")


class InputError(ValueError):
    pass


class Report:
    def __init__(self):
        self.failures = []

    def check(self, name: str, ok: bool, detail=None) -> bool:
        if not ok:
            rec = {"check": name}
            if detail is not None:
                rec["detail"] = detail
            self.failures.append(rec)
        return ok


def parse_mu(text: str | None, p: int, s: int) -> tuple:
    """Coefficients mu_2..mu_q as codes in F_q.

    s = 1: comma-separated integers, reduced mod p.  s > 1: colon-separated
    entries, each a comma-separated F_p coordinate vector (low degree first).
    """
    q = p**s
    if text is None:
        return (0,) * (q - 1)
    if s == 1:
        try:
            vals = [int(t) % p for t in text.split(",")]
        except ValueError as exc:
            raise InputError(f"cannot parse coefficients {text!r}") from exc
    else:
        vals = []
        for item in text.split(":"):
            try:
                coords = [int(t) % p for t in item.split(",")]
            except ValueError as exc:
                raise InputError(f"cannot parse coefficient {item!r}") from exc
            if len(coords) > s:
                raise InputError(f"coefficient {item!r} has more than {s} coordinates")
            vals.append(sum(c * p**i for i, c in enumerate(coords)))
    if len(vals) != q - 1:
        raise InputError(f"need q - 1 = {q - 1} coefficients, got {len(vals)}")
    return tuple(vals)


def _terms(poly) -> list:
    return [[list(e), c] for e, c in sorted(poly.terms.items(), reverse=True)]


def run_curve(c: CurveSpec, rep: Report, N: int) -> dict:
    smooth = verify_smooth(c)
    rep.check("curve smoothness", smooth.ok, smooth.as_dict())
    ram = ramification(c, N)
    q = c.q
    rep.check("ramification break at q", ram.determinate and set(ram.i_values.values()) == {q}, ram.as_dict())
    w = ram.w.coeffs
    rep.check("Hensel series starts u^q", all(x == 0 for x in w[:q]) and w[q] == 1)
    base = hurwitz_base_genus(c, ram) if ram.artin_value is not None else None
    rep.check("quotient curve rational", base == 0, base)
    fixed = block_fixed_dims(c)
    rep.check("one invariant per differential block", all(d == 1 for d in fixed), fixed)
    return {
        "mu": list(c.mu),
        "genus": genus(c),
        "smooth": smooth.as_dict(),
        "ramification": ram.as_dict(),
        "hensel_w": list(w[: min(len(w), 2 * q + 1)]),
        "base_genus": base,
        "differential_blocks": list(differential_basis(c).block_dims),
        "block_fixed_dims": fixed,
        "block_rank_ladders": block_rank_ladders(c),
    }


def run_quotient(c, c2, rep: Report, N: int) -> dict:
    q = c.q
    eq = build_equation(c, c2)
    rel = verify_invariant_relation(eq, max(N, 2 * q * q))
    rep.check("invariant relation", rel["ok"], rel)
    blow = blowup_singular_points(eq)
    rep.check("blow-up has q+1 points of type A_{q-1}", blow.ok and len(blow.points) == q + 1, blow.as_dict())
    fib = fiber_reduction_check(eq)
    rep.check("fibre reduction", fib["ok"], fib)
    swap = swap_identity_holds(eq)
    rep.check("swap symmetry", swap)
    out = {"equation": _terms(eq.poly), "total_degree": eq.poly.total_degree(), "invariant_relation": rel,
           "blowup": blow.as_dict(), "fiber_reduction": fib, "swap_symmetry": swap}
    locus = singular_locus_exhaustive(eq, 1)
    if locus is not None:
        rep.check("isolated singularity", locus == [(0, 0, 0)], [list(x) for x in locus])
        out["singular_locus_base_field"] = [list(x) for x in locus]
    return out


def run_graph(q: int, rep: Report) -> dict:
    g = build_star_graph(q)
    nd = negative_definite_report(g)
    rep.check("star graph negative definite", nd["negative_definite"], nd)
    Z = fundamental_cycle(g)
    rep.check("fundamental cycle closed form", Z.coeffs == star_cycle_closed_form(q, g).coeffs, Z.to_json())
    K = canonical_cycle(g)
    rep.check("canonical cycle is -(q-2) Z", all(Fraction(k) == -(q - 2) * z for k, z in zip(K.coeffs, Z.coeffs)))
    p_f = fundamental_genus(g, Z, K)
    rep.check("fundamental genus", p_f == (q - 1) * (q - 2) // 2, p_f)
    fg = extended_fiber_graph(q)
    checks = {k: (str(v) if isinstance(v, Fraction) else v) for k, v in fg.checks.items()}
    rep.check("fibre cycles numerically trivial",
              all(v for k, v in fg.checks.items() if k.endswith(("support", "zero", "one", "_ok"))), checks)
    return {
        "star_graph": g.to_json(),
        "negative_definite": nd,
        "fundamental_cycle": Z.to_json(),
        "Z_sq": Z.square(),
        "canonical_cycle": K.to_json(),
        "K_sq": str(K.square()),
        "p_f": p_f,
        "p_g_local_bound": pg_upper_bound(q),
        "p_g_local_label": "upper bound (exact for prime q)",
        "kernel_degrees": kernel_degrees(q),
        "fiber_graph": fg.graph.to_json(),
        "F1": fg.F1.to_json(),
        "F2": fg.F2.to_json(),
        "fiber_checks": checks,
    }


def run_invariants(c, c2, rep: Report) -> dict:
    try:
        report = surface_report(c.q, c, c2).to_json()
    except InvariantError as exc:
        rep.check("surface invariants", False, str(exc))
        return {}
    return report


def run_embed(c, c2, rep: Report, m, n, seed) -> dict:
    if c.q > EMBED_MAX_Q:
        return {"skipped": f"interpolation is limited to q <= {EMBED_MAX_Q}", "h0_bound": h0_bound_ledger(c.q)}
    try:
        res = build_model(c, c2, m=m, n=n, seed=seed)
    except EscalationError as exc:
        rep.check("section basis validation", False, exc.record)
        return {"escalation": exc.record}
    except ValueError as exc:
        rep.check("point sampling", False, str(exc))
        return {}
    rep.check("interpolation nullities", res.nullity_below == 0 and res.nullity_at_q == 1, res.as_dict())
    rep.check("held-out points on the model", res.held_out_ok)
    rep.check("section map invariant", res.invariance_ok)
    line = singular_line_check(res.model)
    rep.check("singular line", line["ok"], line)
    return {"model": res.model.to_json((c, c2)), "validation": res.as_dict(), "singular_line": line,
            "h0_bound": h0_bound_ledger(c.q)}


def run_modrep(c, c2, rep: Report) -> dict:
    p, s = c.tower.p, c.tower.s
    spectra = {}
    for d in range(1, p - 1):
        for e in range(1, p - 1):
            sp = jordan_tensor(d, e, p)
            ok = sp.block_count == min(d, e) and sp.total_size == d * e
            rep.check(f"Jordan tensor {d}x{e}", ok)
            spectra[f"{d},{e}"] = {str(r): k for r, k in sorted(sp.multiplicities.items())}
    out = {"p": p, "jordan_spectra": spectra}
    if c.q > FIXED_DIM_MAX_Q:
        out["fixed_dim_tensor"] = f"skipped: limited to q <= {FIXED_DIM_MAX_Q}"
        return out
    fixed = out["fixed_dim_tensor"] = fixed_dim_tensor(c, c2)
    if s == 1:
        expected = h0_omega_quotient_prime(p)
        rep.check("fixed differentials of the product", fixed == expected, {"computed": fixed, "closed_form": expected})
        out["h0_omega_quotient"] = expected
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wildquot", description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, required=True, help="characteristic")
    ap.add_argument("--s", type=int, default=1, help="q = p^s")
    ap.add_argument("--mu", help="coefficients mu_2..mu_q of f")
    ap.add_argument("--mu-prime", help="coefficients of f'")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--N", type=int, help="series truncation (default 3q+1)")
    ap.add_argument("--m", type=int, help="extension degree for sampling")
    ap.add_argument("--n", type=int, help="number of interpolation points")
    ap.add_argument("--out", help="write JSON here instead of stdout")
    ap.add_argument("command", choices=COMMANDS)
    return ap


def make_curves(args):
    if not is_prime(args.p):
        raise InputError(f"p = {args.p} is not prime")
    if args.s < 1:
        raise InputError("s must be positive")
    mu = parse_mu(args.mu, args.p, args.s)
    mu2 = parse_mu(args.mu_prime, args.p, args.s)
    try:
        return CurveSpec.make(args.p, args.s, mu, args.seed), CurveSpec.make(args.p, args.s, mu2, args.seed)
    except (FieldError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def run(args) -> tuple[dict, Report]:
    c, c2 = make_curves(args)
    q = c.q
    N = args.N if args.N is not None else 3 * q + 1
    if N < q + 2:
        raise InputError(f"N must be at least q + 2 = {q + 2}")
    rep = Report()
    cmd = args.command
    out = {"p": args.p, "s": args.s, "q": q, "seed": args.seed, "command": cmd}
    if cmd in ("curve", "all"):
        out["curve"] = run_curve(c, rep, N)
        out["curve_prime"] = run_curve(c2, rep, N)
    if cmd in ("quotient", "all"):
        out["quotient"] = run_quotient(c, c2, rep, N)
    if cmd in ("graph", "all"):
        out["graph"] = run_graph(q, rep)
    if cmd in ("invariants", "all"):
        out["invariants"] = run_invariants(c, c2, rep)
    if cmd in ("embed", "all"):
        out["embed"] = run_embed(c, c2, rep, args.m, args.n, args.seed)
    if cmd in ("modrep", "all"):
        out["modrep"] = run_modrep(c, c2, rep)
    out["failures"] = rep.failures
    out["ok"] = not rep.failures
    return out, rep


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        out, rep = run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = json.dumps(out, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 2 if rep.failures else 0


if __name__ == "__main__":
    sys.exit(main())
