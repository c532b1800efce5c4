"""Command-line front end: transform / reduce / case / verify.

Exit codes: 0 success or verification pass, 1 verification fail or no
reduction found, 2 invalid input, 3 inapplicable identity.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, replace

from .core import (
    HeunError,
    HeunParams,
    InvalidParameterError,
    MobiusMap,
    PowerPrefactor,
    make_params,
)
from .identities import IDENTITY_MAP
from .numerics import DEFAULT_ORDER, heun_series
from .physics import (
    ChargedParticleInput,
    CoulombSphereInput,
    InverseSquareInput,
    charged_particle_offsets,
    charged_particle_params,
    charged_particle_trivial_energy,
    coulomb_ground_state_form,
    coulomb_params,
    coulomb_quartic_matching,
    coulomb_reduc_energy,
    coulomb_spectrum,
    inverse_square_feasibility,
    inverse_square_params,
    quantum_walk_density,
    quantum_walk_form,
    quantum_walk_params,
)
from .reduction import (
    HypergeometricForm,
    catalog_pairs,
    detect_cases,
    reduce_case2,
    reduce_case4,
    reduce_harmonic_d_minus1,
)
from .verification import (
    GridSpec,
    VerificationReport,
    quadrature_evaluator,
    series_evaluator,
    verify_identity,
    verify_reduction,
    verify_solution,
    verify_values,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_BAD_INPUT = 2
EXIT_INAPPLICABLE = 3


@dataclass(frozen=True)
class CliConfig:
    tolerance: float = 1e-8
    order: int = DEFAULT_ORDER
    grid_points: int = 21
    output_format: str = "text"

    def __post_init__(self):
        if not self.tolerance > 0:
            raise InvalidParameterError("tolerance must be positive")
        if self.order < 8:
            raise InvalidParameterError("series order must be >= 8")
        if self.grid_points < 3:
            raise InvalidParameterError("grid must have at least 3 points")


def _fmt(z: complex) -> str:
    z = complex(z)
    if abs(z.imag) < 1e-13:
        r = z.real
        return str(int(r)) if r == int(r) and abs(r) < 1e15 else f"{r:.10g}"
    return f"({z.real:.10g}{z.imag:+.10g}j)"


def _fmt_params(p: HeunParams) -> str:
    return (f"H(d={_fmt(p.d)}, q={_fmt(p.q)}; a={_fmt(p.a)}, b={_fmt(p.b)}, "
            f"gamma={_fmt(p.gamma)}, delta={_fmt(p.delta)}; z)  [epsilon={_fmt(p.epsilon)}]")


def _fmt_mobius(m: MobiusMap, var: str = "z") -> str:
    num = f"{_fmt(m.a)}*{var}" if m.b == 0 else f"({_fmt(m.a)}*{var}{'+' if m.b.real >= 0 else ''}{_fmt(m.b)})"
    if m.c == 0 and m.d == 1:
        return var if m.a == 1 and m.b == 0 else num
    den = f"({_fmt(m.c)}*{var}{'+' if m.d.real >= 0 else ''}{_fmt(m.d)})"
    return f"{num}/{den}"


def _fmt_prefactor(pref: PowerPrefactor, var: str = "z") -> str:
    if pref.is_trivial:
        return ""
    parts = []
    for f in pref.factors:
        base = f"{_fmt(f.c0)}{'+' if f.c1.real >= 0 and f.c1.imag == 0 else ''}{_fmt(f.c1)}*{var}"
        parts.append(f"({base})^({_fmt(f.exponent)})")
    return " * ".join(parts)


def _read_json_arg(arg: str):
    if arg == "-":
        return json.loads(sys.stdin.read())
    if arg.startswith("@"):
        with open(arg[1:], encoding="utf-8") as fh:
            return json.load(fh)
    return json.loads(arg)


def _params_from_arg(arg: str) -> HeunParams:
    return HeunParams.from_json(_read_json_arg(arg))


def _emit(payload: dict, cfg: CliConfig, text_lines: list[str]):
    if cfg.output_format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_transform(args, cfg: CliConfig) -> int:
    try:
        p = _params_from_arg(args.params)
    except (HeunError, ValueError, OSError) as exc:
        print(f"error: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    op = IDENTITY_MAP.get(args.identity)
    if op is None:
        print(f"error: unknown identity {args.identity!r}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    try:
        t = op(p)
    except HeunError as exc:
        print(f"error: identity not applicable: {exc}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    pref = _fmt_prefactor(t.prefactor)
    rhs = (f"{pref} * " if pref else "") + _fmt_params(t.params).replace(
        "; z)", f"; {_fmt_mobius(t.arg_map)})")
    lines = [_fmt_params(p), f"  = {rhs}"]
    payload = {"input": p.to_json(), "result": t.to_json()}
    _emit(payload, cfg, lines)
    return EXIT_OK


def cmd_reduce(args, cfg: CliConfig) -> int:
    try:
        p = _params_from_arg(args.params)
    except (HeunError, ValueError, OSError) as exc:
        print(f"error: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    report = detect_cases(p)
    lines = [_fmt_params(p)]
    if not report.entries:
        lines.append("no reduction: none of the case conditions hold")
    for e in report.entries:
        lines.append(f"  case {e.case}  (route {e.route})")
        for c in e.conditions:
            lines.append(f"    condition: {c}")
        if e.form is not None:
            lines.append(f"    form: F({_fmt(e.form.a2)}, {_fmt(e.form.b2)}; {_fmt(e.form.c2)}; "
                         f"R(z) of degree {e.form.arg_map.degree})")
        if e.quadrature is not None:
            qd = e.quadrature
            lines.append(f"    quadrature: integral of z^({_fmt(qd.exponent_at_zero)}) "
                         f"(z-1)^({_fmt(qd.exponent_at_one)}) (z-{_fmt(qd.d)})^({_fmt(qd.exponent_at_d)})")
        for n in e.notes:
            lines.append(f"    note: {n}")
    _emit(report.to_json(), cfg, lines)
    return EXIT_OK if report.entries else EXIT_FAIL


def _verification_json(v: VerificationReport | None) -> dict | None:
    return v.to_json() if v is not None else None


def _case_quantum_walk(args, cfg: CliConfig):
    p = quantum_walk_params(args.d)
    if args.perturb_q:
        p = replace(p, q=p.q + args.perturb_q)
    report = detect_cases(p)
    payload = {"case": "quantum-walk", "inputs": {"d": args.d, "perturb_q": args.perturb_q},
               "params": p.to_json(), "detected": report.to_json()["entries"]}
    lines = [f"quantum walk limit density, d = {args.d:g}", _fmt_params(p),
             f"detected cases: {', '.join(report.cases) or 'none'}"]
    grid = GridSpec(n=cfg.grid_points)
    checks: list[str] = []
    if abs(args.d - 4.0) < 1e-12:
        form = quantum_walk_form(4.0)
        primary = verify_reduction(p, form, grid, cfg.tolerance, cfg.order)
        payload["form"] = form.to_json()
        checks.append(f"cubic reduction: max_rel_err {primary.max_rel_err:.3e} "
                      f"({'pass' if primary.passed else 'FAIL'})")
    else:
        primary = verify_values(p, lambda z: quantum_walk_density(z, args.d), grid,
                                cfg.tolerance, cfg.order)
        checks.append(f"closed-form density: max_rel_err {primary.max_rel_err:.3e} "
                      f"({'pass' if primary.passed else 'FAIL'})")
    density = verify_values(p, lambda z: quantum_walk_density(z, args.d), grid,
                            cfg.tolerance, cfg.order)
    payload["verification"] = _verification_json(primary)
    payload["density_check"] = _verification_json(density)
    checks.append(f"normalized density vs series: max_rel_err {density.max_rel_err:.3e} "
                  f"({'pass' if density.passed else 'FAIL'})")
    lines += checks
    return payload, lines, primary.passed


def _case_coulomb(args, cfg: CliConfig):
    gamma = complex(args.gamma)
    beta = complex(args.beta)
    energy = complex(args.energy) if args.energy is not None else coulomb_spectrum(0, args.m, gamma)
    inp = CoulombSphereInput(args.m, gamma, beta, energy)
    p = coulomb_params(inp)
    report = detect_cases(p)
    energies = {"ground_state": _fmt(coulomb_spectrum(0, args.m, gamma)),
                "energy_used": _fmt(energy)}
    payload = {"case": "coulomb3sphere",
               "inputs": {"m": args.m, "gamma": _fmt(gamma), "beta": _fmt(beta),
                          "energy": _fmt(energy)},
               "params": p.to_json(), "detected": report.to_json()["entries"]}
    lines = [f"Coulomb problem on a 3-sphere, m = {args.m}, gamma = {_fmt(gamma)}, "
             f"beta = {_fmt(beta)}, E = {_fmt(energy)}",
             _fmt_params(p),
             f"detected cases: {', '.join(report.cases) or 'none'}"]
    if abs(beta - gamma) > 1e-12:
        e_red, n_red = coulomb_reduc_energy(beta, gamma, args.m)
        energies["reduction_energy"] = _fmt(e_red)
        energies["reduction_index"] = _fmt(n_red)
        lines.append(f"transported-pair energy: E = {_fmt(e_red)}, index n = {_fmt(n_red)}")
    match = coulomb_quartic_matching(args.m)
    payload["quartic_matching"] = {
        "beta": _fmt(match.beta), "gamma": _fmt(match.gamma),
        "energy": _fmt(match.energy), "n_reduc": _fmt(match.n_reduc),
        "residual": match.residual, "params": match.params.to_json()}
    lines.append(f"quartic matching point: beta = {_fmt(match.beta)}, "
                 f"gamma = {_fmt(match.gamma)}, E = {_fmt(match.energy)}, "
                 f"n = {_fmt(match.n_reduc)}")
    grid = GridSpec(n=cfg.grid_points)
    if abs(beta) < 1e-12:
        form = reduce_harmonic_d_minus1(p)
        payload["form"] = form.to_json()
        if form.degenerate_c2:
            primary = verify_solution(p, series_evaluator(heun_series(p, cfg.order)),
                                      grid, cfg.tolerance)
            lines.append("quadratic reduction form has degenerate c2; verified the series instead")
        else:
            primary = verify_reduction(p, form, grid, cfg.tolerance, cfg.order)
            lines.append(f"quadratic reduction: max_rel_err {primary.max_rel_err:.3e} "
                         f"({'pass' if primary.passed else 'FAIL'})")
        try:
            gform = coulomb_ground_state_form(inp)
            payload["ground_state_form"] = gform.to_json()
            if gform.degenerate_c2:
                lines.append("ground-state form: degenerate c2 (flagged, not evaluated)")
        except HeunError:
            pass
    else:
        primary = verify_solution(p, series_evaluator(heun_series(p, cfg.order)),
                                  grid, cfg.tolerance)
        lines.append(f"series residual check: max_rel_err {primary.max_rel_err:.3e} "
                     f"({'pass' if primary.passed else 'FAIL'})")
    payload["energies"] = energies
    payload["verification"] = _verification_json(primary)
    return payload, lines, primary.passed


def _case_inverse_square(args, cfg: CliConfig):
    inp = InverseSquareInput(args.omega, args.omega4, args.kappa)
    p = inverse_square_params(inp)
    report = detect_cases(p)
    payload = {"case": "inverse-square",
               "inputs": {"omega": args.omega, "omega4": args.omega4, "kappa": args.kappa},
               "params": p.to_json(), "detected": report.to_json()["entries"]}
    lines = [f"attractive inverse-square potential, omega = {args.omega:g}, "
             f"omega4 = {args.omega4:g}, kappa = {args.kappa:g}",
             _fmt_params(p),
             f"detected cases: {', '.join(report.cases) or 'none'}"]
    grid = GridSpec(n=cfg.grid_points)
    if abs(args.omega4 - 0.5) < 1e-10:
        form = reduce_case2(p)
        payload["form"] = form.to_json()
        primary = verify_reduction(p, form, grid, cfg.tolerance, cfg.order)
        lines.append(f"delta = 0 reduction: max_rel_err {primary.max_rel_err:.3e} "
                     f"({'pass' if primary.passed else 'FAIL'})")
    else:
        primary = verify_solution(p, series_evaluator(heun_series(p, cfg.order)),
                                  grid, cfg.tolerance)
        lines.append("no trivial case at this omega4; series residual check: "
                     f"max_rel_err {primary.max_rel_err:.3e} "
                     f"({'pass' if primary.passed else 'FAIL'})")
        verdicts = [inverse_square_feasibility(pair) for pair in catalog_pairs()]
        payload["feasibility"] = [v.to_json() for v in verdicts]
        lines.append("harmonic-pair feasibility:")
        for v in verdicts:
            lines.append(f"  (d={_fmt(v.pair[0])}, p={_fmt(v.pair[1])}): "
                         f"{'feasible' if v.feasible else 'infeasible'} - {v.reason}")
    payload["verification"] = _verification_json(primary)
    return payload, lines, primary.passed


def _case_charged_particle(args, cfg: CliConfig):
    ap, bp = charged_particle_offsets(args.S, args.m)
    eps = args.eps_prime if args.eps_prime is not None else \
        charged_particle_trivial_energy(ap, bp, args.S)
    inp = ChargedParticleInput(args.S, args.m, args.radius, args.l0, eps)
    p = charged_particle_params(inp)
    report = detect_cases(p)
    payload = {"case": "charged-particle",
               "inputs": {"S": args.S, "m": args.m, "radius": args.radius,
                          "l0": "inf" if math.isinf(args.l0) else args.l0,
                          "eps_prime": eps},
               "params": p.to_json(), "detected": report.to_json()["entries"],
               "energies": {"trivial_eps_prime": charged_particle_trivial_energy(ap, bp, args.S)}}
    lines = [f"charged particle on a sphere, S = {args.S:g}, m = {args.m}, "
             f"eps' = {eps:g}, l0 = {args.l0:g}",
             _fmt_params(p),
             f"detected cases: {', '.join(report.cases) or 'none'}"]
    if abs(p.a.imag) > 1e-12 or abs(p.b.imag) > 1e-12:
        lines.append("note: negative discriminant, a and b are complex")
        payload.setdefault("notes", []).append("complex a, b (negative discriminant)")
    grid = GridSpec(n=cfg.grid_points)
    if abs(p.a * p.b) < 1e-10 and abs(p.q) < 1e-10:
        qd = reduce_case4(p)
        payload["quadrature"] = qd.to_json()
        primary = verify_solution(p, quadrature_evaluator(qd, basepoint=0.325),
                                  GridSpec(n=cfg.grid_points, lo=0.2, hi=0.45),
                                  cfg.tolerance)
        lines.append(f"quadrature solution residual: max_rel_err {primary.max_rel_err:.3e} "
                     f"({'pass' if primary.passed else 'FAIL'})")
    elif abs(p.q) < 1e-10:
        form = reduce_harmonic_d_minus1(p)
        payload["form"] = form.to_json()
        primary = verify_reduction(p, form, grid, cfg.tolerance, cfg.order)
        lines.append(f"quadratic reduction: max_rel_err {primary.max_rel_err:.3e} "
                     f"({'pass' if primary.passed else 'FAIL'})")
    else:
        primary = verify_solution(p, series_evaluator(heun_series(p, cfg.order)),
                                  grid, cfg.tolerance)
        lines.append(f"series residual check: max_rel_err {primary.max_rel_err:.3e} "
                     f"({'pass' if primary.passed else 'FAIL'})")
    payload["verification"] = _verification_json(primary)
    return payload, lines, primary.passed


def cmd_case(args, cfg: CliConfig) -> int:
    handlers = {
        "quantum-walk": _case_quantum_walk,
        "coulomb3sphere": _case_coulomb,
        "inverse-square": _case_inverse_square,
        "charged-particle": _case_charged_particle,
    }
    handler = handlers.get(args.name)
    if handler is None:
        print(f"error: unknown case {args.name!r}", file=sys.stderr)
        return EXIT_BAD_INPUT
    try:
        payload, lines, passed = handler(args, cfg)
    except (HeunError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    _emit(payload, cfg, lines)
    return EXIT_OK if passed else EXIT_FAIL


def cmd_verify(args, cfg: CliConfig) -> int:
    try:
        p = _params_from_arg(args.params)
    except (HeunError, ValueError, OSError) as exc:
        print(f"error: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    grid = GridSpec(n=cfg.grid_points)
    try:
        if args.identity is not None:
            if args.identity not in IDENTITY_MAP:
                print(f"error: unknown identity {args.identity!r}", file=sys.stderr)
                return EXIT_INAPPLICABLE
            try:
                report = verify_identity(p, args.identity, grid, cfg.tolerance, cfg.order)
            except InvalidParameterError as exc:
                print(f"error: identity not applicable: {exc}", file=sys.stderr)
                return EXIT_INAPPLICABLE
        else:
            form = HypergeometricForm.from_json(_read_json_arg(args.form))
            report = verify_reduction(p, form, grid, cfg.tolerance, cfg.order)
    except (HeunError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    lines = [f"max_rel_err = {report.max_rel_err:.6e} over {len(report.grid)} points "
             f"(tolerance {report.tolerance:g})",
             "PASS" if report.passed else "FAIL"]
    _emit(report.to_json(), cfg, lines)
    return EXIT_OK if report.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="heunred",
        description="Transformations, hypergeometric reductions and numerical "
                    "certification for the four-singular-point equation.")
    ap.add_argument("--tol", type=float, default=None,
                    help="verification tolerance (default: HEUN_TOL or 1e-8)")
    ap.add_argument("--order", type=int, default=DEFAULT_ORDER, help="series order")
    ap.add_argument("--grid-points", type=int, default=21, help="verification grid size")
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transform", help="apply one identity to a parameter set")
    t.add_argument("identity", choices=sorted(IDENTITY_MAP))
    t.add_argument("--params", required=True,
                   help="parameter JSON (inline, @file, or - for stdin)")

    r = sub.add_parser("reduce", help="detect every reduction case")
    r.add_argument("--params", required=True)

    c = sub.add_parser("case", help="run a built-in case study")
    c.add_argument("name", choices=["coulomb3sphere", "inverse-square",
                                    "quantum-walk", "charged-particle"])
    c.add_argument("--d", type=float, default=4.0, help="quantum-walk singular point")
    c.add_argument("--perturb-q", type=float, default=0.0,
                   help="additive perturbation of q (sensitivity check)")
    c.add_argument("--m", type=int, default=1, help="integer index m")
    c.add_argument("--gamma", default="0.8", help="coulomb gamma (complex ok)")
    c.add_argument("--beta", default="0", help="coulomb beta (complex ok)")
    c.add_argument("--energy", default=None, help="coulomb energy (default: ground state)")
    c.add_argument("--omega", type=float, default=1.0)
    c.add_argument("--omega4", type=float, default=0.5)
    c.add_argument("--kappa", type=float, default=1.0)
    c.add_argument("--S", type=float, default=1.0, help="monopole strength")
    c.add_argument("--radius", type=float, default=1.0, help="sphere radius")
    c.add_argument("--l0", type=float, default=math.inf, help="Bohr radius (inf allowed)")
    c.add_argument("--eps-prime", type=float, default=None,
                   help="quantized energy (default: the a*b = 0 value)")

    v = sub.add_parser("verify", help="certify a reduction form or an identity")
    v.add_argument("--params", required=True)
    g = v.add_mutually_exclusive_group(required=True)
    g.add_argument("--form", help="hypergeometric form JSON (inline, @file, or -)")
    g.add_argument("--identity", choices=sorted(IDENTITY_MAP))

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    tol = args.tol
    if tol is None:
        tol = float(os.environ.get("HEUN_TOL", "1e-8"))
    try:
        cfg = CliConfig(tolerance=tol, order=args.order,
                        grid_points=args.grid_points,
                        output_format="json" if args.json else "text")
    except InvalidParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    dispatch = {"transform": cmd_transform, "reduce": cmd_reduce,
                "case": cmd_case, "verify": cmd_verify}
    return dispatch[args.command](args, cfg)


if __name__ == "__main__":
    sys.exit(main())
