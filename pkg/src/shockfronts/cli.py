"""Command line front end.

Subcommands
-----------
analyze     model structure: equilibria, potential values, regime (JSON)
admissible  admissible jump pairs as CSV (phi_l, phi_r, P_value)
speed       wave speed for one left state (JSON)
sweep       c*(phi_l) over the admissible interval as CSV, worker pool
profile     full shock profile as CSV (xi, phi, z, lambda)
bio         closed-form summary of the invasion model parameters (JSON)
verify      run every named invariant check, JSON report

Exit codes: 0 success; 1 generic failure (verify reports the first failing
invariant on stderr); 2 structure or parameter error; 3 sweep rows with
bracket failures (rows recorded, run continues); 4 sweep speed
monotonicity violation.

Without --model the built-in invasion model (Di=35, Dg=8, ki=2.5,
lambdai=0.5, lambdag=1) is used.  CSV files use 17 significant digits,
'.' decimal separator and '\n' line endings, and identical configs produce
byte-identical files.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .admissible import admissible_set, pair_table
from .biomodel import summary
from .errors import (BracketFailure, ParamError, StructureViolation,
                     WavefrontError)
from .model import classify
from .modelio import (ModelBundle, _fmt, gnuplot_script, load_model,
                      model_from_config, svg_polyline, write_csv)
from .profile import build_profile, characteristic_speeds, verify_weak
from .speed import TOL_C, solve_speed
from .zfield import solve_lower, solve_upper
from .verify import run_all

DEFAULT_BIO = {"type": "bio", "Di": 35.0, "Dg": 8.0,
               "ki": 2.5, "lambdai": 0.5, "lambdag": 1.0}


def _load_bundle(args: argparse.Namespace) -> ModelBundle:
    if args.model is not None:
        return load_model(args.model)
    return model_from_config(dict(DEFAULT_BIO))


def _tols(args: argparse.Namespace) -> tuple[float, float, float]:
    """(tol_c, rtol, atol); --tol-ode sets rtol and keeps atol = rtol/100."""
    tol_c = args.tol_c if args.tol_c is not None else TOL_C
    rtol = args.tol_ode if args.tol_ode is not None else 1e-10
    return tol_c, rtol, rtol * 1e-2


def _out_path(args: argparse.Namespace, name: str) -> str:
    os.makedirs(args.out, exist_ok=True)
    return os.path.join(args.out, name)


def _emit(obj: dict) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _default_phi_l(adm) -> float:
    return 0.5 * (adm.I_lo + adm.I_hi)


def cmd_analyze(args: argparse.Namespace) -> int:
    bundle = _load_bundle(args)
    m = bundle.model
    rc = classify(m)
    _emit({
        "alpha": m.alpha,
        "beta": m.beta,
        "gamma": m.gamma,
        "P_values": {"P0": m.P(0.0), "Palpha": m.P(m.alpha),
                     "Pbeta": m.P(m.beta), "P1": m.P(1.0)},
        "regime": rc.kind.value,
    })
    return 0


def cmd_admissible(args: argparse.Namespace) -> int:
    bundle = _load_bundle(args)
    adm = admissible_set(bundle.model)
    table = pair_table(adm, n=args.table_n)
    csv_path = _out_path(args, "admissible.csv")
    write_csv(csv_path, ["phi_l", "phi_r", "P_value"], table)
    if args.plot:
        with open(_out_path(args, "admissible.gp"), "w", encoding="utf-8",
                  newline="") as fh:
            fh.write(gnuplot_script("admissible.csv", [(1, 2, "phi_r(phi_l)")],
                                    "admissible jump pairing",
                                    "phi_l", "phi_r"))
    if args.json:
        _emit({"I": [adm.I_lo, adm.I_hi], "J": [adm.J_lo, adm.J_hi],
               "csv": csv_path})
    return 0


def cmd_speed(args: argparse.Namespace) -> int:
    bundle = _load_bundle(args)
    adm = admissible_set(bundle.model)
    phi_l = args.phi_l if args.phi_l is not None else _default_phi_l(adm)
    tol_c, rtol, atol = _tols(args)
    sr = solve_speed(bundle.model, adm, phi_l, tol_c=tol_c,
                     rtol=rtol, atol=atol)
    if args.plot:
        # z over both branches at the solved speed, one gnuplot block each
        with open(_out_path(args, "zfield.csv"), "w", encoding="utf-8",
                  newline="") as fh:
            fh.write("phi,z\n")
            for i, zs in enumerate((solve_lower(bundle.model, sr.c_star,
                                                rtol=rtol, atol=atol),
                                    solve_upper(bundle.model, sr.c_star,
                                                rtol=rtol, atol=atol))):
                if i:
                    fh.write("\n")
                order = np.argsort(zs.phi)
                for u, zv in zip(zs.phi[order], zs.z[order]):
                    fh.write(f"{_fmt(float(u))},{_fmt(float(zv))}\n")
        with open(_out_path(args, "zfield.gp"), "w", encoding="utf-8",
                  newline="") as fh:
            fh.write(gnuplot_script("zfield.csv", [(1, 2, "z(phi)")],
                                    f"z field at c = {sr.c_star:.6f}",
                                    "phi", "z"))
    _emit({"phi_l": sr.phi_l, "phi_r": sr.phi_r, "c_star": sr.c_star,
           "z_l": sr.z_l, "z_r": sr.z_r, "F_residual": sr.F_residual,
           "bracket": list(sr.bracket)})
    return 0


def _sweep_rows(bundle: ModelBundle, adm, phis, tol_c, rtol, atol):
    def one(phi_l: float):
        try:
            sr = solve_speed(bundle.model, adm, float(phi_l), tol_c=tol_c,
                             rtol=rtol, atol=atol)
            return (sr.phi_l, sr.phi_r, sr.c_star, sr.z_l, sr.z_r,
                    sr.F_residual)
        except BracketFailure:
            return (float(phi_l), None, None, None, None, None)

    cap = int(os.environ.get("WAVEFRONT_THREADS", "0") or 0)
    workers = min(len(phis), cap if cap > 0 else (os.cpu_count() or 1))
    with ThreadPoolExecutor(max_workers=max(workers, 1)) as ex:
        # map preserves submission order: deterministic row order
        return list(ex.map(one, phis))


def cmd_sweep(args: argparse.Namespace) -> int:
    bundle = _load_bundle(args)
    adm = admissible_set(bundle.model)
    if args.sweep_n < 2:
        raise ParamError(f"--sweep-n must be >= 2, got {args.sweep_n}")
    tol_c, rtol, atol = _tols(args)
    phis = np.linspace(adm.I_lo, adm.I_hi, args.sweep_n)
    rows = _sweep_rows(bundle, adm, phis, tol_c, rtol, atol)
    csv_path = _out_path(args, "sweep.csv")
    write_csv(csv_path, ["phi_l", "phi_r", "c_star", "z_l", "z_r",
                         "F_residual"], rows)
    if args.plot:
        with open(_out_path(args, "sweep.gp"), "w", encoding="utf-8",
                  newline="") as fh:
            fh.write(gnuplot_script("sweep.csv", [(1, 3, "c*(phi_l)")],
                                    "wave speed over admissible left states",
                                    "phi_l", "c*"))
    failed = [r[0] for r in rows if r[2] is None]
    speeds = [r[2] for r in rows if r[2] is not None]
    monotone = all(b < a for a, b in zip(speeds, speeds[1:]))
    if args.json:
        _emit({"n": len(rows), "bracket_failures": failed,
               "c_range": [min(speeds), max(speeds)] if speeds else None,
               "strictly_decreasing": monotone, "csv": csv_path})
    if failed:
        print(f"bracket failure at phi_l = {failed}", file=sys.stderr)
        return 3
    if not monotone:
        print("c* is not strictly decreasing across the sweep",
              file=sys.stderr)
        return 4
    return 0


def _profile_rows(m, p):
    lam_floor = 1e-9
    rows = []
    for xi, phi, z in ((p.upper_xi, p.upper_phi, p.upper_z),
                       (p.lower_xi, p.lower_phi, p.lower_z)):
        for x, u, zv in zip(xi, phi, z):
            lam = None
            if abs(zv) > lam_floor:
                lam = p.c + m.D(float(u)) * m.g(float(u)) / float(zv)
            rows.append((float(x), float(u), float(zv), lam))
    return rows


def _uniform_xi_blocks(p, n: int = 512):
    """Per-band uniform-xi resampling for plotting (bands stay separate so
    no line is drawn across the jump)."""
    blocks = []
    for xi, phi, z in ((p.upper_xi, p.upper_phi, p.upper_z),
                       (p.lower_xi, p.lower_phi, p.lower_z)):
        grid = np.linspace(float(xi[0]), float(xi[-1]), n)
        blocks.append((grid, np.interp(grid, xi, phi), np.interp(grid, xi, z)))
    return blocks


def cmd_profile(args: argparse.Namespace) -> int:
    bundle = _load_bundle(args)
    m = bundle.model
    adm = admissible_set(m)
    phi_l = args.phi_l if args.phi_l is not None else _default_phi_l(adm)
    tol_c, rtol, atol = _tols(args)
    sr = solve_speed(m, adm, phi_l, tol_c=tol_c, rtol=rtol, atol=atol)
    p = build_profile(m, sr, rtol=rtol, atol=atol)
    csv_path = _out_path(args, "profile.csv")
    write_csv(csv_path, ["xi", "phi", "z", "lambda"], _profile_rows(m, p))
    if args.plot:
        with open(_out_path(args, "profile_plot.csv"), "w", encoding="utf-8",
                  newline="") as fh:
            fh.write("xi,phi,z\n")
            for i, (xs, us, zs) in enumerate(_uniform_xi_blocks(p)):
                if i:
                    fh.write("\n")  # gnuplot block break at the jump
                for x, u, zv in zip(xs, us, zs):
                    fh.write(f"{_fmt(x)},{_fmt(u)},{_fmt(zv)}\n")
        with open(_out_path(args, "profile.gp"), "w", encoding="utf-8",
                  newline="") as fh:
            fh.write(gnuplot_script("profile_plot.csv",
                                    [(1, 2, "phi(xi)"), (1, 3, "z(xi)")],
                                    f"shock profile, c = {sr.c_star:.6f}",
                                    "xi", "phi, z"))
    if args.svg:
        xs = np.concatenate([b[0] for b in _uniform_xi_blocks(p)])
        us = np.concatenate([b[1] for b in _uniform_xi_blocks(p)])
        with open(_out_path(args, "profile.svg"), "w", encoding="utf-8",
                  newline="") as fh:
            fh.write(svg_polyline(xs, us))
    if args.json:
        rep = verify_weak(m, p)
        lams = characteristic_speeds(m, p)
        _emit({"phi_l": sr.phi_l, "phi_r": sr.phi_r, "c_star": sr.c_star,
               "weak_check": dataclasses.asdict(rep),
               "lambda_range": [min(v for _, v in lams),
                                max(v for _, v in lams)],
               "csv": csv_path})
    return 0


def cmd_bio(args: argparse.Namespace) -> int:
    bundle = _load_bundle(args)
    if bundle.bio is None:
        raise ParamError("bio command needs a bio model config")
    _emit(summary(bundle.bio))
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        bundle = _load_bundle(args)
    except (ParamError, StructureViolation) as exc:
        report = {"checks": [{"name": "model.load", "passed": False,
                              "detail": str(exc)}],
                  "passed": False, "n_pass": 0, "n_total": 1}
        _emit(report)
        print("first failing invariant: model.load", file=sys.stderr)
        return 1
    results = run_all(bundle)
    report = {
        "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail}
                   for r in results],
        "passed": all(r.passed for r in results),
        "n_pass": sum(r.passed for r in results),
        "n_total": len(results),
    }
    _emit(report)
    if not report["passed"]:
        first = next(r.name for r in results if not r.passed)
        print(f"first failing invariant: {first}", file=sys.stderr)
        return 1
    return 0


_COMMANDS = {
    "analyze": cmd_analyze,
    "admissible": cmd_admissible,
    "speed": cmd_speed,
    "sweep": cmd_sweep,
    "profile": cmd_profile,
    "bio": cmd_bio,
    "verify": cmd_verify,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", metavar="PATH", default=None,
                        help="JSON model config (default: built-in invasion "
                             "model)")
    common.add_argument("--out", metavar="DIR", default=".",
                        help="output directory for CSV/plot artifacts")
    common.add_argument("--tol-c", type=float, default=None,
                        help=f"speed bisection tolerance (default {TOL_C:g})")
    common.add_argument("--tol-ode", type=float, default=None,
                        help="ODE relative tolerance; absolute is rtol/100 "
                             "(default 1e-10)")
    common.add_argument("--plot", action="store_true",
                        help="emit a gnuplot script next to the CSV")
    common.add_argument("--json", action="store_true",
                        help="print a JSON summary to stdout")

    ap = argparse.ArgumentParser(
        prog="shockfronts",
        description="Shock wavefronts of u_t = P(u)_xx + g(u) with "
                    "sign-changing diffusivity")
    sub = ap.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common],
                   help="equilibria, potential values, regime")
    p_adm = sub.add_parser("admissible", parents=[common],
                           help="admissible jump pairs CSV")
    p_adm.add_argument("--table-n", type=int, default=512,
                       help="rows in the pairing table (default 512)")
    p_speed = sub.add_parser("speed", parents=[common],
                             help="wave speed for one left state")
    p_speed.add_argument("--phi-l", type=float, default=None,
                         help="left state (default: midpoint of I)")
    p_sweep = sub.add_parser("sweep", parents=[common],
                             help="c*(phi_l) over the admissible interval")
    p_sweep.add_argument("--sweep-n", type=int, default=41,
                         help="number of left states (default 41, min 2)")
    p_prof = sub.add_parser("profile", parents=[common],
                            help="full shock profile CSV")
    p_prof.add_argument("--phi-l", type=float, default=None,
                        help="left state (default: midpoint of I)")
    p_prof.add_argument("--svg", action="store_true",
                        help="emit a dependency-free SVG of phi(xi)")
    sub.add_parser("bio", parents=[common],
                   help="closed-form invasion-model summary")
    sub.add_parser("verify", parents=[common],
                   help="run all named invariant checks")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (StructureViolation, ParamError) as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except BracketFailure as exc:
        print(str(exc), file=sys.stderr)
        return 3
    except WavefrontError as exc:
        print(str(exc), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
