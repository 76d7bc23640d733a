"""Command-line front end.

Exit codes: 0 when every check passes its tolerance, 1 when any check
fails, 2 on usage errors.  All randomness derives from ``--seed``; trial
``i`` uses the stream keyed by ``(seed, i)``.
"""
import argparse
import os
import sys

import numpy as np

from sharptrace import determinant, extension, inequalities, metric, report, sphere
from sharptrace.inequalities import ExtremalFamily, evaluate, extremal_profile, random_spectrum

OUTPUT_DIR_ENV = "SHARPTRACE_OUTPUT_DIR"

DEFAULTS = {
    "K": 64,
    "angular": 200,
    "radial": 128,
    "seed": 0,
}

IDENTITY_TOL = 1e-11
EQUALITY_TOL = 1e-6
FUZZ_TOL = 1e-8
PAIRING_TOL = 1e-10
RESIDUAL_TOL = {"psi_ode": 1e-11, "error_term": 1e-11, "tau_pde": 1e-10}


class UsageError(Exception):
    pass


def _floats(text):
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def _common(p, trials=None, tol=None):
    p.add_argument("--K", type=int, default=DEFAULTS["K"], help="degree cap (default 64)")
    p.add_argument("--angular", type=int, default=DEFAULTS["angular"], help="angular Gauss nodes")
    p.add_argument("--radial", type=int, default=DEFAULTS["radial"], help="radial Gauss nodes")
    p.add_argument("--seed", type=int, default=DEFAULTS["seed"])
    if trials is not None:
        p.add_argument("--trials", type=int, default=trials)
    if tol is not None:
        p.add_argument("--tol", type=float, default=tol, help="tolerance override")
    p.add_argument("--output", "-o", default=None, help="output file (default: stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="sharptrace",
        description="Spectral checks of fourth-order sharp trace inequalities on Euclidean balls.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("identities", help="exact spectral identities over random spectra")
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--decay", type=float, default=0.3)
    _common(p, trials=100, tol=IDENTITY_TOL)

    p = sub.add_parser("inequality", help="evaluate one inequality on one input")
    p.add_argument("--which", choices=inequalities.WHICH, required=True)
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--family", choices=("constant", "extremal", "power", "random"), default="constant")
    p.add_argument("--t", type=float, default=0.5)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--c", type=float, default=0.0, help="additive constant (log family)")
    p.add_argument("--decay", type=float, default=0.5)
    p.add_argument("--neumann-coefficient", type=float, default=None)
    _common(p, tol=FUZZ_TOL)

    p = sub.add_parser("scan-exponent", help="rank power-law extremal exponents")
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--t", type=float, default=0.5)
    p.add_argument("--alphas", type=_floats, default=None)
    _common(p, tol=FUZZ_TOL)

    p = sub.add_parser("i2", help="log-determinant main term on B^4")
    p.add_argument("--family", choices=("extremal", "random"), default="extremal")
    p.add_argument("--t", type=float, default=0.5)
    p.add_argument("--decay", type=float, default=0.3)
    _common(p, trials=100, tol=FUZZ_TOL)

    p = sub.add_parser("metric-residuals", help="adapted-metric ODE/PDE residuals")
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--points", type=int, default=50)
    _common(p)

    p = sub.add_parser("sweep", help="seeded fuzzing of inequality gaps")
    p.add_argument("--which", choices=inequalities.WHICH + ("all",), default="all")
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--decay", type=float, default=0.5)
    p.add_argument("--plant-violation", action="store_true",
                   help="append the constant datum with the halved Neumann coefficient -(d-4)/4")
    _common(p, trials=1000, tol=FUZZ_TOL)
    return parser


def _applicable(d):
    out = ["escobar"]
    if d == 4:
        out += ["thmB", "beckner_a"]
    if d > 4:
        out += ["thmA", "beckner_b"]
    return out


def _residual_record(check, value, tol, **extra):
    rec = {"check": check, "value": float(value), "gap": float(value), "tol": tol,
           "pass": bool(value <= tol)}
    rec.update(extra)
    return rec


def _inequality_record(rep, tol, expect_equality=False, **extra):
    rec = rep.as_dict()
    ok = rep.holds(tol)
    if expect_equality:
        ok = ok and abs(rep.rel_gap) <= EQUALITY_TOL
    rec.update(pass_=ok, expect_equality=expect_equality)
    rec["pass"] = rec.pop("pass_")
    rec.update(extra)
    return rec


def _extremal_for(which, d, t):
    if which == "thmB":
        return extremal_profile(ExtremalFamily("log_d4", t))
    if which == "beckner_a":
        return extremal_profile(ExtremalFamily("log_d4", t), scale=3.0)
    if which == "escobar":
        return extremal_profile(ExtremalFamily("power", t, -(d - 2) / 2.0))
    return extremal_profile(ExtremalFamily("power", t, -(d - 4) / 2.0))


def cmd_identities(args):
    d, K = args.d, args.K
    if d < 4:
        raise UsageError("identities need d >= 4")
    records = []
    gaps = [inequalities.energy_identity_gap(random_spectrum(args.seed, d, K, args.decay, i))
            for i in range(args.trials)]
    records.append(_residual_record("energy_identity_gap_max", max(gaps, default=0.0), args.tol,
                                    trials=args.trials))
    k = np.arange(K + 1)
    lb = sphere.multiplier("B", k, d)
    p3 = sphere.multiplier("P3", k, d)
    alg1 = np.max(np.abs(p3 - (lb - 1) * lb * (lb + 1)) / np.maximum(np.abs(p3), 1.0))
    alg2 = np.max(np.abs(lb**2 - (k * (k + d - 2) + ((d - 2) / 2) ** 2)) / np.maximum(lb**2, 1.0))
    records.append(_residual_record("multiplier_p3_factorisation", alg1, args.tol))
    records.append(_residual_record("multiplier_b_squared", alg2, args.tol))

    restr, ibp = 0.0, 0.0
    for i in range(args.trials):
        f = random_spectrum(args.seed, d, K, args.decay, i)
        g = random_spectrum(args.seed + 1, d, K, args.decay, i)
        w = extension.extend_biharmonic(f, g)
        jet = extension.boundary_jet(w)
        lhs = jet.laplacian.coeffs
        rhs = jet.normal2.coeffs + (d - 1) * jet.normal.coeffs + jet.tangential.coeffs
        restr = max(restr, np.max(np.abs(lhs - rhs)) / max(np.max(np.abs(lhs)), 1e-300))
        e = extension.bilaplacian_energy(w)
        boundary = (np.dot(jet.normal.coeffs, jet.laplacian.coeffs)
                    - np.dot(jet.value.coeffs, jet.normal_laplacian.coeffs))
        ibp = max(ibp, abs(boundary - e) / max(abs(e), 1e-300))
    records.append(_residual_record("jet_restriction_identity", restr, args.tol))
    records.append(_residual_record("flat_integration_by_parts", ibp, args.tol))

    if d == 4:
        beta_gap = 0.0
        for i in range(args.trials):
            phi = random_spectrum(args.seed, 4, K, args.decay, i)
            outs = [determinant.p3b_boundary(extension.extend_biharmonic(phi, n)).coeffs
                    for n in (0.0 * phi, sphere.ZonalSpectrum.constant(4, K, -1.0), -phi)]
            ref = sphere.apply_multiplier(phi, "P3").coeffs
            scale = max(np.max(np.abs(ref)), 1.0)
            beta_gap = max(beta_gap, max(np.max(np.abs(o - ref)) for o in outs) / scale)
        records.append(_residual_record("p3b_neumann_independence", beta_gap, args.tol))
    return records, {}


def cmd_inequality(args):
    d = args.d
    expect = False
    if args.family == "constant":
        f = sphere.ZonalProfile(lambda u: np.ones_like(u), label="1")
        expect = args.neumann_coefficient is None
    elif args.family == "extremal":
        f = _extremal_for(args.which, d, args.t)
        expect = args.neumann_coefficient is None
    elif args.family == "power":
        alpha = args.alpha if args.alpha is not None else -(d - 4) / 2.0
        f = extremal_profile(ExtremalFamily("power", args.t, alpha))
    else:
        f = random_spectrum(args.seed, d, args.K, args.decay)
    rep = evaluate(args.which, f, d, args.K, args.angular,
                   neumann_coefficient=args.neumann_coefficient,
                   params={"family": args.family, "t": args.t})
    return [_inequality_record(rep, args.tol, expect_equality=expect)], {}


def cmd_scan(args):
    res = inequalities.exponent_scan(args.d, args.t, args.alphas, args.K, args.angular)
    records = []
    for alpha, rel_gap, gap in res.table:
        records.append({"alpha": alpha, "rel_gap": rel_gap, "gap": gap,
                        "pass": bool(rel_gap >= -args.tol)})
    extra = {"alpha_star": res.alpha_star, "separation": res.separation,
             "separated": res.separated()}
    return records, extra


def _scan_comments(extra):
    verdict = "separated" if extra["separated"] else "NOT separated (below two orders of magnitude)"
    return [f"minimizer alpha={report._float(extra['alpha_star'])} "
            f"separation={report._float(extra['separation'])} {verdict}"]


def cmd_i2(args):
    K = args.K
    records = []
    if args.family == "extremal":
        phi, c = determinant.normalize_constraint(
            extremal_profile(ExtremalFamily("log_d4", args.t)), args.angular)
        spec = sphere.analyze(phi, 4, K, args.angular)
        w = extension.extend_biharmonic(spec, 0.0 * spec)
        gstar = determinant.i2(w, "gstar")
        flat = determinant.i2(determinant.add_rho(w), "flat")
        records.append(_residual_record("i2_gstar_extremal", abs(gstar.i2), EQUALITY_TOL,
                                        t=args.t, normalization=c, **_prefix(gstar.as_dict(), "gstar_")))
        records.append(_residual_record("i2_flat_w_plus_rho", abs(flat.i2), EQUALITY_TOL,
                                        **_prefix(flat.as_dict(), "flat_")))
        records.append(_residual_record("gstar_vs_flat_plus_rho", abs(gstar.i2 - flat.i2), PAIRING_TOL))
        return records, {}
    for i in range(args.trials):
        phi, c = determinant.normalize_constraint(
            random_spectrum(args.seed, 4, K, args.decay, i), args.angular)
        w = extension.extend_biharmonic(phi, 0.0 * phi)
        gstar = determinant.i2(w, "gstar").i2
        flat = determinant.i2(determinant.add_rho(w), "flat").i2
        records.append({"trial": i, "i2_gstar": gstar, "i2_flat_rho": flat, "gap": min(gstar, flat),
                        "pass": bool(min(gstar, flat) >= -args.tol and abs(gstar - flat) <= PAIRING_TOL)})
    return records, {}


def _prefix(d, p):
    return {p + k: v for k, v in d.items()}


def cmd_metric(args):
    d = args.d
    grid = np.linspace(0.05, 0.95, args.points)
    records = []
    if d > 4:
        psi_res = max(metric.psi_ode_residual(r, d) for r in grid)
        err = max(metric.error_term_gap(r, d) for r in grid)
        records.append(_residual_record("psi_ode_residual_max", psi_res, RESIDUAL_TOL["psi_ode"]))
        records.append(_residual_record("error_term_gap_max", err, RESIDUAL_TOL["error_term"]))
    elif d == 4:
        tau_res = max(metric.tau_pde_residual(r) for r in grid)
        records.append(_residual_record("tau_pde_residual_max", tau_res, RESIDUAL_TOL["tau_pde"]))
    else:
        raise UsageError("metric residuals need d >= 4")
    full = np.linspace(0.0, 1.0, args.points)
    for eps in (1e-2, 1e-3, 1e-4):
        ratio = max(metric.dimension_continuity_gap(r, eps) / eps for r in full)
        # first-order bound: e^{2 rho} rho^2 / 2 <= e / 8
        records.append(_residual_record("dimension_continuity_ratio", ratio, 0.5, eps=eps))
    return records, {}


def cmd_sweep(args):
    kinds = _applicable(args.d) if args.which == "all" else [args.which]
    records = []
    for which in kinds:
        decay = max(args.decay, 0.3) if which == "thmB" else args.decay
        for i in range(args.trials):
            f = random_spectrum(args.seed, args.d, args.K, decay, i)
            rep = evaluate(which, f, args.d, args.K, args.angular)
            rec = _inequality_record(rep, args.tol, trial=i)
            records.append(rec)
    if args.plant_violation:
        if not args.d > 4:
            raise UsageError("--plant-violation uses the order-four trace inequality (needs d > 4)")
        one = sphere.ZonalProfile(lambda u: np.ones_like(u), label="1")
        rep = evaluate("thmA", one, args.d, args.K, args.angular,
                       neumann_coefficient=inequalities.halved_neumann_coefficient(args.d),
                       params={"planted": True})
        records.append(_inequality_record(rep, args.tol, trial=-1))
    return records, {}


COMMANDS = {
    "identities": cmd_identities,
    "inequality": cmd_inequality,
    "scan-exponent": cmd_scan,
    "i2": cmd_i2,
    "metric-residuals": cmd_metric,
    "sweep": cmd_sweep,
}

CSV_COLUMNS = {
    "scan-exponent": ["alpha", "rel_gap", "gap", "pass"],
    "sweep": ["trial", "which", "d", "lhs", "rhs", "gap", "rel_gap", "pass"],
    "i2": ["trial", "i2_gstar", "i2_flat_rho", "gap", "pass"],
}


def _output_path(path):
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        return os.path.join(base, path)
    return path


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    config = {k: v for k, v in sorted(vars(args).items())}
    try:
        records, extra = COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"sharptrace {args.command}: error: {exc}", file=stderr)
        return 2

    if args.format == "csv":
        columns = CSV_COLUMNS.get(args.command)
        if columns is None or (args.command == "i2" and args.family != "random"):
            print(f"sharptrace {args.command}: error: CSV output is only for scans and sweeps",
                  file=stderr)
            return 2
        comments = _scan_comments(extra) if args.command == "scan-exponent" else ()
        text = report.to_csv(records, columns, comments)
    else:
        text = report.dumps(report.build_report(args.command, config, records, extra))

    if args.output:
        path = _output_path(args.output)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    if args.command == "scan-exponent" and args.format == "json":
        print(_scan_comments(extra)[0], file=stderr)
    return 0 if all(r["pass"] for r in records) else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
