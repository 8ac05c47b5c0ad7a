"""Command-line experiment runner.

Subcommands:

* ``potts``     -- discontinuity-penalized denoising on a PGM or synthetic
                   image; writes the denoised image and a CSV iteration log.
* ``nash``      -- two-player PDE game with manufactured equilibrium;
                   writes a CSV of per-iteration distances to the solution.
* ``steps``     -- step-size calculators for the three step regimes plus
                   the denoising-specific calculator; optional schedule
                   condition check.
* ``verify``    -- numerical oracle suite; one ``name,pass/fail,margin``
                   line per check.
* ``gen-image`` -- write a seeded synthetic test image as PGM.

All numeric parameters can also be supplied through ``--config FILE``
holding one ``key = value`` pair per line (``#`` starts a comment);
explicit command-line flags override file values.  Every output file
starts with comment lines echoing the effective configuration, so runs
are reproducible from their artifacts alone.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .core import SolveOptions, solve
from .schedules import (
    POTTS_PRESETS,
    AcceleratedRule,
    ConstantRule,
    InfeasibleConstantsError,
    LinearRateRule,
    ProblemConstants,
    StepTriple,
    bound_accelerated,
    bound_constant,
    bound_linear,
    check_48,
    next_triple,
    potts_steps,
)
from . import nash, potts, verify
from .pgm import read_pgm, write_pgm


def parse_config_file(path: str) -> dict[str, str]:
    """Read a plain-text ``key = value`` configuration file.

    Blank lines and ``#`` comments are skipped; inline comments after the
    value are stripped.  Keys use the same spelling as the long command
    line flags, without the leading dashes and with ``-`` or ``_``
    interchangeable.
    """
    out: dict[str, str] = {}
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError("%s:%d: expected key = value" % (path, lineno))
            key, value = line.split("=", 1)
            out[key.strip().replace("-", "_")] = value.strip()
    return out


def apply_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
    """Overlay config-file values onto flags the user left at default.

    ``parser.parse_args`` has already run, so ``args`` holds explicit
    flags.  For every file key we only fill slots whose current value is
    None (the sentinel default used throughout), keeping the documented
    flag-beats-file precedence.
    """
    if getattr(args, "config", None) is None:
        return
    table = parse_config_file(args.config)
    for key, text in table.items():
        if not hasattr(args, key):
            parser.error("unknown configuration key %r in %s" % (key, args.config))
        if getattr(args, key) is None:
            setattr(args, key, text)


def resolve(args: argparse.Namespace, name: str, default, cast=float):
    """Fetch a flag value, casting config-file strings, with a default."""
    value = getattr(args, name)
    if value is None:
        return default
    if isinstance(value, str):
        if cast is bool:
            return value.strip().lower() in ("1", "true", "yes", "on")
        return cast(value)
    return value


def config_header(command: str, items: list[tuple[str, object]]) -> list[str]:
    """Comment lines echoing the effective configuration of a run."""
    lines = ["saddleprox %s" % __version__, "command = %s" % command]
    for key, value in items:
        if isinstance(value, float):
            value = repr(value)
        lines.append("%s = %s" % (key, value))
    return lines


def write_csv(path: str, header_lines: list[str], columns: list[str],
              rows: list[list]) -> None:
    """Write a CSV file preceded by ``#``-prefixed configuration lines."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for line in header_lines:
            fh.write("# %s\n" % line)
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(repr(v) if isinstance(v, float) else str(v)
                             for v in row) + "\n")


def fmt_triple(triple: StepTriple) -> list[tuple[str, object]]:
    return [("tau", triple.tau), ("sigma", triple.sigma), ("omega", triple.omega)]


# ---------------------------------------------------------------------------
# potts subcommand.
# ---------------------------------------------------------------------------

def cmd_potts(args: argparse.Namespace) -> int:
    p = math.inf if str(resolve(args, "p", "1", str)) in ("inf", "oo") else 1.0
    alpha = resolve(args, "alpha", 1.0)
    gamma = resolve(args, "gamma", 1e-3)
    iters = resolve(args, "iters", 10000, int)
    log_stride = resolve(args, "log_stride", 1, int)
    prefix = resolve(args, "out_prefix", "potts", str)
    ref_iters = resolve(args, "reference_iters", 0, int)

    cfg_items: list[tuple[str, object]] = [
        ("p", "inf" if p == math.inf else "1"),
        ("alpha", alpha), ("gamma", gamma), ("iters", iters),
        ("log_stride", log_stride), ("reference_iters", ref_iters),
    ]

    if args.synthetic is not None:
        n1, n2, seed = (int(v) for v in args.synthetic)
        n_shapes = resolve(args, "n_shapes", 6, int)
        noise_sigma = resolve(args, "noise_sigma", 0.05)
        image = potts.gen_synthetic(n1, n2, seed, n_shapes=n_shapes,
                                    noise_sigma=noise_sigma)
        cfg_items += [("synthetic", "%d %d %d" % (n1, n2, seed)),
                      ("n_shapes", n_shapes), ("noise_sigma", noise_sigma)]
    elif args.input is not None:
        image, _ = read_pgm(args.input)
        cfg_items.append(("input", args.input))
    else:
        print("potts: either --input or --synthetic is required", file=sys.stderr)
        return 2

    preset = resolve(args, "preset", "", str)
    if preset:
        if preset not in POTTS_PRESETS:
            print("potts: unknown preset %r (have %s)"
                  % (preset, ", ".join(sorted(POTTS_PRESETS))), file=sys.stderr)
            return 2
        triple = POTTS_PRESETS[preset]
        cfg_items.append(("preset", preset))
    else:
        try:
            triple, _ = potts_steps(
                alpha, gamma, p,
                dynamic_range=resolve(args, "dynamic_range", 1.0),
                gamma_bar=resolve(args, "gamma_bar", 10.0),
                delta=resolve(args, "delta", 0.1),
                mu=resolve(args, "mu", None),
                gtg=resolve(args, "gtilde_g", None),
                gtf=resolve(args, "gtilde_f", None),
            )
        except InfeasibleConstantsError as exc:
            print("potts: infeasible step constants: %s" % exc, file=sys.stderr)
            return 1
    cfg_items += fmt_triple(triple)

    problem = potts.PottsProblem(potts.PottsConfig(alpha=alpha, gamma=gamma, p=p),
                                 image)
    x0 = image.ravel().copy()
    y0 = np.zeros(problem.dual_dim)

    reference = None
    if ref_iters > 0:
        ref_state, _ = solve(problem, triple, x0, y0,
                             SolveOptions(max_iters=ref_iters,
                                          log_stride=ref_iters))
        reference = (ref_state.x, ref_state.y)

    state, records = solve(problem, triple, x0, y0,
                           SolveOptions(max_iters=iters, log_stride=log_stride,
                                        reference=reference,
                                        record_objective=True))

    header = config_header("potts", cfg_items)
    columns = ["iter", "objective", "step_norm"]
    rows: list[list] = []
    for rec in records:
        row: list = [rec.iteration, rec.objective, rec.step_norm]
        if reference is not None:
            row.append(rec.dist_to_ref ** 2)
        rows.append(row)
    if reference is not None:
        columns.append("err_sq_vs_reference")
    write_csv(prefix + "_log.csv", header, columns, rows)

    denoised = state.x.reshape(image.shape)
    write_pgm(prefix + "_denoised.pgm", denoised, comments=header)
    if reference is not None:
        write_pgm(prefix + "_reference.pgm", reference[0].reshape(image.shape),
                  comments=header)
    for key, value in fmt_triple(triple):
        print("%s = %r" % (key, value))
    print("wrote %s_log.csv (%d rows)" % (prefix, len(rows)))
    return 0


# ---------------------------------------------------------------------------
# nash subcommand.
# ---------------------------------------------------------------------------

def cmd_nash(args: argparse.Namespace) -> int:
    sizes = [int(s) for s in str(resolve(args, "sizes", "63,127", str)).split(",")]
    iters = resolve(args, "iters", 12, int)
    if iters <= 0:
        print("nash: --iters must be positive", file=sys.stderr)
        return 2
    tau = resolve(args, "tau", 0.99)
    sigma = resolve(args, "sigma", 1.0)
    omega = resolve(args, "omega", 1.0)
    out = resolve(args, "out", "nash_dist.csv", str)
    triple = StepTriple(tau, sigma, omega)

    cfg_items = [("sizes", ",".join(str(n) for n in sizes)), ("iters", iters),
                 ("tau", tau), ("sigma", sigma), ("omega", omega)]
    dist_columns: list[np.ndarray] = []
    for n in sizes:
        try:
            config, x_star, y_star = nash.manufacture(n)
        except ValueError as exc:
            print("nash: %s" % exc, file=sys.stderr)
            return 1
        problem = nash.NashProblem(config)
        x0 = np.zeros(problem.primal_dim)
        y0 = np.zeros(problem.dual_dim)
        _, records = solve(problem, triple, x0, y0,
                           SolveOptions(max_iters=iters, log_stride=1,
                                        reference=(x_star, y_star)))
        h = config.grid.h
        dist_columns.append(np.array([h * rec.dist_to_ref for rec in records]))

    header = config_header("nash", cfg_items)
    columns = ["iter"] + ["dist_n%d" % n for n in sizes]
    rows = [[i + 1] + [float(col[i]) for col in dist_columns]
            for i in range(iters)]
    write_csv(out, header, columns, rows)
    print("wrote %s (%d rows, %d sizes)" % (out, iters, len(sizes)))
    return 0


# ---------------------------------------------------------------------------
# steps subcommand.
# ---------------------------------------------------------------------------

def constants_from_flags(args: argparse.Namespace) -> ProblemConstants:
    delta = resolve(args, "delta", 0.1)
    return ProblemConstants(
        r_k=resolve(args, "rk", 1.0),
        lambda_x=resolve(args, "lambda_x", 0.0),
        lambda_y=resolve(args, "lambda_y", 0.0),
        l_yx=resolve(args, "lyx", 0.0),
        rho_x=resolve(args, "rho_x", 0.0),
        rho_y=resolve(args, "rho_y", 0.0),
        theta_x=resolve(args, "theta_x", 1.0),
        theta_y=resolve(args, "theta_y", 1.0),
        xi_x=resolve(args, "xi_x", 0.0),
        xi_y=resolve(args, "xi_y", 0.0),
        gamma_g=resolve(args, "gamma_g", 0.0),
        gamma_f=resolve(args, "gamma_f", 0.0),
        gtg=resolve(args, "gtilde_g", 0.0),
        gtf=resolve(args, "gtilde_f", 0.0),
        delta=delta,
        mu=resolve(args, "mu", delta),
    )


def cmd_steps(args: argparse.Namespace) -> int:
    regime = args.regime
    safety = resolve(args, "safety", 0.99)
    lines: list[tuple[str, object]] = [("regime", regime)]
    try:
        if regime == "potts":
            p = math.inf if str(resolve(args, "p", "1", str)) in ("inf", "oo") else 1.0
            schedule, c = potts_steps(
                resolve(args, "alpha", 1.0), resolve(args, "gamma", 1e-3), p,
                dynamic_range=resolve(args, "dynamic_range", 1.0),
                gamma_bar=resolve(args, "gamma_bar", 10.0),
                delta=resolve(args, "delta", 0.1),
                mu=resolve(args, "mu", None),
                gtg=resolve(args, "gtilde_g", None),
                gtf=resolve(args, "gtilde_f", None),
            )
        else:
            c = constants_from_flags(args)
            if regime == "constant":
                tau_sup, sigma_bound = bound_constant(c)
                tau = resolve(args, "tau", safety * tau_sup)
                schedule = ConstantRule(tau, sigma_bound(tau))
                lines += [("tau_sup", tau_sup), ("safety", safety)]
            elif regime == "accelerated":
                # The product cap alone does not imply the per-iteration
                # dual condition when lambda_y > 0, so sigma uses the
                # constant-regime cap evaluated at tau0.
                tau0_max, _sig_tau = bound_accelerated(c)
                tau0 = resolve(args, "tau0", tau0_max)
                sigma = bound_constant(c)[1](tau0)
                schedule = AcceleratedRule(tau0, sigma, c.gtg)
                lines += [("tau0_max", tau0_max)]
            else:
                tau_max = bound_linear(c)
                tau = resolve(args, "tau", tau_max)
                schedule = LinearRateRule(tau=tau, gtg=c.gtg, gtf=c.gtf)
                lines += [("tau_max", tau_max)]
        lines += fmt_triple(schedule.triple(0))
    except InfeasibleConstantsError as exc:
        print("steps: %s" % exc, file=sys.stderr)
        return 1

    for field in ("r_k", "lambda_x", "lambda_y", "l_yx", "rho_x", "rho_y",
                  "theta_x", "theta_y", "xi_x", "xi_y", "gamma_g", "gamma_f",
                  "gtg", "gtf", "delta", "mu"):
        lines.append((field, getattr(c, field)))
    for key, value in lines:
        print("%s = %s" % (key, repr(value) if isinstance(value, float) else value))

    n_check = resolve(args, "check_48", 0, int)
    if n_check > 0:
        triples = [next_triple(schedule, i) for i in range(n_check)]
        report = check_48(c, triples)
        for cond in report.conditions:
            print("check48:%s = %s (margin %r)"
                  % (cond.name, "pass" if cond.passed else "fail", cond.margin))
        return 0 if report.passed else 1
    return 0


# ---------------------------------------------------------------------------
# verify subcommand.
# ---------------------------------------------------------------------------

def cmd_verify(args: argparse.Namespace) -> int:
    seed = resolve(args, "seed", 0, int)
    only = resolve(args, "only", "", str)
    checks = verify.standard_suite(seed=seed)
    if only:
        checks = [c for c in checks if c.name == only]
        if not checks:
            print("verify: no check named %r" % only, file=sys.stderr)
            return 2
    all_pass = True
    for chk in checks:
        result = chk.run()
        all_pass &= result.passed
        print("%s,%s,%r" % (chk.name, "pass" if result.passed else "fail",
                            result.margin))
    return 0 if all_pass else 1


# ---------------------------------------------------------------------------
# gen-image subcommand.
# ---------------------------------------------------------------------------

def cmd_gen_image(args: argparse.Namespace) -> int:
    n1 = resolve(args, "n1", 64, int)
    n2 = resolve(args, "n2", 64, int)
    seed = resolve(args, "seed", 0, int)
    n_shapes = resolve(args, "n_shapes", 6, int)
    noise_sigma = resolve(args, "noise_sigma", 0.05)
    maxval = resolve(args, "maxval", 65535, int)
    out = resolve(args, "out", "synthetic.pgm", str)
    image = potts.gen_synthetic(n1, n2, seed, n_shapes=n_shapes,
                                noise_sigma=noise_sigma)
    header = config_header("gen-image", [
        ("n1", n1), ("n2", n2), ("seed", seed), ("n_shapes", n_shapes),
        ("noise_sigma", noise_sigma), ("maxval", maxval),
    ])
    write_pgm(out, image, maxval=maxval, comments=header)
    print("wrote %s (%dx%d)" % (out, n1, n2))
    return 0


# ---------------------------------------------------------------------------
# Parser assembly.
# ---------------------------------------------------------------------------

def add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="key = value file; flags override it")


def add_step_constant_flags(sub: argparse.ArgumentParser) -> None:
    for flag in ("rk", "lambda-x", "lambda-y", "lyx", "rho-x", "rho-y",
                 "theta-x", "theta-y", "xi-x", "xi-y", "gamma-g", "gamma-f",
                 "gtilde-g", "gtilde-f", "delta", "mu", "tau", "tau0",
                 "safety"):
        sub.add_argument("--" + flag, type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="saddleprox",
        description="Primal-dual splitting experiments: denoising, PDE games,"
                    " step-size calculators, numerical verification.")
    parser.add_argument("--version", action="version",
                        version="saddleprox %s" % __version__)
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("potts", help="discontinuity-penalized denoising run")
    add_common(sp)
    sp.add_argument("--input", help="input PGM image")
    sp.add_argument("--synthetic", nargs=3, metavar=("N1", "N2", "SEED"),
                    help="generate a seeded synthetic image instead of --input")
    sp.add_argument("--p", default=None, help="penalty flavour: 1 or inf")
    for flag in ("alpha", "gamma", "noise-sigma", "dynamic-range", "gamma-bar",
                 "delta", "mu", "gtilde-g", "gtilde-f"):
        sp.add_argument("--" + flag, type=float, default=None)
    sp.add_argument("--n-shapes", type=int, default=None)
    sp.add_argument("--iters", type=int, default=None)
    sp.add_argument("--log-stride", type=int, default=None)
    sp.add_argument("--reference-iters", type=int, default=None)
    sp.add_argument("--preset", default=None,
                    help="named step triple: %s" % ", ".join(sorted(POTTS_PRESETS)))
    sp.add_argument("--out-prefix", default=None)
    sp.set_defaults(func=cmd_potts)

    sn = subs.add_parser("nash", help="two-player PDE game run")
    add_common(sn)
    sn.add_argument("--sizes", default=None, help="comma list of grid sizes")
    sn.add_argument("--iters", type=int, default=None)
    for flag in ("tau", "sigma", "omega"):
        sn.add_argument("--" + flag, type=float, default=None)
    sn.add_argument("--out", default=None)
    sn.set_defaults(func=cmd_nash)

    st = subs.add_parser("steps", help="step-size calculators")
    add_common(st)
    st.add_argument("regime", choices=("constant", "accelerated", "linear",
                                       "potts"))
    add_step_constant_flags(st)
    st.add_argument("--alpha", type=float, default=None)
    st.add_argument("--gamma", type=float, default=None)
    st.add_argument("--p", default=None)
    st.add_argument("--dynamic-range", type=float, default=None)
    st.add_argument("--gamma-bar", type=float, default=None)
    st.add_argument("--check-48", type=int, default=None, metavar="N",
                    help="run the schedule condition check on the first N triples")
    st.set_defaults(func=cmd_steps)

    sv = subs.add_parser("verify", help="numerical oracle suite")
    add_common(sv)
    sv.add_argument("--seed", type=int, default=None)
    sv.add_argument("--only", default=None, help="run a single named check")
    sv.set_defaults(func=cmd_verify)

    sg = subs.add_parser("gen-image", help="write a synthetic PGM test image")
    add_common(sg)
    sg.add_argument("--out", default=None)
    for flag in ("n1", "n2", "seed", "n-shapes", "maxval"):
        sg.add_argument("--" + flag, type=int, default=None)
    sg.add_argument("--noise-sigma", type=float, default=None)
    sg.set_defaults(func=cmd_gen_image)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    apply_config(args, parser)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
