"""Command-line front end: model runs, custom barriers, sweeps, figure data.

Subcommands
    alpha      closed-form Coulomb-barrier run (--Z, --r1, --E or --E-mev)
    cosmo      closed-form nucleation run (--G and --rho, or --a0sq-eq-G)
    gravrad    closed-form near-horizon escape run (five radii/masses)
    custom     generic quadrature pipeline over a potential expression
    figure     CSV grids: g(E) for the Coulomb shift, F(k1, k2) for escape
    sweep      one model, many betas, one record per beta

Records carry the inputs, both exponents, the shift, log T, T, the
enhancement ratio, the method tag, and the tool version.  CSV output is
deterministic: a `# gup-tunnel v...` comment line, a header row, then
17-significant-digit values.  JSON encodes the same values.  Exit codes:
0 success, 1 computation error, 2 usage error.

A config file (--config) holds flat `key = value` lines mirroring the
flags; explicit flags override file entries.  Relative --output paths
resolve against $GUP_TUNNEL_OUTDIR when it is set.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__, dsl
from .constants import JOULES_PER_MEV
from .models import alpha, cosmo, gravrad
from .quadrature import IntegrationConfig
from .wkb import (
    BarrierProblem,
    GupParameter,
    TunnelingReport,
    delta_gamma_first_order,
    find_turning_points,
    gamma_classic,
    gamma_gup_exact,
    reference_momentum_sq,
)

HEADER_COMMENT = f"# gup-tunnel v{__version__}"
OUTDIR_ENV = "GUP_TUNNEL_OUTDIR"
MODELS = ("alpha", "cosmo", "gravrad", "custom")

RESULT_KEYS = (
    "gamma",
    "gamma_gup",
    "delta_gamma",
    "log_t",
    "log_t_gup",
    "t",
    "t_gup",
    "ratio",
    "method",
)

# flag pairs where at most one may be given; a flag on the command line
# silences the partner (and itself) in any --config file
_EXCLUSIVE_KEYS = ({"beta", "beta-tilde"}, {"E", "E-mev"}, {"betas", "beta-range"})


# ---------------------------------------------------------------------------
# parser construction


def _add_output_flags(parser, with_format=True):
    if with_format:
        parser.add_argument(
            "--format",
            choices=("csv", "json", "human"),
            default="csv",
            help="output encoding (default csv)",
        )
    parser.add_argument(
        "-o",
        "--output",
        metavar="PATH",
        help=f"write to PATH instead of stdout; relative paths resolve "
        f"against ${OUTDIR_ENV} when set",
    )
    parser.add_argument(
        "--config",
        metavar="FILE",
        help="flat key = value file mirroring the flags; explicit flags win",
    )


def _add_beta_flags(parser):
    group = parser.add_mutually_exclusive_group()
    group.add_argument(
        "--beta", type=float, default=None, help="deformation strength (default 0)"
    )
    group.add_argument(
        "--beta-tilde",
        type=float,
        default=None,
        dest="beta_tilde",
        help="dimensionless strength; converted via the barrier's momentum scale",
    )


def _add_quadrature_flags(parser):
    parser.add_argument("--rel-tol", type=float, default=1e-10, dest="rel_tol")
    parser.add_argument("--abs-tol", type=float, default=1e-14, dest="abs_tol")
    parser.add_argument(
        "--max-subdivisions", type=int, default=2000, dest="max_subdivisions"
    )


def _add_alpha_flags(parser):
    parser.add_argument("--Z", type=int, default=None, dest="z", help="daughter charge")
    parser.add_argument("--r1", type=float, default=None, help="nuclear radius in m")
    _add_energy_flag(parser)
    parser.add_argument(
        "--E-mev", type=float, default=None, dest="energy_mev", help="energy in MeV"
    )


def _add_energy_flag(parser):
    parser.add_argument(
        "--E", type=float, default=None, dest="energy", help="energy in J"
    )


def _add_cosmo_flags(parser):
    _add_g_newton_flag(parser)
    parser.add_argument(
        "--rho", type=float, default=None, dest="rho_vac", help="vacuum energy density"
    )
    parser.add_argument(
        "--a0sq-eq-G",
        action="store_true",
        dest="a0sq_eq_g",
        help="benchmark density rho = 3/(8 pi G^2), making a0^2 = G",
    )


def _add_g_newton_flag(parser):
    parser.add_argument(
        "--G", type=float, default=None, dest="g_newton", help="Newton constant"
    )


def _add_gravrad_flags(parser, shared=False):
    _add_mass_flag(parser)
    _add_hbar_flag(parser)
    if not shared:
        _add_g_newton_flag(parser)
    parser.add_argument("--M2", type=float, default=None, dest="m2", help="well mass")
    parser.add_argument("--r-h", type=float, default=None, dest="r_h", help="start radius")
    parser.add_argument(
        "--turn-radius", type=float, default=None, dest="turn_radius",
        help="classical turning radius",
    )
    parser.add_argument("--R2", type=float, default=None, dest="r2", help="pole radius")


def _add_mass_flag(parser):
    parser.add_argument("--mass", type=float, default=None, help="particle mass")


def _add_hbar_flag(parser):
    parser.add_argument("--hbar", type=float, default=None, help="Planck constant / 2 pi")


def _add_custom_flags(parser, shared=False):
    parser.add_argument(
        "--potential", default=None, help="potential expression, e.g. 'k*x^2'"
    )
    parser.add_argument(
        "--var", default="x", help="name of the free variable (default x)"
    )
    parser.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="NAME=VALUE",
        help="bind one expression parameter (repeatable)",
    )
    if not shared:
        _add_energy_flag(parser)
        _add_mass_flag(parser)
        _add_hbar_flag(parser)
    parser.add_argument("--x-lo", type=float, default=None, dest="x_lo")
    parser.add_argument("--x-hi", type=float, default=None, dest="x_hi")
    parser.add_argument(
        "--search-lo", type=float, default=None, dest="search_lo",
        help="turning-point search window start (alternative to --x-lo/--x-hi)",
    )
    parser.add_argument(
        "--search-hi", type=float, default=None, dest="search_hi",
        help="turning-point search window end",
    )
    parser.add_argument(
        "--singular-lo",
        action="store_true",
        dest="singular_lo",
        help="apply the square-root endpoint substitution at --x-lo "
        "(turning points, integrable endpoint poles)",
    )
    parser.add_argument(
        "--singular-hi", action="store_true", dest="singular_hi",
        help="apply the square-root endpoint substitution at --x-hi",
    )
    parser.add_argument(
        "--first-order",
        action="store_true",
        dest="first_order",
        help="use the first-order shift instead of the exact deformed exponent",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gup-tunnel",
        description="WKB tunneling exponents with minimal-length corrections",
    )
    parser.add_argument(
        "--version", action="version", version=f"gup-tunnel {__version__}"
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p_alpha = sub.add_parser("alpha", help="Coulomb-barrier decay, closed forms")
    _add_alpha_flags(p_alpha)

    p_cosmo = sub.add_parser("cosmo", help="vacuum nucleation, closed forms")
    _add_cosmo_flags(p_cosmo)

    p_grav = sub.add_parser("gravrad", help="near-horizon escape, closed forms")
    _add_gravrad_flags(p_grav)

    p_custom = sub.add_parser("custom", help="expression-defined barrier, quadrature")
    _add_custom_flags(p_custom)
    _add_quadrature_flags(p_custom)

    for p in (p_alpha, p_cosmo, p_grav, p_custom):
        _add_beta_flags(p)
        _add_output_flags(p)

    p_fig = sub.add_parser("figure", help="emit CSV grids for the two shift factors")
    p_fig.add_argument("which", choices=("g-of-e", "f-grid"))
    p_fig.add_argument("--points", type=int, default=100, help="g-of-e grid size")
    p_fig.add_argument(
        "--e-max", type=float, default=44.8e-13, dest="e_max",
        help="g-of-e upper energy in J (default 44.8e-13)",
    )
    p_fig.add_argument(
        "--Z", type=int, default=90, dest="z", help="g-of-e daughter charge (default 90)"
    )
    p_fig.add_argument(
        "--r1", type=float, default=9.3e-15, help="g-of-e nuclear radius (default 9.3e-15)"
    )
    p_fig.add_argument("--k1-min", type=float, default=1.0, dest="k1_min")
    p_fig.add_argument("--k1-max", type=float, default=5.0, dest="k1_max")
    p_fig.add_argument("--k2-max", type=float, default=10.0, dest="k2_max")
    p_fig.add_argument("--n1", type=int, default=50)
    p_fig.add_argument("--n2", type=int, default=50)
    _add_output_flags(p_fig, with_format=False)

    p_sweep = sub.add_parser("sweep", help="run one model across a list of betas")
    p_sweep.add_argument("--model", choices=MODELS, required=True)
    _add_alpha_flags(p_sweep)
    _add_cosmo_flags(p_sweep)
    _add_gravrad_flags(p_sweep, shared=True)
    _add_custom_flags(p_sweep, shared=True)
    _add_quadrature_flags(p_sweep)
    p_sweep.add_argument(
        "--betas", default=None, help="comma-separated beta list, ascending"
    )
    p_sweep.add_argument(
        "--beta-range",
        type=float,
        nargs=3,
        default=None,
        dest="beta_range",
        metavar=("START", "STOP", "COUNT"),
        help="evenly spaced betas",
    )
    p_sweep.add_argument(
        "--unordered",
        action="store_true",
        help="accept a beta list that is not ascending",
    )
    _add_output_flags(p_sweep)

    return parser


# ---------------------------------------------------------------------------
# config file merging


def _extract_config_paths(tokens, parser):
    remaining, paths = [], []
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok == "--config":
            if i + 1 >= len(tokens):
                parser.error("--config expects a file path")
            paths.append(tokens[i + 1])
            i += 2
            continue
        if tok.startswith("--config="):
            paths.append(tok.split("=", 1)[1])
            i += 1
            continue
        remaining.append(tok)
        i += 1
    return remaining, paths


def _config_tokens(path, skip, parser):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        parser.error(f"--config: {exc}")
    tokens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            parser.error(f"--config {path}:{lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            parser.error(f"--config {path}:{lineno}: empty key")
        if key in skip:
            continue
        flag = f"--{key}"
        if value.lower() == "true":
            tokens.append(flag)
        elif value.lower() == "false":
            continue
        else:
            tokens.extend([flag, value])
    return tokens


def _merge_config(tokens, parser):
    """Splice --config file entries in ahead of the explicit flags."""
    if not tokens or tokens[0].startswith("-"):
        return tokens
    sub, rest = tokens[0], tokens[1:]
    rest, paths = _extract_config_paths(rest, parser)
    if not paths:
        return [sub] + rest
    explicit = {
        tok[2:].split("=", 1)[0] for tok in rest if tok.startswith("--")
    }
    skip = set()
    for group in _EXCLUSIVE_KEYS:
        if explicit & group:
            skip |= group
    file_tokens = []
    for path in paths:
        file_tokens.extend(_config_tokens(path, skip, parser))
    insert_at = next(
        (i for i, tok in enumerate(rest) if tok.startswith("-")), len(rest)
    )
    return [sub] + rest[:insert_at] + file_tokens + rest[insert_at:]


# ---------------------------------------------------------------------------
# shared pieces


def _require(parser, model, args, *pairs):
    missing = [flag for attr, flag in pairs if getattr(args, attr) is None]
    if missing:
        parser.error(f"{model} requires {', '.join(missing)}")


def _alpha_energy_joules(args, parser):
    energy, mev = args.energy, getattr(args, "energy_mev", None)
    if energy is not None and mev is not None:
        parser.error("pass only one of --E, --E-mev")
    if energy is None and mev is None:
        parser.error("alpha requires --E or --E-mev")
    return energy if energy is not None else mev * JOULES_PER_MEV


def _resolve_beta(args, parser, problem_factory):
    tilde = args.beta_tilde
    if tilde is not None:
        if not (math.isfinite(tilde) and tilde >= 0.0):
            parser.error("--beta-tilde must be >= 0 and finite")
        p_ref_sq = reference_momentum_sq(problem_factory())
        return GupParameter.from_dimensionless(tilde, p_ref_sq).beta
    beta = 0.0 if args.beta is None else args.beta
    if not (math.isfinite(beta) and beta >= 0.0):
        parser.error("--beta must be >= 0 and finite")
    return beta


def _quadrature_config(args):
    return IntegrationConfig(
        rel_tol=getattr(args, "rel_tol", 1e-10),
        abs_tol=getattr(args, "abs_tol", 1e-14),
        max_subdivisions=getattr(args, "max_subdivisions", 2000),
    )


def _param_table(entries, parser):
    table = {}
    for entry in entries:
        name, sep, value = entry.partition("=")
        name = name.strip()
        if not sep or not name:
            parser.error(f"--param expects NAME=VALUE, got {entry!r}")
        try:
            table[name] = float(value)
        except ValueError:
            parser.error(f"--param {name}: {value!r} is not a number")
    return table


def _result_fields(report: TunnelingReport) -> dict:
    return {
        "gamma": report.gamma,
        "gamma_gup": report.gamma_gup,
        "delta_gamma": report.delta_gamma,
        "log_t": report.log_t,
        "log_t_gup": report.log_t_gup,
        "t": report.t,
        "t_gup": report.t_gup,
        "ratio": report.ratio_gup,
        "method": report.method,
        "version": __version__,
    }


# ---------------------------------------------------------------------------
# model bases: echo fields, a problem factory, and a per-beta runner


def _base_alpha(args, parser):
    _require(parser, "alpha", args, ("z", "--Z"), ("r1", "--r1"))
    energy = _alpha_energy_joules(args, parser)
    params = alpha.AlphaDecayParams(z=args.z, r1=args.r1, energy=energy)
    echo = {"z": args.z, "r1": args.r1, "energy_j": energy}
    return echo, lambda: alpha.as_barrier_problem(params), (
        lambda beta: alpha.report(params, beta)
    )


def _base_cosmo(args, parser):
    g_newton = 1.0 if args.g_newton is None else args.g_newton
    if args.a0sq_eq_g:
        if args.rho_vac is not None:
            parser.error("--a0sq-eq-G fixes the density; drop --rho")
        params = cosmo.CosmogenesisParams.with_a0_sq_equal_g(g_newton)
    else:
        _require(parser, "cosmo", args, ("rho_vac", "--rho"))
        params = cosmo.CosmogenesisParams(g_newton, args.rho_vac)
    echo = {"g_newton": params.g_newton, "rho_vac": params.rho_vac}
    return echo, lambda: cosmo.as_barrier_problem(params), (
        lambda beta: cosmo.report(params, beta)
    )


def _base_gravrad(args, parser):
    _require(
        parser,
        "gravrad",
        args,
        ("mass", "--mass"),
        ("m2", "--M2"),
        ("r_h", "--r-h"),
        ("turn_radius", "--turn-radius"),
        ("r2", "--R2"),
    )
    kwargs = {}
    if args.g_newton is not None:
        kwargs["g_newton"] = args.g_newton
    if args.hbar is not None:
        kwargs["hbar"] = args.hbar
    params = gravrad.GravRadParams(
        mass=args.mass,
        m2=args.m2,
        r_h=args.r_h,
        turn_radius=args.turn_radius,
        r2=args.r2,
        **kwargs,
    )
    echo = {
        "mass": params.mass,
        "m2": params.m2,
        "r_h": params.r_h,
        "turn_radius": params.turn_radius,
        "r2": params.r2,
        "g_newton": params.g_newton,
        "hbar": params.hbar,
    }
    return echo, lambda: gravrad.as_barrier_problem(params), (
        lambda beta: gravrad.report(params, beta)
    )


def _base_custom(args, parser):
    _require(parser, "custom", args, ("potential", "--potential"), ("energy", "--E"))
    if getattr(args, "energy_mev", None) is not None:
        parser.error("--E-mev applies to the alpha model; custom takes --E in J")
    mass = 1.0 if args.mass is None else args.mass
    hbar = 1.0 if args.hbar is None else args.hbar
    table = _param_table(args.param, parser)
    expr = dsl.parse_source(args.potential, args.var)
    potential = dsl.as_potential(expr, table)

    explicit = (args.x_lo is not None, args.x_hi is not None)
    searched = (args.search_lo is not None, args.search_hi is not None)
    if any(explicit) and any(searched):
        parser.error("pass either --x-lo/--x-hi or --search-lo/--search-hi, not both")
    if any(explicit):
        if not all(explicit):
            parser.error("--x-lo and --x-hi must be given together")
        x_lo, x_hi = args.x_lo, args.x_hi
        singular_lo, singular_hi = args.singular_lo, args.singular_hi
    elif any(searched):
        if not all(searched):
            parser.error("--search-lo and --search-hi must be given together")
        x_lo, x_hi = find_turning_points(
            potential, args.energy, args.search_lo, args.search_hi
        )
        # an endpoint strictly inside the window is a refined crossing,
        # where the integrand really does vanish like sqrt(distance)
        singular_lo = x_lo != args.search_lo
        singular_hi = x_hi != args.search_hi
    else:
        parser.error("custom requires --x-lo/--x-hi or --search-lo/--search-hi")

    problem = BarrierProblem(
        potential=potential,
        mass=mass,
        hbar=hbar,
        energy=args.energy,
        x_lo=x_lo,
        x_hi=x_hi,
        singular_lo=singular_lo,
        singular_hi=singular_hi,
    )
    cfg = _quadrature_config(args)
    gamma = gamma_classic(problem, cfg)
    first_order = args.first_order
    cache = {}

    def per_beta(beta):
        if beta == 0.0:
            method = "first-order" if first_order else "exact-quadrature"
            return TunnelingReport.from_gammas(gamma, gamma, 0.0, method)
        if first_order:
            if "unit_delta" not in cache:
                cache["unit_delta"] = delta_gamma_first_order(problem, 1.0, cfg)
            delta = beta * cache["unit_delta"]
            return TunnelingReport.from_gammas(gamma, gamma + delta, delta, "first-order")
        gamma_gup = gamma_gup_exact(problem, beta, cfg)
        return TunnelingReport.from_gammas(
            gamma, gamma_gup, gamma_gup - gamma, "exact-quadrature"
        )

    echo = {
        "var": args.var,
        "potential": args.potential,
        **{f"param_{name}": table[name] for name in sorted(table)},
        "energy_j": args.energy,
        "mass": mass,
        "hbar": hbar,
        "x_lo": x_lo,
        "x_hi": x_hi,
    }
    return echo, lambda: problem, per_beta


_BASES = {
    "alpha": _base_alpha,
    "cosmo": _base_cosmo,
    "gravrad": _base_gravrad,
    "custom": _base_custom,
}


# ---------------------------------------------------------------------------
# subcommand runners


def _run_single(args, parser):
    echo, problem_factory, per_beta = _BASES[args.subcommand](args, parser)
    beta = _resolve_beta(args, parser, problem_factory)
    record = {"subcommand": args.subcommand, **echo, "beta": beta}
    if args.beta_tilde is not None:
        record["beta_tilde"] = args.beta_tilde
    record.update(_result_fields(per_beta(beta)))
    _emit_records([record], args, parser, single=True)
    return 0


def _sweep_betas(args, parser):
    if (args.betas is None) == (args.beta_range is None):
        parser.error("sweep requires exactly one of --betas, --beta-range")
    if args.betas is not None:
        try:
            betas = [float(part) for part in args.betas.split(",") if part.strip()]
        except ValueError:
            parser.error(f"--betas: could not parse {args.betas!r}")
        if not betas:
            parser.error("--betas: empty list")
    else:
        start, stop, count = args.beta_range
        if count < 1 or count != int(count):
            parser.error("--beta-range COUNT must be a positive integer")
        betas = [float(b) for b in np.linspace(start, stop, int(count))]
    if any(not (math.isfinite(b) and b >= 0.0) for b in betas):
        parser.error("--betas must all be >= 0 and finite")
    if not args.unordered and any(b < a for a, b in zip(betas, betas[1:])):
        parser.error("--betas must be ascending (or pass --unordered)")
    return betas


def _run_sweep(args, parser):
    betas = _sweep_betas(args, parser)
    echo, _, per_beta = _BASES[args.model](args, parser)
    records = []
    failed = False
    for beta in betas:
        record = {"subcommand": "sweep", "model": args.model, **echo, "beta": beta}
        try:
            record.update(_result_fields(per_beta(beta)))
            record["status"] = "ok"
        except (ValueError, ArithmeticError) as exc:
            failed = True
            record.update(dict.fromkeys(RESULT_KEYS))
            record["version"] = __version__
            record["status"] = f"error: {exc}"
        records.append(record)
    _emit_records(records, args, parser, single=False)
    return 1 if failed else 0


def _figure_g_records(args, parser):
    if args.points < 1:
        parser.error("--points must be >= 1")
    if not (math.isfinite(args.e_max) and args.e_max > 0.0):
        parser.error("--e-max must be positive")
    if args.z < 1:
        parser.error("--Z must be >= 1")
    if not (math.isfinite(args.r1) and args.r1 > 0.0):
        parser.error("--r1 must be positive")
    probe = alpha.AlphaDecayParams(z=args.z, r1=args.r1, energy=args.e_max)
    # energies above the barrier top have no barrier at all; clamp the grid
    # just below the top so every row stays a real (if vanishing) barrier
    cap = (1.0 - 1e-6) * probe.barrier_top
    records = []
    for i in range(1, args.points + 1):
        energy = min(i * args.e_max / args.points, cap)
        params = alpha.AlphaDecayParams(z=args.z, r1=args.r1, energy=energy)
        records.append({"energy_j": energy, "g": alpha.g_of_energy(params)})
    return records


def _figure_f_records(args, parser):
    if args.n1 < 1 or args.n2 < 1:
        parser.error("--n1 and --n2 must be >= 1")
    if args.k1_min < 1.0:
        parser.error("--k1-min must be >= 1 (the grid is open at k1 = 1)")
    if args.k1_max <= args.k1_min:
        parser.error("--k1-max must exceed --k1-min")
    if args.k2_max <= args.k1_max:
        parser.error("--k2-max must exceed --k1-max")
    records = []
    for i in range(1, args.n1 + 1):
        k1 = args.k1_min + i * (args.k1_max - args.k1_min) / args.n1
        k2_grid = k1 + np.arange(1, args.n2 + 1) * (args.k2_max - k1) / args.n2
        values = gravrad.shape_factor(k1, k2_grid)
        records.extend(
            {"k1": k1, "k2": float(k2), "f": float(f)}
            for k2, f in zip(k2_grid, values)
        )
    return records


def _run_figure(args, parser):
    if args.which == "g-of-e":
        records = _figure_g_records(args, parser)
    else:
        records = _figure_f_records(args, parser)
    _emit_records(records, args, parser, single=False, force_csv=True)
    return 0


# ---------------------------------------------------------------------------
# output


def _format_value(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _write_csv(fh, records):
    fh.write(HEADER_COMMENT + "\n")
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(list(records[0].keys()))
    for record in records:
        writer.writerow([_format_value(v) for v in record.values()])


def _write_json(fh, records, single):
    json.dump(records[0] if single else records, fh, indent=2)
    fh.write("\n")


def _write_human(fh, records):
    for index, record in enumerate(records):
        if index:
            fh.write("\n")
        for key, value in record.items():
            fh.write(f"{key} = {_format_value(value)}\n")


def _open_output(args):
    target = getattr(args, "output", None)
    if not target:
        return sys.stdout, False
    path = Path(target)
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir and not path.is_absolute():
        path = Path(outdir) / path
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    return open(path, "w", encoding="utf-8", newline=""), True


def _emit_records(records, args, parser, single, force_csv=False):
    fmt = "csv" if force_csv else getattr(args, "format", "csv")
    fh, owned = _open_output(args)
    try:
        if fmt == "csv":
            _write_csv(fh, records)
        elif fmt == "json":
            _write_json(fh, records, single)
        else:
            _write_human(fh, records)
    finally:
        if owned:
            fh.close()


# ---------------------------------------------------------------------------
# entry points


def run(argv=None) -> int:
    """Execute one invocation; returns the process exit code.

    0 on success, 1 when the computation itself fails (the module error is
    printed verbatim), 2 on usage errors (argparse reports the flag).
    """
    parser = _build_parser()
    tokens = list(sys.argv[1:] if argv is None else argv)
    try:
        merged = _merge_config(tokens, parser)
        args = parser.parse_args(merged)
        if args.subcommand == "figure":
            return _run_figure(args, parser)
        if args.subcommand == "sweep":
            return _run_sweep(args, parser)
        return _run_single(args, parser)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"gup-tunnel: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
