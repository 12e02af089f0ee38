"""End-to-end acceptance checks for the tunneling toolkit.

Each test here is one acceptance criterion for the package, so a verbose
pytest run prints one pass/fail line per criterion.  Individual modules
have their own finer-grained suites; these tests exercise the advertised
guarantees: benchmark numbers, closed-form/quadrature agreement, sign
claims on the emitted figure data, the suppression property of the
deformed integrals, series order, and degenerate limits.
"""

import csv
import math
import time

import numpy as np
import pytest

from gup_tunnel import dsl, wkb
from gup_tunnel.cli import run
from gup_tunnel.constants import JOULES_PER_MEV
from gup_tunnel.models import alpha, cosmo, gravrad


def read_csv(path):
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# gup-tunnel v")
    rows = list(csv.reader(lines[1:]))
    return [dict(zip(rows[0], row)) for row in rows[1:]]


def rel_err(value, reference):
    return abs(value - reference) / abs(reference)


def test_criterion_1_cosmogenesis_enhancement_benchmark():
    started = time.monotonic()
    params = cosmo.CosmogenesisParams.with_a0_sq_equal_g(g_newton=1.0)
    delta = cosmo.enhancement_coefficient(params)
    ratio = cosmo.report(params, beta=0.01).ratio_gup
    elapsed = time.monotonic() - started

    expected_delta = 9.0 * math.pi**3 / 70.0
    print(
        f"criterion 1: delta rel err {rel_err(delta, expected_delta):.2e}, "
        f"ratio {ratio:.12f}, {elapsed:.3f} s"
    )
    assert rel_err(delta, expected_delta) <= 1e-12
    assert 1.0406 <= ratio <= 1.0408
    assert elapsed < 1.0


def test_criterion_2_closed_forms_match_quadrature_engine():
    rng = np.random.default_rng(20260819)
    started = time.monotonic()
    worst_gamma = 0.0
    worst_delta = 0.0

    for _ in range(200):
        z = int(rng.integers(2, 101))
        r1 = rng.uniform(5e-15, 2e-14)
        probe = alpha.AlphaDecayParams(z=z, r1=r1, energy=1e-13)
        energy = rng.uniform(0.05, 0.9) * probe.barrier_top
        params = alpha.AlphaDecayParams(z=z, r1=r1, energy=energy)
        problem = alpha.as_barrier_problem(params)
        beta = 1e36
        worst_gamma = max(
            worst_gamma,
            rel_err(alpha.gamma_closed(params), wkb.gamma_classic(problem)),
        )
        worst_delta = max(
            worst_delta,
            rel_err(
                alpha.delta_gamma_closed(params, beta),
                wkb.delta_gamma_first_order(problem, beta),
            ),
        )

    for _ in range(200):
        params = cosmo.CosmogenesisParams(
            g_newton=rng.uniform(0.3, 3.0), rho_vac=rng.uniform(0.05, 2.0)
        )
        problem = cosmo.as_barrier_problem(params)
        beta = 0.01
        worst_gamma = max(
            worst_gamma,
            rel_err(cosmo.gamma_closed(params), wkb.gamma_classic(problem)),
        )
        worst_delta = max(
            worst_delta,
            rel_err(
                cosmo.delta_gamma_closed(params, beta),
                wkb.delta_gamma_first_order(problem, beta),
            ),
        )

    for _ in range(200):
        r_h = rng.uniform(0.5, 2.0)
        turn = r_h * (1.0 + rng.uniform(0.3, 2.0))
        params = gravrad.GravRadParams(
            mass=rng.uniform(0.5, 2.0),
            m2=rng.uniform(0.5, 2.0),
            r_h=r_h,
            turn_radius=turn,
            r2=turn * (1.0 + rng.uniform(0.3, 2.0)),
            g_newton=1.0,
            hbar=1.0,
        )
        problem = gravrad.as_barrier_problem(params)
        beta = 0.01
        worst_gamma = max(
            worst_gamma,
            rel_err(gravrad.gamma_closed(params), wkb.gamma_classic(problem)),
        )
        worst_delta = max(
            worst_delta,
            rel_err(
                gravrad.delta_gamma_closed(params, beta),
                wkb.delta_gamma_first_order(problem, beta),
            ),
        )

    elapsed = time.monotonic() - started
    print(
        f"criterion 2: worst gamma rel err {worst_gamma:.2e}, "
        f"worst delta rel err {worst_delta:.2e}, {elapsed:.1f} s"
    )
    assert worst_gamma <= 1e-7
    assert worst_delta <= 1e-6
    assert elapsed < 60.0


def test_criterion_3_alpha_shift_factor_negative_over_energy_grid(
    tmp_path, monkeypatch, capsys
):
    monkeypatch.delenv("GUP_TUNNEL_OUTDIR", raising=False)
    out = tmp_path / "g_of_e.csv"
    code = run(
        ["figure", "g-of-e", "--points", "200", "--e-max", "44.8e-13",
         "--Z", "90", "--r1", "9.3e-15", "-o", str(out)]
    )
    capsys.readouterr()
    assert code == 0
    rows = read_csv(out)
    values = [float(row["g"]) for row in rows]
    print(f"criterion 3: {len(rows)} rows, max g = {max(values):.3e}")
    assert len(rows) == 200
    assert max(values) < 0.0


def test_criterion_4_radiation_shape_factor_positive_on_grid():
    k1_grid = 1.0 + np.arange(1, 51) * (10.0 - 1.0) / 51.0
    smallest = math.inf
    for k1 in k1_grid:
        k2 = k1 + np.arange(1, 51) * (10.0 - k1) / 50.0
        smallest = min(smallest, float(np.min(gravrad.shape_factor(k1, k2))))
    spot = gravrad.shape_factor(2.0, 3.0)
    print(f"criterion 4: min F on grid = {smallest:.3e}, F(2,3) = {spot:.6f}")
    assert smallest > 0.0
    assert abs(spot - 0.184306) <= 1e-5


def _random_suppression_problems(rng, count):
    """Randomized barrier problems, cycling four families; half go through
    the expression parser so the deformed integrals see that path too."""
    gaussian = dsl.parse_source("h * exp(0 - ((x - c) / w)^2)")
    coulomb = dsl.parse_source("s / x")
    problems = []
    while len(problems) < count:
        kind = len(problems) % 4
        if kind == 0:
            h = rng.uniform(0.5, 5.0)
            w = rng.uniform(0.5, 3.0)
            c = rng.uniform(-1.0, 1.0)
            frac = rng.uniform(0.1, 0.9)
            half = w * math.sqrt(1.0 - frac)

            def bump(x, h=h, w=w, c=c):
                return h * (1.0 - ((np.asarray(x) - c) / w) ** 2)

            problems.append(
                wkb.BarrierProblem(
                    potential=bump,
                    mass=rng.uniform(0.5, 2.0),
                    hbar=1.0,
                    energy=frac * h,
                    x_lo=c - half,
                    x_hi=c + half,
                    singular_lo=True,
                    singular_hi=True,
                )
            )
        elif kind == 1:
            h = rng.uniform(0.5, 5.0)
            w = rng.uniform(0.5, 3.0)
            c = rng.uniform(-1.0, 1.0)
            frac = rng.uniform(0.2, 0.9)
            half = w * math.sqrt(math.log(1.0 / frac))
            problems.append(
                wkb.BarrierProblem(
                    potential=dsl.as_potential(gaussian, {"h": h, "c": c, "w": w}),
                    mass=rng.uniform(0.5, 2.0),
                    hbar=1.0,
                    energy=frac * h,
                    x_lo=c - half,
                    x_hi=c + half,
                    singular_lo=True,
                    singular_hi=True,
                )
            )
        elif kind == 2:
            s = rng.uniform(0.5, 3.0)
            r1 = rng.uniform(0.1, 0.5)
            energy = rng.uniform(0.1, 0.8) * s / r1
            problems.append(
                wkb.BarrierProblem(
                    potential=dsl.as_potential(coulomb, {"s": s}),
                    mass=rng.uniform(0.5, 2.0),
                    hbar=1.0,
                    energy=energy,
                    x_lo=r1,
                    x_hi=s / energy,
                    singular_lo=False,
                    singular_hi=True,
                )
            )
        else:
            strength = rng.uniform(1.0, 10.0)
            a0 = rng.uniform(0.5, 2.0)

            def hump(x, strength=strength, a0=a0):
                xs = np.asarray(x)
                return strength * xs**2 * (1.0 - xs**2 / a0**2)

            problems.append(
                wkb.BarrierProblem(
                    potential=hump,
                    mass=0.5,
                    hbar=1.0,
                    energy=0.0,
                    x_lo=0.0,
                    x_hi=a0,
                    singular_lo=False,
                    singular_hi=True,
                )
            )
    return problems


def test_criterion_5_gup_always_suppresses_tunneling():
    rng = np.random.default_rng(1859)
    betas = (1e-4, 1e-2, 1.0)
    violations = 0
    started = time.monotonic()
    for problem in _random_suppression_problems(rng, 500):
        classic = wkb.gamma_classic(problem)
        gups = [wkb.gamma_gup_exact(problem, beta) for beta in betas]
        if gups[0] > classic:
            violations += 1
        if any(later > earlier for earlier, later in zip(gups, gups[1:])):
            violations += 1
    elapsed = time.monotonic() - started
    print(
        f"criterion 5: 500 problems x {len(betas)} betas, "
        f"{violations} violations, {elapsed:.1f} s"
    )
    assert violations == 0


def test_criterion_6_first_order_shift_has_quadratic_residual():
    cases = [
        (
            "alpha",
            alpha.AlphaDecayParams(z=90, r1=9.3e-15, energy=4.2 * JOULES_PER_MEV),
            alpha,
            1e36,
        ),
        ("cosmo", cosmo.CosmogenesisParams.with_a0_sq_equal_g(), cosmo, 1e-3),
        (
            "gravrad",
            gravrad.GravRadParams(
                mass=1.0, m2=0.5, r_h=1.0, turn_radius=2.0, r2=3.0,
                g_newton=1.0, hbar=1.0,
            ),
            gravrad,
            1e-2,
        ),
    ]
    ratios = {}
    for name, params, model, beta in cases:
        problem = model.as_barrier_problem(params)
        gamma = model.gamma_closed(params)

        def residual(b):
            first_order = gamma + model.delta_gamma_closed(params, b)
            return abs(wkb.gamma_gup_exact(problem, b) - first_order)

        full, half = residual(beta), residual(beta / 2.0)
        # stay well clear of the quadrature noise floor (rel tol 1e-10)
        assert half > 100.0 * 1e-10 * gamma, name
        ratios[name] = full / half

    print(
        "criterion 6: residual ratios "
        + ", ".join(f"{k} {v:.3f}" for k, v in ratios.items())
    )
    for name, ratio in ratios.items():
        assert 3.5 <= ratio <= 4.5, name


def test_criterion_7_cosmogenesis_transmission_identity():
    rng = np.random.default_rng(22)
    worst = 0.0
    for _ in range(50):
        g = rng.uniform(0.5, 2.0)
        rho = rng.uniform(0.1, 1.0)
        params = cosmo.CosmogenesisParams(g_newton=g, rho_vac=rho)
        t, _ = wkb.transmission(cosmo.gamma_closed(params))
        worst = max(worst, rel_err(t, math.exp(-3.0 / (8.0 * g**2 * rho))))
    print(f"criterion 7: worst transmission rel err {worst:.2e}")
    assert worst <= 1e-12


def test_criterion_8_custom_expression_reproduces_alpha_model(
    tmp_path, monkeypatch, capsys
):
    monkeypatch.delenv("GUP_TUNNEL_OUTDIR", raising=False)
    energy = 4.2 * JOULES_PER_MEV
    built_in = tmp_path / "alpha.csv"
    code = run(
        ["alpha", "--Z", "90", "--r1", "9.3e-15", "--E-mev", "4.2",
         "-o", str(built_in)]
    )
    assert code == 0

    via_dsl = tmp_path / "custom.csv"
    code = run(
        ["custom",
         "--potential", "2*Z*e^2 / (4*pi*eps0*r)",
         "--var", "r",
         "--param", "Z=90",
         "--param", "e=1.602176634e-19",
         "--param", f"pi={math.pi!r}",
         "--param", "eps0=8.8541878128e-12",
         "--E", repr(energy),
         "--mass", "6.6446573357e-27",
         "--hbar", "1.054571817e-34",
         "--search-lo", "9.3e-15",
         "--search-hi", "1.3e-13",
         "-o", str(via_dsl)]
    )
    capsys.readouterr()
    assert code == 0

    (alpha_row,) = read_csv(built_in)
    (custom_row,) = read_csv(via_dsl)
    err = rel_err(float(custom_row["gamma"]), float(alpha_row["gamma"]))
    print(
        f"criterion 8: alpha gamma {alpha_row['gamma']}, "
        f"custom gamma {custom_row['gamma']}, rel err {err:.2e}"
    )
    assert err <= 1e-8


def test_criterion_9_collapsing_barriers_vanish():
    reference = alpha.AlphaDecayParams(
        z=90, r1=9.3e-15, energy=4.2 * JOULES_PER_MEV
    )
    # push the outer turning point to within one part in 1e6 of the wall
    collapsed = alpha.AlphaDecayParams(
        z=90, r1=9.3e-15, energy=reference.barrier_top / (1.0 + 1e-6)
    )
    gamma_ratio = alpha.gamma_closed(collapsed) / alpha.gamma_closed(reference)
    g_ratio = abs(alpha.g_of_energy(collapsed)) / abs(alpha.g_of_energy(reference))
    f_ratio = abs(gravrad.shape_factor(1.0 + 1e-6, 3.0)) / gravrad.shape_factor(
        2.0, 3.0
    )
    print(
        f"criterion 9: collapsed/reference ratios gamma {gamma_ratio:.2e}, "
        f"g {g_ratio:.2e}, F {f_ratio:.2e}"
    )
    assert 0.0 <= gamma_ratio < 1e-3
    assert 0.0 <= g_ratio < 1e-3
    assert f_ratio < 1e-3
