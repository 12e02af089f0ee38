"""Alpha-decay model tests: closed forms, geometry factor sign, degeneracy."""

import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gup_tunnel import wkb
from gup_tunnel.models.alpha import (
    AlphaDecayParams,
    DegenerateBarrier,
    NearDegenerateWarning,
    as_barrier_problem,
    delta_gamma_closed,
    g_of_energy,
    gamma_closed,
    r2_of_energy,
    report,
)
from gup_tunnel.quadrature import IntegrationConfig, integrate_with_sqrt_endpoints

JOULES_PER_MEV = 1.602176634e-13


def uranium_params(energy_mev=4.2):
    # thorium daughter of U-238: Z = 90, r1 = 9.3 fm
    return AlphaDecayParams(z=90, r1=9.3e-15, energy=energy_mev * JOULES_PER_MEV)


def scaled_params(r1=0.25, energy=2.0):
    # unit system with 2 Z e^2 / (4 pi eps0) = 2 and sqrt(2 m E) / hbar = 1,
    # so r2 = 2/E and the exponent is the bare geometry bracket
    return AlphaDecayParams(
        z=1,
        r1=r1,
        energy=energy,
        mass=0.5 / energy,
        hbar=1.0,
        charge=1.0,
        eps0=1.0 / (4.0 * math.pi),
    )


def test_params_validation():
    with pytest.raises(ValueError):
        AlphaDecayParams(z=0, r1=1e-15, energy=1e-13)
    with pytest.raises(ValueError):
        AlphaDecayParams(z=90, r1=-1e-15, energy=1e-13)
    with pytest.raises(ValueError):
        AlphaDecayParams(z=90, r1=1e-15, energy=0.0)
    with pytest.raises(ValueError):
        AlphaDecayParams(z=90, r1=1e-15, energy=1e-13, mass=math.inf)


def test_exit_radius_and_barrier_top():
    params = uranium_params()
    r2 = r2_of_energy(params)
    assert r2 > params.r1
    # V(r2) = E by construction
    assert math.isclose(params.coulomb_strength / r2, params.energy, rel_tol=1e-14)
    assert math.isclose(params.barrier_top, 4.465311391629166e-12, rel_tol=1e-12)


def test_exit_radius_degenerate():
    params = uranium_params()
    with pytest.raises(DegenerateBarrier):
        r2_of_energy(uranium_params(energy_mev=params.barrier_top / JOULES_PER_MEV))
    with pytest.raises(DegenerateBarrier):
        r2_of_energy(
            uranium_params(energy_mev=2.0 * params.barrier_top / JOULES_PER_MEV)
        )


def test_gamma_closed_scaled_geometry():
    # r1/r2 = 1/4 makes the bracket pi/3 - sqrt(3)/4 exactly
    params = scaled_params(r1=0.25, energy=2.0)
    assert r2_of_energy(params) == 1.0
    expected = math.pi / 3.0 - math.sqrt(3.0) / 4.0
    assert math.isclose(gamma_closed(params), expected, rel_tol=1e-14)


def test_gamma_closed_uranium_frozen():
    # value cross-checked against the adaptive-quadrature exponent
    assert math.isclose(gamma_closed(uranium_params()), 45.06605327948359, rel_tol=1e-12)


def test_gamma_closed_matches_quadrature():
    params = uranium_params()
    engine = wkb.gamma_classic(as_barrier_problem(params))
    assert math.isclose(gamma_closed(params), engine, rel_tol=1e-9)


def test_g_scaled_geometry():
    # r1/r2 = 1/4 gives g = 4 pi - 9 sqrt(3)
    params = scaled_params(r1=0.25, energy=2.0)
    expected = 4.0 * math.pi - 9.0 * math.sqrt(3.0)
    assert math.isclose(g_of_energy(params), expected, rel_tol=1e-14)


def test_g_matches_integral_form():
    # g = -4 * integral of (r2/r - 1)^(3/2) dr on [r1, r2]
    params = scaled_params(r1=0.3, energy=2.0)
    r1, r2 = params.r1, r2_of_energy(params)
    est = integrate_with_sqrt_endpoints(
        lambda r: (r2 / r - 1.0) ** 1.5,
        r1,
        r2,
        singular_hi=True,
        cfg=IntegrationConfig(rel_tol=1e-13, abs_tol=0.0),
    )
    assert est.converged
    assert math.isclose(g_of_energy(params), -4.0 * est.value, rel_tol=1e-11)


def test_g_negative_across_energies():
    params = uranium_params()
    energies = np.linspace(0.02, 0.999999, 97) * params.barrier_top
    values = [g_of_energy(uranium_params(e / JOULES_PER_MEV)) for e in energies]
    assert max(values) < 0.0


def test_g_stays_negative_at_thin_barrier():
    # one part in 1e6 below the top: the naive expression loses every digit
    # here, the rearranged one keeps the sign and leading magnitude
    params = uranium_params()
    thin = uranium_params((1.0 - 1e-6) * params.barrier_top / JOULES_PER_MEV)
    value = g_of_energy(thin)
    assert value < 0.0
    assert abs(value) < 1e-3 * abs(g_of_energy(params))


def test_g_near_degenerate_guard():
    params = uranium_params()
    almost = uranium_params((1.0 - 1e-10) * params.barrier_top / JOULES_PER_MEV)
    with pytest.warns(NearDegenerateWarning):
        assert g_of_energy(almost) == 0.0


def test_delta_gamma_closed_scaled():
    params = scaled_params(r1=0.25, energy=2.0)
    # (2 m E)^(3/2) / (12 hbar) = 1/12 in the scaled system
    expected = (1.0 / 12.0) * 0.5 * (4.0 * math.pi - 9.0 * math.sqrt(3.0))
    assert math.isclose(delta_gamma_closed(params, 0.5), expected, rel_tol=1e-14)
    assert delta_gamma_closed(params, 0.0) == 0.0


def test_delta_gamma_closed_uranium_frozen():
    assert math.isclose(
        delta_gamma_closed(uranium_params(), 1e36), -0.2621751928180327, rel_tol=1e-12
    )


def test_delta_gamma_matches_quadrature():
    params = uranium_params()
    engine = wkb.delta_gamma_first_order(as_barrier_problem(params), 1e36)
    assert math.isclose(delta_gamma_closed(params, 1e36), engine, rel_tol=1e-9)


def test_delta_gamma_linear_in_beta():
    params = uranium_params()
    one = delta_gamma_closed(params, 1e35)
    assert math.isclose(delta_gamma_closed(params, 3e35), 3.0 * one, rel_tol=1e-14)


def test_report_enhances_transmission():
    out = report(uranium_params(), beta=1e36)
    assert out.method == "closed-form"
    assert out.delta_gamma < 0.0
    assert out.gamma_gup < out.gamma
    assert out.t_gup > out.t
    assert out.ratio_gup > 1.0
    assert math.isclose(
        out.ratio_gup, math.exp(-2.0 * out.delta_gamma), rel_tol=1e-12
    )


def test_report_beta_zero_is_classic():
    out = report(uranium_params(), beta=0.0)
    assert out.delta_gamma == 0.0
    assert out.gamma_gup == out.gamma
    assert out.ratio_gup == 1.0


def test_barrier_problem_shape():
    params = uranium_params()
    problem = as_barrier_problem(params)
    assert problem.x_lo == params.r1
    assert math.isclose(problem.x_hi, r2_of_energy(params), rel_tol=1e-14)
    assert not problem.singular_lo and problem.singular_hi
    # potential at the exit radius equals the energy
    v_exit = float(np.asarray(problem.potential(np.array([problem.x_hi])))[0])
    assert math.isclose(v_exit, params.energy, rel_tol=1e-12)


@settings(max_examples=40, deadline=None)
@given(fraction=st.floats(min_value=0.02, max_value=0.98))
def test_signs_hold_below_the_top(fraction):
    params = uranium_params()
    probe = uranium_params(fraction * params.barrier_top / JOULES_PER_MEV)
    with warnings.catch_warnings():
        warnings.simplefilter("error")  # guard must not fire in this range
        assert gamma_closed(probe) > 0.0
        assert g_of_energy(probe) < 0.0
