"""Hot numeric kernels shared by the quadrature engine and the model layer.

Everything here is written so the same source runs either under numba's
``@njit`` or as plain numpy, selected by :mod:`gup_tunnel._accel`.  The one
exception is the Gauss-Kronrod batch reduction, which wants explicit loops
under numba and matrix products under numpy, so both variants exist and the
module picks one at import time.
"""

from __future__ import annotations

import numpy as np

from ._accel import NUMBA_ENABLED, njit

# 15-point Kronrod nodes (ascending) with the embedded 7-point Gauss rule.
# Values are the QUADPACK DQK15 constants.
XGK = np.array(
    [
        -0.9914553711208126,
        -0.9491079123427585,
        -0.8648644233597691,
        -0.7415311855993944,
        -0.5860872354676911,
        -0.4058451513773972,
        -0.2077849550078985,
        0.0,
        0.2077849550078985,
        0.4058451513773972,
        0.5860872354676911,
        0.7415311855993944,
        0.8648644233597691,
        0.9491079123427585,
        0.9914553711208126,
    ]
)

WGK = np.array(
    [
        0.02293532201052922,
        0.06309209262997855,
        0.10479001032225018,
        0.14065325971552592,
        0.16900472663926790,
        0.19035057806478541,
        0.20443294007529889,
        0.20948214108472783,
        0.20443294007529889,
        0.19035057806478541,
        0.16900472663926790,
        0.14065325971552592,
        0.10479001032225018,
        0.06309209262997855,
        0.02293532201052922,
    ]
)

# Gauss weights placed at the Gauss-node slots (odd indices), zero elsewhere,
# so the embedded rule is a plain dot product over the same samples.
WG15 = np.array(
    [
        0.0,
        0.12948496616886969,
        0.0,
        0.27970539148927667,
        0.0,
        0.38183005050511894,
        0.0,
        0.41795918367346939,
        0.0,
        0.38183005050511894,
        0.0,
        0.27970539148927667,
        0.0,
        0.12948496616886969,
        0.0,
    ]
)

_EPS = float(np.finfo(np.float64).eps)
_TINY = float(np.finfo(np.float64).tiny)


def _gk15_reduce_loops(fx, half):
    """Per-interval Kronrod value and error estimate, explicit-loop form."""
    n = fx.shape[0]
    values = np.empty(n)
    errors = np.empty(n)
    for i in range(n):
        resk = 0.0
        resg = 0.0
        resabs = 0.0
        for j in range(15):
            fv = fx[i, j]
            resk += WGK[j] * fv
            resg += WG15[j] * fv
            resabs += WGK[j] * abs(fv)
        reskh = 0.5 * resk
        resasc = 0.0
        for j in range(15):
            resasc += WGK[j] * abs(fx[i, j] - reskh)
        h = half[i]
        ah = abs(h)
        resabs *= ah
        resasc *= ah
        err = abs((resk - resg) * h)
        if resasc != 0.0 and err != 0.0:
            scaled = (200.0 * err / resasc) ** 1.5
            if scaled < 1.0:
                err = resasc * scaled
            else:
                err = resasc
        if resabs > _TINY / (50.0 * _EPS):
            floor = 50.0 * _EPS * resabs
            if floor > err:
                err = floor
        values[i] = resk * h
        errors[i] = err
    return values, errors


def _gk15_reduce_numpy(fx, half):
    """Vectorized twin of :func:`_gk15_reduce_loops`."""
    resk = fx @ WGK
    resg = fx @ WG15
    resabs = np.abs(fx) @ WGK
    resasc = np.abs(fx - 0.5 * resk[:, None]) @ WGK
    ah = np.abs(half)
    resabs = resabs * ah
    resasc = resasc * ah
    err = np.abs((resk - resg) * half)
    mask = (resasc != 0.0) & (err != 0.0)
    scaled = np.minimum(1.0, (200.0 * err[mask] / resasc[mask]) ** 1.5)
    err[mask] = resasc[mask] * scaled
    floor_mask = resabs > _TINY / (50.0 * _EPS)
    err[floor_mask] = np.maximum(50.0 * _EPS * resabs[floor_mask], err[floor_mask])
    return resk * half, err


if NUMBA_ENABLED:
    gk15_reduce = njit(cache=True)(_gk15_reduce_loops)
else:
    gk15_reduce = _gk15_reduce_numpy


@njit(cache=True)
def coulomb_potential(r, strength):
    """Repulsive Coulomb barrier strength/r (strength = 2 Z e^2 / (4 pi eps0))."""
    return strength / r


@njit(cache=True)
def cosmo_potential(a, prefactor, a0_sq):
    """Scale-factor potential prefactor * a^2 (1 - a^2/a0^2) of the nucleation barrier."""
    return prefactor * a * a * (1.0 - a * a / a0_sq)


@njit(cache=True)
def gravrad_potential(r, gm_product, r2):
    """Attractive well -gm_product/(r2 - r) seen by a particle escaping toward r2."""
    return -gm_product / (r2 - r)


@njit(cache=True)
def classic_momentum(q2):
    """|p| = sqrt(2m(V-E)) from the squared momentum q2 = 2m(V-E)."""
    return np.sqrt(q2)


@njit(cache=True)
def gup_momentum(q2, beta):
    """Deformed |p| = arctan(sqrt(beta) sqrt(2m(V-E))) / sqrt(beta), beta > 0."""
    rb = np.sqrt(beta)
    return np.arctan(rb * np.sqrt(q2)) / rb


@njit(cache=True)
def momentum_cubed(q2):
    """(2m(V-E))^(3/2), the integrand of the first-order GUP shift."""
    return q2 * np.sqrt(q2)
