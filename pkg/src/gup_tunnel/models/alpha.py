"""Alpha decay through the Coulomb barrier of the daughter nucleus.

The barrier is V(r) = 2 Z e^2 / (4 pi eps0 r) between the nuclear radius r1
and the classical exit point r2 = 2 Z e^2 / (4 pi eps0 E).  The penetration
exponent has a closed form, and so does the first-order GUP shift, written
here with its individually divergent pieces combined so nothing blows up as
r1 -> 0 or r2 -> r1.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from ..constants import (
    ALPHA_PARTICLE_MASS,
    ELEMENTARY_CHARGE,
    HBAR,
    VACUUM_PERMITTIVITY,
)
from ..wkb import BarrierProblem, TunnelingReport, _beta_value


class DegenerateBarrier(ValueError):
    """The exit radius collapsed onto (or inside) the nuclear radius."""


class NearDegenerateWarning(UserWarning):
    """The barrier is thin enough that the shift is returned as its limit 0."""


@dataclass(frozen=True)
class AlphaDecayParams:
    """Daughter charge Z, nuclear radius r1 (m), alpha energy (J), SI constants."""

    z: int
    r1: float
    energy: float
    mass: float = ALPHA_PARTICLE_MASS
    hbar: float = HBAR
    charge: float = ELEMENTARY_CHARGE
    eps0: float = VACUUM_PERMITTIVITY

    def __post_init__(self):
        if self.z < 1:
            raise ValueError(f"z must be a positive integer, got {self.z}")
        for name in ("r1", "energy", "mass", "hbar", "charge", "eps0"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val > 0.0):
                raise ValueError(f"{name} must be positive and finite, got {val}")

    @property
    def coulomb_strength(self) -> float:
        """2 Z e^2 / (4 pi eps0), the numerator of the barrier potential."""
        return 2.0 * self.z * self.charge**2 / (4.0 * math.pi * self.eps0)

    @property
    def barrier_top(self) -> float:
        """V(r1): above this energy there is no barrier left."""
        return self.coulomb_strength / self.r1


def r2_of_energy(params: AlphaDecayParams) -> float:
    """Classical exit radius r2 = 2 Z e^2 / (4 pi eps0 E)."""
    r2 = params.coulomb_strength / params.energy
    if r2 <= params.r1:
        raise DegenerateBarrier(
            f"exit radius {r2:.6e} m does not exceed the nuclear radius "
            f"{params.r1:.6e} m (energy at or above the barrier top)"
        )
    return r2


def gamma_closed(params: AlphaDecayParams) -> float:
    """Closed-form penetration exponent for the Coulomb barrier.

    The textbook bracket -(r2/2) asin((2 r1 - r2)/r2) + pi r2/4 - sqrt(r1(r2-r1))
    is rewritten through asin(x) = pi/2 - 2 asin(sqrt((1-x)/2)) so the arcsine
    argument stays small near degeneracy instead of grazing 1, where its
    derivative would amplify roundoff.
    """
    r1 = params.r1
    r2 = r2_of_energy(params)
    wavenumber = math.sqrt(2.0 * params.mass * params.energy) / params.hbar
    arg = min(1.0, math.sqrt((r2 - r1) / r2))
    bracket = r2 * math.asin(arg) - math.sqrt(r1 * (r2 - r1))
    return wavenumber * bracket


def g_of_energy(params: AlphaDecayParams) -> float:
    """Geometry factor g of the first-order shift; negative for any real barrier.

    Algebraically g = -4 * integral of (r2/r - 1)^(3/2) between r1 and r2.
    Its three divergent-looking 1/sqrt(r2 - r1) terms combine into
    -4 (r1 + 2 r2) sqrt((r2 - r1)/r1), and the arcsine piece is rewritten
    at a small argument (see gamma_closed), leaving two well-conditioned
    terms whose residual is O((r2/r1 - 1)^(5/2)).  Within 1e-8 of
    degeneracy the limit value 0 is returned with a warning instead of a
    noise-dominated difference.
    """
    r1 = params.r1
    r2 = r2_of_energy(params)
    if r2 - r1 < 1e-8 * r1:
        warnings.warn(
            "barrier nearly degenerate (r2 - r1 < 1e-8 r1); returning the "
            "limit value g = 0",
            NearDegenerateWarning,
            stacklevel=2,
        )
        return 0.0
    arg = min(1.0, math.sqrt((r2 - r1) / r2))
    return 12.0 * r2 * math.asin(arg) - 4.0 * (r1 + 2.0 * r2) * math.sqrt(
        (r2 - r1) / r1
    )


def delta_gamma_closed(params: AlphaDecayParams, beta) -> float:
    """First-order GUP shift (2mE)^(3/2) / (12 hbar) * beta * g(E)."""
    b = _beta_value(beta)
    if b == 0.0:
        return 0.0
    scale = (2.0 * params.mass * params.energy) ** 1.5 / (12.0 * params.hbar)
    return scale * b * g_of_energy(params)


def report(params: AlphaDecayParams, beta=0.0) -> TunnelingReport:
    """Closed-form exponents bundled with their transmission values."""
    g = gamma_closed(params)
    d = delta_gamma_closed(params, beta)
    return TunnelingReport.from_gammas(g, g + d, d, "closed-form")


def as_barrier_problem(params: AlphaDecayParams) -> BarrierProblem:
    """The same barrier as a generic problem for the quadrature pipeline."""
    from .. import kernels

    strength = params.coulomb_strength
    return BarrierProblem(
        potential=lambda r: kernels.coulomb_potential(r, strength),
        mass=params.mass,
        hbar=params.hbar,
        energy=params.energy,
        x_lo=params.r1,
        x_hi=r2_of_energy(params),
        singular_lo=False,  # square well edge: V jumps at the nuclear radius
        singular_hi=True,
    )
