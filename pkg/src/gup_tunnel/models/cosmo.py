"""Vacuum nucleation of a closed universe through its scale-factor barrier.

Everything is in reduced units (hbar = 1, effective mass 1/2).  The vacuum
energy density fixes Lambda = 8 pi G rho_vac, the turning point
a0 = sqrt(3/Lambda), and the barrier
V(a) = (3 pi / 2G)^2 a^2 (1 - a^2/a0^2) at zero energy.  The exponent and
the first-order GUP enhancement T_gup = T exp(beta * delta) are closed
forms; the a^3 (1 - a^2/a0^2)^(3/2) moment behind delta integrates to
(2/35) a0^4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..wkb import BarrierProblem, TunnelingReport, _beta_value

MASS = 0.5
"""Effective mass of the scale-factor degree of freedom (reduced units)."""

HBAR = 1.0
"""Reduced Planck constant in the reduced unit system."""


@dataclass(frozen=True)
class CosmogenesisParams:
    """Newton constant and vacuum energy density, both in reduced units."""

    g_newton: float
    rho_vac: float

    def __post_init__(self):
        for name in ("g_newton", "rho_vac"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val > 0.0):
                raise ValueError(f"{name} must be positive and finite, got {val}")

    @classmethod
    def with_a0_sq_equal_g(cls, g_newton: float = 1.0) -> "CosmogenesisParams":
        """The benchmark point a0^2 = G, i.e. rho_vac = 3 / (8 pi G^2)."""
        if not (math.isfinite(g_newton) and g_newton > 0.0):
            raise ValueError(f"g_newton must be positive and finite, got {g_newton}")
        return cls(g_newton, 3.0 / (8.0 * math.pi * g_newton**2))

    @property
    def lam(self) -> float:
        """Cosmological constant Lambda = 8 pi G rho_vac."""
        return 8.0 * math.pi * self.g_newton * self.rho_vac

    @property
    def a0(self) -> float:
        """Turning point a0 = sqrt(3 / Lambda) of the nucleation barrier."""
        return math.sqrt(3.0 / self.lam)

    @property
    def prefactor(self) -> float:
        """(3 pi / 2G)^2 multiplying a^2 (1 - a^2/a0^2)."""
        return (3.0 * math.pi / (2.0 * self.g_newton)) ** 2


def gamma_closed(params: CosmogenesisParams) -> float:
    """Exponent pi a0^2 / (2G); equivalently 2 gamma = 3 / (8 G^2 rho_vac)."""
    return math.pi * params.a0**2 / (2.0 * params.g_newton)


def enhancement_coefficient(params: CosmogenesisParams) -> float:
    """delta with T_gup = T exp(beta delta): (9 pi / 70G) (3 / (8 G^2 rho))^2."""
    return (
        9.0 * math.pi / (70.0 * params.g_newton)
    ) * (3.0 / (8.0 * params.g_newton**2 * params.rho_vac)) ** 2


def delta_gamma_closed(params: CosmogenesisParams, beta) -> float:
    """First-order shift -beta delta / 2 (the exponent loses beta*delta/2)."""
    b = _beta_value(beta)
    if b == 0.0:
        return 0.0
    return -0.5 * b * enhancement_coefficient(params)


def report(params: CosmogenesisParams, beta=0.0) -> TunnelingReport:
    g = gamma_closed(params)
    d = delta_gamma_closed(params, beta)
    return TunnelingReport.from_gammas(g, g + d, d, "closed-form")


def as_barrier_problem(params: CosmogenesisParams) -> BarrierProblem:
    """The nucleation barrier as a generic problem (E = 0, left edge smooth).

    At a = 0 the barrier has a double zero (V ~ a^2), so the integrand
    vanishes linearly and only the outer turning point needs the sqrt
    substitution.
    """
    from .. import kernels

    pref = params.prefactor
    a0_sq = params.a0**2
    return BarrierProblem(
        potential=lambda a: kernels.cosmo_potential(a, pref, a0_sq),
        mass=MASS,
        hbar=HBAR,
        energy=0.0,
        x_lo=0.0,
        x_hi=params.a0,
        singular_lo=False,
        singular_hi=True,
    )
