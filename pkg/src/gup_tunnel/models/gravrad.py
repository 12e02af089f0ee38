"""Tunneling escape of radiation from a near-horizon gravitational well.

A particle of mass m sits at radius R_H of a remnant of mass M2 and escapes
by tunneling through the attractive well V(r) = -G m M2 / (R2 - r) toward
the outer turning radius.  With k1 = turn_radius/R_H and k2 = R2/R_H both
the exponent and the first-order GUP shift reduce to closed forms; the
shift carries the dimensionless positive shape factor F(k1, k2).  The ratio
of the semiclassically enhanced radiated power to the plain one is
P = P_radiated / T.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..constants import GRAVITATIONAL_CONSTANT, HBAR
from ..wkb import BarrierProblem, TunnelingReport, _beta_value


class DomainError(ValueError):
    """Shape-factor arguments outside 1 < k1 < k2."""


@dataclass(frozen=True)
class GravRadParams:
    """Radiated mass, remnant mass, and the three radii R_H < turn < R2 (SI)."""

    mass: float
    m2: float
    r_h: float
    turn_radius: float
    r2: float
    g_newton: float = GRAVITATIONAL_CONSTANT
    hbar: float = HBAR

    def __post_init__(self):
        for name in ("mass", "m2", "r_h", "turn_radius", "r2", "g_newton", "hbar"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val > 0.0):
                raise ValueError(f"{name} must be positive and finite, got {val}")
        if not self.r_h < self.turn_radius < self.r2:
            raise ValueError(
                f"radii must satisfy r_h < turn_radius < r2, got "
                f"{self.r_h}, {self.turn_radius}, {self.r2}"
            )
        if self.r2 - self.turn_radius < 1e-12 * self.r2:
            raise ValueError(
                "turning radius sits on the potential pole: r2 - turn_radius "
                f"= {self.r2 - self.turn_radius:.3e} is below 1e-12 * r2"
            )

    @property
    def k1(self) -> float:
        return self.turn_radius / self.r_h

    @property
    def k2(self) -> float:
        return self.r2 / self.r_h


def energy(params: GravRadParams) -> float:
    """Bound energy -G m M2 / (R2 - turn_radius) pinned by the turning radius."""
    return -params.g_newton * params.mass * params.m2 / (params.r2 - params.turn_radius)


def gamma_closed(params: GravRadParams) -> float:
    """Closed-form exponent of the near-horizon escape barrier."""
    r_h, b2, r2 = params.r_h, params.turn_radius, params.r2
    pref = params.mass * math.sqrt(2.0 * params.g_newton * params.m2) / params.hbar
    gap = r2 - b2
    braces = math.sqrt((r2 - r_h) * (b2 - r_h) / gap) - math.sqrt(gap) * math.log(
        (math.sqrt(r2 - r_h) + math.sqrt(b2 - r_h)) / math.sqrt(gap)
    )
    return pref * braces


def shape_factor(k1, k2):
    """Dimensionless factor F(k1, k2) of the GUP shift; positive on its domain.

    Accepts scalars or broadcastable arrays with 1 < k1 < k2.
    """
    k1 = np.asarray(k1, dtype=np.float64)
    k2 = np.asarray(k2, dtype=np.float64)
    if np.any(k1 <= 1.0) or np.any(k2 <= k1):
        raise DomainError("shape factor needs 1 < k1 < k2")
    gap = k2 - k1
    root_gap = np.sqrt(gap)
    first = -3.0 / root_gap * np.log((np.sqrt(k2 - 1.0) + np.sqrt(k1 - 1.0)) / root_gap)
    second = (
        np.sqrt((k2 - 1.0) * (k1 - 1.0))
        / gap**1.5
        * (1.0 + 2.0 * gap / (k2 - 1.0))
    )
    out = first + second
    return float(out) if out.ndim == 0 else out


def delta_gamma_closed(params: GravRadParams, beta) -> float:
    """First-order shift -beta (m sqrt(2 G M2))^3 F(k1,k2) / (3 hbar sqrt(R_H))."""
    b = _beta_value(beta)
    if b == 0.0:
        return 0.0
    cube = (params.mass * math.sqrt(2.0 * params.g_newton * params.m2)) ** 3
    return (
        -b
        * cube
        / (3.0 * params.hbar * math.sqrt(params.r_h))
        * shape_factor(params.k1, params.k2)
    )


def report(params: GravRadParams, beta=0.0) -> TunnelingReport:
    g = gamma_closed(params)
    d = delta_gamma_closed(params, beta)
    return TunnelingReport.from_gammas(g, g + d, d, "closed-form")


def hawking_power_ratio(p_radiated: float, *, t=None, log_t=None, gamma=None) -> float:
    """Enhanced power P = P_radiated / T, safe against T underflow.

    Exactly one of t, log_t, or gamma selects the transmission; passing
    log_t (or gamma, through log T = -2 gamma) keeps the division finite
    in log space even when T itself underflows to 0.
    """
    given = [value for value in (t, log_t, gamma) if value is not None]
    if len(given) != 1:
        raise ValueError("pass exactly one of t=, log_t=, gamma=")
    if not (math.isfinite(p_radiated) and p_radiated >= 0.0):
        raise ValueError(f"p_radiated must be >= 0 and finite, got {p_radiated}")
    if gamma is not None:
        log_t = -2.0 * float(gamma)
    elif t is not None:
        t = float(t)
        if t <= 0.0 or t > 1.0:
            raise ValueError(f"t must lie in (0, 1], got {t}; pass log_t for tiny T")
        log_t = math.log(t)
    if p_radiated == 0.0:
        return 0.0
    try:
        return math.exp(math.log(p_radiated) - log_t)
    except OverflowError:
        return math.inf


def as_barrier_problem(params: GravRadParams) -> BarrierProblem:
    """The escape barrier as a generic problem on [R_H, turn_radius]."""
    from .. import kernels

    gm = params.g_newton * params.mass * params.m2
    r2 = params.r2
    return BarrierProblem(
        potential=lambda r: kernels.gravrad_potential(r, gm, r2),
        mass=params.mass,
        hbar=params.hbar,
        energy=energy(params),
        x_lo=params.r_h,
        x_hi=params.turn_radius,
        singular_lo=False,  # the particle starts at the wall, V - E > 0 there
        singular_hi=True,
    )
