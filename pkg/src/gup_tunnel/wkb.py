"""WKB barrier-penetration exponents and their GUP-deformed counterparts.

A barrier is described by :class:`BarrierProblem`; the penetration exponent
gamma = (1/hbar) * integral of sqrt(2m(V - E)) follows from adaptive
quadrature, with endpoints flagged as turning points handled through the
sqrt substitution.  The minimal-length deformation [x, p] = i hbar (1 + beta p^2)
replaces the momentum by arctan(sqrt(beta) |p|) / sqrt(beta); the exact
deformed exponent and its first-order expansion
delta_gamma = -(beta / 3 hbar) * integral of (2m(V - E))^(3/2)
are both available.  Transmission probabilities are tracked in log space so
thick barriers (gamma of order hundreds) underflow gracefully to T = 0.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .quadrature import (
    IntegrationConfig,
    NonFiniteIntegrand,
    integrate_with_sqrt_endpoints,
)

#: Below this beta the deformed momentum is numerically indistinguishable
#: from the classic one and the classic path is used verbatim.
BETA_FLOOR = 1e-30

_VALID_METHODS = ("exact-quadrature", "first-order", "closed-form")


class NegativeBarrier(ValueError):
    """V(x) dropped below E inside what was declared a forbidden region."""


class NoBarrier(ValueError):
    """No region with V > E was found in the searched window."""


@dataclass(frozen=True)
class BarrierProblem:
    """One tunneling setup: potential, particle, energy, forbidden region.

    The potential callable must be vectorized (ndarray in, ndarray out).
    singular_lo / singular_hi flag endpoints where V - E has a simple zero,
    i.e. genuine turning points where the integrand vanishes like
    sqrt(distance); square edges (potential jumps) stay unflagged.
    """

    potential: Callable[[np.ndarray], np.ndarray]
    mass: float
    hbar: float
    energy: float
    x_lo: float
    x_hi: float
    singular_lo: bool = False
    singular_hi: bool = False

    def __post_init__(self):
        if not callable(self.potential):
            raise TypeError("potential must be callable")
        for name in ("mass", "hbar"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val > 0.0):
                raise ValueError(f"{name} must be positive and finite, got {val}")
        if not math.isfinite(self.energy):
            raise ValueError(f"energy must be finite, got {self.energy}")
        if not (math.isfinite(self.x_lo) and math.isfinite(self.x_hi)):
            raise ValueError("barrier endpoints must be finite")
        if self.x_lo > self.x_hi:
            raise ValueError(f"x_lo must not exceed x_hi, got [{self.x_lo}, {self.x_hi}]")


@dataclass(frozen=True)
class GupParameter:
    """Deformation strength beta of [x, p] = i hbar (1 + beta p^2), beta >= 0."""

    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.beta) and self.beta >= 0.0):
            raise ValueError(f"beta must be >= 0 and finite, got {self.beta}")

    @classmethod
    def from_dimensionless(cls, beta_tilde: float, p_ref_sq: float) -> "GupParameter":
        """Convert beta-tilde = beta * p_ref^2 using the problem's momentum scale."""
        if not (math.isfinite(p_ref_sq) and p_ref_sq > 0.0):
            raise ValueError(f"reference momentum squared must be positive, got {p_ref_sq}")
        if not (math.isfinite(beta_tilde) and beta_tilde >= 0.0):
            raise ValueError(f"beta_tilde must be >= 0 and finite, got {beta_tilde}")
        return cls(beta_tilde / p_ref_sq)


def _beta_value(beta) -> float:
    value = beta.beta if isinstance(beta, GupParameter) else float(beta)
    if not (math.isfinite(value) and value >= 0.0):
        raise ValueError(f"beta must be >= 0 and finite, got {value}")
    return value


def transmission(gamma: float) -> tuple[float, float]:
    """Return (T, log T) for T = exp(-2 gamma); T underflows to exactly 0."""
    g = float(gamma)
    if not math.isfinite(g) or g < 0.0:
        raise ValueError(f"gamma must be >= 0 and finite, got {gamma}")
    log_t = -2.0 * g
    return math.exp(log_t), log_t


@dataclass(frozen=True)
class TunnelingReport:
    """Bundled classic and GUP-corrected exponents for one barrier."""

    gamma: float
    gamma_gup: float
    delta_gamma: float
    log_t: float
    log_t_gup: float
    t: float
    t_gup: float
    ratio_gup: float
    method: str

    @classmethod
    def from_gammas(
        cls, gamma: float, gamma_gup: float, delta_gamma: float, method: str
    ) -> "TunnelingReport":
        if method not in _VALID_METHODS:
            raise ValueError(f"method must be one of {_VALID_METHODS}, got {method!r}")
        gamma = float(gamma)
        gamma_gup = float(gamma_gup)
        delta_gamma = float(delta_gamma)
        if gamma < 0.0:
            raise ValueError(f"gamma must be >= 0, got {gamma}")
        if gamma_gup < 0.0:
            warnings.warn(
                "GUP-corrected exponent came out negative (first-order expansion "
                "pushed past its validity); clamping at 0",
                RuntimeWarning,
                stacklevel=2,
            )
            gamma_gup = 0.0
        t, log_t = transmission(gamma)
        t_gup, log_t_gup = transmission(gamma_gup)
        try:
            ratio = math.exp(log_t_gup - log_t)
        except OverflowError:
            ratio = math.inf
        return cls(
            gamma=gamma,
            gamma_gup=gamma_gup,
            delta_gamma=delta_gamma,
            log_t=log_t,
            log_t_gup=log_t_gup,
            t=t,
            t_gup=t_gup,
            ratio_gup=ratio,
            method=method,
        )


def _forbidden_q2(problem: BarrierProblem, x: np.ndarray) -> np.ndarray:
    """2m(V - E) on the samples, clamped at 0, guarding against real dips."""
    with np.errstate(all="ignore"):
        v = np.asarray(problem.potential(x), dtype=np.float64)
    if v.ndim == 0:
        v = np.full(np.shape(x), float(v))
    diff = v - problem.energy
    finite = v[np.isfinite(v)]
    scale = max(abs(problem.energy), float(np.max(np.abs(finite), initial=0.0)))
    tol = 1e-12 * scale
    if np.any(diff < -tol):
        idx = int(np.argmin(diff))
        raise NegativeBarrier(
            f"potential drops below the energy inside the barrier: "
            f"V - E = {diff[idx]:.6e} at x = {np.ravel(x)[idx]!r}"
        )
    return 2.0 * problem.mass * np.maximum(diff, 0.0)


def _wkb_integral(
    problem: BarrierProblem,
    transform: Callable[[np.ndarray], np.ndarray],
    cfg: IntegrationConfig | None,
    label: str,
) -> float:
    """Integrate transform(2m(V-E)) over the barrier.

    The variable is mapped onto [0, 1] and the integrand scaled by its
    scanned maximum before the engine sees it, so the absolute-tolerance
    default stays meaningful whatever the unit system (SI momenta make the
    raw integral of order 1e-32).
    """
    lo, hi = problem.x_lo, problem.x_hi
    span = hi - lo

    def raw(x):
        return transform(_forbidden_q2(problem, x))

    scan = np.linspace(lo, hi, 67)[1:-1]
    with np.errstate(all="ignore"):
        probe = np.asarray(raw(scan), dtype=np.float64)
    bad = ~np.isfinite(probe)
    if bad.any():
        idx = int(np.flatnonzero(bad)[0])
        raise NonFiniteIntegrand(scan[idx], probe[idx])
    scale = float(np.max(np.abs(probe)))
    if scale == 0.0:
        return 0.0

    def normalized(s):
        return raw(lo + span * s) / scale

    est = integrate_with_sqrt_endpoints(
        normalized, 0.0, 1.0, problem.singular_lo, problem.singular_hi, cfg
    )
    if not est.converged:
        warnings.warn(
            f"{label}: barrier integral did not converge "
            f"(error estimate {est.error_estimate:.2e} after "
            f"{est.subdivisions_used} subdivisions)",
            RuntimeWarning,
            stacklevel=3,
        )
    return est.value * scale * span


def gamma_classic(problem: BarrierProblem, cfg: IntegrationConfig | None = None) -> float:
    """Penetration exponent (1/hbar) * integral of sqrt(2m(V - E)) dx."""
    from . import kernels  # deferred so closed-form-only callers skip numba

    if problem.x_lo == problem.x_hi:
        return 0.0
    value = _wkb_integral(problem, kernels.classic_momentum, cfg, "gamma_classic")
    return value / problem.hbar


def gamma_gup_exact(
    problem: BarrierProblem, beta, cfg: IntegrationConfig | None = None
) -> float:
    """Deformed exponent with |p| replaced by arctan(sqrt(beta)|p|)/sqrt(beta)."""
    from . import kernels

    b = _beta_value(beta)
    if b <= BETA_FLOOR:
        return gamma_classic(problem, cfg)
    if problem.x_lo == problem.x_hi:
        return 0.0
    value = _wkb_integral(
        problem, lambda q2: kernels.gup_momentum(q2, b), cfg, "gamma_gup_exact"
    )
    return value / problem.hbar


def delta_gamma_first_order(
    problem: BarrierProblem, beta, cfg: IntegrationConfig | None = None
) -> float:
    """First-order GUP shift -(beta / 3 hbar) * integral of (2m(V-E))^(3/2) dx."""
    from . import kernels

    b = _beta_value(beta)
    if b == 0.0 or problem.x_lo == problem.x_hi:
        return 0.0
    value = _wkb_integral(
        problem, kernels.momentum_cubed, cfg, "delta_gamma_first_order"
    )
    return -(b / (3.0 * problem.hbar)) * value


def reference_momentum_sq(problem: BarrierProblem, samples: int = 512) -> float:
    """Momentum scale p_ref^2 = 2m * max(V - E), scanned over the barrier.

    This is the normalization behind the dimensionless deformation strength
    beta_tilde = beta * p_ref^2.
    """
    if problem.x_lo == problem.x_hi:
        raise ValueError("zero-width barrier has no momentum scale")
    grid = np.linspace(problem.x_lo, problem.x_hi, samples)
    q2 = _forbidden_q2(problem, grid)
    q2 = q2[np.isfinite(q2)]
    top = float(np.max(q2, initial=0.0))
    if top <= 0.0:
        raise ValueError("potential never exceeds the energy; no barrier present")
    return top


def _eval_scalar(potential, x: float) -> float:
    out = np.asarray(potential(np.array([x])), dtype=np.float64)
    return float(out.reshape(-1)[0])


def _bisect_crossing(potential, energy, a, b, tol):
    """Refine a sign change of V - E inside [a, b] down to width tol."""
    fa = _eval_scalar(potential, a) - energy
    if fa == 0.0:
        return a
    fb = _eval_scalar(potential, b) - energy
    if fb == 0.0:
        return b
    while (b - a) > tol:
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            break
        fm = _eval_scalar(potential, mid) - energy
        if fm == 0.0:
            return mid
        if (fa > 0.0) == (fm > 0.0):
            a, fa = mid, fm
        else:
            b, fb = mid, fm
    return 0.5 * (a + b)


def find_turning_points(
    potential: Callable[[np.ndarray], np.ndarray],
    energy: float,
    search_lo: float,
    search_hi: float,
    tol: float | None = None,
) -> tuple[float, float]:
    """Locate the forbidden region's endpoints inside a search window.

    A 1024-point scan finds the first contiguous stretch with V > E; each
    boundary that lies strictly inside the window is refined by bisection
    to within tol (default 1e-12 of the window width).  A stretch touching
    a window edge keeps that edge as its endpoint, which covers square-well
    walls and barriers that extend past the window.

    Raises :class:`NoBarrier` when the scan finds no point with V > E.
    """
    if not (math.isfinite(search_lo) and math.isfinite(search_hi)):
        raise ValueError("search window must be finite")
    if not search_lo < search_hi:
        raise ValueError(f"search window is empty: [{search_lo}, {search_hi}]")
    if tol is None:
        tol = 1e-12 * (search_hi - search_lo)

    grid = np.linspace(search_lo, search_hi, 1024)
    with np.errstate(all="ignore"):
        values = np.asarray(potential(grid), dtype=np.float64)
    if values.ndim == 0:
        values = np.full(grid.shape, float(values))
    if np.isnan(values).any():
        idx = int(np.flatnonzero(np.isnan(values))[0])
        raise ValueError(f"potential evaluated to NaN at x = {grid[idx]!r}")
    above = values - energy > 0.0
    if not above.any():
        raise NoBarrier(
            f"no barrier: V never exceeds E = {energy} in [{search_lo}, {search_hi}]"
        )

    first = int(np.argmax(above))
    tail = above[first:]
    run = int(np.argmin(tail)) if not tail.all() else tail.size
    last = first + run - 1

    if first == 0:
        x_lo = search_lo
    else:
        x_lo = _bisect_crossing(potential, energy, grid[first - 1], grid[first], tol)
    if last == above.size - 1:
        x_hi = search_hi
    else:
        x_hi = _bisect_crossing(potential, energy, grid[last], grid[last + 1], tol)
    return float(x_lo), float(x_hi)
