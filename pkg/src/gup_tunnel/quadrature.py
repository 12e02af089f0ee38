"""Adaptive Gauss-Kronrod quadrature with square-root endpoint handling.

The engine is a globally adaptive bisection scheme over a 15-point Kronrod
rule with its embedded 7-point Gauss rule supplying the error estimate
(QUADPACK-style, including the scaled-error damping and the roundoff floor).
Integrands are vectorized callables: they receive a 1-D float64 array of
sample points and must return values of the same shape (a scalar return is
broadcast, so constant lambdas work).

Turning-point integrands that vanish like sqrt(distance) at an endpoint are
handled by :func:`integrate_with_sqrt_endpoints`, which applies the explicit
substitution t^2 = distance-from-endpoint and integrates the smooth result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np


class NonFiniteIntegrand(ValueError):
    """The integrand produced NaN or infinity at an interior sample point."""

    def __init__(self, x: float, value: float):
        self.x = float(x)
        self.value = float(value)
        super().__init__(f"integrand evaluated to {value!r} at x={x!r}")


@dataclass(frozen=True)
class IntegrationConfig:
    """Tolerances and subdivision budget for the adaptive engine."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not (math.isfinite(self.rel_tol) and self.rel_tol > 0.0):
            raise ValueError(f"rel_tol must be positive and finite, got {self.rel_tol}")
        if not (math.isfinite(self.abs_tol) and self.abs_tol >= 0.0):
            raise ValueError(f"abs_tol must be >= 0 and finite, got {self.abs_tol}")
        if self.max_subdivisions < 1:
            raise ValueError(f"max_subdivisions must be >= 1, got {self.max_subdivisions}")


@dataclass(frozen=True)
class IntegralEstimate:
    """Outcome of one adaptive integration."""

    value: float
    error_estimate: float
    subdivisions_used: int
    converged: bool


def _evaluate_panels(f, lows, highs):
    """Evaluate f on the Kronrod nodes of each interval and reduce per panel."""
    from . import kernels  # deferred: pulls in numba only when integrating

    centers = 0.5 * (lows + highs)
    halves = 0.5 * (highs - lows)
    x = centers[:, None] + halves[:, None] * kernels.XGK[None, :]
    flat = x.reshape(-1)
    with np.errstate(all="ignore"):  # non-finite results raise a typed error below
        fx = np.asarray(f(flat), dtype=np.float64)
    if fx.ndim == 0:
        fx = np.full(flat.shape, float(fx))
    elif fx.shape != flat.shape:
        raise TypeError(
            f"integrand returned shape {fx.shape} for input shape {flat.shape}; "
            "it must be vectorized over its sample points"
        )
    finite = np.isfinite(fx)
    if not finite.all():
        idx = int(np.flatnonzero(~finite)[0])
        raise NonFiniteIntegrand(flat[idx], fx[idx])
    return kernels.gk15_reduce(fx.reshape(x.shape), halves)


def _check_bounds(lo: float, hi: float) -> tuple[float, float]:
    lo = float(lo)
    hi = float(hi)
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError(f"integration bounds must be finite, got [{lo}, {hi}]")
    if not lo < hi:
        raise ValueError(f"integration requires lo < hi, got [{lo}, {hi}]")
    return lo, hi


def integrate(
    f: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    cfg: IntegrationConfig | None = None,
) -> IntegralEstimate:
    """Adaptively integrate f over [lo, hi].

    Convergence means the summed panel error estimate is at or below
    max(abs_tol, rel_tol * |value|).  When the subdivision budget runs out
    first, the best available estimate is returned with converged False.
    A NaN or infinite integrand value raises :class:`NonFiniteIntegrand`.
    """
    lo, hi = _check_bounds(lo, hi)
    if cfg is None:
        cfg = IntegrationConfig()

    lows = np.array([lo])
    highs = np.array([hi])
    vals, errs = _evaluate_panels(f, lows, highs)
    used = 0
    batch = 16  # worst panels refined per sweep; keeps Python-level rounds low

    while True:
        total = float(vals.sum())
        total_err = float(errs.sum())
        target = max(cfg.abs_tol, cfg.rel_tol * abs(total))
        if total_err <= target:
            return IntegralEstimate(total, total_err, used, True)
        budget = cfg.max_subdivisions - used
        if budget <= 0:
            return IntegralEstimate(total, total_err, used, False)

        # Refine the largest error contributors.  The floor skips panels
        # whose error is already negligible against the target, so budget
        # is never burned polishing converged regions.
        floor = 0.1 * target / lows.size
        candidates = np.flatnonzero(errs > floor)
        worst_first = np.argsort(errs[candidates])[::-1]
        candidates = candidates[worst_first[: min(batch, budget)]]
        mids = 0.5 * (lows[candidates] + highs[candidates])
        refinable = (mids > lows[candidates]) & (mids < highs[candidates])
        candidates = candidates[refinable]
        mids = mids[refinable]
        if candidates.size == 0:
            # Nothing left that floating point can split; report what we have.
            return IntegralEstimate(total, total_err, used, False)

        child_lows = np.concatenate([lows[candidates], mids])
        child_highs = np.concatenate([mids, highs[candidates]])
        child_vals, child_errs = _evaluate_panels(f, child_lows, child_highs)

        keep = np.ones(lows.size, dtype=bool)
        keep[candidates] = False
        lows = np.concatenate([lows[keep], child_lows])
        highs = np.concatenate([highs[keep], child_highs])
        vals = np.concatenate([vals[keep], child_vals])
        errs = np.concatenate([errs[keep], child_errs])
        used += int(candidates.size)


def integrate_with_sqrt_endpoints(
    f: Callable[[np.ndarray], np.ndarray],
    lo: float,
    hi: float,
    singular_lo: bool = False,
    singular_hi: bool = False,
    cfg: IntegrationConfig | None = None,
) -> IntegralEstimate:
    """Integrate f over [lo, hi] where flagged endpoints are sqrt-type zeros.

    At a flagged endpoint the substitution t^2 = |x - endpoint| turns an
    integrand vanishing like sqrt(distance) into a smooth one, which the
    plain rule then polishes off in few subdivisions.  With both ends
    flagged the interval is split at its midpoint and each half gets its
    own one-sided substitution (half tolerances, so the combined estimate
    still honors the requested ones).
    """
    lo, hi = _check_bounds(lo, hi)
    if cfg is None:
        cfg = IntegrationConfig()

    if not singular_lo and not singular_hi:
        return integrate(f, lo, hi, cfg)

    if singular_lo and singular_hi:
        mid = 0.5 * (lo + hi)
        half_cfg = IntegrationConfig(
            rel_tol=0.5 * cfg.rel_tol,
            abs_tol=0.5 * cfg.abs_tol if cfg.abs_tol > 0.0 else 0.0,
            max_subdivisions=cfg.max_subdivisions,
        )
        left = integrate_with_sqrt_endpoints(f, lo, mid, True, False, half_cfg)
        right = integrate_with_sqrt_endpoints(f, mid, hi, False, True, half_cfg)
        value = left.value + right.value
        err = left.error_estimate + right.error_estimate
        used = left.subdivisions_used + right.subdivisions_used
        ok = (
            left.converged
            and right.converged
            and err <= max(cfg.abs_tol, cfg.rel_tol * abs(value))
        )
        return IntegralEstimate(value, err, used, ok)

    t_max = math.sqrt(hi - lo)
    if singular_hi:

        def g(t):
            x = np.maximum(hi - t * t, lo)
            return f(x) * (2.0 * t)

    else:

        def g(t):
            x = np.minimum(lo + t * t, hi)
            return f(x) * (2.0 * t)

    return integrate(g, 0.0, t_max, cfg)
