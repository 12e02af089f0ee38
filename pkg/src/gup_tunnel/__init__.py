"""WKB tunneling exponents and their minimal-length (GUP) corrections.

The package computes barrier-penetration integrals three ways: a generic
adaptive quadrature pipeline over user potentials, closed forms for three
built-in barriers (alpha decay, vacuum nucleation of a universe, escape from
a near-horizon gravitational well), and a first-order expansion of the GUP
shift.  A small expression language describes custom potentials and a CLI
wraps the lot.
"""

from ._accel import BACKEND, NUMBA_ENABLED
from .quadrature import (
    IntegralEstimate,
    IntegrationConfig,
    NonFiniteIntegrand,
    integrate,
    integrate_with_sqrt_endpoints,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "NUMBA_ENABLED",
    "IntegralEstimate",
    "IntegrationConfig",
    "NonFiniteIntegrand",
    "integrate",
    "integrate_with_sqrt_endpoints",
    "__version__",
]
