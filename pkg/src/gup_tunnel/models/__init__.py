"""Built-in barrier models with closed-form exponents and GUP shifts."""

from . import alpha, cosmo, gravrad
from .alpha import AlphaDecayParams, DegenerateBarrier, NearDegenerateWarning
from .cosmo import CosmogenesisParams
from .gravrad import DomainError, GravRadParams, hawking_power_ratio

__all__ = [
    "alpha",
    "cosmo",
    "gravrad",
    "AlphaDecayParams",
    "CosmogenesisParams",
    "GravRadParams",
    "DegenerateBarrier",
    "DomainError",
    "NearDegenerateWarning",
    "hawking_power_ratio",
]
