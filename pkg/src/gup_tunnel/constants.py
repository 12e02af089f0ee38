"""Physical constants (CODATA 2018) used by the built-in barrier models."""

ELEMENTARY_CHARGE = 1.602176634e-19
"""Elementary charge e in coulombs (exact)."""

VACUUM_PERMITTIVITY = 8.8541878128e-12
"""Electric constant eps0 in F/m."""

HBAR = 1.054571817e-34
"""Reduced Planck constant in J s."""

GRAVITATIONAL_CONSTANT = 6.67430e-11
"""Newtonian constant G in m^3 kg^-1 s^-2."""

ALPHA_PARTICLE_MASS = 6.6446573357e-27
"""Alpha particle mass in kg."""

JOULES_PER_MEV = 1.602176634e-13
"""One MeV expressed in joules (exact)."""
