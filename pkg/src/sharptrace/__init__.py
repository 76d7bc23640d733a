"""Spectral verification of fourth-order sharp trace inequalities on balls.

Zonal data on the sphere are handled through their Gegenbauer spectra;
polyharmonic extensions into the ball are exact radial polynomials, so
energies, boundary jets and inequality gaps reduce to finite sums.
"""
from sharptrace.kernels import BACKEND
from sharptrace.sphere import (
    NonIntegrableProfileError,
    QuadratureRule,
    ZonalProfile,
    ZonalSpectrum,
    analyze,
    apply_multiplier,
    gauss_angular_rule,
    gauss_radial_rule,
    multiplier,
    quadratic_form,
    surface_area,
    synthesize,
)
from sharptrace.extension import (
    ExtensionField,
    UnderResolvedError,
    add_perturbation,
    bilaplacian_energy,
    boundary_jet,
    energy_quadrature,
    extend_biharmonic,
    extend_harmonic,
)
from sharptrace.metric import AdaptedMetric
from sharptrace.inequalities import (
    ExtremalFamily,
    InequalityReport,
    energy_identity_gap,
    evaluate,
    exponent_scan,
    extremal_profile,
    random_spectrum,
)
from sharptrace.determinant import I2Report, ClassViolationError, i2, normalize_constraint

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "AdaptedMetric",
    "ClassViolationError",
    "ExtensionField",
    "ExtremalFamily",
    "I2Report",
    "InequalityReport",
    "NonIntegrableProfileError",
    "QuadratureRule",
    "UnderResolvedError",
    "ZonalProfile",
    "ZonalSpectrum",
    "add_perturbation",
    "analyze",
    "apply_multiplier",
    "bilaplacian_energy",
    "boundary_jet",
    "energy_identity_gap",
    "energy_quadrature",
    "evaluate",
    "exponent_scan",
    "extend_biharmonic",
    "extend_harmonic",
    "extremal_profile",
    "gauss_angular_rule",
    "gauss_radial_rule",
    "i2",
    "multiplier",
    "normalize_constraint",
    "quadratic_form",
    "random_spectrum",
    "surface_area",
    "synthesize",
]
