"""The main term I2 of the four-dimensional log-determinant formula.

Flat model ``(B^4, S^3, g_0)``: ``Q4 = 0``, ``T3 = 2``, and

    P3b w = -1/2 d_n(Delta w) - Lap_S(d_n w) - Lap_S w,
    b2[w] = 1/4 int_B w Delta^2 w + 1/2 int_S w P3b w + int_S w T3,
    D[w]  = 3 int_S (w_n - w_nn),
    I2[g_0, w] = b2[w] + D[w] / 12.

For the adapted metric ``g* = e^{2 rho} g_0`` and ``w`` with vanishing normal
derivative, ``I2[g*, w] = b2[g_0, w]`` (``D`` vanishes on the totally geodesic
boundary and ``b2`` is invariant).
"""
from dataclasses import dataclass

import numpy as np

from sharptrace.extension import ExtensionField, boundary_jet, w_bilaplacian_w
from sharptrace.sphere import (
    DEFAULT_ANGULAR_NODES,
    ZonalProfile,
    ZonalSpectrum,
    boundary_integral,
    gauss_angular_rule,
    integrate_values,
    surface_area,
    surface_integral,
    values_on_rule,
)

T3_FLAT = 2.0
NEUMANN_TOL = 1e-12


class ClassViolationError(ValueError):
    """The field does not belong to the class required by the metric branch."""


def _require_d4(field):
    if field.dimension != 4:
        raise ValueError(f"the I2 functional is implemented for d = 4, got {field.dimension}")


@dataclass
class I2Report:
    b2: float
    d_term: float
    metric: str
    cls: str
    normalization: float = 0.0

    @property
    def i2(self):
        return self.b2 + self.d_term / 12.0

    def as_dict(self):
        return {
            "b2": self.b2,
            "d_term": self.d_term,
            "i2": self.i2,
            "metric": self.metric,
            "class": self.cls,
            "normalization": self.normalization,
        }


def p3b_boundary(field):
    """Spectrum of ``P3b w`` on S^3 from the boundary jet."""
    _require_d4(field)
    jet = boundary_jet(field)
    lap_s = -jet.value.degrees * (jet.value.degrees + 2.0)
    c = -0.5 * jet.normal_laplacian.coeffs - lap_s * jet.normal.coeffs - lap_s * jet.value.coeffs
    return ZonalSpectrum(4, c)


def b2_flat(field):
    _require_d4(field)
    jet_value = boundary_jet(field).value
    boundary = float(np.dot(jet_value.coeffs, p3b_boundary(field).coeffs))
    return 0.25 * w_bilaplacian_w(field) + 0.5 * boundary + T3_FLAT * surface_integral(jet_value)


def d_term_flat(field):
    _require_d4(field)
    jet = boundary_jet(field)
    return 3.0 * (surface_integral(jet.normal) - surface_integral(jet.normal2))


def classify(field, tol=NEUMANN_TOL):
    """``C_phi`` (Neumann 0), ``C~_phi`` (Neumann -1) or ``unconstrained``."""
    n = boundary_jet(field).normal.coeffs
    scale = tol * (1.0 + np.abs(field.coeffs).sum())
    if np.all(np.abs(n) <= scale):
        return "C_phi"
    minus_one = ZonalSpectrum.constant(4, field.degree_cap, -1.0).coeffs
    if np.all(np.abs(n - minus_one) <= scale):
        return "C~_phi"
    return "unconstrained"


def i2(field, metric="gstar"):
    """I2 of ``field`` for the flat metric or the adapted metric ``g*``."""
    _require_d4(field)
    cls = classify(field)
    if metric == "gstar":
        if cls != "C_phi":
            raise ClassViolationError("the g* branch needs a field with vanishing normal derivative")
        return I2Report(b2_flat(field), 0.0, "gstar", cls)
    if metric == "flat":
        return I2Report(b2_flat(field), d_term_flat(field), "flat", cls)
    raise ValueError(f"unknown metric {metric!r}")


def _normalizing_constant(values, rule):
    return -np.log(integrate_values(np.exp(3.0 * values), rule) / surface_area(3)) / 3.0


def normalize_constraint(phi, n=DEFAULT_ANGULAR_NODES):
    """Shift ``phi`` by ``c`` so that ``int_{S^3} e^{3 phi} dsigma = |S^3|``.

    Accepts a :class:`ZonalProfile` or a :class:`ZonalSpectrum`; returns
    ``(shifted, c)`` of the same kind.
    """
    rule = gauss_angular_rule(n, 4)
    if isinstance(phi, ZonalSpectrum):
        if phi.dimension != 4:
            raise ValueError("the constraint lives on S^3")
        c = _normalizing_constant(values_on_rule(phi, rule), rule)
        shift = ZonalSpectrum.constant(4, phi.degree_cap, c)
        out = phi + shift
    else:
        if not isinstance(phi, ZonalProfile):
            phi = ZonalProfile(phi)
        c = _normalizing_constant(phi(rule.nodes), rule)
        out = phi.shifted(c)
    if not np.isfinite(c):
        raise ValueError("the exponential integral diverges")
    return out, float(c)


def constraint_integral(phi, n=DEFAULT_ANGULAR_NODES):
    """``int_{S^3} e^{3 phi} dsigma``."""
    if isinstance(phi, ZonalSpectrum):
        rule = gauss_angular_rule(n, 4)
        return integrate_values(np.exp(3.0 * values_on_rule(phi, rule)), rule)
    return boundary_integral(lambda t: np.exp(3.0 * phi(t)), 4, n)


def rho_field(K):
    """``rho = (1 - r^2)/2`` as a degree-0 biharmonic field on B^4."""
    u = np.zeros((K + 1, 3))
    norm = np.sqrt(surface_area(3))
    u[0, 0] = 0.5 * norm
    u[0, 1] = -0.5 * norm
    zero = ZonalSpectrum.zeros(4, K)
    return ExtensionField(4, u, zero, ZonalSpectrum.constant(4, K, -1.0))


def add_rho(field):
    """``w + rho``: same Dirichlet trace, Neumann trace shifted by -1."""
    _require_d4(field)
    return field + rho_field(field.degree_cap)
