"""Polyharmonic extensions of zonal boundary data into the unit ball B^d.

Every field is a finite sum of separated modes

    w(r, xi) = sum_k sum_j u[k, j] r^{k+2j} Y_k(xi),     j = 0, 1, 2,

so Laplacians, energies and boundary derivatives are exact polynomial
manipulations.  The flat Laplacian acts on one monomial as

    Delta(r^m Y_k) = (m-k)(m+k+d-2) r^{m-2} Y_k,

which kills ``j = 0`` (harmonic), maps ``j = 1`` to ``2(2k+d) r^k`` and
``j = 2`` to ``4(2k+d+2) r^{k+2}``.  All normal derivatives are outward.
"""
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from sharptrace.sphere import (
    ZonalSpectrum,
    gauss_angular_rule,
    gauss_radial_rule,
    integrate_values,
    multiplier,
    surface_area,
    zonal_harmonics,
)

MAX_ORDER = 2
_CONSISTENCY_TOL = 1e-12


class UnderResolvedError(ValueError):
    """A quadrature rule is too small to integrate the requested polynomial."""


def _exponents(K):
    k = np.arange(K + 1)[:, None]
    j = np.arange(MAX_ORDER + 1)[None, :]
    return k + 2 * j


@dataclass(frozen=True, eq=False)
class ExtensionField:
    """Radial coefficients ``u[k, j]`` of ``r^{k+2j} Y_k`` plus audit traces."""

    dimension: float
    coeffs: np.ndarray
    dirichlet: ZonalSpectrum
    neumann: ZonalSpectrum

    def __post_init__(self):
        u = np.array(self.coeffs, dtype=float)
        if u.ndim != 2 or u.shape[1] != MAX_ORDER + 1:
            raise ValueError(f"coeffs must have shape (K+1, {MAX_ORDER + 1})")
        if not np.all(np.isfinite(u)):
            raise ValueError("field coefficients must be finite")
        u.setflags(write=False)
        object.__setattr__(self, "coeffs", u)
        K = u.shape[0] - 1
        for name, spec in (("dirichlet", self.dirichlet), ("neumann", self.neumann)):
            if spec.degree_cap != K or spec.dimension != self.dimension:
                raise ValueError(f"{name} spectrum does not match the field")
        m = _exponents(K)
        scale = 1.0 + np.abs(u).sum(axis=1) * (1 + m.max())
        if np.any(np.abs(u.sum(axis=1) - self.dirichlet.coeffs) > _CONSISTENCY_TOL * scale):
            raise ValueError("Dirichlet trace inconsistent with coefficients")
        if np.any(np.abs((m * u).sum(axis=1) - self.neumann.coeffs) > _CONSISTENCY_TOL * scale):
            raise ValueError("Neumann trace inconsistent with coefficients")

    @property
    def degree_cap(self):
        return self.coeffs.shape[0] - 1

    @property
    def order(self):
        """Largest ``j`` with a nonzero coefficient (0 harmonic, 1 biharmonic)."""
        nz = np.flatnonzero(np.any(self.coeffs != 0.0, axis=0))
        return int(nz[-1]) if nz.size else 0

    def __add__(self, other):
        if other.dimension != self.dimension or other.degree_cap != self.degree_cap:
            raise ValueError("fields must share dimension and degree cap")
        return ExtensionField(
            self.dimension,
            self.coeffs + other.coeffs,
            self.dirichlet + other.dirichlet,
            self.neumann + other.neumann,
        )

    def __sub__(self, other):
        return self + (-1.0) * other

    def __mul__(self, s):
        return ExtensionField(self.dimension, s * self.coeffs, s * self.dirichlet, s * self.neumann)

    __rmul__ = __mul__


def field_from_coeffs(d, coeffs):
    """Build a field from raw ``u[k, j]``, deriving the boundary traces."""
    u = np.array(coeffs, dtype=float)
    if u.shape[1] < MAX_ORDER + 1:
        u = np.hstack([u, np.zeros((u.shape[0], MAX_ORDER + 1 - u.shape[1]))])
    m = _exponents(u.shape[0] - 1)
    return ExtensionField(
        d, u, ZonalSpectrum(d, u.sum(axis=1)), ZonalSpectrum(d, (m * u).sum(axis=1))
    )


def extend_biharmonic(dirichlet, neumann):
    """Biharmonic field ``a_k r^k + b_k r^{k+2}`` with the given traces.

    Solves ``a + b = c`` and ``k a + (k+2) b = n`` mode by mode.
    """
    if dirichlet.dimension != neumann.dimension or dirichlet.degree_cap != neumann.degree_cap:
        raise ValueError("Dirichlet and Neumann spectra must match")
    c, n = dirichlet.coeffs, neumann.coeffs
    k = dirichlet.degrees
    b = 0.5 * (n - k * c)
    u = np.zeros((c.size, MAX_ORDER + 1))
    u[:, 0] = c - b
    u[:, 1] = b
    return ExtensionField(dirichlet.dimension, u, dirichlet, neumann)


def extend_harmonic(dirichlet):
    u = np.zeros((dirichlet.coeffs.size, MAX_ORDER + 1))
    u[:, 0] = dirichlet.coeffs
    neumann = dirichlet.with_coeffs(dirichlet.degrees * dirichlet.coeffs)
    return ExtensionField(dirichlet.dimension, u, dirichlet, neumann)


def add_perturbation(field, k, eps):
    """Add ``eps r^k (r^2-1)^2 Y_k``, which has zero value and normal derivative on S."""
    if not 0 <= k <= field.degree_cap:
        raise ValueError(f"degree {k} outside 0..{field.degree_cap}")
    u = np.array(field.coeffs)
    u[k] += eps * np.array([1.0, -2.0, 1.0])
    return ExtensionField(field.dimension, u, field.dirichlet, field.neumann)


def _laplacian_coeffs(field):
    """Coefficients ``(A_k, B_k)`` with ``Delta w_k = A_k r^k + B_k r^{k+2}``."""
    d = field.dimension
    k = np.arange(field.degree_cap + 1)
    u = field.coeffs
    return 2 * (2 * k + d) * u[:, 1], 4 * (2 * k + d + 2) * u[:, 2]


def bilaplacian_energy(field):
    """``int_B (Delta w)^2 dx`` in closed form (exact for order <= 2)."""
    d = field.dimension
    k = np.arange(field.degree_cap + 1)
    A, B = _laplacian_coeffs(field)
    e = A**2 / (2 * k + d) + 2 * A * B / (2 * k + d + 2) + B**2 / (2 * k + d + 4)
    return float(e.sum())


def dirichlet_energy(field):
    """``int_B |grad v|^2 dx`` for a harmonic field, ``sum_k k c_k^2``."""
    if field.order != 0:
        raise ValueError("dirichlet_energy is only defined here for harmonic (order 0) fields")
    c = field.coeffs[:, 0]
    return float(np.dot(np.arange(c.size), c**2))


def w_bilaplacian_w(field):
    """``int_B w Delta^2 w dx``; only the ``j = 2`` part has nonzero Delta^2."""
    d = field.dimension
    k = np.arange(field.degree_cap + 1)
    u = field.coeffs
    bilap = 8 * (2 * k + d) * (2 * k + d + 2) * u[:, 2]
    m = _exponents(field.degree_cap)
    radial = (u / (m + k[:, None] + d)).sum(axis=1)
    return float(np.dot(bilap, radial))


def _radial_polys(field):
    K = field.degree_cap
    polys = np.zeros((K + 1, K + 2 * MAX_ORDER + 1))
    m = _exponents(K)
    for k in range(K + 1):
        polys[k, m[k]] = field.coeffs[k]
    return polys


def radial_laplacian_values(field, r):
    """``(Delta w)_k(r)`` by applying ``d^2/dr^2 + (d-1)/r d/dr - k(k+d-2)/r^2``.

    Works from the raw radial polynomials (not the closed-form table), so it
    serves as an independent path for the quadrature oracle.
    """
    d = field.dimension
    r = np.asarray(r, dtype=float)
    out = np.empty((field.degree_cap + 1, r.size))
    for k, p in enumerate(_radial_polys(field)):
        p0 = P.polyval(r, p)
        p1 = P.polyval(r, P.polyder(p))
        p2 = P.polyval(r, P.polyder(p, 2))
        out[k] = p2 + (d - 1) * p1 / r - k * (k + d - 2) * p0 / r**2
    return out


def _required_nodes(field):
    K, J = field.degree_cap, field.order
    radial_degree = 2 * max(K + 2 * J - 2, 0) + int(np.ceil(field.dimension - 1))
    return radial_degree // 2 + 1, K + 1


def energy_quadrature(field, radial_rule=None, angular_rule=None):
    """``int_B (Delta w)^2 dx`` by tensor Gauss quadrature in (r, t).

    Raises :class:`UnderResolvedError` when the rules cannot integrate the
    polynomial integrand exactly.
    """
    d = field.dimension
    need_r, need_a = _required_nodes(field)
    radial_rule = radial_rule or gauss_radial_rule(need_r + 2)
    angular_rule = angular_rule or gauss_angular_rule(need_a + 2, d)
    if radial_rule.size < need_r or angular_rule.size < need_a:
        raise UnderResolvedError(
            f"rules ({radial_rule.size} radial, {angular_rule.size} angular) cannot "
            f"resolve a degree-{field.degree_cap} order-{field.order} field; "
            f"need ({need_r}, {need_a}); node-doubling change "
            f"{doubling_change(field, radial_rule, angular_rule):.3e}"
        )
    return _energy_quadrature(field, radial_rule, angular_rule)


def _energy_quadrature(field, radial_rule, angular_rule):
    d = field.dimension
    Y = zonal_harmonics(angular_rule.nodes, field.degree_cap, d)  # (na, K+1)
    lap = Y @ radial_laplacian_values(field, radial_rule.nodes)  # (na, nr)
    shell = np.array([integrate_values(col**2, angular_rule) for col in lap.T])
    return float(np.dot(radial_rule.weights * radial_rule.nodes ** (d - 1), shell))


def doubling_change(field, radial_rule, angular_rule):
    """Relative change of the quadrature energy when both node counts double."""
    d = field.dimension
    coarse = _energy_quadrature(field, radial_rule, angular_rule)
    fine = _energy_quadrature(
        field, gauss_radial_rule(2 * radial_rule.size), gauss_angular_rule(2 * angular_rule.size, d)
    )
    return abs(fine - coarse) / max(abs(fine), np.finfo(float).tiny)


@dataclass(frozen=True, eq=False)
class BoundaryJet:
    """Boundary traces on S^{d-1}, each as a zonal spectrum.

    ``value`` w, ``normal`` dw/dn, ``normal2`` d2w/dn2, ``tangential``
    (tangential Laplacian of w), ``laplacian`` (flat Delta w restricted),
    ``normal_laplacian`` d(Delta w)/dn.
    """

    value: ZonalSpectrum
    normal: ZonalSpectrum
    normal2: ZonalSpectrum
    tangential: ZonalSpectrum
    laplacian: ZonalSpectrum
    normal_laplacian: ZonalSpectrum


def boundary_jet(field):
    d = field.dimension
    K = field.degree_cap
    k = np.arange(K + 1)[:, None]
    m = _exponents(K).astype(float)
    u = field.coeffs
    lap = (m - k) * (m + k + d - 2)

    def spec(weights):
        return ZonalSpectrum(d, (weights * u).sum(axis=1))

    value = spec(1.0)
    return BoundaryJet(
        value=value,
        normal=spec(m),
        normal2=spec(m * (m - 1)),
        tangential=value.with_coeffs(multiplier("laplace_beltrami", value.degrees, d) * value.coeffs),
        laplacian=spec(lap),
        normal_laplacian=spec(lap * (m - 2)),
    )


def evaluate_field(field, r, t):
    """Point values ``w(r, t)`` (``t`` the cosine of the polar angle)."""
    r = np.asarray(r, dtype=float)
    t = np.asarray(t, dtype=float)
    r_b, t_b = np.broadcast_arrays(r, t)
    Y = zonal_harmonics(t_b.ravel(), field.degree_cap, field.dimension)
    radial = np.stack([P.polyval(r_b.ravel(), p) for p in _radial_polys(field)], axis=1)
    out = (Y * radial).sum(axis=1).reshape(r_b.shape)
    return float(out) if out.ndim == 0 else out


def ball_volume(d):
    return surface_area(d - 1) / d
