"""Adapted conformal metrics on the unit ball and residual checks.

With ``rho = (1 - r^2)/2`` the hyperbolic metric is ``g_H = rho^{-2} g_0``.
The adapted metric is

* ``d > 4``: ``g* = psi^{4/(d-4)} g_0`` with ``psi = 1 + (d-4) rho / 2``,
* ``d = 4``: ``g* = e^{2 tau} g_H = e^{2 rho} g_0`` with ``tau = log rho + rho``.

Residual functions return a *relative* residual: the signed sum of the
terms of the identity divided by the largest term magnitude.  Near ``r = 1``
individual terms grow like ``rho^{-4}``, so absolute residuals would only
measure the size of the terms.
"""
from dataclasses import dataclass

import numpy as np


def _check_radius(r, closed=True):
    r = float(r)
    ok = 0.0 <= r <= 1.0 if closed else 0.0 < r < 1.0
    if not ok:
        interval = "[0, 1]" if closed else "(0, 1)"
        raise ValueError(f"radius {r} outside {interval}")
    return r


def _check_dimension(d):
    if d <= 4:
        raise ValueError(f"psi is defined for d > 4, got {d}")
    return float(d)


def _relative(terms, target=0.0):
    terms = np.asarray(terms, dtype=float)
    scale = max(np.max(np.abs(terms)), abs(target), np.finfo(float).tiny)
    return abs(terms.sum() - target) / scale


def rho(r):
    r = _check_radius(r)
    return 0.5 * (1.0 - r * r)


def psi(r, d):
    return 1.0 + 0.5 * (_check_dimension(d) - 4.0) * rho(r)


def psi_prime(r, d):
    return -0.5 * (_check_dimension(d) - 4.0) * _check_radius(r)


def psi_second(r, d):
    _check_radius(r)
    return -0.5 * (_check_dimension(d) - 4.0)


def tau(r):
    r = float(r)
    if not 0.0 <= r < 1.0:
        raise ValueError("tau diverges at r = 1; use compactified_factor")
    p = rho(r)
    return np.log(p) + p


def tau_prime(r):
    p = rho(r)
    return -r / p - r


def tau_second(r):
    p = rho(r)
    return -(1.0 + r * r) / (2.0 * p * p) - 1.0


def compactified_factor(r):
    """``e^{2 tau} rho^{-2} = e^{2 rho}``, the d = 4 conformal factor (regular at r = 1)."""
    return float(np.exp(2.0 * rho(r)))


def psi_ode_residual(r, d):
    """Relative residual of the radial ODE satisfied by ``psi``.

    ``-rho^{-2} psi'' - ((d-5)/r) rho^{-2} psi' - (2/r) rho^{-3} psi' - (d-4) rho^{-3} psi``
    """
    r = _check_radius(r, closed=False)
    d = _check_dimension(d)
    p = rho(r)
    d1, d2 = psi_prime(r, d), psi_second(r, d)
    terms = [
        -d2 / p**2,
        -(d - 5.0) / r * d1 / p**2,
        -2.0 / r * d1 / p**3,
        -(d - 4.0) * psi(r, d) / p**3,
    ]
    return _relative(terms)


def error_term_gap(r, d):
    """Relative gap between ``-rho^{-1} Delta(rho^{-1}) + 2 rho^{-4}`` and ``-(d-4)/rho^3``.

    ``Delta(rho^{-1})`` is built from the radial derivatives
    ``(rho^{-1})' = r rho^{-2}`` and ``(rho^{-1})'' = rho^{-2} + 2 r^2 rho^{-3}``.
    """
    r = _check_radius(r, closed=False)
    d = _check_dimension(d)
    p = rho(r)
    first = r / p**2
    second = 1.0 / p**2 + 2.0 * r * r / p**3
    lap = second + (d - 1.0) / r * first
    return _relative([-lap / p, 2.0 / p**4], target=-(d - 4.0) / p**3)


def hyperbolic_laplacian_radial(u1, u2, r, d):
    """``Delta_{g_H} u`` for radial ``u`` given ``u'`` and ``u''`` at ``r``.

    For ``g_H = rho^{-2} g_0`` the conformal change of the Laplacian gives
    ``rho^2 (u'' + (d-1) u'/r + (d-2) r u'/rho)``; returned as its three terms.
    """
    p = rho(r)
    return np.array([p * p * u2, p * p * (d - 1.0) * u1 / r, p * (d - 2.0) * r * u1])


def tau_pde_residual(r):
    """Relative residual of ``-Delta_{g_H} tau = 3`` on B^4."""
    r = _check_radius(r, closed=False)
    terms = -hyperbolic_laplacian_radial(tau_prime(r), tau_second(r), r, 4.0)
    return _relative(terms, target=3.0)


def dimension_continuity_gap(r, eps):
    """``|psi(r, 4+eps)^{4/eps} - e^{2 rho}|``; vanishes linearly in eps."""
    if not 0.0 < eps <= 0.1:
        raise ValueError("eps must lie in (0, 0.1]")
    p = rho(r)
    power = np.exp((4.0 / eps) * np.log1p(0.5 * eps * p))
    return float(abs(power - np.exp(2.0 * p)))


@dataclass(frozen=True)
class AdaptedMetric:
    """Conformal factor of the adapted metric ``g* = factor(r) g_0``."""

    dimension: float

    @property
    def kind(self):
        return "exponential" if self.dimension == 4 else "power-law"

    def __post_init__(self):
        if self.dimension < 4:
            raise ValueError("adapted metrics are defined for d >= 4")

    def factor(self, r):
        if self.kind == "exponential":
            return compactified_factor(r)
        return psi(r, self.dimension) ** (4.0 / (self.dimension - 4.0))

    def boundary_data(self):
        """``(value, outward normal derivative)`` of the defining function at r = 1."""
        if self.kind == "exponential":
            return compactified_factor(1.0), -2.0
        return psi(1.0, self.dimension), psi_prime(1.0, self.dimension)
