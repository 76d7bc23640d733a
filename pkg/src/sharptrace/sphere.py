"""Zonal spectral analysis and synthesis on the round sphere S^{d-1}.

A zonal function ``f(xi) = F(<e, xi>)`` is expanded as ``sum_k c_k Y_k``
where ``Y_k`` is the degree-``k`` zonal harmonic (a Gegenbauer polynomial
with ``lam = (d-2)/2``) normalised so that ``int Y_k Y_j dsigma = delta_kj``
for the *unnormalised* surface measure ``dsigma``.

Surface integrals of zonal functions reduce to one-dimensional integrals,

    int_{S^{d-1}} F(<e, xi>) dsigma = |S^{d-2}| int_{-1}^{1} F(t) (1-t^2)^{(d-3)/2} dt,

which are evaluated with Gauss-Jacobi rules.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Union

import numpy as np
from scipy.special import gammaln, roots_jacobi, roots_legendre

from sharptrace import kernels

DEFAULT_ANGULAR_NODES = 200
DEFAULT_DEGREE_CAP = 64

MULTIPLIER_KINDS = ("laplace_beltrami", "B", "P3")


class NonIntegrableProfileError(ValueError):
    """Raised when a declared endpoint singularity is not integrable."""


def surface_area(m):
    """Volume ``|S^m| = 2 pi^{(m+1)/2} / Gamma((m+1)/2)`` of the unit m-sphere."""
    if m < 1:
        raise ValueError(f"sphere dimension must be >= 1, got {m}")
    h = 0.5 * (m + 1)
    return float(2.0 * np.exp(h * np.log(np.pi) - gammaln(h)))


def _gegenbauer_lambda(d):
    return 0.5 * (d - 2)


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Gauss nodes and weights.

    ``kind`` is ``"angular-jacobi"`` (weight ``(1-t^2)^{(d-3)/2}`` on
    [-1, 1]) or ``"radial-legendre"`` (weight 1 on [0, 1]).
    """

    kind: str
    nodes: np.ndarray
    weights: np.ndarray
    dimension: Optional[float] = None

    @property
    def size(self):
        return self.nodes.size

    def integrate(self, values):
        return float(np.dot(self.weights, values))


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@lru_cache(maxsize=64)
def _angular_rule(n, d):
    alpha = 0.5 * (d - 3)
    x, w = roots_jacobi(n, alpha, alpha)
    return QuadratureRule("angular-jacobi", _frozen(x), _frozen(w), d)


def gauss_angular_rule(n, d):
    """Gauss-Jacobi rule exact for ``t^p (1-t^2)^{(d-3)/2}``, ``p <= 2n-1``."""
    if n < 1:
        raise ValueError("need at least one node")
    if d < 3:
        raise ValueError(f"angular rules need d >= 3, got {d}")
    return _angular_rule(int(n), float(d))


@lru_cache(maxsize=64)
def _radial_rule(n):
    x, w = roots_legendre(n)
    return QuadratureRule("radial-legendre", _frozen(0.5 * (x + 1.0)), _frozen(0.5 * w))


def gauss_radial_rule(n):
    """Gauss-Legendre rule on [0, 1] (weights sum to 1)."""
    if n < 1:
        raise ValueError("need at least one node")
    return _radial_rule(int(n))


@dataclass(frozen=True, eq=False)
class ZonalSpectrum:
    """Coefficients ``c_0..c_K`` of a zonal function in the orthonormal basis."""

    dimension: float
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float).ravel()
        if c.size == 0:
            raise ValueError("a spectrum needs at least the degree-0 coefficient")
        if not np.all(np.isfinite(c)):
            raise ValueError("spectrum coefficients must be finite")
        if self.dimension < 3:
            raise ValueError(f"dimension must be >= 3, got {self.dimension}")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree_cap(self):
        return self.coeffs.size - 1

    @property
    def degrees(self):
        return np.arange(self.coeffs.size)

    def with_coeffs(self, coeffs):
        return ZonalSpectrum(self.dimension, coeffs)

    def padded(self, K):
        """Copy zero-padded (or truncated) to degree cap ``K``."""
        c = np.zeros(K + 1)
        m = min(K, self.degree_cap) + 1
        c[:m] = self.coeffs[:m]
        return ZonalSpectrum(self.dimension, c)

    def __add__(self, other):
        _check_same(self, other)
        return self.with_coeffs(self.coeffs + other.coeffs)

    def __sub__(self, other):
        _check_same(self, other)
        return self.with_coeffs(self.coeffs - other.coeffs)

    def __mul__(self, scalar):
        return self.with_coeffs(scalar * self.coeffs)

    __rmul__ = __mul__

    def __neg__(self):
        return self.with_coeffs(-self.coeffs)

    @classmethod
    def zeros(cls, d, K):
        return cls(d, np.zeros(K + 1))

    @classmethod
    def unit(cls, d, K, k):
        c = np.zeros(K + 1)
        c[k] = 1.0
        return cls(d, c)

    @classmethod
    def constant(cls, d, K, value=1.0):
        c = np.zeros(K + 1)
        c[0] = value * np.sqrt(surface_area(d - 1))
        return cls(d, c)


def _check_same(a, b):
    if a.dimension != b.dimension or a.degree_cap != b.degree_cap:
        raise ValueError("spectra must share dimension and degree cap")


@dataclass(frozen=True, eq=False)
class ZonalProfile:
    """A zonal function given by its profile ``F(t)``, ``t = <e, xi>``.

    ``singular_exponent`` declares an endpoint singularity ``|1 - t|^s`` at
    the pole; ``None`` means the profile is smooth on [-1, 1].
    """

    evaluator: Callable[[np.ndarray], np.ndarray]
    singular_exponent: Optional[float] = None
    label: str = ""

    def __call__(self, t):
        return np.asarray(self.evaluator(np.asarray(t, dtype=float)), dtype=float)

    def shifted(self, c):
        f = self.evaluator
        return ZonalProfile(lambda t: f(t) + c, self.singular_exponent, self.label)

    def scaled(self, s):
        f = self.evaluator
        return ZonalProfile(lambda t: s * f(t), self.singular_exponent, self.label)

    def check_integrable(self, d):
        s = self.singular_exponent
        if s is not None and s <= -(d - 1) / 2.0:
            raise NonIntegrableProfileError(
                f"endpoint exponent {s} is not integrable on S^{d - 1} "
                f"(need > {-(d - 1) / 2.0})"
            )


ProfileLike = Union[ZonalProfile, Callable[[np.ndarray], np.ndarray]]


def as_profile(f):
    return f if isinstance(f, ZonalProfile) else ZonalProfile(f)


def zonal_normalisation(d):
    """Value of the constant harmonic ``Y_0 = |S^{d-1}|^{-1/2}``."""
    return 1.0 / np.sqrt(surface_area(d - 1))


def zonal_harmonics(t, K, d):
    """Table ``Y_k(t_i)`` for ``k = 0..K``; shape ``(len(t), K+1)``."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    return kernels.zonal_table(t, int(K), _gegenbauer_lambda(d), zonal_normalisation(d))


@lru_cache(maxsize=64)
def _analysis_matrix(n, d, K):
    # rows: degree k; columns: node i.  c = M @ F(t)
    rule = gauss_angular_rule(n, d)
    Y = zonal_harmonics(rule.nodes, K, d)
    M = surface_area(d - 2) * (Y * rule.weights[:, None]).T
    M.setflags(write=False)
    return M


def analyze(profile, d, K=DEFAULT_DEGREE_CAP, n=DEFAULT_ANGULAR_NODES):
    """Project a zonal profile onto ``Y_0..Y_K`` by Gauss-Jacobi quadrature."""
    profile = as_profile(profile)
    profile.check_integrable(d)
    rule = gauss_angular_rule(n, d)
    values = profile(rule.nodes)
    return ZonalSpectrum(d, _analysis_matrix(int(n), float(d), int(K)) @ values)


def synthesize(spec, t):
    """Evaluate ``sum_k c_k Y_k(t)``; scalar in, scalar out."""
    t_arr = np.asarray(t, dtype=float)
    out = kernels.zonal_clenshaw(
        spec.coeffs,
        t_arr,
        _gegenbauer_lambda(spec.dimension),
        zonal_normalisation(spec.dimension),
    )
    out = np.reshape(out, t_arr.shape)
    return float(out) if out.ndim == 0 else out


def values_on_rule(spec, rule):
    return synthesize(spec, rule.nodes)


def multiplier(kind, k, d):
    """Eigenvalue of a spherical operator on degree-``k`` harmonics.

    ``laplace_beltrami``: ``-k(k+d-2)``; ``B``: ``k+(d-2)/2``;
    ``P3 = (B-1)B(B+1)``: ``(k+(d-4)/2)(k+(d-2)/2)(k+d/2)``.
    """
    k = np.asarray(k, dtype=float)
    if kind == "laplace_beltrami":
        return -k * (k + d - 2)
    if kind == "B":
        return k + 0.5 * (d - 2)
    if kind == "P3":
        return (k + 0.5 * (d - 4)) * (k + 0.5 * (d - 2)) * (k + 0.5 * d)
    if kind == "gradient":
        return k * (k + d - 2)
    raise ValueError(f"unknown multiplier {kind!r}")


def apply_multiplier(spec, kind):
    if kind not in MULTIPLIER_KINDS:
        raise ValueError(f"unknown multiplier {kind!r}; expected one of {MULTIPLIER_KINDS}")
    return spec.with_coeffs(multiplier(kind, spec.degrees, spec.dimension) * spec.coeffs)


def quadratic_form(spec, kind):
    """``sum_k lambda_k c_k^2`` for ``kind`` in P3, B, laplace_beltrami, gradient.

    ``gradient`` is ``int |grad f|^2 dsigma = sum k(k+d-2) c_k^2``.
    """
    lam = multiplier(kind, spec.degrees, spec.dimension)
    return float(np.dot(lam, spec.coeffs**2))


def l2_norm_squared(spec):
    return float(np.dot(spec.coeffs, spec.coeffs))


def mean_value(spec):
    """Average of the function with respect to the normalised measure ``dxi``."""
    return float(spec.coeffs[0] * zonal_normalisation(spec.dimension))


def surface_integral(spec):
    """``int f dsigma``; only the degree-0 mode contributes."""
    return float(spec.coeffs[0] / zonal_normalisation(spec.dimension))


def integrate_values(values, rule):
    """``int F(<e,xi>) dsigma`` from profile values on an angular rule's nodes."""
    return surface_area(rule.dimension - 2) * rule.integrate(values)


def boundary_integral(profile, d, n=DEFAULT_ANGULAR_NODES):
    """``int_{S^{d-1}} F(<e, xi>) dsigma`` via the angular rule."""
    profile = as_profile(profile)
    profile.check_integrable(d)
    rule = gauss_angular_rule(n, d)
    return integrate_values(profile(rule.nodes), rule)
