"""Evaluators for the sharp trace and sphere inequalities on zonal data.

Each evaluator returns an :class:`InequalityReport` with ``gap = rhs - lhs``;
the inequality claims ``gap >= 0``.  Inputs are either a
:class:`~sharptrace.sphere.ZonalProfile` (nonlinear surface integrals use the
profile's exact node values, quadratic forms use its truncated spectrum) or a
:class:`~sharptrace.sphere.ZonalSpectrum` (everything from the spectrum).

Conventions: ``dsigma`` is the unnormalised round measure, ``dxi =
dsigma / |S^{d-1}|``.  ``P3 = (B-1)B(B+1)`` acts diagonally on degrees.
"""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from sharptrace.extension import (
    bilaplacian_energy,
    dirichlet_energy,
    extend_biharmonic,
    extend_harmonic,
)
from sharptrace.sphere import (
    DEFAULT_ANGULAR_NODES,
    DEFAULT_DEGREE_CAP,
    ZonalProfile,
    ZonalSpectrum,
    analyze,
    gauss_angular_rule,
    integrate_values,
    l2_norm_squared,
    mean_value,
    quadratic_form,
    surface_area,
    values_on_rule,
)

WHICH = ("thmA", "thmB", "beckner_a", "beckner_b", "escobar")

MAX_EXTREMAL_T = 0.9
_TINY = 1e-300


def thm_a_constant(d):
    """``c_d = d(d-2)(d-4)/4``."""
    return d * (d - 2) * (d - 4) / 4.0


def thm_a_boundary_weight(d):
    """``b_d = d(d-4)/2``."""
    return d * (d - 4) / 2.0


def beckner_constant(d):
    """``a_d = d(d-2)(d-4)/8``."""
    return d * (d - 2) * (d - 4) / 8.0


def sobolev_exponent(d):
    """Critical trace exponent ``q = 2(d-1)/(d-4)``."""
    return 2.0 * (d - 1) / (d - 4)


def default_neumann_coefficient(d):
    """``beta`` in ``dv/dn = beta f`` for the order-four trace inequality."""
    return -(d - 4) / 2.0


def halved_neumann_coefficient(d):
    """Half the correct coefficient, ``-(d-4)/4``; it breaks the equality case (regression input)."""
    return -(d - 4) / 4.0


@dataclass
class InequalityReport:
    which: str
    d: float
    K: int
    n_angular: int
    lhs: float
    rhs: float
    params: dict = field(default_factory=dict)

    @property
    def gap(self):
        return self.rhs - self.lhs

    @property
    def rel_gap(self):
        return self.gap / max(abs(self.lhs), abs(self.rhs), _TINY)

    def holds(self, tol=1e-8):
        return self.gap >= -tol * max(abs(self.lhs), abs(self.rhs))

    def as_dict(self):
        return {
            "which": self.which,
            "d": self.d,
            "K": self.K,
            "n_angular": self.n_angular,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "gap": self.gap,
            "rel_gap": self.rel_gap,
            "params": dict(self.params),
        }


@dataclass(frozen=True)
class ExtremalFamily:
    """``-log|1 - t u| + c`` (``log_d4``) or ``|1 - t u|^alpha`` (``power``)."""

    kind: str
    t: float
    alpha: float = 0.0
    c: float = 0.0

    def __post_init__(self):
        if self.kind not in ("log_d4", "power"):
            raise ValueError(f"unknown extremal family {self.kind!r}")
        if not 0.0 <= self.t <= MAX_EXTREMAL_T:
            raise ValueError(f"extremal parameter t must lie in [0, {MAX_EXTREMAL_T}]")


def extremal_profile(family, scale=1.0):
    """Profile of an extremal family member (optionally multiplied by ``scale``)."""
    t, alpha, c = family.t, family.alpha, family.c
    if family.kind == "log_d4":
        label = f"{scale:g}*(-log|1-{t:g}u|+{c:g})"
        return ZonalProfile(lambda u: scale * (c - np.log(np.abs(1.0 - t * u))), label=label)
    label = f"{scale:g}*|1-{t:g}u|^{alpha:g}"
    return ZonalProfile(lambda u: scale * np.abs(1.0 - t * u) ** alpha, label=label)


def _resolve(f, d, K, n):
    """Return (spectrum, node values on the angular rule, rule)."""
    rule = gauss_angular_rule(n, d)
    if isinstance(f, ZonalSpectrum):
        if f.dimension != d:
            raise ValueError("spectrum dimension does not match d")
        return f, values_on_rule(f, rule), rule
    if not isinstance(f, ZonalProfile):
        f = ZonalProfile(f)
    f.check_integrable(d)
    return analyze(f, d, K, n), f(rule.nodes), rule


def _require(which, d):
    if which in ("thmB", "beckner_a") and d != 4:
        raise ValueError(f"{which} is a d = 4 inequality, got d = {d}")
    if which in ("thmA", "beckner_b") and not d > 4:
        raise ValueError(f"{which} needs d > 4, got d = {d}")
    if which == "escobar" and d < 3:
        raise ValueError("escobar is implemented for d >= 3")
    if which not in WHICH:
        raise ValueError(f"unknown inequality {which!r}; expected one of {WHICH}")


def evaluate(which, f, d, K=DEFAULT_DEGREE_CAP, n_angular=DEFAULT_ANGULAR_NODES,
             neumann_coefficient=None, params=None):
    """Evaluate both sides of one inequality for zonal data ``f``.

    ``neumann_coefficient`` overrides ``beta`` in the Neumann datum
    ``beta * f`` used for ``thmA`` (default ``-(d-4)/2``).
    """
    _require(which, d)
    spec, values, rule = _resolve(f, d, K, n_angular)
    vol = surface_area(d - 1)
    params = dict(params or {})
    if isinstance(f, ZonalProfile) and f.label:
        params.setdefault("profile", f.label)

    if which == "thmA":
        beta = default_neumann_coefficient(d) if neumann_coefficient is None else neumann_coefficient
        q = sobolev_exponent(d)
        lq = integrate_values(np.abs(values) ** q, rule)
        lhs = thm_a_constant(d) * vol ** (3.0 / (d - 1)) * lq ** ((d - 4) / (d - 1))
        v = extend_biharmonic(spec, beta * spec)
        rhs = (bilaplacian_energy(v) + 2.0 * quadratic_form(spec, "gradient")
               + thm_a_boundary_weight(d) * l2_norm_squared(spec))
        params["neumann_coefficient"] = beta
    elif which == "thmB":
        phi_bar = mean_value(spec)
        lhs = np.log(integrate_values(np.exp(3.0 * (values - phi_bar)), rule) / (2 * np.pi**2))
        w = extend_biharmonic(spec, 0.0 * spec)
        rhs = (3.0 / (16 * np.pi**2) * bilaplacian_energy(w)
               + 3.0 / (8 * np.pi**2) * quadratic_form(spec, "gradient"))
        params["neumann_coefficient"] = 0.0
    elif which == "beckner_a":
        phi_bar = mean_value(spec)
        lhs = np.log(integrate_values(np.exp(values - phi_bar), rule) / vol)
        rhs = quadratic_form(spec, "P3") / vol / 12.0
    elif which == "beckner_b":
        q = sobolev_exponent(d)
        lq = integrate_values(np.abs(values) ** q, rule) / vol
        lhs = beckner_constant(d) * lq ** (2.0 / q)
        rhs = quadratic_form(spec, "P3") / vol
    else:  # escobar
        p = 2.0 * (d - 1) / (d - 2)
        lp = integrate_values(np.abs(values) ** p, rule)
        lhs = 0.5 * (d - 2) * vol ** (1.0 / (d - 1)) * lp ** ((d - 2) / (d - 1))
        v = extend_harmonic(spec)
        rhs = dirichlet_energy(v) + 0.5 * (d - 2) * l2_norm_squared(spec)

    return InequalityReport(which, d, spec.degree_cap, rule.size, float(lhs), float(rhs), params)


def energy_identity_gap(f, d=None):
    """Relative residual of ``2 <f, P3 f> = int (Delta v)^2 + 2 int |grad f|^2 + (d(d-4)/2) int f^2``.

    ``v`` is the biharmonic extension with Neumann datum ``-(d-4)/2 f``.
    """
    d = f.dimension if d is None else d
    if d < 4:
        raise ValueError("the energy identity needs d >= 4")
    lhs = 2.0 * quadratic_form(f, "P3")
    v = extend_biharmonic(f, default_neumann_coefficient(d) * f)
    rhs = (bilaplacian_energy(v) + 2.0 * quadratic_form(f, "gradient")
           + thm_a_boundary_weight(d) * l2_norm_squared(f))
    if lhs == 0.0 and rhs == 0.0:
        return 0.0
    return abs(lhs - rhs) / max(abs(lhs), _TINY)


def candidate_exponents(d):
    """Default exponent grid: ``(4-d)/4``, ``(4-d)/2``, ``4-d``."""
    return ((4.0 - d) / 4.0, (4.0 - d) / 2.0, 4.0 - d)


@dataclass
class ScanResult:
    d: float
    t: float
    K: int
    table: list  # (alpha, rel_gap, gap) rows in grid order
    alpha_star: float
    separation: float  # runner-up |rel_gap| / minimiser |rel_gap|

    def separated(self, orders=2.0):
        return self.separation >= 10.0**orders


def exponent_scan(d, t, alphas=None, K=DEFAULT_DEGREE_CAP, n_angular=DEFAULT_ANGULAR_NODES):
    """Rank power-law exponents by how closely ``|1-t u|^alpha`` closes Beckner (b)."""
    if not d > 4:
        raise ValueError("exponent scans need d > 4")
    if not 0.0 < t <= MAX_EXTREMAL_T:
        raise ValueError(f"scan parameter t must lie in (0, {MAX_EXTREMAL_T}]")
    alphas = candidate_exponents(d) if alphas is None else tuple(float(a) for a in alphas)
    rows = []
    for alpha in alphas:
        rep = evaluate("beckner_b", extremal_profile(ExtremalFamily("power", t, alpha)), d, K, n_angular)
        rows.append((alpha, rep.rel_gap, rep.gap))
    mags = np.array([abs(r[1]) for r in rows])
    order = np.argsort(mags, kind="stable")
    best = int(order[0])
    if len(rows) > 1:
        runner_up = mags[order[1]]
        separation = runner_up / mags[best] if mags[best] > 0 else (np.inf if runner_up > 0 else 1.0)
    else:
        separation = np.inf
    return ScanResult(d, t, K, rows, rows[best][0], float(separation))


def trial_rng(seed, index=0):
    """Independent generator for trial ``index`` of a run seeded with ``seed``."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(index)]))


def random_spectrum(seed, d, K, decay, index=0):
    """Deterministic spectrum with ``c_k ~ U(-1, 1) e^{-decay k}``.

    Streams are keyed by ``(seed, index)`` through :class:`numpy.random.SeedSequence`,
    so trial ``i`` is reproducible regardless of how trials are scheduled.
    """
    if decay <= 0:
        raise ValueError("decay must be positive")
    rng = trial_rng(seed, index)
    k = np.arange(K + 1)
    return ZonalSpectrum(d, rng.uniform(-1.0, 1.0, K + 1) * np.exp(-decay * k))
