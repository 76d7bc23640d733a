import numpy as np
import pytest
from hypothesis import given, strategies as st

from sharptrace import inequalities as ineq
from sharptrace.inequalities import ExtremalFamily, evaluate, extremal_profile, random_spectrum
from sharptrace.sphere import ZonalProfile, ZonalSpectrum, surface_area

ONE = ZonalProfile(lambda t: np.ones_like(t), label="1")


def test_constants():
    for d in (5.0, 6.0, 8.0):
        assert 2 * ineq.beckner_constant(d) == ineq.thm_a_constant(d)
        assert ineq.sobolev_exponent(d) == pytest.approx(2 * (d - 1) / (d - 4))
    assert ineq.thm_a_constant(6) == 12.0
    assert ineq.thm_a_boundary_weight(6) == 6.0


@pytest.mark.parametrize("d", (5.0, 6.0, 8.0))
def test_constant_datum_is_equality_case(d):
    rep = evaluate("thmA", ONE, d)
    expected = ineq.thm_a_constant(d) * surface_area(d - 1)
    assert rep.lhs == pytest.approx(expected, rel=1e-12)
    assert abs(rep.rel_gap) <= 1e-12


@pytest.mark.parametrize("d", (5.0, 6.0, 8.0))
def test_halved_neumann_coefficient_breaks_equality(d):
    rep = evaluate("thmA", ONE, d, neumann_coefficient=ineq.halved_neumann_coefficient(d))
    assert rep.rel_gap < -1e-3
    assert not rep.holds()


@pytest.mark.parametrize("t", (0.0, 0.25, 0.5, 0.75))
def test_log_profiles_close_the_four_dimensional_inequality(t):
    rep = evaluate("thmB", extremal_profile(ExtremalFamily("log_d4", t, c=0.3)), 4)
    assert abs(rep.rel_gap) <= 1e-6 or abs(rep.gap) <= 1e-12


@pytest.mark.parametrize("t", (0.25, 0.5))
def test_tripled_log_profiles_close_beckner_log_inequality(t):
    rep = evaluate("beckner_a", extremal_profile(ExtremalFamily("log_d4", t), scale=3.0), 4)
    assert abs(rep.rel_gap) <= 1e-10


@pytest.mark.parametrize("d", (5.0, 6.0, 8.0))
@pytest.mark.parametrize("t", (0.25, 0.5))
def test_power_extremals(d, t):
    fam = ExtremalFamily("power", t, -(d - 4) / 2)
    for which in ("thmA", "beckner_b"):
        assert abs(evaluate(which, extremal_profile(fam), d).rel_gap) <= 1e-10
    esc = ExtremalFamily("power", t, -(d - 2) / 2)
    assert abs(evaluate("escobar", extremal_profile(esc), d).rel_gap) <= 1e-10


def test_non_extremal_power_is_strict():
    rep = evaluate("beckner_b", extremal_profile(ExtremalFamily("power", 0.5, -0.5)), 6)
    assert rep.rel_gap > 1e-5


APPLICABLE = [("thmB", 4.0), ("beckner_a", 4.0), ("escobar", 4.0)] + [
    (w, d) for d in (5.0, 6.0, 8.0) for w in ("thmA", "beckner_b", "escobar")]


@pytest.mark.parametrize("which, d", APPLICABLE)
@given(seed=st.integers(0, 2**32 - 1))
def test_inequalities_hold_on_random_spectra(which, d, seed):
    rep = evaluate(which, random_spectrum(seed, d, 24, 0.5), d)
    assert rep.holds(1e-8)


@given(seed=st.integers(0, 2**32 - 1), d=st.sampled_from((5.0, 6.0, 8.0)))
def test_rescaled_sphere_inequality_matches_trace_inequality(seed, d):
    f = random_spectrum(seed, d, 24, 0.5)
    a = evaluate("thmA", f, d)
    b = evaluate("beckner_b", f, d)
    scale = 2 * surface_area(d - 1)
    assert scale * b.lhs == pytest.approx(a.lhs, rel=1e-10)
    assert scale * b.rhs == pytest.approx(a.rhs, rel=1e-10)


@given(seed=st.integers(0, 2**32 - 1), d=st.sampled_from((4.0, 5.0, 6.0, 8.0)),
       decay=st.floats(0.05, 2.0))
def test_energy_identity(seed, d, decay):
    assert ineq.energy_identity_gap(random_spectrum(seed, d, 64, decay)) <= 1e-11


def test_energy_identity_per_mode():
    # each mode contributes 2(m-1)m(m+1) with m = k + (d-2)/2
    for d in (5.0, 7.0):
        for k in range(6):
            assert ineq.energy_identity_gap(ZonalSpectrum.unit(d, 6, k)) <= 1e-13


def test_energy_identity_zero_spectrum():
    assert ineq.energy_identity_gap(ZonalSpectrum.zeros(5, 4)) == 0.0
    with pytest.raises(ValueError):
        ineq.energy_identity_gap(ZonalSpectrum.zeros(3, 4))


def test_reports_serialize():
    rep = evaluate("escobar", ONE, 5)
    d = rep.as_dict()
    assert set(d) >= {"which", "lhs", "rhs", "gap", "rel_gap", "params"}
    assert d["params"]["profile"] == "1"


def test_dimension_guards():
    with pytest.raises(ValueError):
        evaluate("thmB", ONE, 5)
    with pytest.raises(ValueError):
        evaluate("thmA", ONE, 4)
    with pytest.raises(ValueError):
        evaluate("bogus", ONE, 5)
    with pytest.raises(ValueError):
        evaluate("thmA", ZonalSpectrum.unit(5, 3, 0), 6)


def test_extremal_family_validation():
    with pytest.raises(ValueError):
        ExtremalFamily("power", 0.95, -1)
    with pytest.raises(ValueError):
        ExtremalFamily("gaussian", 0.5)


@pytest.mark.parametrize("d", (5.0, 6.0, 8.0))
def test_exponent_scan_picks_half_codimension(d):
    res = ineq.exponent_scan(d, 0.5)
    assert res.alpha_star == pytest.approx((4 - d) / 2)
    assert res.separated()
    assert [row[0] for row in res.table] == list(ineq.candidate_exponents(d))


def test_exponent_scan_custom_grid_and_guard():
    res = ineq.exponent_scan(6, 0.5, alphas=[-0.5, -1, -2], K=32)
    assert res.alpha_star == -1.0
    with pytest.raises(ValueError):
        ineq.exponent_scan(4, 0.5)
    with pytest.raises(ValueError):
        ineq.exponent_scan(6, 0.0)


def test_random_spectrum_is_reproducible():
    np.testing.assert_allclose(
        random_spectrum(0, 4, 4, 0.5).coeffs,
        [0.2739233746429086, -0.2792628327508261, -0.3377328069944983,
         -0.21575453222371865, 0.08479303310354055],
        rtol=0, atol=0,
    )
    a = random_spectrum(9, 6, 10, 0.3, index=4).coeffs
    b = random_spectrum(9, 6, 10, 0.3, index=4).coeffs
    c = random_spectrum(9, 6, 10, 0.3, index=5).coeffs
    assert np.array_equal(a, b) and not np.array_equal(a, c)
    with pytest.raises(ValueError):
        random_spectrum(0, 4, 4, 0.0)


@pytest.mark.parametrize("which, d", [("thmA", 6.0), ("beckner_b", 5.0), ("escobar", 4.0)])
@given(seed=st.integers(0, 10_000), c=st.floats(0.1, 10.0))
def test_scaling_is_quadratic(which, d, seed, c):
    f = random_spectrum(seed, d, 20, 0.5)
    a = evaluate(which, f, d)
    b = evaluate(which, c * f, d)
    assert b.lhs == pytest.approx(c * c * a.lhs, rel=1e-11)
    assert b.rhs == pytest.approx(c * c * a.rhs, rel=1e-11)
    assert b.rel_gap == pytest.approx(a.rel_gap, rel=1e-9, abs=1e-12)


@given(seed=st.integers(0, 10_000), shift=st.floats(-5, 5))
def test_log_inequality_ignores_constants(seed, shift):
    f = random_spectrum(seed, 4, 20, 0.5)
    g = f + ZonalSpectrum.constant(4, 20, shift)
    for which in ("thmB", "beckner_a"):
        assert evaluate(which, g, 4).gap == pytest.approx(evaluate(which, f, 4).gap, abs=1e-10)
