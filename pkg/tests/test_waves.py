import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy.integrate import solve_ivp

from dilute_riemann import cases
from dilute_riemann.errors import (
    CoincidentStatesError,
    DegenerateShockError,
    DomainError,
    NotOnLocusError,
    OutOfFanError,
    PoleError,
)
from dilute_riemann.model import ModelParams, State, lambda1, lambda2
from dilute_riemann.waves import (
    RarefactionCurve,
    classify_shock,
    entropy_admissible,
    fan_arrays,
    hugoniot_locus,
    hugoniot_residual,
    locus_n,
    rarefaction1_curve,
    rarefaction2_curve,
    rarefaction2_h_of_n,
    rarefaction2_identity_residual,
    rarefaction2_invariant,
    rarefaction2_n_of_h,
    rarefaction2_n_of_h_closed,
    rh_speeds,
    sample_fan,
    shock_speed,
)

from conftest import omega_states

UP_S = State(1.0, 0.1)
UP_R = State(0.4, 0.08)
N2S = cases.solve_shock_case().root
N2R = cases.solve_rarefaction_case().root


# -- Hugoniot residual and locus ------------------------------------------------

def test_residual_vanishes_at_anchor(params):
    assert hugoniot_residual(UP_S, UP_S, params) == 0.0


def test_residual_at_shock_right_state(params):
    assert abs(hugoniot_residual(State(0.2, N2S), UP_S, params)) < 1e-9


def test_printed_shock_concentration_is_a_rounded_root(params):
    # the printed digits sit ~3e-9 from the root, residual ~3.5e-9
    assert abs(N2S - cases.PRINTED_N2S) < 5e-9
    assert abs(hugoniot_residual(State(0.2, cases.PRINTED_N2S), UP_S, params)) < 5e-9


def test_residual_derived_value(params):
    mpmath.mp.dps = 30
    C = mpmath.mpf("2.307")
    oracle = -mpmath.sqrt(2 / C) * ((mpmath.mpf("0.02")) ** 1.5 - mpmath.mpf("0.1") ** 1.5)
    r = hugoniot_residual(State(0.2, 0.1), UP_S, params)
    assert r == pytest.approx(float(oracle), rel=1e-13)
    assert r == pytest.approx(0.026810, abs=1e-6)


def test_residual_domain_error(params):
    with pytest.raises(DomainError):
        hugoniot_residual(State(0.2, -0.1), UP_S, params)


@pytest.mark.parametrize("h,expected", [(1.0, 0.1), (0.2, N2S)])
def test_locus_examples(h, expected, params):
    assert locus_n(h, UP_S, params) == pytest.approx(expected, abs=1e-12)


def test_locus_at_half_height(params):
    n = locus_n(0.5, UP_S, params)
    assert 0 < n < 0.1
    assert abs(hugoniot_residual(State(0.5, n), UP_S, params)) < 1e-10


def test_locus_sample_is_continuous_through_anchor(params):
    c = hugoniot_locus(UP_S, params, (0.1, 1.5), 2000)
    assert np.max(np.abs(np.diff(c.n))) < 1e-3
    i = np.argmin(np.abs(c.h - 1.0))
    assert c.n[i] == pytest.approx(0.1, abs=1e-3)
    res = [hugoniot_residual(State(h, n), UP_S, params) for h, n in zip(c.h, c.n)]
    assert np.max(np.abs(res)) < 1e-10


def test_locus_rejects_bad_ranges(params):
    with pytest.raises(ValueError):
        hugoniot_locus(UP_S, params, (0.0, 1.0))
    with pytest.raises(ValueError):
        hugoniot_locus(UP_S, params, (0.1, 1.0), count=1)


@settings(max_examples=60)
@given(omega_states(h_min=0.1, h_max=2.0, phi_max=0.9), st.floats(0.2, 1.8))
def test_rh_components_agree_on_locus(Up, scale, ):
    p = ModelParams()
    h = Up.h * scale
    assume(abs(h - Up.h) > 1e-3 * Up.h)
    n = locus_n(h, Up, p)
    assume(abs(n - Up.n) > 1e-6)
    s_h, s_n = rh_speeds(State(h, n), Up, p)
    assert abs(s_h - s_n) < 1e-9


# -- shock speed ---------------------------------------------------------------

def test_shock_speed_two_shock(params):
    s = shock_speed(State(0.2, N2S), UP_S, params)
    assert abs(s - 1.24 / 3) < 1e-12


def test_shock_speed_half_height(params):
    U = State(0.5, locus_n(0.5, UP_S, params))
    assert shock_speed(U, UP_S, params) == pytest.approx(1.75 / 3, abs=1e-12)


def test_shock_speed_lax_limit(params):
    h = 1.0 - 1e-4
    U = State(h, locus_n(h, UP_S, params))
    assert abs(shock_speed(U, UP_S, params) - lambda2(UP_S)) < 2e-4


def test_shock_speed_errors(params):
    with pytest.raises(CoincidentStatesError):
        shock_speed(UP_S, UP_S, params)
    with pytest.raises(DegenerateShockError):
        shock_speed(State(0.5, 0.1), UP_S, params)
    with pytest.raises(NotOnLocusError):
        shock_speed(State(0.2, 0.05), UP_S, params)


def test_printed_shock_state_is_off_locus_at_rh_tol(params):
    # 3.5e-9 residual exceeds rh_tol=1e-9; the computed root is accepted
    with pytest.raises(NotOnLocusError):
        shock_speed(State(0.2, cases.PRINTED_N2S), UP_S, params)


# -- entropy -------------------------------------------------------------------

def test_entropy_two_shock(params):
    U = State(0.2, cases.PRINTED_N2S)
    assert entropy_admissible(U, UP_S, 0.413333, params) == 2


def test_entropy_family_one_fails(params):
    U = State(0.2, N2S)
    s = 1.24 / 3
    assert not (lambda1(U, params) < s < min(lambda1(UP_S, params), lambda2(U)))


def test_entropy_is_strict(params):
    U = State(0.2, N2S)
    assert entropy_admissible(U, UP_S, 1.0, params) is None
    assert entropy_admissible(U, UP_S, lambda1(UP_S, params), params) is None


def test_anchor_locus_has_no_one_shocks(params):
    c = hugoniot_locus(UP_S, params, h_values=np.linspace(0.01, 0.99, 1000))
    assert not c.adm1.any()
    for h, n, s in zip(c.h, c.n, c.s):
        if n < h:
            U = State(h, n)
            assert not (lambda1(U, params) < s < min(lambda1(UP_S, params), lambda2(U)))


def test_two_shock_band_above_lambda1(params):
    lo = math.sqrt(math.sqrt(1 / 46.14))
    c = hugoniot_locus(UP_S, params, h_values=np.linspace(lo, 1.0, 1002)[1:-1])
    assert c.adm2.all()


def test_two_shocks_below_band_inside_omega(params):
    # s - h^2 = (1 + h - 2 h^2) / 3 > 0 for h < 1, so every in-Omega locus point
    # below the anchor is 2-admissible, not only the band above
    c = hugoniot_locus(UP_S, params, h_values=np.linspace(0.01, 0.99, 500))
    inside = c.n < c.h
    assert np.array_equal(c.adm2, inside)
    assert inside[c.h > 0.08].all() and not inside[c.h < 0.07].any()


def test_lax_ordering_on_admitted_shocks(params):
    for Up in (UP_S, State(0.7, 0.3), State(1.5, 0.05)):
        c = hugoniot_locus(Up, params, (0.05, 2.0), 300)
        for h, n, s in zip(c.h[c.adm2], c.n[c.adm2], c.s[c.adm2]):
            assert h * h < s < Up.h**2 and s > lambda1(Up, params)


def test_classify_shock(params):
    cand = classify_shock(State(0.2, N2S), UP_S, params)
    assert cand.family == 2 and cand.admissible
    bad = classify_shock(State(0.2, 0.05), UP_S, params)
    assert bad.family is None and math.isnan(bad.speed)


# -- rarefaction curves ---------------------------------------------------------

def test_h_of_n_examples(params):
    assert rarefaction2_h_of_n(UP_R, 0.08, params) == pytest.approx(0.4, rel=1e-15)
    assert rarefaction2_h_of_n(UP_R, N2R, params) == pytest.approx(1.0, abs=1e-12)


def test_h_of_n_at_printed_concentration(params):
    # dh/dn ~ 60 there, so 4.7e-8 in n moves h by ~3e-6
    assert abs(N2R - cases.PRINTED_N2R) < 5e-8
    assert rarefaction2_h_of_n(UP_R, cases.PRINTED_N2R, params) == pytest.approx(1.0, abs=5e-6)


def test_h_of_n_against_ode(params):
    h = rarefaction2_h_of_n(UP_R, 0.09, params)
    assert abs(rarefaction2_identity_residual(State(h, 0.09), UP_R, params)) < 1e-10
    C = params.C
    sol = solve_ivp(lambda n, y: (math.sqrt(2 * C) * np.sqrt(y / n) - 1) * y / n,
                    (0.08, 0.09), [0.4], rtol=1e-12, atol=1e-14)
    assert h == pytest.approx(sol.y[0, -1], rel=1e-9)


def test_pole(params):
    # pole where n (sqrt(0.2) - sqrt(C/2)) = -0.08 sqrt(C/2)
    a = math.sqrt(params.C / 2)
    n_pole = 0.08 * a / (a - math.sqrt(0.2))
    assert rarefaction2_h_of_n(UP_R, 0.99 * n_pole, params) > 0
    with pytest.raises(PoleError):
        rarefaction2_h_of_n(UP_R, n_pole * 1.0000001, params)


def test_invariant_along_curve(params):
    c = rarefaction2_curve(UP_R, params, (0.4, 3.0), 200)
    k = rarefaction2_invariant(UP_R, params)
    for U in c.states():
        assert rarefaction2_invariant(U, params) == pytest.approx(k, rel=1e-10)


@settings(max_examples=80)
@given(omega_states(h_min=0.05, h_max=2.0, phi_min=0.01, phi_max=0.95), st.floats(1.0, 4.0))
def test_round_trip(Up, scale):
    p = ModelParams()
    h = Up.h * scale
    n = rarefaction2_n_of_h(Up, h, p)
    assert rarefaction2_h_of_n(Up, n, p) == pytest.approx(h, rel=1e-10)
    assert abs(rarefaction2_identity_residual(State(h, n), Up, p)) < 1e-10
    assert float(rarefaction2_n_of_h_closed(Up, h, p)) == pytest.approx(n, rel=1e-10)


def test_curve_identity_at_emitted_points(params):
    c = rarefaction2_curve(UP_R, params, (0.4, 1.0), 1000)
    res = [rarefaction2_identity_residual(U, UP_R, params) for U in c.states()]
    assert np.max(np.abs(res)) < 1e-10
    assert c.n[-1] == pytest.approx(N2R, abs=1e-12)


def test_lambda2_increases_along_r2(params):
    c = rarefaction2_curve(UP_R, params, (0.4, 1.0), 1000)
    assert np.all(np.diff(c.lambda2) > 0)
    assert c.adm2[1:].all() and not c.adm2[0]


def test_lambda1_increases_along_r1(params):
    c = rarefaction1_curve(UP_R, params, 500)
    assert np.all(c.h == 0.4) and np.all(np.diff(c.n) > 0)
    assert np.all(np.diff(c.lambda1) > 0)
    assert c.n.max() < 0.4


def test_rarefaction_curve_object(params):
    rc = RarefactionCurve(UP_R, 2, params)
    assert rc.integration_constant == pytest.approx(rarefaction2_invariant(UP_R, params))
    assert RarefactionCurve(UP_R, 1, params).integration_constant is None
    with pytest.raises(ValueError):
        RarefactionCurve(UP_R, 3, params)


# -- fans ------------------------------------------------------------------------

def test_fan_examples(params):
    assert sample_fan(UP_R, 2, 0.16, params) == UP_R
    U = sample_fan(UP_R, 2, 1.0, params)
    assert U.h == 1.0 and U.n == pytest.approx(N2R, abs=1e-12)
    U = sample_fan(UP_R, 2, 0.5, params)
    assert U.h == pytest.approx(0.70710678118654752, rel=1e-15)
    assert abs(rarefaction2_identity_residual(U, UP_R, params)) < 1e-12


def test_fan_inverts_eigenvalue(params):
    for xi in np.linspace(0.16, 1.0, 50):
        assert abs(lambda2(sample_fan(UP_R, 2, xi, params)) - xi) < 1e-10
    l1 = lambda1(UP_R, params)
    for xi in np.linspace(l1, 0.99 * math.sqrt(0.4**4 / (2 * params.C)), 50):
        U = sample_fan(UP_R, 1, xi, params)
        assert U.h == 0.4 and abs(lambda1(U, params) - xi) < 1e-10


def test_fan_errors(params):
    with pytest.raises(OutOfFanError):
        sample_fan(UP_R, 2, 0.1, params)
    with pytest.raises(OutOfFanError):
        sample_fan(UP_R, 1, 0.0, params)
    with pytest.raises(OutOfFanError):
        sample_fan(UP_R, 1, 1.0, params)
    with pytest.raises(ValueError):
        sample_fan(UP_R, 3, 0.5, params)


def test_fan_arrays_agree_with_scalar(params):
    xi = np.linspace(0.16, 1.0, 40)
    h, n = fan_arrays(UP_R, 2, xi, params)
    for x, hh, nn in zip(xi, h, n):
        U = sample_fan(UP_R, 2, float(x), params)
        assert hh == pytest.approx(U.h, rel=1e-15) and nn == pytest.approx(U.n, rel=1e-12)
