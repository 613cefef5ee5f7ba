"""Local-treatment moment system: steady state, closed form, conservation laws."""

import math

import numpy as np
import pytest

from qheatnet import bath
from qheatnet.local_mme import (
    MomentState,
    affine_system,
    evolve,
    heat_current_closed_form,
    moment_rhs,
    steady_state,
)
from qheatnet.model import NetworkParams, Statistics, thermal_occupation

from _draws import contrast_params, generic_params


def _hand_rhs(params, state):
    # the four moment equations written out longhand, independent of the
    # matrix assembly under test
    gamma_h, gamma_c = bath.local_rates(params)
    w_h = math.exp(-params.omega_h / params.T_h)
    w_c = math.exp(-params.omega_c / params.T_c)
    G_h = gamma_h * (1.0 + params.delta * w_h)
    G_c = gamma_c * (1.0 + params.delta * w_c)
    gap = params.omega_h - params.omega_c
    d_nA = gamma_h * w_h - G_h * state.nA - params.epsilon * state.Y
    d_nB = gamma_c * w_c - G_c * state.nB + params.epsilon * state.Y
    d_X = -0.5 * (G_h + G_c) * state.X + gap * state.Y
    d_Y = -0.5 * (G_h + G_c) * state.Y - gap * state.X + 2.0 * params.epsilon * (state.nA - state.nB)
    return np.array([d_nA, d_nB, d_X, d_Y])


@pytest.mark.parametrize("statistics", [Statistics.BOSON, Statistics.TLS])
def test_moment_rhs_matches_hand_equations(statistics):
    rng = np.random.default_rng(101)
    for _ in range(50):
        params = generic_params(rng, statistics)
        state = MomentState(*rng.normal(size=4))
        got = moment_rhs(params, state).as_array()
        assert got == pytest.approx(_hand_rhs(params, state), rel=1e-13, abs=1e-16)


def test_rhs_vanishes_at_steady_state():
    rng = np.random.default_rng(5)
    for _ in range(50):
        params = generic_params(rng)
        state = steady_state(params)
        rhs = moment_rhs(params, state.moments).as_array()
        scale = max(1.0, float(np.max(np.abs(state.moments.as_array()))))
        assert np.max(np.abs(rhs)) <= 1e-12 * scale


@pytest.mark.parametrize("statistics", [Statistics.BOSON, Statistics.TLS])
def test_decoupled_nodes_thermalize(statistics):
    params = NetworkParams(omega_h=9.0, omega_c=2.0, epsilon=0.0, T_h=17.0, T_c=3.0,
                           kappa=1e-5, statistics=statistics)
    state = steady_state(params)
    assert state.moments.nA == pytest.approx(thermal_occupation(9.0, 17.0, statistics), rel=1e-12)
    assert state.moments.nB == pytest.approx(thermal_occupation(2.0, 3.0, statistics), rel=1e-12)
    assert state.moments.X == 0.0
    assert state.moments.Y == 0.0
    assert state.J_h == pytest.approx(0.0, abs=1e-18)
    assert state.J_c == pytest.approx(0.0, abs=1e-18)


def test_first_law_generic_draws():
    rng = np.random.default_rng(42)
    for statistics in (Statistics.BOSON, Statistics.TLS):
        for _ in range(100):
            params = generic_params(rng, statistics)
            state = steady_state(params)
            assert abs(state.J_h + state.J_c) <= 1e-10 * max(1.0, abs(state.J_h))


@pytest.mark.parametrize("statistics", [Statistics.BOSON, Statistics.TLS])
def test_closed_form_matches_solve(statistics):
    rng = np.random.default_rng(77)
    for _ in range(50):
        params = contrast_params(rng, statistics)
        state = steady_state(params)
        closed, _ = heat_current_closed_form(params)
        assert closed == pytest.approx(state.J_h, rel=1e-10)


def test_current_sign_follows_exponential_contrast():
    # J_h carries the sign of e^(beta_c omega_c) - e^(beta_h omega_h); sigma
    # additionally carries the sign of the inverse-temperature difference
    rng = np.random.default_rng(13)
    for _ in range(200):
        params = contrast_params(rng)
        state = steady_state(params)
        contrast = math.exp(params.beta_c * params.omega_c) - math.exp(params.beta_h * params.omega_h)
        assert math.copysign(1.0, state.J_h) == math.copysign(1.0, contrast)
        if abs(params.beta_c - params.beta_h) > 1e-3:
            expected = math.copysign(1.0, contrast) * math.copysign(1.0, params.beta_c - params.beta_h)
            assert math.copysign(1.0, state.sigma) == expected


def test_prefactor_is_nonnegative():
    rng = np.random.default_rng(3)
    for statistics in (Statistics.BOSON, Statistics.TLS):
        for _ in range(100):
            params = generic_params(rng, statistics)
            _, prefactor = heat_current_closed_form(params)
            assert prefactor >= 0.0


def test_frozen_regression_boson():
    # 50-digit evaluation at omega_h=10, omega_c=5, eps=0.01, T_h=12, T_c=10, kappa=1e-4
    params = NetworkParams(omega_h=10.0, omega_c=5.0, epsilon=1e-2, T_h=12.0, T_c=10.0, kappa=1e-4)
    reference = -1.9317780982720402553e-06
    closed, _ = heat_current_closed_form(params)
    assert closed == pytest.approx(reference, rel=1e-12)
    # the 4x4 solve loses a few digits to conditioning at this weak coupling
    assert steady_state(params).J_h == pytest.approx(reference, rel=1e-9)


def test_frozen_regression_tls():
    # 50-digit evaluation at the default parameter point with two-level nodes
    params = NetworkParams(statistics=Statistics.TLS)
    closed, _ = heat_current_closed_form(params)
    assert closed == pytest.approx(-5.3086124926134222206e-12, rel=1e-12)


def test_tls_moments_bounded():
    rng = np.random.default_rng(211)
    for _ in range(100):
        params = generic_params(rng, Statistics.TLS)
        m = steady_state(params).moments
        assert -1e-12 <= m.nA <= 1.0 + 1e-12
        assert -1e-12 <= m.nB <= 1.0 + 1e-12


def test_boson_moments_physical():
    # occupations nonnegative and the coherence obeys Cauchy-Schwarz
    rng = np.random.default_rng(212)
    for _ in range(100):
        params = generic_params(rng)
        m = steady_state(params).moments
        assert m.nA >= -1e-14
        assert m.nB >= -1e-14
        coherence_sq = 0.25 * (m.X**2 + m.Y**2)
        assert coherence_sq <= m.nA * (m.nB + 1.0) + 1e-12
        assert coherence_sq <= (m.nA + 1.0) * m.nB + 1e-12


def test_evolve_relaxes_to_steady_state():
    params = NetworkParams(omega_h=6.0, omega_c=5.0, epsilon=0.3, T_h=8.0, T_c=4.0, kappa=1e-3)
    target = steady_state(params).moments.as_array()
    start = MomentState(3.0, 0.1, 0.5, -0.2)
    A, _ = affine_system(params)
    slowest = -np.max(np.linalg.eigvals(A).real)
    duration = 40.0 / slowest
    times, trajectory = evolve(params, start, duration, steps=4000)
    assert times.shape == (4001,)
    assert trajectory.shape == (4001, 4)
    assert trajectory[-1] == pytest.approx(target, rel=1e-8, abs=1e-12)


def test_evolve_is_fourth_order():
    params = NetworkParams(omega_h=6.0, omega_c=5.0, epsilon=0.3, T_h=8.0, T_c=4.0, kappa=1e-3)
    start = MomentState(3.0, 0.1, 0.5, -0.2)
    duration = 0.5
    _, coarse = evolve(params, start, duration, steps=200)
    _, fine = evolve(params, start, duration, steps=400)
    _, finest = evolve(params, start, duration, steps=800)
    err_coarse = np.max(np.abs(coarse[-1] - finest[-1]))
    err_fine = np.max(np.abs(fine[-1] - finest[-1]))
    assert err_coarse / err_fine > 10.0  # 16 for exact fourth order


def test_evolve_rejects_bad_steps():
    with pytest.raises(ValueError):
        evolve(NetworkParams(), MomentState(0, 0, 0, 0), 1.0, steps=0)
