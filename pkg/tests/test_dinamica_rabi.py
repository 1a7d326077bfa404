import logging
import math

import numpy as np
import pytest

from inedor_app.dinamica_rabi import (
    DriveState,
    effective_precession,
    fast_driving_check,
    populations_at,
    probe_frequency_at,
    transferred_fraction,
)
from inedor_app.forma_linha import probe_bounds
from inedor_app.modelo import CONSTANTS


def test_resonant_precession(hydrogen):
    state = effective_precession(0.0, hydrogen.pair)
    assert state.sin2_theta == 1.0
    assert state.omega_eff == pytest.approx(CONSTANTS.gamma_pr * 1e-3, rel=1e-15)


def test_precession_at_one_drive_field(hydrogen):
    state = effective_precession(1e-3, hydrogen.pair)
    assert state.sin2_theta == pytest.approx(0.5)
    assert state.omega_eff == pytest.approx(math.sqrt(2) * CONSTANTS.gamma_pr * 1e-3, rel=1e-12)


def test_hydrogen_precession_at_stationary_field(hydrogen):
    state = effective_precession(5.62e-2, hydrogen.pair)
    assert state.omega_eff == pytest.approx(1.50e3, rel=1e-2)
    assert state.omega_rabi == pytest.approx(26.8, rel=1e-2)
    assert state.omega_eff / state.omega_rabi == pytest.approx(56.2, rel=1e-2)


def test_populations(hydrogen):
    n = 1e19
    start = effective_precession(0.0, hydrogen.pair)
    assert populations_at(start, 0.0, n) == (n, 0.0)
    n1, n3 = populations_at(start, start.period / 2, n)
    assert n3 == pytest.approx(n, rel=1e-12)
    half = effective_precession(1e-3, hydrogen.pair)
    _, n3 = populations_at(half, half.period / 2, n)
    assert n3 == pytest.approx(n / 2, rel=1e-12)


def test_transferred_fraction_stays_below_sin2_theta(hydrogen):
    state = effective_precession(3e-3, hydrogen.pair)
    t = np.linspace(0.0, 3 * state.period, 1001)
    x = transferred_fraction(state, t)
    assert np.all(x >= 0.0)
    assert np.all(x <= state.sin2_theta * (1 + 1e-15))


def test_probe_frequency_start_and_maximum(hydrogen):
    gas, pair = hydrogen.gas, hydrogen.pair
    state = effective_precession(0.0, pair)
    assert probe_frequency_at(state, 0.0, gas, pair) == pair.zeeman_probe(0.0)
    top = probe_frequency_at(state, state.period / 2, gas, pair)
    assert top - pair.omega12_0_at_H0 == pytest.approx(hydrogen.contact_amplitude, rel=1e-9)


def test_probe_frequency_time_average(hydrogen):
    gas, pair = hydrogen.gas, hydrogen.pair
    state = effective_precession(2e-3, pair)
    samples = 4096
    t = (np.arange(samples) + 0.5) * state.period / samples
    mean = np.mean(probe_frequency_at(state, t, gas, pair) - pair.zeeman_probe(2e-3))
    assert mean == pytest.approx(0.5 * hydrogen.contact_amplitude * state.sin2_theta, rel=1e-9)


def test_far_detuned_probe_frequency_is_zeeman_only(hydrogen):
    gas, pair = hydrogen.gas, hydrogen.pair
    state = effective_precession(1e4, pair)
    t = np.linspace(0, state.period, 11)
    shift = probe_frequency_at(state, t, gas, pair) - pair.zeeman_probe(1e4)
    assert np.max(np.abs(shift)) < 1e-6 * abs(hydrogen.contact_amplitude)


def test_fast_driving_passes_for_hydrogen(hydrogen):
    state = effective_precession(5.62e-2, hydrogen.pair)
    assert fast_driving_check(state, 1.0).passed


def test_fast_driving_threshold_is_inclusive():
    state = DriveState(h=0.0, sin2_theta=1.0, omega_eff=10.0, omega_rabi=10.0)
    check = fast_driving_check(state, 1.0, threshold=10.0)
    assert check.passed
    assert check.ratio == 10.0


def test_fast_driving_failure_is_logged(caplog):
    state = DriveState(h=0.0, sin2_theta=1.0, omega_eff=0.5, omega_rabi=0.5)
    with caplog.at_level(logging.WARNING):
        check = fast_driving_check(state, 1.0)
    assert not check.passed
    assert "NOT satisfied" in caplog.text


@pytest.mark.parametrize("model_name", ["hydrogen", "hydrogen_physical"])
@pytest.mark.parametrize("h", [-7.0, -5.62e-2, -1e-3, 2e-4, 5.62e-2, 7.0])
def test_probe_frequency_extremes_are_the_bounds(request, model_name, h):
    model = request.getfixturevalue(model_name)
    gas, pair = model.gas, model.pair
    state = effective_precession(h, pair)
    # t = period/2 is on the grid, where all of sin²θ13 is transferred
    t = np.linspace(0.0, state.period, 2001)
    omega = probe_frequency_at(state, t, gas, pair)
    bounds = probe_bounds(h, gas, pair)
    assert np.max(omega) == pytest.approx(max(bounds.lower, bounds.upper), rel=1e-12)
    assert np.min(omega) == pytest.approx(min(bounds.lower, bounds.upper), rel=1e-12)
