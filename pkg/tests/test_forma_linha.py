import math

import numpy as np
import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from inedor_app.erros import ZeroContactShift
from inedor_app.forma_linha import (
    absorption_density,
    density_antiderivative,
    density_from_x,
    lorentzian,
    modulation_amplitude,
    probe_bounds,
    reduced_x,
    upper_bound_field,
)
from inedor_app.quadratura import arcsine_quad


def test_modulation_amplitude_lorentzian(hydrogen):
    gas, pair = hydrogen.gas, hydrogen.pair
    peak = modulation_amplitude(0.0, gas, pair)
    assert peak == pytest.approx(hydrogen.contact_amplitude, rel=1e-15)
    assert modulation_amplitude(pair.H_drive, gas, pair) == pytest.approx(peak / 2, rel=1e-12)
    assert modulation_amplitude(3 * pair.H_drive, gas, pair) == pytest.approx(peak / 10, rel=1e-12)


@given(h=st.floats(min_value=0.0, max_value=1e3))
def test_lorentzian_is_symmetric(h):
    assert lorentzian(h, 1e-3) == lorentzian(-h, 1e-3)


def test_bounds_at_zero_field_differ_by_contact_shift(hydrogen):
    bounds = probe_bounds(0.0, hydrogen.gas, hydrogen.pair)
    assert bounds.width == pytest.approx(hydrogen.pair.gamma_p * 89.0, rel=1e-12)


def test_bounds_close_far_from_resonance(hydrogen):
    bounds = probe_bounds(1e3, hydrogen.gas, hydrogen.pair)
    assert abs(bounds.width) < 1e-9 * abs(hydrogen.contact_amplitude)


def test_upper_bound_is_stationary_near_5_62e_2_gauss(hydrogen):
    h = np.linspace(0.03, 0.09, 6001)
    upper = upper_bound_field(h, hydrogen)
    assert h[np.argmin(upper)] == pytest.approx(5.62e-2, rel=5e-3)


def test_reduced_x_at_the_bounds(hydrogen):
    gas, pair = hydrogen.gas, hydrogen.pair
    h = 2e-3
    bounds = probe_bounds(h, gas, pair)
    assert reduced_x(h, bounds.lower, gas, pair) == 0.0
    assert reduced_x(h, bounds.upper, gas, pair) == pytest.approx(lorentzian(h, pair.H_drive), rel=1e-6)


def test_reduced_x_needs_a_contact_shift(model_factory):
    model = model_factory(0.0)
    with pytest.raises(ZeroContactShift):
        reduced_x(0.0, 1.0, model.gas, model.pair)


def test_density_values():
    assert density_from_x(0.5, 1.0) == pytest.approx(1 / (2 * math.pi))
    assert density_from_x(-0.1, 1.0) == 0.0
    assert density_from_x(0.0, 0.5) == 0.0
    assert density_from_x(0.5, 0.5) == 0.0
    assert density_from_x(0.7, 0.5) == 0.0


def test_density_vanishes_towards_full_transfer():
    assert density_from_x(1.0 - 1e-12, 1.0) < 1e-6


def test_density_is_vectorized():
    out = density_from_x(np.array([-1.0, 0.25, 0.5, 2.0]), 1.0)
    assert out.shape == (4,)
    assert out[0] == 0.0 and out[-1] == 0.0
    assert out[1] > out[2]


@given(s=st.floats(min_value=1e-6, max_value=1.0))
@settings(max_examples=50)
def test_bare_density_integrates_to_one_half(s):
    def regularized(v, d_a, d_b):
        return np.sqrt(d_a * d_b / (v * (s - v))) / (2 * math.pi)

    assert arcsine_quad(regularized, 0.0, s, tolerance=1e-10) == pytest.approx(0.5, abs=1e-8)


@given(s=st.floats(min_value=1e-6, max_value=1.0))
@settings(max_examples=50)
def test_weighted_density_integral_matches_closed_form(s):
    def regularized(v, d_a, d_b):
        return (1.0 - v) * np.sqrt(d_a * d_b / (v * (s - v))) / (2 * math.pi)

    numeric = arcsine_quad(regularized, 0.0, s, tolerance=1e-10)
    assert numeric == pytest.approx(0.5 - s / 4, rel=1e-8)
    assert density_antiderivative(s, s) == pytest.approx(0.5 - s / 4, rel=1e-12)
    assert density_antiderivative(s, s, population_weighted=False) == pytest.approx(0.5, rel=1e-12)


def test_antiderivative_is_monotone_and_clipped():
    x = np.linspace(-0.1, 0.4, 51)
    values = density_antiderivative(x, 0.3)
    assert np.all(np.diff(values) >= 0.0)
    assert values[0] == 0.0
    assert values[-1] == pytest.approx(0.5 - 0.3 / 4, rel=1e-12)


def test_absorption_density_point(hydrogen):
    gas, pair = hydrogen.gas, hydrogen.pair
    h = 1e-3
    bounds = probe_bounds(h, gas, pair)
    point = absorption_density(h, 0.5 * (bounds.lower + bounds.upper), gas, pair)
    assert point.sin2_theta == pytest.approx(0.5)
    assert point.x == pytest.approx(0.25, rel=1e-6)
    assert point.density == pytest.approx(0.75 / (2 * math.pi * 0.25), rel=1e-5)


def test_absorption_density_without_shift(model_factory):
    model = model_factory(0.0)
    point = absorption_density(0.0, 0.0, model.gas, model.pair)
    assert math.isnan(point.x)
    assert point.density == 0.0
