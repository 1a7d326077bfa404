import math

import numpy as np
import pytest

from inedor_app import quadratura
from inedor_app.erros import QuadratureFailure
from inedor_app.espectro import amplitude_at_probe_field, support_intervals
from inedor_app.forma_linha import density_from_x, lorentzian, reduced_x, width_field_scale
from inedor_app.modelo import FieldProfile
from inedor_app.quadratura import arcsine_quad, midpoint_rule


def test_inverse_square_root_weight_integrates_to_pi():
    assert arcsine_quad(lambda v, d_a, d_b: np.ones_like(v), 0.0, 1.0) == pytest.approx(math.pi, rel=1e-14)


def test_semicircle_area():
    a, b = -2.0, 3.0

    def regularized(v, d_a, d_b):
        return d_a * d_b

    assert arcsine_quad(regularized, a, b) == pytest.approx(math.pi * (b - a) ** 2 / 8, rel=1e-12)


def test_empty_interval():
    assert arcsine_quad(lambda v, d_a, d_b: v, 1.0, 1.0) == 0.0


def test_adaptive_fallback_handles_a_kink():
    def regularized(v, d_a, d_b):
        return np.sqrt(d_a * d_b) * np.abs(v - 0.3)

    expected = 0.5 * (0.3 ** 2 + 0.7 ** 2)
    assert arcsine_quad(regularized, 0.0, 1.0, tolerance=1e-8) == pytest.approx(expected, rel=1e-6)


def test_failure_reports_achieved_error(monkeypatch):
    monkeypatch.setattr(quadratura.integrate, "quad", lambda *args, **kwargs: (1.0, 0.5))

    def step(v, d_a, d_b):
        return np.where(v > 0.5137, 1.0, 0.0)

    with pytest.raises(QuadratureFailure) as info:
        arcsine_quad(step, 0.0, 1.0, tolerance=1e-6)
    assert info.value.achieved_error == pytest.approx(0.5)


def test_midpoint_rule():
    assert midpoint_rule(lambda v: v ** 2, 0.0, 1.0, 1000, skip_edges=False) == pytest.approx(1 / 3, rel=1e-6)
    assert midpoint_rule(lambda v: np.ones_like(v), 0.0, 1.0, 10) == pytest.approx(0.8)


@pytest.mark.parametrize("p_over_scale", [0.5, 3.0])
def test_support_integral_matches_brute_force_midpoint(hydrogen, p_over_scale):
    gas, pair = hydrogen.gas, hydrogen.pair
    profile = FieldProfile(gradient_abs=1.0)
    p = p_over_scale * width_field_scale(hydrogen)
    omega_p = pair.omega12_0_at_H0 + pair.gamma_p * p

    def density(h):
        return density_from_x(reduced_x(h, omega_p, gas, pair), lorentzian(h, pair.H_drive))

    for lo, hi in support_intervals(omega_p, hydrogen):
        # stay 10^-3 of the interval away from the inverse-square-root ends
        margin = 1e-3 * (hi - lo)
        window = (lo + margin, hi - margin)
        brute = profile.particles_per_gauss(gas.n_total) * midpoint_rule(density, *window, 10 ** 6, skip_edges=False)
        singular = amplitude_at_probe_field(p, hydrogen, profile, tolerance=1e-9, window=window)
        assert brute > 0.0
        assert singular == pytest.approx(brute, rel=1e-6)
