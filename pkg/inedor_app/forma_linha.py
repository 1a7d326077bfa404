"""Módulo da forma de linha: amplitude de modulação, limites da frequência de prova e densidade de absorção média."""

import logging
import math
from dataclasses import dataclass

import numpy as np

from .erros import ZeroContactShift
from .modelo import CONSTANTS

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LineshapePoint:
    x: float
    sin2_theta: float
    density: float


@dataclass(frozen=True)
class FrequencyBounds:
    """Zeeman-only lower bound and Zeeman plus mean-field upper bound of ω12 (rad/s)."""

    lower: float
    upper: float

    @property
    def width(self):
        return self.upper - self.lower


def _contact_amplitude(gas, constants):
    return 2.0 * gas.n_total * gas.delta_lambda_eff / constants.hbar


def lorentzian(h, H_drive):
    """sin²θ13(h) = H_d²/(H_d² + h²)."""
    hd2 = H_drive * H_drive
    return hd2 / (hd2 + np.asarray(h, dtype=float) ** 2)


def modulation_amplitude(h, gas, pair, constants=CONSTANTS):
    """Δω12(h) = (2nΔλ_eff/ħ)·H_d²/(H_d² + h²), signed (rad/s)."""
    return _contact_amplitude(gas, constants) * lorentzian(h, pair.H_drive)


def probe_bounds(h, gas, pair, constants=CONSTANTS):
    """
    Bounds between which ω12(t) oscillates at field offset h.

    `lower` is always the Zeeman-only line and `upper` adds the full modulation
    amplitude, so for a negative contact shift `upper` lies below `lower`.
    """
    lower = pair.zeeman_probe(h)
    return FrequencyBounds(lower=lower, upper=lower + modulation_amplitude(h, gas, pair, constants))


def reduced_x(h, omega_p, gas, pair, constants=CONSTANTS):
    """
    x = ħ[ω_p - ω12^(0)(H0 + h)]/(2nΔλ_eff).

    Raises:
        ZeroContactShift: When Δλ_eff = 0.
    """
    amplitude = _contact_amplitude(gas, constants)
    if amplitude == 0.0:
        raise ZeroContactShift("reduced detuning is undefined without a contact shift")
    return (omega_p - pair.zeeman_probe(h)) / amplitude


def density_from_x(x, sin2_theta):
    """
    A = (1 - x)/(2π·sqrt(x(sin²θ - x))) inside 0 < x < sin²θ, 0 elsewhere (endpoints included).

    Vectorized over numpy arrays.
    """
    x, s = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(sin2_theta, dtype=float))
    inside = (x > 0.0) & (x < s)
    gap = np.where(inside, x * (s - x), 1.0)
    out = np.where(inside, (1.0 - x) / (2.0 * math.pi * np.sqrt(gap)), 0.0)
    return float(out) if out.ndim == 0 else out


def density_antiderivative(x, sin2_theta, population_weighted=True):
    """
    Closed-form ∫_0^x A dx' on [0, sin²θ] via x' = sin²θ·sin²φ.

    With the (1 - x) factor: [φ - sin²θ(φ/2 - sin2φ/4)]/π; without it: φ/π.
    Over the full support these give 1/2 - sin²θ/4 and 1/2.
    """
    s = float(sin2_theta)
    xc = np.clip(np.asarray(x, dtype=float), 0.0, s)
    phi = np.arcsin(np.sqrt(xc / s))
    if not population_weighted:
        return phi / math.pi
    return (phi - s * (0.5 * phi - 0.25 * np.sin(2.0 * phi))) / math.pi


def absorption_density(h, omega_p, gas, pair, constants=CONSTANTS):
    """
    Time-averaged absorption density at field offset h and probe frequency ω_p.

    Returns:
        LineshapePoint: `density` is 0 outside the open support 0 < x < sin²θ13(h).
        Without a contact shift the line is a delta at the Zeeman frequency and
        the point is reported with x = nan and zero density.
    """
    s = float(lorentzian(h, pair.H_drive))
    try:
        x = reduced_x(h, omega_p, gas, pair, constants)
    except ZeroContactShift:
        return LineshapePoint(x=math.nan, sin2_theta=s, density=0.0)
    return LineshapePoint(x=x, sin2_theta=s, density=density_from_x(x, s))


def probe_offset_field(omega_p, pair):
    """Probe detuning from ω12^(0)(H0) expressed in field units: p = (ω_p - ω12^(0)(H0))/γ_p (G)."""
    return (omega_p - pair.omega12_0_at_H0) / pair.gamma_p


def upper_bound_field(h, model):
    """Upper bound of ω12 in probe field units relative to ω12^(0)(H0): h + ΔH_c·sin²θ13(h)."""
    return np.asarray(h, dtype=float) + model.delta_H_c * lorentzian(h, model.pair.H_drive)


def width_field_scale(model):
    """Closed-form stationary field (2|ΔH_c|·H_d²)^(1/3) (G), the natural width scale of the spectrum."""
    return (2.0 * abs(model.delta_H_c) * model.pair.H_drive ** 2) ** (1.0 / 3.0)
