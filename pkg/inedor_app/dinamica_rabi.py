"""Módulo para a oscilação de Rabi da transição de excitação e a frequência dinâmica da transição de prova."""

import logging
import math
from dataclasses import dataclass

import numpy as np

from .modelo import CONSTANTS

logger = logging.getLogger(__name__)

DEFAULT_FAST_DRIVING_THRESHOLD = 10.0


@dataclass(frozen=True)
class DriveState:
    """
    Drive-transition precession at static-field offset h.

    Attributes:
        h (float): Field offset from the drive resonance (G).
        sin2_theta (float): sin²θ13 = H_d²/(H_d² + h²), the maximum transferred fraction.
        omega_eff (float): Ω̃13 = |γ_d|·sqrt(H_d² + h²) (rad/s).
        omega_rabi (float): Ω13 = |γ_d|·H_d (rad/s).
    """

    h: float
    sin2_theta: float
    omega_eff: float
    omega_rabi: float

    @property
    def period(self):
        return 2.0 * math.pi / self.omega_eff


@dataclass(frozen=True)
class FastDrivingCheck:
    passed: bool
    ratio: float
    threshold: float

    def message(self):
        verdict = "satisfied" if self.passed else "NOT satisfied"
        return f"fast-driving condition {verdict}: Ω̃τ = {self.ratio:.3g} (threshold {self.threshold:g})"


def effective_precession(h, pair):
    """
    Generalized Rabi rate and tilt of the drive transition at field offset h.

    Args:
        h (float): Static-field offset from H0 (G).
        pair (ResonancePair): Validated transition parameters.

    Returns:
        DriveState
    """
    hd2 = pair.H_drive ** 2
    total = hd2 + h * h
    return DriveState(
        h=h,
        sin2_theta=hd2 / total,
        omega_eff=abs(pair.gamma_d) * math.sqrt(total),
        omega_rabi=pair.omega_rabi,
    )


def transferred_fraction(state, t):
    """x(t) = sin²θ13·sin²(Ω̃13·t/2), the instantaneous relative population of |3>."""
    return state.sin2_theta * np.sin(0.5 * state.omega_eff * np.asarray(t)) ** 2


def populations_at(state, t, n):
    """
    Populations of |1> and |3> at time t for a gas initially all in |1>.

    Args:
        state (DriveState): Drive precession at the local field.
        t (float | array): Time(s) since the drive was switched on (s), t >= 0.
        n (float): Total density (cm^-3).

    Returns:
        tuple: (n1, n3) with n1 + n3 = n.
    """
    n3 = n * transferred_fraction(state, t)
    return n - n3, n3


def probe_frequency_at(state, t, gas, pair, constants=CONSTANTS):
    """
    Dynamic probe frequency ω12(t) = ω12^(0)(H0 + h) + (2nΔλ_eff/ħ)·sin²θ13·sin²(Ω̃13·t/2).

    Args:
        state (DriveState): Drive precession at field offset state.h.
        t (float | array): Time(s) (s).
        gas (GasSpec): Gas parameters (Δλ_eff includes |C13|²).
        pair (ResonancePair): Transition parameters.

    Returns:
        float | numpy.ndarray: ω12(t) in rad/s.
    """
    amplitude = 2.0 * gas.n_total * gas.delta_lambda_eff / constants.hbar
    return pair.zeeman_probe(state.h) + amplitude * transferred_fraction(state, t)


def fast_driving_check(state, tau, threshold=DEFAULT_FAST_DRIVING_THRESHOLD):
    """
    Checks Ω̃13·τ >= threshold, i.e. the detector averages over many Rabi cycles.

    Args:
        state (DriveState): Drive precession at the field of interest.
        tau (float): Detection time constant (s), > 0.
        threshold (float): Minimum accepted Ω̃13·τ (inclusive).

    Returns:
        FastDrivingCheck: `passed` and the achieved ratio. A failure is logged as a warning.
    """
    ratio = state.omega_eff * tau
    check = FastDrivingCheck(passed=ratio >= threshold, ratio=ratio, threshold=threshold)
    if check.passed:
        logger.info(check.message())
    else:
        logger.warning(check.message())
    return check
