"""Módulo de previsão da largura de linha INEDOR a partir do ponto estacionário do limite superior da frequência de prova."""

import enum
import logging
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

from . import dinamica_rabi, espectro
from .erros import InsufficientRange, ZeroContactShift
from .forma_linha import lorentzian, upper_bound_field
from .modelo import FieldProfile, validate

logger = logging.getLogger(__name__)

# min over h of (H_d² + h²)²/(H_d²·h) is 2·(8√3/9)·H_d, reached at h = H_d/√3
STATIONARY_THRESHOLD = 8.0 * math.sqrt(3.0) / 9.0
CLOSED_FORM_MIN_RATIO = 100.0
MIN_SCAN_DECADES = 1.0


@dataclass(frozen=True)
class WidthReport:
    """
    Linewidth prediction.

    Attributes:
        h_star (float): Stationary field of the upper bound (G), signed like ΔH_c.
        delta_omega12 (float): ω12(h_star) - ω12^(0)(H0) (rad/s).
        delta_omega13 (float): (γ_d/γ_p)·delta_omega12 (rad/s), the width on the drive axis.
        closed_form (bool): True for the h >> H_d approximation, False for the exact root.
        relative_probe_width (float | None): |γ_p·h_star|/ω12^(0)(H0).
    """

    h_star: float
    delta_omega12: float
    delta_omega13: float
    closed_form: bool
    relative_probe_width: float = None

    @property
    def width_drive_hz(self):
        return abs(self.delta_omega13) / (2.0 * math.pi)

    @property
    def width_probe_hz(self):
        return abs(self.delta_omega12) / (2.0 * math.pi)

    def source_width_negligible(self, relative_source_width, margin=100.0):
        """True when the probe source linewidth is at least `margin` times below the INEDOR width."""
        if self.relative_probe_width is None:
            return False
        return relative_source_width * margin <= self.relative_probe_width


def _relative_width(h_star, pair):
    if pair.omega12_0_at_H0 == 0:
        return None
    return abs(pair.gamma_p * h_star / pair.omega12_0_at_H0)


def stationary_field_exact(model):
    """
    Solves (H_d² + h²)²/(H_d²·h) = 2ΔH_c on the branch |h| >= H_d/√3.

    Returns:
        float | None: Signed stationary field h_star (G), or None when
        |ΔH_c| < (8√3/9)·H_d and the upper bound is monotonic.

    Raises:
        ZeroContactShift: When Δλ_eff = 0.
    """
    D = model.delta_H_c
    if D == 0.0:
        raise ZeroContactShift("no stationary point without a contact shift")
    H_d = model.pair.H_drive
    Delta = abs(D) / H_d
    if Delta < STATIONARY_THRESHOLD:
        logger.info(f"|ΔH_c|/H_d = {Delta:.4g} below {STATIONARY_THRESHOLD:.4g}: no stationary point")
        return None
    u_lo = 1.0 / math.sqrt(3.0)
    u_hi = max(2.0 * (2.0 * Delta) ** (1.0 / 3.0), 1.0)

    def residual(u):
        return (1.0 + u * u) ** 2 - 2.0 * Delta * u

    if residual(u_lo) >= 0.0:
        u = u_lo
    else:
        u = brentq(residual, u_lo, u_hi, xtol=1e-300, rtol=1e-12, maxiter=500)
    return math.copysign(u * H_d, D)


def width_exact(model):
    """Width from the exact stationary point: δω12 = γ_p·[h* + ΔH_c·sin²θ13(h*)]."""
    h_star = stationary_field_exact(model)
    if h_star is None:
        return None
    pair = model.pair
    delta_omega12 = pair.gamma_p * float(upper_bound_field(h_star, model))
    return WidthReport(
        h_star=h_star,
        delta_omega12=delta_omega12,
        delta_omega13=(pair.gamma_d / pair.gamma_p) * delta_omega12,
        closed_form=False,
        relative_probe_width=_relative_width(h_star, pair),
    )


def width_closed_form(model):
    """
    Closed-form width for |ΔH_c| >> H_d.

        h = (2ΔH_c·H_d²)^(1/3),  δω12 = (3/2)γ_p·h,  δω13 = (3/2)γ_d·(2ΔH_c·H_d²)^(1/3)

    A warning is logged when |ΔH_c|/H_d < 100, where the approximation degrades.
    """
    D = model.delta_H_c
    pair = model.pair
    if abs(D) < CLOSED_FORM_MIN_RATIO * pair.H_drive:
        logger.warning(f"Closed-form width used with |ΔH_c|/H_d = {abs(D) / pair.H_drive:.3g}; "
                       "the h >> H_d approximation is not accurate here")
    h = float(np.cbrt(2.0 * D * pair.H_drive ** 2))
    delta_omega12 = 1.5 * pair.gamma_p * h
    return WidthReport(
        h_star=h,
        delta_omega12=delta_omega12,
        delta_omega13=(pair.gamma_d / pair.gamma_p) * delta_omega12,
        closed_form=True,
        relative_probe_width=_relative_width(h, pair),
    )


def fast_driving_at_h_star(model, tau=1.0, threshold=dinamica_rabi.DEFAULT_FAST_DRIVING_THRESHOLD):
    """
    Effective precession rate at the stationary field and the ratio h*/H_d.

    Returns:
        tuple: (DriveState, FastDrivingCheck, h_star / H_d).
    """
    h_star = stationary_field_exact(model)
    if h_star is None:
        h_star = width_closed_form(model).h_star
    state = dinamica_rabi.effective_precession(h_star, model.pair)
    return state, dinamica_rabi.fast_driving_check(state, tau, threshold), abs(h_star) / model.pair.H_drive


@dataclass(frozen=True)
class BoundsTable:
    """Field dependence of the ω12 bounds (offsets from ω12^(0)(H0), rad/s) and crossings with ω_p."""

    h: tuple
    lower: tuple
    upper: tuple
    omega_extremum: object
    probe_offset: float
    crossings: tuple


def bounds_table(model, h_values, probe_offset=0.0):
    """
    Lower and upper bound of ω12 on an h grid, the ω12 extremum and the crossing fields of ω_p.

    Args:
        model (InedorModel): Validated model.
        h_values (array): Field offsets (G).
        probe_offset (float): ω_p - ω12^(0)(H0) (rad/s).

    Returns:
        BoundsTable
    """
    pair = model.pair
    h = np.asarray(h_values, dtype=float)
    lower = pair.gamma_p * h
    upper = lower + pair.gamma_p * model.delta_H_c * lorentzian(h, pair.H_drive)
    h_star = stationary_field_exact(model)
    extremum = None if h_star is None else pair.gamma_p * float(upper_bound_field(h_star, model))
    intervals = espectro.support_intervals(pair.omega12_0_at_H0 + probe_offset, model)
    crossings = sorted({edge for interval in intervals for edge in interval})
    return BoundsTable(tuple(h.tolist()), tuple(lower.tolist()), tuple(upper.tolist()), extremum,
                       probe_offset, tuple(crossings))


class ScanParameter(enum.Enum):
    DENSITY = "density"
    DRIVE = "drive"
    GRADIENT = "gradient"


@dataclass(frozen=True)
class ScalingScan:
    parameter: ScanParameter
    factors: tuple = (0.5, 1.0, 2.0, 5.0)


@dataclass(frozen=True)
class ScalingFit:
    parameter: ScanParameter
    factors: tuple
    widths_hz: tuple
    baselines: tuple
    exponent: float
    amplitude_exponent: float


def _scaled(model, profile, parameter, factor):
    if parameter is ScanParameter.DENSITY:
        return validate(replace(model.gas, n_total=model.gas.n_total * factor), model.pair, model.constants), profile
    if parameter is ScanParameter.DRIVE:
        return validate(model.gas, replace(model.pair, H_drive=model.pair.H_drive * factor), model.constants), profile
    return model, replace(profile, gradient_abs=profile.gradient_abs * factor)


def scaling_fit(model, scan, profile=None, points=espectro.DEFAULT_POINTS, tolerance=1e-6, threads=None):
    """
    Log-log least-squares exponent of the numerical max-to-min distance versus one parameter.

    Each scaled model is swept with the default drive grid, so the grid follows the
    width scale and the resolution is the same at every factor.

    Args:
        model (InedorModel): Reference model.
        scan (ScalingScan): Parameter and multiplicative factors.
        profile (FieldProfile): Gradient (defaults to 1 G/cm).

    Returns:
        ScalingFit: Width exponent and the exponent of the baseline amplitude.

    Raises:
        InsufficientRange: If the factors span less than one decade.
    """
    factors = sorted(float(f) for f in scan.factors)
    if len(factors) < 2 or math.log10(factors[-1] / factors[0]) < MIN_SCAN_DECADES - 1e-9:
        raise InsufficientRange(f"scan over {scan.parameter.value} must cover at least one decade, got {factors}")
    profile = profile or FieldProfile(gradient_abs=1.0)
    reference_spec = espectro.default_sweep(model, points=points)

    widths, baselines = [], []
    for factor in factors:
        scaled_model, scaled_profile = _scaled(model, profile, scan.parameter, factor)
        spec = reference_spec if scan.parameter is ScanParameter.GRADIENT else espectro.default_sweep(scaled_model, points=points)
        result = espectro.sweep(spec, scaled_model, scaled_profile, tolerance=tolerance, threads=threads)
        metrics = result.metrics or espectro.peak_metrics(result)
        widths.append(metrics.distance_hz)
        baselines.append(result.baseline)
        logger.info(f"{scan.parameter.value} x{factor:g}: max-to-min {metrics.distance_hz:.6g} Hz, baseline {result.baseline:.6g}")

    log_f = np.log(factors)
    exponent = float(np.polyfit(log_f, np.log(widths), 1)[0])
    amplitude_exponent = float(np.polyfit(log_f, np.log(baselines), 1)[0])
    logger.info(f"Fitted width exponent vs {scan.parameter.value}: {exponent:.4f}")
    return ScalingFit(scan.parameter, tuple(factors), tuple(widths), tuple(baselines), exponent, amplitude_exponent)
