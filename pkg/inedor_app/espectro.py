"""Módulo do espectro INEDOR: integração da densidade de absorção sobre um gradiente linear de campo e métricas dos picos."""

import enum
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import dinamica_rabi
from .erros import FlatSpectrum, InvalidSweep, ZeroContactShift
from .forma_linha import lorentzian, probe_offset_field, width_field_scale
from .modelo import validate_profile
from .quadratura import DEFAULT_TOLERANCE, arcsine_quad
from .raizes import POLISH_RELATIVE_TOLERANCE, TANGENCY_TOLERANCE, monic_cubic_roots, polish_root

logger = logging.getLogger(__name__)

DEFAULT_POINTS = 2000
DEFAULT_SPAN_FACTOR = 20.0
DEFAULT_BASELINE_FACTOR = 50.0
FLAT_THRESHOLD = 1e-6
THREADS_ENV = "INEDOR_THREADS"


class SweepMode(enum.Enum):
    DRIVE = "drive"
    PROBE = "probe"


@dataclass(frozen=True)
class SweepSpec:
    """
    Frequency grid of a spectrum.

    Attributes:
        mode (SweepMode): Which excitation frequency is swept.
        center (float): Grid center, as an offset from the swept frequency's reference (rad/s).
        span (float): Full grid width (rad/s).
        points (int): Number of grid points (>= 3).
        fixed_offset (float): Detuning of the frequency that is held fixed (rad/s): the
            probe from ω12^(0)(H0) in drive mode, the drive from resonance at H0 in probe mode.
    """

    mode: SweepMode
    center: float
    span: float
    points: int
    fixed_offset: float = 0.0

    def offsets(self):
        return self.center + np.linspace(-0.5 * self.span, 0.5 * self.span, self.points)


@dataclass(frozen=True)
class PeakMetrics:
    max_position: float
    min_position: float
    distance_hz: float

    @property
    def max_position_hz(self):
        return self.max_position / (2.0 * math.pi)

    @property
    def min_position_hz(self):
        return self.min_position / (2.0 * math.pi)


@dataclass(frozen=True)
class SpectrumResult:
    """
    Sampled spectrum. Amplitudes are raw (∝ n/|∇H|); `normalized()` divides by the baseline.

    Attributes:
        mode (SweepMode): Sweep mode that produced the grid.
        offsets (tuple[float]): Sweep offsets (rad/s), ascending.
        amplitudes (tuple[float]): Absorption amplitude per offset (arbitrary units).
        baseline (float): Far-wing amplitude in the same units. For a finite sample whose
            window excludes the far wings this is the infinite-sample value and
            `warnings` says so.
        metrics (PeakMetrics | None): Extrema of the sampled grid.
        warnings (tuple[str]): Non-fatal diagnostics gathered during the sweep.
    """

    mode: SweepMode
    offsets: tuple
    amplitudes: tuple
    baseline: float
    metrics: object = None
    warnings: tuple = field(default_factory=tuple)

    @property
    def samples(self):
        return list(zip(self.offsets, self.amplitudes))

    def normalized(self):
        return tuple(a / self.baseline for a in self.amplitudes)


@dataclass(frozen=True)
class _SupportGeometry:
    """Crossings of ω_p with the ω12 bounds, in reduced units v = sgn(ΔH_c)·h/H_d."""

    sign: float
    Q: float
    Delta: float
    H_drive: float
    roots: tuple
    quadratic: object
    segments: tuple

    def to_field(self, v):
        return self.sign * v * self.H_drive

    def regularized(self, a, b):
        """g(v, d_a, d_b) = A(v)·sqrt(d_a·d_b) on the segment [a, b], for arcsine_quad."""
        Q, Delta, roots, quadratic = self.Q, self.Delta, self.roots, self.quadratic
        upper_is_lower_bound = b == Q

        def g(v, d_a, d_b):
            x = d_b / Delta if upper_is_lower_bound else (Q - v) / Delta
            # s - x = G(v)/(Δ(1+v²)), G = monic cubic factored through its roots
            cubic = np.ones_like(v)
            for r in roots:
                if r == a:
                    cubic = cubic * d_a
                elif r == b:
                    cubic = cubic * -d_b
                else:
                    cubic = cubic * (v - r)
            if quadratic is not None:
                beta, gamma = quadratic
                cubic = cubic * ((v + beta) * v + gamma)
            gap = cubic / (Delta * (1.0 + v * v))
            ok = (x > 0.0) & (gap > 0.0)
            ratio = np.where(ok, d_a * d_b / np.where(ok, x * gap, 1.0), 0.0)
            return np.where(ok, (1.0 - x) * np.sqrt(ratio) / (2.0 * math.pi), 0.0)

        return g


def _support_geometry(p, model):
    D = model.delta_H_c
    if D == 0.0:
        raise ZeroContactShift("the probe line is not modulated (Δλ_eff = 0)")
    H_d = model.pair.H_drive
    sign = 1.0 if D > 0.0 else -1.0
    Q = sign * p / H_d
    Delta = abs(D) / H_d

    # G(v) = v³ - Q·v² + v - (Q - Δ); the support is {G > 0, v < Q}
    def cubic(v):
        return ((v - Q) * v + 1.0) * v - (Q - Delta)

    roots, quadratic = monic_cubic_roots(-Q, 1.0, Delta - Q)
    xtol = POLISH_RELATIVE_TOLERANCE * max(1.0, abs(Q))
    roots = sorted(min(polish_root(cubic, r, xtol, neighbours=roots), Q) for r in roots)

    if len(roots) == 1:
        segments = [(roots[0], Q)]
    else:
        r1, r2, r3 = roots
        segments = []
        if r3 - r2 < TANGENCY_TOLERANCE:
            segments.append((r1, Q))
        else:
            if r2 - r1 >= TANGENCY_TOLERANCE:
                segments.append((r1, r2))
            segments.append((r3, Q))
    segments = [(a, b) for a, b in segments if b > a]
    return _SupportGeometry(sign, Q, Delta, H_d, tuple(roots), quadratic, tuple(segments))


def support_intervals(omega_p, model):
    """
    Field intervals where the probe frequency lies between the two ω12 bounds.

    Endpoints are the crossings of ω_p with the upper bound (real roots of
    (p - h)(H_d² + h²) = ΔH_c·H_d²) and with the Zeeman-only lower bound (h = p).

    Args:
        omega_p (float): Probe frequency (rad/s).
        model (InedorModel): Validated model.

    Returns:
        list[tuple[float, float]]: Disjoint (h_lo, h_hi) intervals in gauss, sorted.

    Raises:
        ZeroContactShift: When Δλ_eff = 0.
    """
    geometry = _support_geometry(probe_offset_field(omega_p, model.pair), model)
    return _intervals_in_field(geometry)


def _intervals_in_field(geometry):
    intervals = [tuple(sorted((geometry.to_field(a), geometry.to_field(b)))) for a, b in geometry.segments]
    return sorted(intervals)


def probe_field_for(offset, mode, pair, fixed_offset=0.0):
    """
    Probe detuning p (G) seen by the sample for a sweep offset.

    A drive offset δ moves the resonance field to H0 + δ/γ_d, so p = p0 - δ/γ_d;
    a probe offset δ gives p = δ/γ_p - (drive detuning)/γ_d.
    """
    if mode is SweepMode.DRIVE:
        return fixed_offset / pair.gamma_p - offset / pair.gamma_d
    return offset / pair.gamma_p - fixed_offset / pair.gamma_d


def sweep_offset_for(p, mode, pair, fixed_offset=0.0):
    """Sweep offset (rad/s) whose probe detuning is p; the inverse of probe_field_for."""
    if mode is SweepMode.DRIVE:
        return pair.gamma_d * (fixed_offset / pair.gamma_p - p)
    return pair.gamma_p * (p + fixed_offset / pair.gamma_d)


def _field_window(profile, offset, mode, pair, fixed_offset):
    if math.isinf(profile.extent):
        return None
    half = 0.5 * profile.gradient_abs * profile.extent
    drive_offset = offset if mode is SweepMode.DRIVE else fixed_offset
    shift = drive_offset / pair.gamma_d
    return -half - shift, half - shift


def _clip(g, a, b, lo, hi):
    """Restricts a regularized integrand on [a, b] to [lo, hi] ⊂ [a, b]."""

    def clipped(v, d_lo, d_hi):
        full = (v - a) * (b - v)
        part = d_lo * d_hi
        return g(v, v - a, b - v) * np.sqrt(np.where(full > 0.0, part / np.where(full > 0.0, full, 1.0), 0.0))

    return clipped


def amplitude_at_probe_field(p, model, profile, tolerance=DEFAULT_TOLERANCE, window=None):
    """
    I(p) = (n/|∇H|)·Σ ∫ A(h, p) dh over the support intervals (arbitrary units).

    Args:
        p (float): Probe detuning in field units (G).
        window (tuple[float, float] | None): Field range occupied by a finite sample.
    """
    geometry = _support_geometry(p, model)
    total = 0.0
    for a, b in geometry.segments:
        g = geometry.regularized(a, b)
        lo, hi = a, b
        if window is not None:
            v_lo, v_hi = sorted((geometry.sign * window[0] / geometry.H_drive, geometry.sign * window[1] / geometry.H_drive))
            lo, hi = max(a, v_lo), min(b, v_hi)
            if hi <= lo:
                continue
            if (lo, hi) != (a, b):
                g = _clip(g, a, b, lo, hi)
        total += geometry.H_drive * arcsine_quad(g, lo, hi, tolerance)
    return profile.particles_per_gauss(model.gas.n_total) * total


def check_fast_driving(model, detector_time_constant=1.0, threshold=dinamica_rabi.DEFAULT_FAST_DRIVING_THRESHOLD):
    """Fast-driving check at the width scale of the spectrum; a failure is logged as a warning."""
    state = dinamica_rabi.effective_precession(width_field_scale(model), model.pair)
    return dinamica_rabi.fast_driving_check(state, detector_time_constant, threshold)


def integrate_point(omega_sweep, mode, model, profile, tolerance=DEFAULT_TOLERANCE, fixed_offset=0.0,
                    detector_time_constant=1.0, fast_driving_threshold=dinamica_rabi.DEFAULT_FAST_DRIVING_THRESHOLD,
                    check_driving=True):
    """
    Gradient-integrated absorption at one sweep offset.

    Args:
        omega_sweep (float): Offset of the swept frequency (rad/s).
        mode (SweepMode): Drive or probe sweep.
        model (InedorModel): Validated model.
        profile (FieldProfile): Static-field gradient.
        tolerance (float): Relative quadrature tolerance.
        fixed_offset (float): Detuning of the frequency held fixed (rad/s).
        detector_time_constant (float): Detection time constant τ (s) for the fast-driving check.
        fast_driving_threshold (float): Minimum Ω̃τ.
        check_driving (bool): Run the fast-driving check; sweep() runs it once for the whole grid.

    Returns:
        float: Amplitude (arbitrary units, ∝ n/|∇H|). It is computed even when the
        fast-driving check fails.

    Raises:
        QuadratureFailure: If an interval integral misses the tolerance.
    """
    if check_driving:
        check_fast_driving(model, detector_time_constant, fast_driving_threshold)
    p = probe_field_for(omega_sweep, mode, model.pair, fixed_offset)
    window = _field_window(profile, omega_sweep, mode, model.pair, fixed_offset)
    amplitude = amplitude_at_probe_field(p, model, profile, tolerance, window)
    logger.debug(f"offset {omega_sweep:.6g} rad/s -> p = {p:.6g} G, amplitude {amplitude:.6g}")
    return amplitude


def far_wing_amplitudes(model, profile, tolerance=DEFAULT_TOLERANCE, factor=DEFAULT_BASELINE_FACTOR,
                        mode=SweepMode.DRIVE, fixed_offset=0.0):
    """
    Amplitudes at p = ±factor·(2|ΔH_c|H_d²)^(1/3), each seen through the sample window
    of the sweep offset that reaches it.

    Returns:
        tuple[float, float]: (negative wing, positive wing).
    """
    far = factor * width_field_scale(model)
    wings = []
    for sign in (-1.0, 1.0):
        p = sign * far
        offset = sweep_offset_for(p, mode, model.pair, fixed_offset)
        window = _field_window(profile, offset, mode, model.pair, fixed_offset)
        wings.append(amplitude_at_probe_field(p, model, profile, tolerance, window))
    return tuple(wings)


def baseline_amplitude(model, profile, tolerance=DEFAULT_TOLERANCE, factor=DEFAULT_BASELINE_FACTOR,
                       mode=SweepMode.DRIVE, fixed_offset=0.0):
    """Mean of the two far-wing amplitudes."""
    wings = far_wing_amplitudes(model, profile, tolerance, factor, mode, fixed_offset)
    return 0.5 * (wings[0] + wings[1])


def resolve_workers(threads=None):
    """Worker count: explicit value or os.cpu_count(), capped by the INEDOR_THREADS environment variable."""
    workers = threads if threads and threads > 0 else (os.cpu_count() or 1)
    cap = os.environ.get(THREADS_ENV)
    if cap:
        try:
            workers = min(workers, max(1, int(cap)))
        except ValueError:
            logger.warning(f"Ignoring non-integer {THREADS_ENV}={cap!r}")
    return workers


def validate_sweep(spec):
    if not spec.span > 0:
        raise InvalidSweep(f"span must be > 0, got {spec.span!r}")
    if int(spec.points) < 3:
        raise InvalidSweep(f"points must be >= 3, got {spec.points!r}")
    return spec


def default_sweep(model, mode=SweepMode.DRIVE, points=DEFAULT_POINTS, span_factor=DEFAULT_SPAN_FACTOR):
    """Grid centred on resonance spanning span_factor × the closed-form width in the swept frequency."""
    gamma = model.pair.gamma_d if mode is SweepMode.DRIVE else model.pair.gamma_p
    width = 1.5 * abs(gamma) * width_field_scale(model)
    return SweepSpec(mode=mode, center=0.0, span=span_factor * width, points=points)


def mirrored_sweep_spec(spec, pair):
    """The grid of the other sweep mode that probes the same detunings p, in reversed order."""
    if spec.mode is SweepMode.DRIVE:
        ratio, mode = -pair.gamma_p / pair.gamma_d, SweepMode.PROBE
    else:
        ratio, mode = -pair.gamma_d / pair.gamma_p, SweepMode.DRIVE
    return SweepSpec(mode=mode, center=spec.center * ratio, span=spec.span * abs(ratio), points=spec.points,
                     fixed_offset=spec.fixed_offset / ratio)


def _sweep_baseline(spec, model, profile, tolerance, factor, warnings):
    wings = far_wing_amplitudes(model, profile, tolerance, factor, spec.mode, spec.fixed_offset)
    if min(wings) > 0.0:
        return 0.5 * (wings[0] + wings[1])
    message = (f"sample extent {profile.extent:g} cm leaves no far wing at ±{factor:g}× the width scale; "
               "amplitudes are normalized to the infinite-sample baseline")
    logger.warning(message)
    warnings.append(message)
    return baseline_amplitude(model, replace(profile, extent=math.inf), tolerance, factor)


def sweep(spec, model, profile, tolerance=DEFAULT_TOLERANCE, threads=None, detector_time_constant=1.0,
          fast_driving_threshold=dinamica_rabi.DEFAULT_FAST_DRIVING_THRESHOLD,
          baseline_factor=DEFAULT_BASELINE_FACTOR):
    """
    Evaluates integrate_point over the sweep grid.

    Points are independent and run on a thread pool; results are assembled in
    grid order, so the output does not depend on the worker count. The baseline
    is taken through the same sample window as the grid points.

    Returns:
        SpectrumResult: Raw amplitudes, baseline and grid extrema.
    """
    validate_sweep(spec)
    validate_profile(profile)
    warnings = []

    check = check_fast_driving(model, detector_time_constant, fast_driving_threshold)
    if not check.passed:
        warnings.append(check.message())

    offsets = spec.offsets()
    workers = resolve_workers(threads)
    logger.info(f"Sweeping {spec.points} {spec.mode.value} offsets over {spec.span / (2 * math.pi):.6g} Hz with {workers} worker(s)")

    def point(offset):
        return integrate_point(float(offset), spec.mode, model, profile, tolerance, spec.fixed_offset,
                               check_driving=False)

    if workers == 1:
        amplitudes = [point(o) for o in offsets]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            amplitudes = list(pool.map(point, offsets))

    baseline = _sweep_baseline(spec, model, profile, tolerance, baseline_factor, warnings)
    result = SpectrumResult(
        mode=spec.mode,
        offsets=tuple(float(o) for o in offsets),
        amplitudes=tuple(float(a) for a in amplitudes),
        baseline=float(baseline),
        warnings=tuple(warnings),
    )
    try:
        metrics = peak_metrics(result)
    except FlatSpectrum as e:
        logger.warning(f"No peak metrics: {e}")
        return result
    logger.info(f"Max at {metrics.max_position_hz:.6g} Hz, min at {metrics.min_position_hz:.6g} Hz, distance {metrics.distance_hz:.6g} Hz")
    return SpectrumResult(result.mode, result.offsets, result.amplitudes, result.baseline, metrics, result.warnings)


def _parabolic_vertex(offsets, values, i):
    if i == 0 or i == len(values) - 1:
        return offsets[i]
    y0, y1, y2 = values[i - 1], values[i], values[i + 1]
    denom = y0 - 2.0 * y1 + y2
    if denom == 0.0:
        return offsets[i]
    step = 0.5 * (offsets[i + 1] - offsets[i - 1])
    shift = 0.5 * (y0 - y2) / denom
    return offsets[i] + step * max(-0.5, min(0.5, shift))


def peak_metrics(result):
    """
    Positions of the grid maximum and minimum (parabolic refinement) and their distance in Hz.

    Raises:
        FlatSpectrum: If max - min < 1e-6 × baseline.
        InvalidSweep: If fewer than 3 samples are present.
    """
    if len(result.amplitudes) < 3:
        raise InvalidSweep("peak metrics need at least 3 samples")
    offsets = np.asarray(result.offsets)
    values = np.asarray(result.amplitudes)
    i_max, i_min = int(np.argmax(values)), int(np.argmin(values))
    if values[i_max] - values[i_min] < FLAT_THRESHOLD * abs(result.baseline):
        raise FlatSpectrum(f"spectrum is flat: max - min = {values[i_max] - values[i_min]:.3e}")
    max_position = float(_parabolic_vertex(offsets, values, i_max))
    min_position = float(_parabolic_vertex(offsets, values, i_min))
    return PeakMetrics(max_position, min_position, abs(max_position - min_position) / (2.0 * math.pi))


def hole_burning_point(omega_sweep, mode, model, profile, fixed_offset=0.0):
    """
    Conventional double-resonance amplitude: depopulation of |1> without frequency modulation.

    The Zeeman-only line sits at h = p and is weighted by the time-averaged
    initial-state population 1 - sin²θ13(p)/2, on the same |ΔH_c|/2 scale as the
    INEDOR far wings.
    """
    p = probe_field_for(omega_sweep, mode, model.pair, fixed_offset)
    s = float(lorentzian(p, model.pair.H_drive))
    return profile.particles_per_gauss(model.gas.n_total) * 0.5 * abs(model.delta_H_c) * (1.0 - 0.5 * s)


def hole_burning_sweep(spec, model, profile, baseline_factor=DEFAULT_BASELINE_FACTOR):
    validate_sweep(spec)
    validate_profile(profile)
    offsets = spec.offsets()
    amplitudes = [hole_burning_point(float(o), spec.mode, model, profile, spec.fixed_offset) for o in offsets]
    far = baseline_factor * width_field_scale(model)
    gamma = model.pair.gamma_d if spec.mode is SweepMode.DRIVE else model.pair.gamma_p
    baseline = hole_burning_point(far * abs(gamma), spec.mode, model, profile, spec.fixed_offset)
    return SpectrumResult(spec.mode, tuple(float(o) for o in offsets), tuple(float(a) for a in amplitudes), float(baseline))


def enhancement(inedor, hole_burning):
    """Peak-to-peak INEDOR signal relative to the hole-burning signal on the same grid."""
    span_inedor = max(inedor.amplitudes) - min(inedor.amplitudes)
    span_hb = max(hole_burning.amplitudes) - min(hole_burning.amplitudes)
    return span_inedor / span_hb if span_hb > 0 else math.inf
