"""Módulo oráculo: histograma determinístico de ω12(t) ao longo de um período de Rabi para validar a forma de linha analítica."""

import logging
import math
from dataclasses import dataclass

import numpy as np

from .dinamica_rabi import effective_precession
from .erros import BinningMismatch, InvalidSweep
from .forma_linha import density_from_x
from .quadratura import DEFAULT_TOLERANCE, arcsine_quad

logger = logging.getLogger(__name__)

MIN_BINS = 10
MIN_SAMPLES = 10_000
# one period sweeps 0 -> sin²θ -> 0, so every x is visited twice per cycle
TRAVERSALS_PER_CYCLE = 2.0


@dataclass(frozen=True)
class EmpiricalDensity:
    """
    Population-weighted residence time of the reduced probe detuning x per bin.

    Attributes:
        edges (tuple[float]): Bin edges in x, strictly increasing.
        weights (tuple[float]): Sum of (1 - x)/samples over the samples falling in each bin.
        samples_per_cycle (int): Uniform time samples in one Rabi period.
        cycles (int): Number of periods covered (always 1, the signal is periodic).
        h (float): Field offset the histogram was taken at (G).
        sin2_theta (float): sin²θ13(h), the top of the support.
    """

    edges: tuple
    weights: tuple
    samples_per_cycle: int
    cycles: int
    h: float
    sin2_theta: float

    @property
    def total_weight(self):
        return math.fsum(self.weights)


def simulate_density(h, model, bins=100, samples=1_000_000, x_max=None):
    """
    Samples x(t) = sin²θ·sin²(Ω̃t/2) at the midpoints of a uniform grid over one period.

    Args:
        h (float): Field offset (G).
        model (InedorModel): Validated model.
        bins (int): Number of bins (>= 10).
        samples (int): Time samples per period (>= 10⁴).
        x_max (float, optional): Upper edge of the binning; defaults to sin²θ13(h).

    Returns:
        EmpiricalDensity
    """
    if bins < MIN_BINS:
        raise BinningMismatch(f"at least {MIN_BINS} bins are required, got {bins}")
    if samples < MIN_SAMPLES:
        raise InvalidSweep(f"at least {MIN_SAMPLES} time samples are required, got {samples}")
    state = effective_precession(h, model.pair)
    s = state.sin2_theta
    top = s if x_max is None else float(x_max)
    edges = np.linspace(0.0, top, bins + 1)

    # Ω̃t/2 on the midpoint grid of [0, T)
    half_phase = math.pi * (np.arange(samples) + 0.5) / samples
    x = s * np.sin(half_phase) ** 2
    weights, _ = np.histogram(x, bins=edges, weights=(1.0 - x) / samples)
    logger.debug(f"Histogrammed {samples} samples at h={h!r} G into {bins} bins (sin²θ={s:.6g})")
    return EmpiricalDensity(tuple(edges.tolist()), tuple(weights.tolist()), samples, 1, float(h), s)


def analytic_weights(edges, sin2_theta, density=density_from_x, tolerance=DEFAULT_TOLERANCE, bins=None):
    """
    Bin integrals of the analytic density, scaled by the two traversals per period.

    Args:
        edges (sequence[float]): Bin edges in x.
        sin2_theta (float): Support top.
        density (callable): density(x, sin2_theta), vectorized.
        bins (iterable[int], optional): Only these bin indices are integrated; the others are nan.

    Returns:
        numpy.ndarray: Expected weight per bin.
    """
    edges = np.asarray(edges, dtype=float)
    indices = range(len(edges) - 1) if bins is None else bins
    out = np.full(len(edges) - 1, math.nan)
    for i in indices:
        lo, hi = edges[i], min(edges[i + 1], sin2_theta)
        if hi <= lo:
            out[i] = 0.0
            continue

        def regularized(v, d_a, d_b):
            return density(v, sin2_theta) * np.sqrt(d_a * d_b)

        out[i] = TRAVERSALS_PER_CYCLE * arcsine_quad(regularized, lo, hi, tolerance)
    return out


def _interior_bins(edges, sin2_theta):
    """Bins strictly inside (0, sin²θ) that touch neither singular endpoint."""
    edges = np.asarray(edges)
    keep = []
    for i in range(len(edges) - 1):
        lo, hi = edges[i], edges[i + 1]
        if lo <= 0.0 or hi >= sin2_theta:
            continue
        keep.append(i)
    return keep


def compare_to_analytic(emp, model, h, density=density_from_x, tolerance=DEFAULT_TOLERANCE):
    """
    Max relative deviation between empirical and analytic bin weights over interior bins.

    Raises:
        BinningMismatch: If the histogram is not a valid binning at field offset h.
    """
    edges = np.asarray(emp.edges, dtype=float)
    if len(emp.weights) != len(edges) - 1 or len(edges) < 2 or np.any(np.diff(edges) <= 0.0):
        raise BinningMismatch("empirical weights do not match their bin edges")
    if not math.isclose(emp.h, h, rel_tol=1e-12, abs_tol=0.0):
        raise BinningMismatch(f"histogram was taken at h={emp.h!r} G, not h={h!r} G")
    s = effective_precession(h, model.pair).sin2_theta

    interior = _interior_bins(edges, s)
    if not interior:
        raise BinningMismatch("no interior bins left after excluding the singular endpoints")
    analytic = analytic_weights(edges, s, density, tolerance, bins=interior)
    empirical = np.asarray(emp.weights)[interior]
    expected = analytic[interior]
    deviation = float(np.max(np.abs(empirical - expected) / expected))
    logger.info(f"Oracle deviation at h={h:.6g} G over {len(interior)} interior bins: {deviation:.3e}")
    return deviation


def bin_table(emp, model, density=density_from_x, tolerance=DEFAULT_TOLERANCE):
    """Rows (x_lo, x_hi, empirical, analytic) for every bin; analytic is nan on the excluded edge bins."""
    interior = _interior_bins(emp.edges, emp.sin2_theta)
    analytic = analytic_weights(emp.edges, emp.sin2_theta, density, tolerance, bins=interior)
    edges = emp.edges
    return [(edges[i], edges[i + 1], emp.weights[i], float(analytic[i])) for i in range(len(emp.weights))]


def refinement_study(h, model, bins=100, sample_counts=(10_000, 100_000, 1_000_000)):
    """Oracle deviation for increasing sample counts; returns [(samples, deviation), ...]."""
    study = []
    for samples in sample_counts:
        emp = simulate_density(h, model, bins, int(samples))
        study.append((int(samples), compare_to_analytic(emp, model, h)))
    return study
