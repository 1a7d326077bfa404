"""Módulo com a parametrização do hidrogênio atômico bidimensional (ENDOR a 45 kG) e suas grandezas derivadas."""

import logging
import math
from dataclasses import dataclass

from .deslocamento_contato import lambda_from_scattering_length
from .erros import ConfigError, NonPositiveLength, ValidationError
from .modelo import CONSTANTS, PM_TO_CM, GasSpec, ResonancePair, Statistics, validate

logger = logging.getLogger(__name__)

PRESET_DEFAULT = "hydrogen-2d"
PRESET_PHYSICAL_SIGN = "hydrogen-2d-physical-sign"
PRESET_NAMES = (PRESET_DEFAULT, PRESET_PHYSICAL_SIGN)


@dataclass(frozen=True)
class HydrogenParams:
    """
    Two-dimensional atomic hydrogen adsorbed on a helium film, probed by ESR and driven by NMR.

    Lengths are in cm, fields in G.
    """

    n_2d: float = 3e12
    l: float = 5e-8
    delta_a: float = -30.0 * PM_TO_CM
    delta_a_uncertainty: float = 10.0 * PM_TO_CM
    a_t: float = 72.0 * PM_TO_CM
    H_drive: float = 1e-3
    polarizing_field: float = 4.5e4
    source_relative_width: float = 1e-9
    pinned_delta_H_c: float = 89.0
    quoted_per_density_coeff: float = 1.5e-18
    quoted_per_density_uncertainty: float = 0.5e-18

    @property
    def n_3d(self):
        """n_2d/l, the density that stands in for the 3D density in every formula."""
        return self.n_2d / self.l

    @property
    def probe_frequency(self):
        """γ_e × polarizing field (rad/s)."""
        return CONSTANTS.gamma_e * self.polarizing_field


def contact_field_shift(n_2d, l, delta_a, gamma_probe, mass=CONSTANTS.hydrogen_mass, constants=CONSTANTS):
    """
    Contact-shift field scale of a 2D gas.

    Args:
        n_2d (float): Surface density (cm^-2).
        l (float): Out-of-plane delocalization length (cm).
        delta_a (float): a_s - a_t (cm).
        gamma_probe (float): Probe gyromagnetic ratio (rad/s/G).

    Returns:
        tuple: (ΔH_c in G, per-density coefficient 4πħ|Δa|/(m·γ) in G·cm³).

    Raises:
        NonPositiveLength: If l <= 0.
    """
    if not l > 0:
        raise NonPositiveLength(f"delocalization length must be > 0, got {l!r}")
    coeff = 4.0 * math.pi * constants.hbar * abs(delta_a) / (mass * abs(gamma_probe))
    return coeff * (n_2d / l), coeff


def hydrogen_preset(physical_sign=False, params=None):
    """
    Gas and resonance pair for 2D hydrogen with |ΔH_c| pinned to 89 G.

    The coherence |C+13|² is back-solved from the pinned shift. By default the
    shift is positive; `physical_sign=True` uses Δa < 0 as measured and gives
    ΔH_c = -89 G.

    Returns:
        tuple: (GasSpec, ResonancePair, HydrogenParams)
    """
    params = params or HydrogenParams()
    m = CONSTANTS.hydrogen_mass
    a_23 = params.a_t + (params.delta_a if physical_sign else -params.delta_a)
    lam_t = lambda_from_scattering_length(params.a_t, m)
    lam_23 = lambda_from_scattering_length(a_23, m)
    n = params.n_3d

    # ΔH_c = 2n|C13|²(λ23 - λ13)/(ħγ_p)
    unit_coherence_shift = 2.0 * n * (lam_23 - lam_t) / (CONSTANTS.hbar * CONSTANTS.gamma_e)
    coherence = params.pinned_delta_H_c / abs(unit_coherence_shift)

    gas = GasSpec(
        statistics=Statistics.BOSE,
        n_total=n,
        pop_fractions=(1.0, 0.0, 0.0),
        lambda_matrix={"11": lam_t, "12": lam_t, "22": lam_t, "13": lam_t, "23": lam_23},
        coherence13=coherence,
        mass=m,
    )
    pair = ResonancePair(
        gamma_d=CONSTANTS.gamma_pr,
        gamma_p=CONSTANTS.gamma_e,
        omega12_0_at_H0=params.probe_frequency,
        H_drive=params.H_drive,
        H0=params.polarizing_field,
    )
    logger.debug(f"Hydrogen preset: n={n:.3e} cm^-3, |C13|^2={coherence:.6f}, physical_sign={physical_sign}")
    return gas, pair, params


def hydrogen_model(physical_sign=False, params=None):
    gas, pair, params = hydrogen_preset(physical_sign, params)
    return validate(gas, pair), params


def preset_by_name(name):
    """
    Looks up a preset by its CLI name.

    Returns:
        tuple: (GasSpec, ResonancePair, HydrogenParams)

    Raises:
        ConfigError: For an unknown name.
    """
    if name == PRESET_DEFAULT:
        return hydrogen_preset(physical_sign=False)
    if name == PRESET_PHYSICAL_SIGN:
        return hydrogen_preset(physical_sign=True)
    raise ConfigError(f"unknown preset {name!r}; expected one of {', '.join(PRESET_NAMES)}")


@dataclass(frozen=True)
class DetectionLimit:
    n3_min: float
    fraction: float
    caveat: str = None


def min_detectable_population(model, params, source_relative_width=None):
    """
    Smallest |3> surface density whose full modulation equals the probe source linewidth.

    At h = 0 the modulation reaches 2n3Δλ_eff/ħ, i.e. |ΔH_c|·n3/n in field units,
    so n3_min = δ·H_pol·n_2d/|ΔH_c| with δ the relative source width.

    Returns:
        DetectionLimit: n3_min (cm^-2) and n3_min/n_2d.

    Raises:
        ValidationError: If the source width is negative.
    """
    width = params.source_relative_width if source_relative_width is None else source_relative_width
    if width < 0:
        raise ValidationError(f"source relative width must be >= 0, got {width!r}")
    if width == 0:
        caveat = "zero source width: bounded below only by the homogeneous linewidth, which is not modelled"
        logger.warning(caveat)
        return DetectionLimit(0.0, 0.0, caveat)
    # probe frequency over γ_p is the polarizing field
    source_field = width * model.pair.omega12_0_at_H0 / abs(model.pair.gamma_p)
    n3_min = source_field / abs(model.delta_H_c) * params.n_2d
    return DetectionLimit(n3_min, n3_min / params.n_2d)
