"""Módulo com as grandezas físicas, convenções de unidades (CGS-Gauss) e parâmetros validados do modelo."""

import enum
import logging
import math
from dataclasses import dataclass, field

import scipy.constants as sc

from .erros import (
    CoherenceOutOfRange,
    ModelValidationError,
    NonPositiveDensity,
    NonPositiveDriveField,
    NonPositiveGradient,
    NonPositiveMass,
    PopulationSumMismatch,
    ZeroGyromagneticRatio,
)

# Configure logger for this module
logger = logging.getLogger(__name__)

LAMBDA_KEYS = ("11", "12", "22", "13", "23")
POPULATION_SUM_TOLERANCE = 1e-12

# SI -> CGS
_JOULE_TO_ERG = 1e7
_PER_TESLA_TO_PER_GAUSS = 1e-4
_KG_TO_G = 1e3
PM_TO_CM = 1e-10


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA constants in CGS-Gaussian units (erg, s, G, g)."""

    hbar: float = sc.hbar * _JOULE_TO_ERG
    gamma_e: float = sc.physical_constants["electron gyromag. ratio"][0] * _PER_TESLA_TO_PER_GAUSS
    gamma_pr: float = sc.physical_constants["proton gyromag. ratio"][0] * _PER_TESLA_TO_PER_GAUSS
    hydrogen_mass: float = (sc.m_p + sc.m_e) * _KG_TO_G


CONSTANTS = PhysicalConstants()


class Statistics(enum.Enum):
    BOSE = "bose"
    FERMI = "fermi"


@dataclass(frozen=True)
class GasSpec:
    """
    Three-level gas: density, relative populations, interaction matrix and coherence.

    Attributes:
        statistics (Statistics): Bose or Fermi.
        n_total (float): Total number density (cm^-3).
        pop_fractions (tuple[float, float, float]): Relative populations f1, f2, f3.
        lambda_matrix (dict[str, float]): λ±_ij (erg·cm^3) keyed by '11', '12', '22', '13', '23'.
            Symmetric (+) elements for bosons, antisymmetric (-) for fermions.
        coherence13 (float): |C±_13|^2, the weight of the symmetry channel that carries the shift.
        mass (float): Atomic mass (g).
    """

    statistics: Statistics
    n_total: float
    pop_fractions: tuple
    lambda_matrix: dict = field(hash=False)
    coherence13: float
    mass: float = CONSTANTS.hydrogen_mass

    def densities(self):
        """Returns the absolute populations (n1, n2, n3) in cm^-3."""
        return tuple(self.n_total * f for f in self.pop_fractions)

    def lam(self, key):
        return self.lambda_matrix.get(key, 0.0)

    @property
    def delta_lambda(self):
        """λ_23 - λ_13 (erg·cm^3), the interaction difference seen by the probe transition."""
        return self.lam("23") - self.lam("13")

    @property
    def delta_lambda_eff(self):
        """|C_13|^2·(λ_23 - λ_13): the coherence-weighted difference entering the dynamic shift."""
        return self.coherence13 * self.delta_lambda


@dataclass(frozen=True)
class ResonancePair:
    """
    Drive (|1>-|3>) and probe (|1>-|2>) transitions around the drive resonance field H0.

    Attributes:
        gamma_d (float): Effective gyromagnetic ratio of the drive transition (rad/s/G).
        gamma_p (float): Effective gyromagnetic ratio of the probe transition (rad/s/G).
        omega12_0_at_H0 (float): Zero-density probe frequency at H0 (rad/s).
        H_drive (float): Drive field amplitude H_d (G).
        H0 (float): Static field at which the drive is resonant (G).
    """

    gamma_d: float
    gamma_p: float
    omega12_0_at_H0: float
    H_drive: float
    H0: float

    @property
    def omega_rabi(self):
        """Ω_13 = |γ_d|·H_d (rad/s)."""
        return abs(self.gamma_d) * self.H_drive

    def zeeman_probe(self, h):
        """ω12^(0)(H0 + h) = ω12^(0)(H0) + γ_p·h."""
        return self.omega12_0_at_H0 + self.gamma_p * h


@dataclass(frozen=True)
class FieldProfile:
    """Linear static-field gradient across the sample."""

    gradient_abs: float
    extent: float = math.inf

    def particles_per_gauss(self, n):
        """∂N/∂h ∝ n/|∇H| (cm^-3 per G·cm^-1)."""
        return n / self.gradient_abs


@dataclass(frozen=True)
class InedorModel:
    """A validated (gas, resonance pair) bundle with the derived contact-shift scales."""

    gas: GasSpec
    pair: ResonancePair
    constants: PhysicalConstants = CONSTANTS

    @property
    def contact_amplitude(self):
        """2nΔλ_eff/ħ (rad/s): full modulation amplitude of the probe frequency, signed."""
        return 2.0 * self.gas.n_total * self.gas.delta_lambda_eff / self.constants.hbar

    @property
    def delta_H_c(self):
        """ΔH_c = 2nΔλ_eff/(ħγ_p) (G): contact-shift amplitude in probe field units, signed."""
        return self.contact_amplitude / self.pair.gamma_p

    @property
    def H_drive(self):
        return self.pair.H_drive


def _collect_violations(gas, pair):
    violations = []
    if not gas.n_total > 0:
        violations.append(NonPositiveDensity(f"n_total must be > 0, got {gas.n_total!r}"))
    fractions = tuple(gas.pop_fractions)
    if len(fractions) != 3 or any(not 0.0 <= f <= 1.0 for f in fractions):
        violations.append(PopulationSumMismatch(f"population fractions must be three values in [0, 1], got {fractions!r}"))
    elif abs(math.fsum(fractions) - 1.0) > POPULATION_SUM_TOLERANCE:
        violations.append(PopulationSumMismatch(f"population fractions sum to {math.fsum(fractions)!r}, expected 1"))
    if not 0.0 <= gas.coherence13 <= 1.0:
        violations.append(CoherenceOutOfRange(f"coherence13 must lie in [0, 1], got {gas.coherence13!r}"))
    if not gas.mass > 0:
        violations.append(NonPositiveMass(f"mass must be > 0, got {gas.mass!r}"))
    for name in ("gamma_d", "gamma_p"):
        gamma = getattr(pair, name)
        if not math.isfinite(gamma) or gamma == 0:
            violations.append(ZeroGyromagneticRatio(f"{name} must be finite and non-zero, got {gamma!r}"))
    if not pair.H_drive > 0:
        violations.append(NonPositiveDriveField(f"H_drive must be > 0, got {pair.H_drive!r}"))
    return violations


def validate(gas, pair, constants=CONSTANTS):
    """
    Checks every GasSpec / ResonancePair invariant and bundles the pair into a model.

    All checks run before anything is raised, so the caller sees the complete list.

    Args:
        gas (GasSpec): Gas parameters.
        pair (ResonancePair): Transition parameters.
        constants (PhysicalConstants): Constant set (defaults to CODATA).

    Returns:
        InedorModel: The unchanged inputs wrapped in a model.

    Raises:
        ModelValidationError: With `.violations` listing each failed invariant.
    """
    violations = _collect_violations(gas, pair)
    if violations:
        for violation in violations:
            logger.error(f"Invalid model: {type(violation).__name__}: {violation}")
        raise ModelValidationError(violations)
    return InedorModel(gas=gas, pair=pair, constants=constants)


def validate_model(model):
    """Re-validates an existing model; returns the very same object when it is valid."""
    validate(model.gas, model.pair, model.constants)
    return model


def validate_profile(profile):
    if not profile.gradient_abs > 0:
        raise NonPositiveGradient(f"gradient_abs must be > 0, got {profile.gradient_abs!r}")
    return profile


def field_to_frequency(field_gauss, gamma):
    return field_gauss * gamma


def frequency_to_field(omega, gamma):
    return omega / gamma


def hz_to_angular(f_hz):
    return 2.0 * math.pi * f_hz


def angular_to_hz(omega):
    return omega / (2.0 * math.pi)


def linearize_gamma(frequency_fn, H0, step=None):
    """
    Effective gyromagnetic ratio ∂ω/∂H of a transition at H0 by central difference.

    Non-linear Zeeman dependences are linearized around the resonance field, so
    the resulting value can be used as gamma_d or gamma_p in a ResonancePair.

    Args:
        frequency_fn (callable): ω(H) in rad/s for H in gauss.
        H0 (float): Field where the derivative is taken (G).
        step (float, optional): Difference step (G); defaults to 1e-6·max(|H0|, 1 G).

    Returns:
        float: ∂ω/∂H at H0 (rad/s/G).
    """
    if step is None:
        step = 1e-6 * max(abs(H0), 1.0)
    gamma = (frequency_fn(H0 + step) - frequency_fn(H0 - step)) / (2.0 * step)
    logger.debug(f"Linearized gamma at H0={H0} G with step {step} G: {gamma} rad/s/G")
    return gamma
