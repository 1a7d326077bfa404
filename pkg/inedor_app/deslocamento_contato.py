"""Módulo para o cálculo do deslocamento de contato (colisional) da transição de prova em gases de três níveis."""

import logging
import math
from dataclasses import dataclass

from .erros import NonPositiveMass, WrongStatistics
from .modelo import CONSTANTS, Statistics

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ShiftBreakdown:
    """Probe-transition contact shift split into its two-level and third-state parts (rad/s)."""

    two_level_term: float
    third_state_term: float
    total: float


def lambda_from_scattering_length(a, m, constants=CONSTANTS):
    """
    Interaction strength λ = 4πħ²a/m of the cold-collision regime.

    Args:
        a (float): Scattering length (cm), any sign.
        m (float): Atomic mass (g).

    Returns:
        float: λ in erg·cm^3, with the sign of `a`.

    Raises:
        NonPositiveMass: If m <= 0.
    """
    if not m > 0:
        raise NonPositiveMass(f"mass must be > 0, got {m!r}")
    return 4.0 * math.pi * constants.hbar ** 2 * a / m


def bose_shift(gas, constants=CONSTANTS):
    """
    Contact shift of the |1>-|2> transition in a three-level Bose gas.

        ħΔω = 2n1(λ+12 - λ11) + 2n2(λ22 - λ+12) + 2n3|C+13|²(λ+23 - λ+13)

    The |1>-|2> coherence does not enter.

    Args:
        gas (GasSpec): Bose gas.

    Returns:
        ShiftBreakdown: Terms in rad/s.

    Raises:
        WrongStatistics: If the gas is a Fermi gas.
    """
    if gas.statistics is not Statistics.BOSE:
        raise WrongStatistics("bose_shift requires a Bose gas")
    n1, n2, n3 = gas.densities()
    hbar = constants.hbar
    two_level = (2.0 * n1 * (gas.lam("12") - gas.lam("11")) + 2.0 * n2 * (gas.lam("22") - gas.lam("12"))) / hbar
    third_state = 2.0 * n3 * gas.coherence13 * gas.delta_lambda / hbar
    logger.debug(f"Bose shift: two-level {two_level:.6e} rad/s, third-state {third_state:.6e} rad/s")
    return ShiftBreakdown(two_level_term=two_level, third_state_term=third_state, total=two_level + third_state)


def fermi_shift(gas, constants=CONSTANTS):
    """
    Contact shift of the |1>-|2> transition in a three-level Fermi gas.

        ħΔω = 2n3|C-13|²(λ-23 - λ-13)

    Raises:
        WrongStatistics: If the gas is a Bose gas.
    """
    if gas.statistics is not Statistics.FERMI:
        raise WrongStatistics("fermi_shift requires a Fermi gas")
    n3 = gas.densities()[2]
    third_state = 2.0 * n3 * gas.coherence13 * gas.delta_lambda / constants.hbar
    return ShiftBreakdown(two_level_term=0.0, third_state_term=third_state, total=third_state)


def contact_shift(gas, constants=CONSTANTS):
    """Dispatches to bose_shift or fermi_shift according to gas.statistics."""
    if gas.statistics is Statistics.BOSE:
        return bose_shift(gas, constants)
    return fermi_shift(gas, constants)
