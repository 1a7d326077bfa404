import dataclasses
import math

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from inedor_app.deslocamento_contato import bose_shift, contact_shift, fermi_shift, lambda_from_scattering_length
from inedor_app.erros import NonPositiveMass, WrongStatistics
from inedor_app.modelo import CONSTANTS, GasSpec, Statistics
from inedor_app.preset_hidrogenio import hydrogen_preset


def gas(statistics=Statistics.BOSE, fractions=(0.2, 0.3, 0.5), lambdas=None, coherence=0.5, n=1e12):
    lambdas = lambdas or {"11": 1e-38, "12": 3e-38, "22": 2e-38, "13": 5e-38, "23": 9e-38}
    return GasSpec(statistics=statistics, n_total=n, pop_fractions=fractions, lambda_matrix=lambdas, coherence13=coherence)


def test_lambda_zero_scattering_length():
    assert lambda_from_scattering_length(0.0, CONSTANTS.hydrogen_mass) == 0.0


def test_lambda_for_minus_30_pm():
    lam = lambda_from_scattering_length(-3e-9, 1.6735e-24)
    assert lam == pytest.approx(-2.505e-38, rel=1e-3)


def test_lambda_is_linear_in_scattering_length():
    m = CONSTANTS.hydrogen_mass
    assert lambda_from_scattering_length(2e-9, m) == pytest.approx(2 * lambda_from_scattering_length(1e-9, m), rel=1e-15)


def test_lambda_rejects_non_positive_mass():
    with pytest.raises(NonPositiveMass):
        lambda_from_scattering_length(1e-9, 0.0)


def test_bose_two_level_term_vanishes_for_equal_lambdas():
    lambdas = {"11": 4e-38, "12": 4e-38, "22": 4e-38, "13": 1e-38, "23": 2e-38}
    shift = bose_shift(gas(fractions=(0.6, 0.4, 0.0), lambdas=lambdas))
    assert shift.two_level_term == 0.0
    assert shift.total == 0.0


def test_bose_all_lambdas_equal_gives_zero():
    lambdas = dict.fromkeys(("11", "12", "22", "13", "23"), 7e-38)
    assert bose_shift(gas(lambdas=lambdas)).total == 0.0


def test_bose_breakdown_terms():
    g = gas()
    n1, n2, n3 = g.densities()
    shift = bose_shift(g)
    hbar = CONSTANTS.hbar
    assert shift.two_level_term == pytest.approx((2 * n1 * (3e-38 - 1e-38) + 2 * n2 * (2e-38 - 3e-38)) / hbar, rel=1e-12)
    assert shift.third_state_term == pytest.approx(2 * n3 * 0.5 * 4e-38 / hbar, rel=1e-12)
    assert shift.total == pytest.approx(shift.two_level_term + shift.third_state_term, rel=1e-15)


def test_bose_hydrogen_third_state_shift_is_minus_89_gauss():
    gas_h, _, _ = hydrogen_preset(physical_sign=True)
    excited = dataclasses.replace(gas_h, pop_fractions=(0.0, 0.0, 1.0))
    shift = bose_shift(excited)
    assert shift.total / CONSTANTS.gamma_e == pytest.approx(-89.0, rel=1e-9)


def test_fermi_fully_coherent_gives_zero():
    assert fermi_shift(gas(statistics=Statistics.FERMI, coherence=0.0)).total == 0.0


def test_fermi_equal_lambdas_gives_zero():
    lambdas = {"11": 0.0, "12": 0.0, "22": 0.0, "13": 3e-38, "23": 3e-38}
    assert fermi_shift(gas(statistics=Statistics.FERMI, lambdas=lambdas)).total == 0.0


def test_fermi_no_third_state_gives_zero():
    assert fermi_shift(gas(statistics=Statistics.FERMI, fractions=(0.5, 0.5, 0.0))).total == 0.0


def test_fermi_incoherent_limit():
    delta = 4e-38
    g = gas(statistics=Statistics.FERMI, fractions=(0.0, 0.0, 1.0), coherence=0.5, n=1e12)
    assert fermi_shift(g).total == pytest.approx(1e12 * delta / CONSTANTS.hbar, rel=1e-12)


def test_statistics_are_checked():
    with pytest.raises(WrongStatistics):
        bose_shift(gas(statistics=Statistics.FERMI))
    with pytest.raises(WrongStatistics):
        fermi_shift(gas())


def test_contact_shift_dispatches():
    assert contact_shift(gas()) == bose_shift(gas())
    fermi = gas(statistics=Statistics.FERMI)
    assert contact_shift(fermi) == fermi_shift(fermi)


@given(alpha=st.floats(min_value=1e-3, max_value=1e3), statistics=st.sampled_from(list(Statistics)))
@settings(max_examples=100)
def test_shift_is_linear_in_density(alpha, statistics):
    base = gas(statistics=statistics)
    scaled = dataclasses.replace(base, n_total=base.n_total * alpha)
    assert contact_shift(scaled).total == pytest.approx(alpha * contact_shift(base).total, rel=1e-9)
    assert math.isfinite(contact_shift(scaled).total)
