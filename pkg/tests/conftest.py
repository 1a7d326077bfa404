import pytest

from inedor_app.modelo import CONSTANTS, FieldProfile, GasSpec, ResonancePair, Statistics, validate
from inedor_app.preset_hidrogenio import hydrogen_model


def build_model(delta_H_c, H_drive=1e-3, gamma_d=CONSTANTS.gamma_pr, gamma_p=CONSTANTS.gamma_e, omega12_0=0.0):
    """A unit-density Bose gas whose contact-shift field amplitude is `delta_H_c`."""
    lam_23 = delta_H_c * CONSTANTS.hbar * gamma_p / 2.0
    gas = GasSpec(
        statistics=Statistics.BOSE,
        n_total=1.0,
        pop_fractions=(1.0, 0.0, 0.0),
        lambda_matrix={"11": 0.0, "12": 0.0, "22": 0.0, "13": 0.0, "23": lam_23},
        coherence13=1.0,
    )
    pair = ResonancePair(gamma_d=gamma_d, gamma_p=gamma_p, omega12_0_at_H0=omega12_0, H_drive=H_drive, H0=0.0)
    return validate(gas, pair)


@pytest.fixture
def model_factory():
    return build_model


@pytest.fixture(scope="session")
def hydrogen():
    model, _ = hydrogen_model()
    return model


@pytest.fixture(scope="session")
def hydrogen_physical():
    model, _ = hydrogen_model(physical_sign=True)
    return model


@pytest.fixture
def profile():
    return FieldProfile(gradient_abs=1.0)
