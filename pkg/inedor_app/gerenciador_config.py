"""Módulo para carregar as configurações (config.ini) e as configurações de execução em JSON com chaves sufixadas por unidade."""

import configparser
import json
import logging
import math
import os
from dataclasses import dataclass, fields, replace

from . import preset_hidrogenio
from .deslocamento_contato import lambda_from_scattering_length
from .erros import ConfigError, NonPositiveLength
from .espectro import DEFAULT_BASELINE_FACTOR, DEFAULT_POINTS, DEFAULT_SPAN_FACTOR, SweepMode
from .modelo import CONSTANTS, LAMBDA_KEYS, PM_TO_CM, FieldProfile, GasSpec, ResonancePair, Statistics, validate
from .quadratura import DEFAULT_TOLERANCE

# Configure logger for this module
logger = logging.getLogger(__name__)

CONFIG_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)), '..', 'config.ini')

# longest suffix first so '_hz_per_gauss' is not read as '_gauss'
UNIT_SUFFIXES = (
    "_rad_s_per_gauss", "_hz_per_gauss", "_gauss_per_cm", "_per_cm3", "_per_cm2",
    "_erg_cm3", "_rad_s", "_gauss", "_hz", "_cm", "_pm", "_g", "_s",
)
UNITLESS_KEYS = frozenset({
    "preset", "statistics", "pop_fractions", "coherence13", "mode", "points",
    "tolerance", "fast_driving_threshold", "out", "summary",
})
UNIT_KEYS = frozenset(
    {"n_per_cm3", "n2d_per_cm2", "l_cm", "mass_g", "H_drive_gauss", "H0_gauss",
     "gradient_gauss_per_cm", "extent_cm", "span_hz", "center_hz", "fixed_offset_hz",
     "detector_time_constant_s", "omega12_0_rad_s", "f12_0_hz"}
    | {f"gamma_{t}_{u}" for t in ("d", "p") for u in ("rad_s_per_gauss", "hz_per_gauss")}
    | {f"lambda_{k}_erg_cm3" for k in LAMBDA_KEYS}
    | {f"a_{k}_pm" for k in LAMBDA_KEYS}
)


@dataclass(frozen=True)
class Settings:
    """Numerical and output settings resolved from defaults, config.ini, the run config and the CLI."""

    tolerance: float = DEFAULT_TOLERANCE
    fast_driving_threshold: float = 10.0
    detector_time_constant_s: float = 1.0
    threads: int = 0
    points: int = DEFAULT_POINTS
    span_factor: float = DEFAULT_SPAN_FACTOR
    baseline_factor: float = DEFAULT_BASELINE_FACTOR
    spectrum_csv: str = "spectrum.csv"
    summary_json: str = "summary.json"


def load_app_config(config_file_path=CONFIG_FILE):
    """
    Reads config.ini. A missing or unreadable file leaves an empty parser,
    and every lookup then falls back to the built-in defaults.
    """
    config = configparser.ConfigParser()
    try:
        files_read = config.read(config_file_path, encoding="utf-8")
    except configparser.Error as e:
        logger.error(f"Could not parse configuration file '{config_file_path}': {e}. Using built-in defaults.")
        return configparser.ConfigParser()
    if not files_read:
        logger.info(f"Configuration file '{config_file_path}' not found. Using built-in defaults.")
    return config


def settings_from_config(config):
    """Settings from the [Numerics], [Spectrum] and [Output] sections, with fallbacks on every key."""
    defaults = Settings()
    try:
        return Settings(
            tolerance=config.getfloat('Numerics', 'tolerance', fallback=defaults.tolerance),
            fast_driving_threshold=config.getfloat('Numerics', 'fast_driving_threshold', fallback=defaults.fast_driving_threshold),
            detector_time_constant_s=config.getfloat('Numerics', 'detector_time_constant_s', fallback=defaults.detector_time_constant_s),
            threads=config.getint('Numerics', 'threads', fallback=defaults.threads),
            points=config.getint('Spectrum', 'points', fallback=defaults.points),
            span_factor=config.getfloat('Spectrum', 'span_factor', fallback=defaults.span_factor),
            baseline_factor=config.getfloat('Spectrum', 'baseline_factor', fallback=defaults.baseline_factor),
            spectrum_csv=config.get('Output', 'spectrum_csv', fallback=defaults.spectrum_csv),
            summary_json=config.get('Output', 'summary_json', fallback=defaults.summary_json),
        )
    except ValueError as e:
        raise ConfigError(f"invalid value in config.ini: {e}") from e


def apply_overrides(settings, overrides, source):
    """
    Returns `settings` with every non-None entry of `overrides` applied.

    Each override is logged at INFO with its source.
    """
    known = {f.name for f in fields(Settings)}
    changes = {}
    for key, value in overrides.items():
        if value is None or key not in known:
            continue
        if getattr(settings, key) != value:
            logger.info(f"Overridden {key} with {source}: {value}")
        changes[key] = value
    return replace(settings, **changes)


@dataclass(frozen=True)
class RunConfig:
    """
    A parsed run configuration.

    Attributes:
        model (InedorModel): Validated physical model.
        profile (FieldProfile): Gradient and sample extent.
        preset (str | None): Preset the parameters started from.
        params (HydrogenParams | None): Preset parameters, when a preset was used.
        mode (SweepMode | None), points, span_hz, center_hz, fixed_offset_hz: Sweep grid.
        tolerance, fast_driving_threshold, detector_time_constant_s: Numerical overrides.
        out, summary (str | None): Output paths.
    """

    model: object
    profile: FieldProfile
    preset: str = None
    params: object = None
    mode: SweepMode = None
    points: int = None
    span_hz: float = None
    center_hz: float = 0.0
    fixed_offset_hz: float = 0.0
    tolerance: float = None
    fast_driving_threshold: float = None
    detector_time_constant_s: float = None
    out: str = None
    summary: str = None

    def settings_overrides(self):
        return {
            "tolerance": self.tolerance,
            "fast_driving_threshold": self.fast_driving_threshold,
            "detector_time_constant_s": self.detector_time_constant_s,
            "points": self.points,
            "spectrum_csv": self.out,
            "summary_json": self.summary,
        }


def check_keys(data):
    """
    Rejects keys outside the accepted set.

    Raises:
        ConfigError: Naming the offending key, and its unit suffix when the suffix is not a declared unit.
    """
    for key in data:
        if key in UNITLESS_KEYS or key in UNIT_KEYS:
            continue
        suffix = next((s for s in UNIT_SUFFIXES if key.endswith(s)), None)
        if suffix is None and "_" in key:
            raise ConfigError(f"unknown key {key!r}: unit suffix '_{key.rsplit('_', 1)[1]}' is not a declared unit")
        raise ConfigError(f"unknown key {key!r}")


def _number(data, key):
    value = data[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number, got {value!r}")
    return float(value)


def _optional(data, key, default=None):
    return _number(data, key) if key in data else default


def _gamma(data, name, default):
    rad = f"gamma_{name}_rad_s_per_gauss"
    hz = f"gamma_{name}_hz_per_gauss"
    if rad in data and hz in data:
        raise ConfigError(f"give either {rad} or {hz}, not both")
    if rad in data:
        return _number(data, rad)
    if hz in data:
        return 2.0 * math.pi * _number(data, hz)
    if default is None:
        raise ConfigError(f"missing {rad} (or {hz})")
    return default


def _density(data, default):
    if "n_per_cm3" in data and ("n2d_per_cm2" in data or "l_cm" in data):
        raise ConfigError("give either n_per_cm3 or n2d_per_cm2 with l_cm, not both")
    if "n_per_cm3" in data:
        return _number(data, "n_per_cm3")
    if "n2d_per_cm2" in data or "l_cm" in data:
        if not ("n2d_per_cm2" in data and "l_cm" in data):
            raise ConfigError("n2d_per_cm2 and l_cm must be given together")
        l = _number(data, "l_cm")
        if not l > 0:
            raise NonPositiveLength(f"l_cm must be > 0, got {l!r}")
        return _number(data, "n2d_per_cm2") / l
    if default is None:
        raise ConfigError("missing density: n_per_cm3 or n2d_per_cm2 with l_cm")
    return default


def _lambda_matrix(data, mass, default):
    matrix = dict(default or {})
    for key in LAMBDA_KEYS:
        lam_key, a_key = f"lambda_{key}_erg_cm3", f"a_{key}_pm"
        if lam_key in data and a_key in data:
            raise ConfigError(f"give either {lam_key} or {a_key}, not both")
        if lam_key in data:
            matrix[key] = _number(data, lam_key)
        elif a_key in data:
            matrix[key] = lambda_from_scattering_length(_number(data, a_key) * PM_TO_CM, mass)
    return matrix


def _fractions(data, default):
    if "pop_fractions" not in data:
        if default is None:
            raise ConfigError("missing pop_fractions")
        return default
    value = data["pop_fractions"]
    if not isinstance(value, list) or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in value):
        raise ConfigError(f"pop_fractions must be a list of numbers, got {value!r}")
    return tuple(float(v) for v in value)


def _enum(data, key, enum_cls, default):
    if key not in data:
        return default
    try:
        return enum_cls(data[key])
    except ValueError as e:
        choices = ", ".join(m.value for m in enum_cls)
        raise ConfigError(f"{key} must be one of {choices}, got {data[key]!r}") from e


def parse_run_config(data):
    """
    Builds a RunConfig from a flat JSON object. A preset supplies defaults; explicit keys override it.

    Args:
        data (dict): Decoded JSON object.

    Returns:
        RunConfig

    Raises:
        ConfigError: Unknown key, undeclared unit or malformed value.
        ModelValidationError: If the resulting model violates an invariant.
    """
    if not isinstance(data, dict):
        raise ConfigError("run configuration must be a JSON object")
    check_keys(data)

    preset = data.get("preset")
    base_gas = base_pair = params = None
    if preset is not None:
        base_gas, base_pair, params = preset_hidrogenio.preset_by_name(preset)

    statistics = _enum(data, "statistics", Statistics, base_gas.statistics if base_gas else None)
    if statistics is None:
        raise ConfigError("missing statistics")
    mass = _optional(data, "mass_g", base_gas.mass if base_gas else CONSTANTS.hydrogen_mass)
    if "coherence13" in data:
        coherence = _number(data, "coherence13")
    elif base_gas is not None:
        coherence = base_gas.coherence13
    else:
        raise ConfigError("missing coherence13")

    gas = GasSpec(
        statistics=statistics,
        n_total=_density(data, base_gas.n_total if base_gas else None),
        pop_fractions=_fractions(data, base_gas.pop_fractions if base_gas else None),
        lambda_matrix=_lambda_matrix(data, mass, base_gas.lambda_matrix if base_gas else None),
        coherence13=coherence,
        mass=mass,
    )

    if "omega12_0_rad_s" in data and "f12_0_hz" in data:
        raise ConfigError("give either omega12_0_rad_s or f12_0_hz, not both")
    if "f12_0_hz" in data:
        omega12 = 2.0 * math.pi * _number(data, "f12_0_hz")
    else:
        omega12 = _optional(data, "omega12_0_rad_s", base_pair.omega12_0_at_H0 if base_pair else 0.0)

    def pair_field(key, attr):
        if key in data:
            return _number(data, key)
        if base_pair is None:
            raise ConfigError(f"missing {key}")
        return getattr(base_pair, attr)

    pair = ResonancePair(
        gamma_d=_gamma(data, "d", base_pair.gamma_d if base_pair else None),
        gamma_p=_gamma(data, "p", base_pair.gamma_p if base_pair else None),
        omega12_0_at_H0=omega12,
        H_drive=pair_field("H_drive_gauss", "H_drive"),
        H0=pair_field("H0_gauss", "H0"),
    )
    model = validate(gas, pair)
    profile = FieldProfile(
        gradient_abs=_optional(data, "gradient_gauss_per_cm", 1.0),
        extent=_optional(data, "extent_cm", math.inf),
    )

    points = data.get("points")
    if points is not None and (isinstance(points, bool) or not isinstance(points, int)):
        raise ConfigError(f"points must be an integer, got {points!r}")
    for key in ("out", "summary"):
        if key in data and not isinstance(data[key], str):
            raise ConfigError(f"{key} must be a path string, got {data[key]!r}")

    run = RunConfig(
        model=model,
        profile=profile,
        preset=preset,
        params=params,
        mode=_enum(data, "mode", SweepMode, None),
        points=points,
        span_hz=_optional(data, "span_hz"),
        center_hz=_optional(data, "center_hz", 0.0),
        fixed_offset_hz=_optional(data, "fixed_offset_hz", 0.0),
        tolerance=_optional(data, "tolerance"),
        fast_driving_threshold=_optional(data, "fast_driving_threshold"),
        detector_time_constant_s=_optional(data, "detector_time_constant_s"),
        out=data.get("out"),
        summary=data.get("summary"),
    )
    logger.info(f"Run configuration parsed: preset={preset}, n={gas.n_total:.6g} cm^-3, ΔH_c={model.delta_H_c:.6g} G")
    return run


def load_run_config(path):
    """
    Reads and parses a flat-JSON run configuration file.

    Raises:
        ConfigError: If the file is missing, is not valid JSON, or fails parsing.
    """
    try:
        with open(path, 'r', encoding="utf-8") as f:
            data = json.load(f)
    except FileNotFoundError as e:
        raise ConfigError(f"run configuration '{path}' not found") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"error decoding JSON from run configuration '{path}': {e}") from e
    logger.info(f"Loaded run configuration from {path}")
    return parse_run_config(data)


def run_config_from_preset(name):
    return parse_run_config({"preset": name})


def serialize_run_config(run):
    """
    Fully resolved run configuration as a flat dict in canonical units (no preset indirection).

    Re-parsing the result yields an equal model and profile.
    """
    gas, pair = run.model.gas, run.model.pair
    data = {
        "statistics": gas.statistics.value,
        "n_per_cm3": gas.n_total,
        "pop_fractions": list(gas.pop_fractions),
    }
    for key in LAMBDA_KEYS:
        if key in gas.lambda_matrix:
            data[f"lambda_{key}_erg_cm3"] = gas.lambda_matrix[key]
    data.update({
        "coherence13": gas.coherence13,
        "mass_g": gas.mass,
        "gamma_d_rad_s_per_gauss": pair.gamma_d,
        "gamma_p_rad_s_per_gauss": pair.gamma_p,
        "omega12_0_rad_s": pair.omega12_0_at_H0,
        "H_drive_gauss": pair.H_drive,
        "H0_gauss": pair.H0,
        "gradient_gauss_per_cm": run.profile.gradient_abs,
    })
    if not math.isinf(run.profile.extent):
        data["extent_cm"] = run.profile.extent
    if run.mode is not None:
        data["mode"] = run.mode.value
    optional = {
        "points": run.points,
        "span_hz": run.span_hz,
        "center_hz": run.center_hz or None,
        "fixed_offset_hz": run.fixed_offset_hz or None,
        "tolerance": run.tolerance,
        "fast_driving_threshold": run.fast_driving_threshold,
        "detector_time_constant_s": run.detector_time_constant_s,
        "out": run.out,
        "summary": run.summary,
    }
    data.update({k: v for k, v in optional.items() if v is not None})
    return data
