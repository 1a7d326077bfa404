"""Módulo da suíte de reprodução: recalcula os números de referência do hidrogênio 2D e gera um relatório markdown."""

import logging
import math
from dataclasses import dataclass

from . import espectro, largura_linha, preset_hidrogenio
from .erros import ReproFailure
from .gerenciador_saida import write_text
from .modelo import FieldProfile

logger = logging.getLogger(__name__)

QUOTED = "quoted"
DERIVED = "derived"
PINNED = "pinned"

_CLI = "python -m inedor_app.main"


@dataclass(frozen=True)
class ReproCase:
    """
    One reference number and how to reproduce it.

    Attributes:
        name (str): Case identifier.
        invocation (str): CLI command that prints or writes the value.
        expected (float): Reference value.
        rel_tolerance (float): Accepted relative deviation.
        provenance (str): 'quoted' (published number), 'derived' (arithmetic) or 'pinned' (input).
        unit (str): Unit of `expected`.
    """

    name: str
    invocation: str
    expected: float
    rel_tolerance: float
    provenance: str
    unit: str = ""


@dataclass(frozen=True)
class ReproOutcome:
    case: ReproCase
    value: float

    @property
    def deviation(self):
        return abs(self.value - self.case.expected) / abs(self.case.expected)

    @property
    def passed(self):
        return math.isfinite(self.value) and self.deviation <= self.case.rel_tolerance


CASES = (
    ReproCase("delta-Hc-89G", f"{_CLI} linewidth --preset hydrogen-2d", 89.0, 1e-12, PINNED, "G"),
    ReproCase("density-6e19", f"{_CLI} linewidth --preset hydrogen-2d", 6e19, 1e-12, QUOTED, "cm^-3"),
    ReproCase("coefficient-1.5e-18", f"{_CLI} linewidth --preset hydrogen-2d", 1.5e-18, 1.0 / 3.0, QUOTED, "G·cm³"),
    ReproCase("h-5.7e-2G", f"{_CLI} linewidth --preset hydrogen-2d", 5.7e-2, 0.03, QUOTED, "G"),
    ReproCase("width-350Hz", f"{_CLI} linewidth --preset hydrogen-2d", 350.0, 0.05, QUOTED, "Hz"),
    ReproCase("bounds-extremum", f"{_CLI} bounds --preset hydrogen-2d", 0.0843, 0.01, DERIVED, "G"),
    ReproCase("numeric-330Hz", f"{_CLI} spectrum --preset hydrogen-2d --mode drive", 330.0, 0.15, QUOTED, "Hz"),
    ReproCase("peak-position", f"{_CLI} spectrum --preset hydrogen-2d --mode drive", -359.0, 0.15, DERIVED, "Hz"),
    ReproCase("flat-wings", f"{_CLI} spectrum --preset hydrogen-2d --mode drive", 1.0, 0.01, DERIVED, "baseline"),
)


@dataclass(frozen=True)
class ReproReport:
    outcomes: tuple

    @property
    def failed(self):
        return [o.case.name for o in self.outcomes if not o.passed]

    def to_markdown(self):
        lines = [
            "# INEDOR reproduction report",
            "",
            "| case | value | expected | tolerance | provenance | result | invocation |",
            "|---|---|---|---|---|---|---|",
        ]
        for o in self.outcomes:
            c = o.case
            verdict = "PASS" if o.passed else "FAIL"
            lines.append(
                f"| {c.name} | {o.value:.6g} {c.unit} | {c.expected:.6g} {c.unit} | ±{100 * c.rel_tolerance:.3g}% "
                f"| {c.provenance} | {verdict} | `{c.invocation}` |"
            )
        lines.append("")
        lines.append(f"{len(self.outcomes) - len(self.failed)}/{len(self.outcomes)} cases passed.")
        return "\n".join(lines) + "\n"


def _measure(points, threads, tolerance):
    """Computes every value the cases check, keyed by case name."""
    model, params = preset_hidrogenio.hydrogen_model()
    _, coeff = preset_hidrogenio.contact_field_shift(params.n_2d, params.l, params.delta_a, model.pair.gamma_p)
    width = largura_linha.width_closed_form(model)
    table = largura_linha.bounds_table(model, [width.h_star])

    spec = espectro.default_sweep(model, points=points)
    result = espectro.sweep(spec, model, FieldProfile(gradient_abs=1.0), tolerance=tolerance, threads=threads)
    metrics = result.metrics
    normalized = result.normalized()
    wings = max(abs(normalized[0] - 1.0), abs(normalized[-1] - 1.0))

    return {
        "delta-Hc-89G": abs(model.delta_H_c),
        "density-6e19": params.n_3d,
        "coefficient-1.5e-18": coeff,
        "h-5.7e-2G": width.h_star,
        "width-350Hz": width.width_drive_hz,
        "bounds-extremum": math.nan if table.omega_extremum is None else table.omega_extremum / model.pair.gamma_p,
        "numeric-330Hz": math.nan if metrics is None else metrics.distance_hz,
        "peak-position": math.nan if metrics is None else metrics.max_position_hz,
        "flat-wings": 1.0 + wings,
    }


def run_repro_suite(report_path=None, points=espectro.DEFAULT_POINTS, threads=None, tolerance=1e-6, cases=CASES):
    """
    Recomputes every case and compares it with its reference value.

    Args:
        report_path (str, optional): Where to write the markdown report; it is
            written before any failure is raised.

    Returns:
        ReproReport

    Raises:
        ReproFailure: Listing the cases outside tolerance.
    """
    logger.info(f"Running {len(cases)} reproduction cases")
    values = _measure(points, threads, tolerance)
    outcomes = tuple(ReproOutcome(case, float(values[case.name])) for case in cases)
    for o in outcomes:
        log = logger.info if o.passed else logger.error
        log(f"{o.case.name}: {o.value:.6g} {o.case.unit} (expected {o.case.expected:.6g}, ±{100 * o.case.rel_tolerance:.3g}%)")
    report = ReproReport(outcomes)
    if report_path:
        write_text(report.to_markdown(), report_path)
    if report.failed:
        raise ReproFailure(report.failed)
    return report
