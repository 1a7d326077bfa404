"""Módulo para gravar os artefatos de saída (CSV do espectro, JSON de resumo) de forma atômica."""

import csv
import io
import json
import logging
import math
import os

from .erros import IoError

# Configure logger for this module
logger = logging.getLogger(__name__)

SPECTRUM_HEADER = ("sweep_offset_hz", "amplitude_arb")
BOUNDS_HEADER = ("h_gauss", "lower_hz", "upper_hz")
ORACLE_HEADER = ("x_lo", "x_hi", "empirical_weight", "analytic_weight")
SCAN_HEADER = ("factor", "width_hz", "baseline")
SUMMARY_KEYS = ("delta_H_c_gauss", "h_star_gauss", "width_drive_hz", "width_probe_hz", "max_to_min_hz", "baseline", "warnings")


def format_number(value):
    """12 significant digits, '.' as decimal point, independent of locale."""
    return f"{value:.12g}"


def write_atomic(path, text):
    """
    Writes `text` to `path` through a temporary file and os.replace.

    Raises:
        IoError: If writing or renaming fails; the temporary file is removed.
    """
    temp_file_path = f"{path}.tmp"
    try:
        with open(temp_file_path, 'w', encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(temp_file_path, path)
    except OSError as e:
        if os.path.exists(temp_file_path):
            try:
                os.remove(temp_file_path)
            except OSError as remove_e:
                logger.error(f"Error cleaning up temporary file {temp_file_path}: {remove_e}")
        raise IoError(f"could not write {path}: {e}") from e
    logger.info(f"Successfully wrote {path}")
    return path


def csv_text(header, rows):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([cell if isinstance(cell, str) else format_number(cell) for cell in row])
    return buffer.getvalue()


def spectrum_rows(result):
    """(offset in Hz, baseline-normalized amplitude) per sample, offsets ascending."""
    return [(offset / (2.0 * math.pi), amplitude) for offset, amplitude in zip(result.offsets, result.normalized())]


def write_spectrum_csv(result, path):
    """Spectrum CSV with header `sweep_offset_hz,amplitude_arb`, one row per sample, LF line endings."""
    return write_atomic(path, csv_text(SPECTRUM_HEADER, spectrum_rows(result)))


def bounds_rows(table):
    two_pi = 2.0 * math.pi
    return [(h, lo / two_pi, up / two_pi) for h, lo, up in zip(table.h, table.lower, table.upper)]


def write_bounds_csv(table, path):
    return write_atomic(path, csv_text(BOUNDS_HEADER, bounds_rows(table)))


def write_oracle_csv(rows, path=None):
    """Writes the oracle bin table to `path`, or returns it as text when `path` is None."""
    text = csv_text(ORACLE_HEADER, rows)
    if path is None:
        return text
    return write_atomic(path, text)


def write_scan_csv(fit, path):
    rows = list(zip(fit.factors, fit.widths_hz, fit.baselines))
    return write_atomic(path, csv_text(SCAN_HEADER, rows))


def build_summary(model, width=None, metrics=None, baseline=None, warnings=()):
    """
    Summary mapping with the keys in SUMMARY_KEYS order. Missing quantities are null.

    Args:
        model (InedorModel): Model of the run.
        width (WidthReport | None): Linewidth prediction.
        metrics (PeakMetrics | None): Numerical extrema of a spectrum.
        baseline (float | None): Spectrum baseline.
        warnings (iterable[str]): Diagnostics gathered during the run.
    """
    return {
        "delta_H_c_gauss": model.delta_H_c,
        "h_star_gauss": None if width is None else width.h_star,
        "width_drive_hz": None if width is None else width.width_drive_hz,
        "width_probe_hz": None if width is None else width.width_probe_hz,
        "max_to_min_hz": None if metrics is None else metrics.distance_hz,
        "baseline": baseline,
        "warnings": list(warnings),
    }


def summary_text(summary):
    ordered = {key: summary.get(key) for key in SUMMARY_KEYS}
    ordered.update({k: v for k, v in summary.items() if k not in ordered})
    return json.dumps(ordered, indent=2, ensure_ascii=False) + "\n"


def write_summary_json(summary, path):
    """Summary JSON with a stable key order."""
    return write_atomic(path, summary_text(summary))


def write_text(text, path):
    return write_atomic(path, text)
