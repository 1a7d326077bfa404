"""Ponto de entrada principal do simulador INEDOR."""

import argparse
import json
import logging
import math
import os
import sys

import numpy as np

from . import espectro, largura_linha, oraculo, preset_hidrogenio, reproducao
from .erros import EXIT_NUMERICAL, EXIT_OK, EXIT_VALIDATION, InedorError
from .forma_linha import width_field_scale
from .gerenciador_config import (
    CONFIG_FILE,
    apply_overrides,
    load_app_config,
    load_run_config,
    run_config_from_preset,
    settings_from_config,
)
from .gerenciador_saida import (
    build_summary,
    summary_text,
    write_bounds_csv,
    write_oracle_csv,
    write_scan_csv,
    write_spectrum_csv,
    write_summary_json,
)
from .logger_config import setup_logger

logger = logging.getLogger(__name__)

BOUNDS_FIELD_FACTOR = 4.0
BOUNDS_CSV = "bounds.csv"


class UsageError(Exception):
    """Raised instead of argparse's own exit so bad flags map to exit code 1."""


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise UsageError(message)


def _add_model_source(parser):
    group = parser.add_mutually_exclusive_group()
    group.add_argument('--preset', choices=preset_hidrogenio.PRESET_NAMES, default=None,
                       help=f'Named parameter set (default: {preset_hidrogenio.PRESET_DEFAULT}).')
    group.add_argument('--config', type=str, default=None,
                       help='Flat JSON run configuration with unit-suffixed keys.')


def build_parser():
    parser = _ArgumentParser(prog="inedor", description="INEDOR: interaction-enhanced double resonance spectra of cold gases.")
    subparsers = parser.add_subparsers(dest='command')

    spectrum = subparsers.add_parser('spectrum', help='Compute a gradient-integrated spectrum and write it as CSV.')
    _add_model_source(spectrum)
    spectrum.add_argument('--mode', choices=[m.value for m in espectro.SweepMode], default=None,
                          help='Swept frequency (default: drive).')
    spectrum.add_argument('--points', type=int, default=None, help='Number of grid points.')
    spectrum.add_argument('--span-hz', type=float, default=None, help='Full sweep width in Hz.')
    spectrum.add_argument('--out', type=str, default=None, help='Spectrum CSV path.')
    spectrum.add_argument('--summary', type=str, default=None, help='Summary JSON path.')
    spectrum.add_argument('--tolerance', type=float, default=None, help='Relative quadrature tolerance.')
    spectrum.add_argument('--hole-burning', action='store_true',
                          help='Also write the conventional hole-burning reference spectrum.')

    bounds = subparsers.add_parser('bounds', help='Tabulate the lower and upper bound of the probe frequency.')
    _add_model_source(bounds)
    bounds.add_argument('--points', type=int, default=None, help='Number of field grid points.')
    bounds.add_argument('--probe-offset-hz', type=float, default=0.0, help='Probe detuning from the zero-density line (Hz).')
    bounds.add_argument('--out', type=str, default=None, help=f'Bounds CSV path (default: {BOUNDS_CSV}).')

    linewidth = subparsers.add_parser('linewidth', help='Predict the linewidth; the JSON summary is printed on stdout.')
    _add_model_source(linewidth)
    linewidth.add_argument('--summary', type=str, default=None, help='Also write the summary JSON to this path.')

    oracle = subparsers.add_parser('oracle', help='Compare a time-domain histogram with the analytic lineshape.')
    _add_model_source(oracle)
    oracle.add_argument('--h-over-hd', type=float, default=1.0, help='Field offset in units of the drive field.')
    oracle.add_argument('--bins', type=int, default=100, help='Number of bins.')
    oracle.add_argument('--samples', type=int, default=1_000_000, help='Time samples per Rabi period.')
    oracle.add_argument('--out', type=str, default=None, help='Bin table CSV path (stdout when omitted).')

    scan = subparsers.add_parser('scan', help='Fit the scaling exponent of the numerical width.')
    _add_model_source(scan)
    scan.add_argument('--parameter', choices=[p.value for p in largura_linha.ScanParameter], required=True)
    scan.add_argument('--factors', type=float, nargs='+', default=None, help='Multiplicative factors (default: 0.5 1 2 5).')
    scan.add_argument('--points', type=int, default=None, help='Grid points per spectrum.')
    scan.add_argument('--out', type=str, default=None, help='Scan CSV path (default: scan_<parameter>.csv).')

    repro = subparsers.add_parser('repro', help='Run the reproduction suite and write a markdown report.')
    repro.add_argument('--report', type=str, default='repro_report.md', help='Markdown report path.')
    repro.add_argument('--points', type=int, default=None, help='Grid points of the reference spectrum.')
    return parser


def _load_run(args):
    if getattr(args, 'config', None):
        return load_run_config(args.config)
    return run_config_from_preset(args.preset or preset_hidrogenio.PRESET_DEFAULT)


def _threads(settings):
    return settings.threads if settings.threads > 0 else None


def _width(model):
    """Exact width when a stationary point exists, closed form otherwise."""
    return largura_linha.width_exact(model) or largura_linha.width_closed_form(model)


def cmd_spectrum(args, settings):
    run = _load_run(args)
    settings = apply_overrides(settings, run.settings_overrides(), "run config")
    settings = apply_overrides(settings, {"points": args.points, "tolerance": args.tolerance,
                                          "spectrum_csv": args.out, "summary_json": args.summary}, "command line argument")
    model, profile = run.model, run.profile
    mode = espectro.SweepMode(args.mode) if args.mode else (run.mode or espectro.SweepMode.DRIVE)

    span_hz = args.span_hz if args.span_hz is not None else run.span_hz
    if span_hz is None:
        span = espectro.default_sweep(model, mode, settings.points, settings.span_factor).span
    else:
        span = 2.0 * math.pi * span_hz
    spec = espectro.SweepSpec(mode=mode, center=2.0 * math.pi * run.center_hz, span=span, points=settings.points,
                              fixed_offset=2.0 * math.pi * run.fixed_offset_hz)

    result = espectro.sweep(spec, model, profile, tolerance=settings.tolerance, threads=_threads(settings),
                            detector_time_constant=settings.detector_time_constant_s,
                            fast_driving_threshold=settings.fast_driving_threshold,
                            baseline_factor=settings.baseline_factor)
    write_spectrum_csv(result, settings.spectrum_csv)

    summary = build_summary(model, _width(model), result.metrics, result.baseline, result.warnings)
    if args.hole_burning:
        hb = espectro.hole_burning_sweep(spec, model, profile, settings.baseline_factor)
        root, ext = os.path.splitext(settings.spectrum_csv)
        write_spectrum_csv(hb, f"{root}.hole_burning{ext or '.csv'}")
        summary["enhancement"] = espectro.enhancement(result, hb)
    write_summary_json(summary, settings.summary_json)
    return EXIT_OK


def cmd_bounds(args, settings):
    run = _load_run(args)
    settings = apply_overrides(settings, run.settings_overrides(), "run config")
    settings = apply_overrides(settings, {"points": args.points}, "command line argument")
    model = run.model
    reach = BOUNDS_FIELD_FACTOR * width_field_scale(model)
    h = np.linspace(-reach, reach, settings.points)
    table = largura_linha.bounds_table(model, h, 2.0 * math.pi * args.probe_offset_hz)
    if table.omega_extremum is not None:
        logger.info(f"Upper-bound extremum at {table.omega_extremum / (2.0 * math.pi):.6g} Hz from the zero-density line")
    logger.info(f"Probe crosses the bounds at h = {', '.join(f'{c:.6g}' for c in table.crossings) or 'nowhere'} G")
    write_bounds_csv(table, args.out or run.out or BOUNDS_CSV)
    return EXIT_OK


def cmd_linewidth(args, settings):
    run = _load_run(args)
    settings = apply_overrides(settings, run.settings_overrides(), "run config")
    model = run.model
    closed = largura_linha.width_closed_form(model)
    exact = largura_linha.width_exact(model)
    width = exact or closed
    state, check, ratio = largura_linha.fast_driving_at_h_star(
        model, settings.detector_time_constant_s, settings.fast_driving_threshold)

    warnings = [] if check.passed else [check.message()]
    if abs(model.delta_H_c) < largura_linha.CLOSED_FORM_MIN_RATIO * model.pair.H_drive:
        warnings.append(f"|ΔH_c|/H_d = {abs(model.delta_H_c) / model.pair.H_drive:.3g}: closed-form width is approximate")
    summary = build_summary(model, width, warnings=warnings)
    summary.update({
        "h_star_closed_form_gauss": closed.h_star,
        "width_drive_closed_form_hz": closed.width_drive_hz,
        "h_star_over_H_drive": ratio,
        "omega_eff_at_h_star_rad_s": state.omega_eff,
        "relative_probe_width": width.relative_probe_width,
    })
    if run.params is not None:
        limit = preset_hidrogenio.min_detectable_population(model, run.params)
        summary.update({
            "source_width_negligible": width.source_width_negligible(run.params.source_relative_width),
            "n3_min_per_cm2": limit.n3_min,
            "n3_min_fraction": limit.fraction,
        })

    sys.stdout.write(summary_text(summary))
    if args.summary:
        write_summary_json(summary, args.summary)
    return EXIT_OK


def cmd_oracle(args, settings):
    run = _load_run(args)
    settings = apply_overrides(settings, run.settings_overrides(), "run config")
    model = run.model
    h = args.h_over_hd * model.pair.H_drive
    emp = oraculo.simulate_density(h, model, args.bins, args.samples)
    deviation = oraculo.compare_to_analytic(emp, model, h, tolerance=settings.tolerance)
    rows = oraculo.bin_table(emp, model, tolerance=settings.tolerance)
    sys.stdout.write(f"max_relative_deviation,{deviation:.12g}\n")
    out = args.out or run.out
    if out:
        write_oracle_csv(rows, out)
    else:
        sys.stdout.write(write_oracle_csv(rows))
    return EXIT_OK


def cmd_scan(args, settings):
    run = _load_run(args)
    settings = apply_overrides(settings, run.settings_overrides(), "run config")
    settings = apply_overrides(settings, {"points": args.points}, "command line argument")
    parameter = largura_linha.ScanParameter(args.parameter)
    scan = largura_linha.ScalingScan(parameter, tuple(args.factors)) if args.factors else largura_linha.ScalingScan(parameter)
    fit = largura_linha.scaling_fit(run.model, scan, run.profile, points=settings.points,
                                    tolerance=settings.tolerance, threads=_threads(settings))
    write_scan_csv(fit, args.out or f"scan_{parameter.value}.csv")
    sys.stdout.write(json.dumps({"parameter": parameter.value, "exponent": fit.exponent,
                                 "amplitude_exponent": fit.amplitude_exponent}) + "\n")
    return EXIT_OK


def cmd_repro(args, settings):
    settings = apply_overrides(settings, {"points": args.points}, "command line argument")
    report = reproducao.run_repro_suite(args.report, points=settings.points, threads=_threads(settings),
                                        tolerance=settings.tolerance)
    logger.info(f"All {len(report.outcomes)} reproduction cases passed")
    return EXIT_OK


COMMANDS = {
    'spectrum': cmd_spectrum,
    'bounds': cmd_bounds,
    'linewidth': cmd_linewidth,
    'oracle': cmd_oracle,
    'scan': cmd_scan,
    'repro': cmd_repro,
}


def run(argv=None, config_file_path=CONFIG_FILE):
    """
    Runs one subcommand and returns its exit code.

    0 on success, 1 on invalid input or usage, 2 on numerical or I/O failure.
    """
    config = load_app_config(config_file_path)
    setup_logger(config)

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError:
        return EXIT_VALIDATION
    except SystemExit as e:
        # --help
        return EXIT_OK if e.code in (None, 0) else EXIT_VALIDATION
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_VALIDATION

    logger.info(f"INEDOR {args.command} started")
    try:
        settings = settings_from_config(config)
        code = COMMANDS[args.command](args, settings)
    except InedorError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code
    except Exception as e:
        logger.exception(f"Unexpected error in {args.command}: {e}")
        return EXIT_NUMERICAL
    logger.info(f"INEDOR {args.command} finished")
    return code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
