import json
import logging

import pytest

from inedor_app.main import run


@pytest.fixture
def cli(tmp_path):
    """Runs the CLI with a config.ini that does not exist, so built-in defaults apply."""
    absent = str(tmp_path / "no-config.ini")

    def invoke(*argv):
        return run(list(argv), config_file_path=absent)

    return invoke


def write_json(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def test_no_command(cli):
    assert cli() == 1


def test_unknown_flag(cli):
    assert cli("spectrum", "--frobnicate") == 1


def test_help(cli, capsys):
    assert cli("--help") == 0
    assert "linewidth" in capsys.readouterr().out


def test_linewidth_prints_the_summary(cli, capsys):
    assert cli("linewidth") == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["delta_H_c_gauss"] == pytest.approx(89.0)
    assert summary["width_drive_hz"] == pytest.approx(359.2, rel=2e-3)
    assert summary["h_star_gauss"] == pytest.approx(5.62e-2, rel=2e-3)
    assert summary["n3_min_per_cm2"] == pytest.approx(1.517e6, rel=2e-3)
    assert summary["source_width_negligible"] is True
    assert summary["warnings"] == []


def test_linewidth_writes_the_summary_file(cli, tmp_path, capsys):
    path = tmp_path / "summary.json"
    assert cli("linewidth", "--preset", "hydrogen-2d-physical-sign", "--summary", str(path)) == 0
    printed = json.loads(capsys.readouterr().out)
    assert json.loads(path.read_text(encoding="utf-8")) == printed
    assert printed["delta_H_c_gauss"] == pytest.approx(-89.0)


def test_spectrum_csv_and_summary(cli, tmp_path):
    out, summary = tmp_path / "spectrum.csv", tmp_path / "summary.json"
    args = ("spectrum", "--points", "21", "--out", str(out), "--summary", str(summary))
    assert cli(*args) == 0
    first = out.read_bytes()
    lines = first.decode("utf-8").splitlines()
    assert len(lines) == 22
    assert lines[0] == "sweep_offset_hz,amplitude_arb"
    assert json.loads(summary.read_text(encoding="utf-8"))["baseline"] > 0.0
    assert cli(*args) == 0
    assert out.read_bytes() == first


def test_spectrum_with_hole_burning(cli, tmp_path):
    out = tmp_path / "spectrum.csv"
    summary = tmp_path / "summary.json"
    assert cli("spectrum", "--points", "11", "--out", str(out), "--summary", str(summary), "--hole-burning") == 0
    assert (tmp_path / "spectrum.hole_burning.csv").exists()
    assert "enhancement" in json.loads(summary.read_text(encoding="utf-8"))


def test_spectrum_to_unwritable_path(cli, tmp_path):
    out = tmp_path / "missing" / "spectrum.csv"
    assert cli("spectrum", "--points", "11", "--out", str(out), "--summary", str(tmp_path / "s.json")) == 2


def test_bounds_csv(cli, tmp_path):
    out = tmp_path / "bounds.csv"
    assert cli("bounds", "--points", "11", "--out", str(out)) == 0
    lines = out.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "h_gauss,lower_hz,upper_hz"
    assert len(lines) == 12


def test_oracle_on_stdout(cli, capsys):
    assert cli("oracle", "--bins", "10", "--samples", "10000") == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("max_relative_deviation,")
    assert float(lines[0].split(",")[1]) < 0.05
    assert lines[1] == "x_lo,x_hi,empirical_weight,analytic_weight"
    assert len(lines) == 12


def test_oracle_rejects_too_few_bins(cli):
    assert cli("oracle", "--bins", "3") == 1


def test_scan_needs_a_decade(cli, tmp_path):
    assert cli("scan", "--parameter", "drive", "--factors", "1", "2", "--out", str(tmp_path / "scan.csv")) == 1


def test_bad_run_config(cli, tmp_path):
    path = tmp_path / "run.json"
    path.write_text("{broken", encoding="utf-8")
    assert cli("linewidth", "--config", str(path)) == 1
    assert cli("linewidth", "--config", write_json(path, {"preset": "hydrogen-2d", "speed_knots": 3})) == 1


def test_run_config_without_contact_shift(cli, tmp_path):
    path = write_json(tmp_path / "run.json", {"preset": "hydrogen-2d", "coherence13": 0.0})
    assert cli("linewidth", "--config", path) == 1


def test_preset_and_config_are_exclusive(cli, tmp_path):
    path = write_json(tmp_path / "run.json", {"preset": "hydrogen-2d"})
    assert cli("linewidth", "--preset", "hydrogen-2d", "--config", path) == 1


def test_unopenable_log_file_still_returns_an_exit_code(tmp_path, capsys):
    config = tmp_path / "config.ini"
    config.write_text(f"[Logging]\nlog_file = {tmp_path / 'missing' / 'inedor.log'}\nlog_level = INFO\n", encoding="utf-8")
    assert run(["linewidth"], config_file_path=str(config)) == 0
    assert json.loads(capsys.readouterr().out)["delta_H_c_gauss"] == pytest.approx(89.0)


def test_bounds_takes_points_and_out_from_the_run_config(cli, tmp_path):
    out = tmp_path / "from-config.csv"
    path = write_json(tmp_path / "run.json", {"preset": "hydrogen-2d", "points": 7, "out": str(out)})
    assert cli("bounds", "--config", path) == 0
    assert len(out.read_text(encoding="utf-8").splitlines()) == 8


def test_oracle_takes_tolerance_and_out_from_the_run_config(cli, tmp_path, capsys, caplog):
    out = tmp_path / "oracle.csv"
    path = write_json(tmp_path / "run.json", {"preset": "hydrogen-2d", "tolerance": 1e-8, "out": str(out)})
    with caplog.at_level(logging.INFO):
        assert cli("oracle", "--config", path, "--bins", "10", "--samples", "10000") == 0
    assert capsys.readouterr().out.startswith("max_relative_deviation,")
    assert len(out.read_text(encoding="utf-8").splitlines()) == 11
    assert "Overridden tolerance with run config: 1e-08" in caplog.text
