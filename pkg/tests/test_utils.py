import logging
import os
from dataclasses import dataclass

import pytest

from src.errors import ConfigError
from src.models import SweepRecord
from src.utils.config_loader import SECTIONS, load_config, load_environment, section_config
from src.utils.logger import setup_logger
from src.utils.plotting import SvgLinePlot, plot_curve
from src.utils.stats import fit_loglog_slope, format_report, sweep_summary


def test_load_config_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_config(str(tmp_path / "none.yaml"))


def test_load_config_fills_sections(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("spectra:\n  N: 100\n")
    config = load_config(str(path))
    assert config["spectra"] == {"N": 100}
    assert set(config) == set(SECTIONS)


@pytest.mark.parametrize("text", ["spectra: [1, 2\n", "- a\n- b\n", "strategy:\n  x: 1\n"])
def test_load_config_errors(tmp_path, text):
    path = tmp_path / "config.yaml"
    path.write_text(text)
    with pytest.raises(ConfigError):
        load_config(str(path))


def test_environment_overrides(tmp_path):
    env = tmp_path / ".env"
    env.write_text("ZONALSTAB_WORKERS=3\nZONALSTAB_OUTPUT_DIR=/tmp/zs\n")
    try:
        merged = load_environment(str(env), {"system": {"workers": 1}, "output": {}})
        assert merged["system"]["workers"] == 3
        assert merged["output"]["directory"] == "/tmp/zs"
    finally:
        os.environ.pop("ZONALSTAB_WORKERS", None)
        os.environ.pop("ZONALSTAB_OUTPUT_DIR", None)


def test_environment_rejects_bad_workers(tmp_path):
    env = tmp_path / ".env"
    env.write_text("ZONALSTAB_WORKERS=many\n")
    try:
        with pytest.raises(ConfigError):
            load_environment(str(env), {})
    finally:
        os.environ.pop("ZONALSTAB_WORKERS", None)


@dataclass
class _Section:
    size: int = 1
    name: str = "x"


def test_section_config_overrides_and_errors():
    config = {"spectra": {"size": 4}}
    assert section_config(config, "spectra", _Section) == _Section(size=4)
    assert section_config(config, "spectra", _Section, size=None, name="y") == _Section(size=4, name="y")
    assert section_config({}, "spectra", _Section) == _Section()
    with pytest.raises(ConfigError):
        section_config({"spectra": {"colour": "red"}}, "spectra", _Section)


def test_fit_loglog_slope():
    x = [1.0, 2.0, 4.0, 8.0]
    assert fit_loglog_slope(x, [3.0 / v for v in x]) == pytest.approx(-1.0)
    assert fit_loglog_slope(x, [v ** 2 for v in x]) == pytest.approx(2.0)
    with pytest.raises(ValueError):
        fit_loglog_slope([1.0], [1.0])
    with pytest.raises(ValueError):
        fit_loglog_slope([1.0, 2.0], [0.0, 1.0])


def test_sweep_summary():
    records = [
        SweepRecord(omega=0.0, max_imag=0.3, unstable_count=2, tau=1e-8),
        SweepRecord(omega=0.5, max_imag=0.1, unstable_count=1, tau=1e-8),
        SweepRecord(omega=1.0, max_imag=0.0, unstable_count=0, tau=1e-8),
        SweepRecord(omega=1.5, max_imag=0.0, unstable_count=0, tau=1e-8, status="failed"),
    ]
    summary = sweep_summary(records)
    assert summary["points"] == 4
    assert summary["unstable_points"] == 2
    assert summary["failed_points"] == 1
    assert summary["peak_max_imag"] == 0.3
    assert summary["last_unstable_omega"] == 0.5


def test_format_report():
    text = format_report("Summary", {"P3(V1)": {"omega_star": 0.41234567, "ok": True}, "note": "done"})
    lines = text.splitlines()
    assert lines[:2] == ["Summary", "-------"]
    assert "  omega_star: 0.412346" in lines
    assert "  ok: True" in lines
    assert lines[-1] == "  done"


def test_svg_plot_render():
    plot = SvgLinePlot(title="sweep", xlabel="Omega", ylabel="max Im", log_y=True)
    plot.add_series([0.0, 1.0, 2.0], [1e-2, 1e-4, 0.0], "P3")
    svg = plot.render()
    texts = [t.text for t in svg.iter("text")]
    assert "sweep" in texts and "Omega" in texts and "P3" in texts
    assert any(label.startswith("1e-16") for label in texts)
    assert len([p for p in svg.iter("path") if p.get("stroke") == "#1f77b4"]) == 1


def test_svg_plot_rejects_mismatched_series():
    with pytest.raises(ValueError):
        SvgLinePlot().add_series([1.0, 2.0], [1.0])


def test_plot_curve_writes_file(tmp_path):
    path = tmp_path / "curve.svg"
    plot_curve(str(path), [0, 1, 2], [0.0, 1.0, 4.0], title="t")
    text = path.read_text()
    assert text.startswith("<?xml")
    assert "<svg" in text or ":svg" in text


def test_setup_logger_is_idempotent():
    name = "ZonalStab.TestLogger"
    first = setup_logger(name=name, log_level="debug")
    second = setup_logger(name=name, log_level=logging.WARNING)
    assert first is second
    assert len(first.handlers) == 1
    assert first.level == logging.WARNING


def test_setup_logger_stage_levels():
    name = "ZonalStab.TestStages"
    logger = setup_logger(name=name, log_level="info", levels={"Sweep": "warning", "Dynamics": logging.DEBUG})
    assert logger.level == logging.INFO
    assert logging.getLogger(f"{name}.Sweep").level == logging.WARNING
    assert logging.getLogger(f"{name}.Dynamics").getEffectiveLevel() == logging.DEBUG
    assert not logging.getLogger(f"{name}.Sweep").isEnabledFor(logging.INFO)
    # levels still apply once the handlers exist
    setup_logger(name=name, levels={"Sweep": "error"})
    assert logging.getLogger(f"{name}.Sweep").level == logging.ERROR
    assert len(logger.handlers) == 1


def test_load_config_accepts_extra_sections(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("sweep:\n  model: p3\n")
    with pytest.raises(ConfigError):
        load_config(str(path))
    config = load_config(str(path), SECTIONS + ("sweep", "nconv"))
    assert config["sweep"] == {"model": "p3"}
    assert config["nconv"] == {}
    path.write_text("sweep: p3\n")
    with pytest.raises(ConfigError):
        load_config(str(path), SECTIONS + ("sweep",))
