"""
Tests for run configuration
"""

import pytest

from pigraph.config import ExportFormat, RunConfig
from pigraph.model.clocks import ClockModel
from pigraph.semantics.gc import GcMode


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for var in ("PIGRAPH_MAX_STATES", "PIGRAPH_CLOCK", "PIGRAPH_GC"):
        monkeypatch.delenv(var, raising=False)


def test_defaults():
    """Causal clock, per-step gc, generous guard"""
    config = RunConfig()
    assert config.clock_model == ClockModel.CAUSAL
    assert config.gc_mode == GcMode.STEP
    assert config.max_states == 100000
    assert config.format == ExportFormat.DOT
    assert config.workers == 1


def test_logical_clock_forces_gc_off():
    """Collection is undefined for logical clocks"""
    config = RunConfig(clock_model="logical", gc_mode="obs")
    assert config.gc_mode == GcMode.OFF


def test_bounds_are_validated():
    """Guards and worker counts must be positive"""
    with pytest.raises(ValueError):
        RunConfig(max_states=0)
    with pytest.raises(ValueError):
        RunConfig(workers=0)
    with pytest.raises(ValueError):
        RunConfig(clock_model="vector")


def test_from_env(monkeypatch):
    """PIGRAPH_* variables override defaults"""
    monkeypatch.setenv("PIGRAPH_MAX_STATES", "42")
    monkeypatch.setenv("PIGRAPH_GC", "obs")
    config = RunConfig.from_env()
    assert config.max_states == 42
    assert config.gc_mode == GcMode.OBS


def test_layering(tmp_path, monkeypatch):
    """File < environment < explicit overrides"""
    path = tmp_path / "pigraph.yaml"
    path.write_text("max_states: 7\nseed: 3\nformat: json\n", encoding="utf-8")
    assert RunConfig.from_file(str(path)).max_states == 7

    monkeypatch.setenv("PIGRAPH_MAX_STATES", "9")
    config = RunConfig.load(str(path), seed=None, steps=4)
    assert config.max_states == 9
    assert config.seed == 3
    assert config.steps == 4
    assert config.format == ExportFormat.JSON

    assert RunConfig.load(str(path), max_states=11).max_states == 11


def test_missing_file(tmp_path):
    """A config path that does not exist is an error"""
    with pytest.raises(ValueError):
        RunConfig.from_file(str(tmp_path / "absent.yaml"))
