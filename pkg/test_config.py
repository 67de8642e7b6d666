#!/usr/bin/env python3
"""
Tests for environment-driven configuration and flag overrides.
"""

import pytest

from src.config import AppConfig, load_config
from src.utils.errors import ConfigurationError


def test_defaults(quiet_env, monkeypatch):
    monkeypatch.delenv("CUFRAISSE_OUT")
    monkeypatch.delenv("LOG_LEVEL")
    config = AppConfig.from_env()
    assert (config.engine.threads, config.engine.depth, config.engine.bound, config.engine.seed) == (1, 4, 64, 0)
    assert config.output.out_dir == "./runs"
    assert config.output.write_sidecar is True
    assert config.log_level == "INFO"


def test_environment_values(quiet_env, monkeypatch):
    monkeypatch.setenv("CUFRAISSE_THREADS", "4")
    monkeypatch.setenv("CUFRAISSE_SEED", "9")
    monkeypatch.setenv("CUFRAISSE_SIDECAR", "no")
    monkeypatch.setenv("LOG_LEVEL", "debug")
    config = load_config()
    assert config.engine.threads == 4
    assert config.engine.seed == 9
    assert config.output.write_sidecar is False
    assert config.output.out_dir == str(quiet_env / "runs")
    assert config.log_level == "DEBUG"


@pytest.mark.parametrize("name,value", [
    ("CUFRAISSE_BOUND", "many"),
    ("CUFRAISSE_BOUND", "0"),
    ("CUFRAISSE_THREADS", "0"),
    ("CUFRAISSE_DEPTH", "-1"),
])
def test_invalid_integers_are_rejected(quiet_env, monkeypatch, name, value):
    monkeypatch.setenv(name, value)
    with pytest.raises(ConfigurationError) as info:
        AppConfig.from_env()
    assert name in str(info.value)


def test_flags_override_the_environment(quiet_env, monkeypatch):
    monkeypatch.setenv("CUFRAISSE_DEPTH", "3")
    config = AppConfig.from_env().with_overrides(depth=1, out_dir="elsewhere")
    assert config.engine.depth == 1
    assert config.engine.bound == 64
    assert config.output.out_dir == "elsewhere"
    unchanged = config.with_overrides()
    assert unchanged == config


def test_dotenv_in_the_working_directory(quiet_env, monkeypatch):
    # registers the variable with monkeypatch so teardown removes what load_dotenv sets
    monkeypatch.setenv("CUFRAISSE_SEED", "0")
    monkeypatch.delenv("CUFRAISSE_SEED")
    (quiet_env / ".env").write_text("CUFRAISSE_SEED=5\nCUFRAISSE_DEPTH=2\n", encoding="utf-8")
    monkeypatch.setenv("CUFRAISSE_DEPTH", "3")
    config = load_config()
    assert config.engine.seed == 5
    assert config.engine.depth == 3
