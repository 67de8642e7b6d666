"""Shared fixtures for the root-level test scripts."""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from src.instances import (  # noqa: E402
    Elementary,
    ExtNat,
    GeneratorG,
    IntervalLsc,
    Simplicial,
    make_cu_z,
    make_soft_ray,
    make_softdim,
    make_truncated_ep,
)


@pytest.fixture
def nbar():
    return ExtNat()


@pytest.fixture
def gen():
    return GeneratorG()


@pytest.fixture
def soft_ray():
    return make_soft_ray()


@pytest.fixture
def cu_z():
    return make_cu_z()


@pytest.fixture
def all_presentations():
    """One of each presentation, small enough for exhaustive checks at depth 1."""
    return [
        ExtNat(),
        Elementary(0),
        Elementary(3),
        Simplicial(2),
        make_softdim(2),
        make_truncated_ep(2),
        make_cu_z(),
        make_soft_ray(),
        GeneratorG(),
    ]


@pytest.fixture
def lsc():
    return IntervalLsc()


@pytest.fixture
def quiet_env(monkeypatch, tmp_path):
    """Isolate configuration from the caller's environment and .env file."""
    for name in ("CUFRAISSE_THREADS", "CUFRAISSE_DEPTH", "CUFRAISSE_BOUND", "CUFRAISSE_SEED", "CUFRAISSE_SIDECAR"):
        monkeypatch.delenv(name, raising=False)
    monkeypatch.setenv("CUFRAISSE_OUT", str(tmp_path / "runs"))
    monkeypatch.setenv("LOG_LEVEL", "WARNING")
    monkeypatch.chdir(tmp_path)
    return tmp_path
