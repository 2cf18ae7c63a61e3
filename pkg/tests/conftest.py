"""Shared fixtures."""

import os
from pathlib import Path

import numpy as np
import pytest
from typer.testing import CliRunner

DEMO_DIR = Path(__file__).resolve().parent.parent / "data" / "demo"


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240607)


@pytest.fixture
def demo_dir() -> Path:
    return DEMO_DIR


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture(autouse=True)
def isolated_home(tmp_path, monkeypatch):
    """Keep config lookups away from the real ~/.svdperturb and SVDPERTURB_* variables."""
    monkeypatch.setattr(Path, "home", lambda: tmp_path)
    for key in [k for k in os.environ if k.startswith("SVDPERTURB_")]:
        monkeypatch.delenv(key)
