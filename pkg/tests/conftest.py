"""
Shared pytest setup: repository root on the import path, the ``slow``
marker, and small solver settings that force real recursion.
"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add parent directory to path to access src module
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.quantum_model import CostLedger, ExecMode, Mode  # noqa: E402
from src.settings_manager import SolverSettings  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long acceptance sweeps (deselect with -m 'not slow')")


@pytest.fixture
def settings():
    """Low base-case cutoff so small instances still recurse."""
    return SolverSettings(base_cutoff=8)


@pytest.fixture
def ledger():
    return CostLedger()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def charged():
    return ExecMode(Mode.CHARGED)


@pytest.fixture
def sampling():
    return ExecMode(Mode.SAMPLING)
