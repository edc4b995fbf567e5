"""
pytest configuration and shared fixtures for all tests
"""
import os
import sys

import numpy as np
import pytest

# Add parent directory to path for imports
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from lambda_atom.model_core import BlockTable
from lambda_atom.models import JointState, ModelConfig, Nonlinearity
from lambda_atom.presets import presets, reduced_config

@pytest.fixture
def resonant_unit_config():
    """Unit nonlinearities, no Kerr medium, resonance, small coherent inputs"""
    return ModelConfig(n_max=20, alpha1=complex(1.2), alpha2=complex(0.8))

@pytest.fixture
def harmonious_config():
    """Harmonious coupling with a deformed Kerr medium and unequal detunings"""
    return ModelConfig.from_detunings(
        delta2=0.7, delta3=-0.3, chi=0.4,
        f1=Nonlinearity.harmonious(), f2=Nonlinearity.harmonious(),
        g1=Nonlinearity.harmonious(), g2=Nonlinearity.harmonious(),
        n_max=20, alpha1=complex(1.0, 0.5), alpha2=complex(1.5),
    )

@pytest.fixture
def general_config():
    """Every frequency nonzero, so the free phases matter"""
    return ModelConfig(
        lambda1=1.0, lambda2=0.6, chi=0.15,
        omega1=0.4, omega2=1.3, omega3=-0.2, Omega1=0.9, Omega2=1.1,
        n_max=18, alpha1=complex(1.0), alpha2=complex(0.0, 1.0),
    )

@pytest.fixture(scope="session")
def full_presets():
    """The six scenario presets at full scale"""
    return presets()

@pytest.fixture(scope="session")
def reduced_presets():
    """The six presets at oracle scale"""
    return {name: reduced_config(cfg) for name, cfg in presets().items()}

@pytest.fixture(scope="session")
def a_down_table(full_presets):
    return BlockTable.from_config(full_presets["a-down"])

@pytest.fixture
def vacuum_state():
    """Atom in |1>, both modes in vacuum"""
    size = 4
    psi1 = np.zeros((size, size), dtype=complex)
    psi1[0, 0] = 1.0
    zeros = np.zeros((size, size), dtype=complex)
    return JointState(psi1, zeros, zeros, 0.0)

@pytest.fixture
def output_dir(tmp_path):
    path = tmp_path / "output"
    path.mkdir()
    return path

@pytest.fixture
def clean_env(monkeypatch):
    """Remove every LAMBDA_ATOM_* variable"""
    for key in list(os.environ):
        if key.startswith("LAMBDA_ATOM_"):
            monkeypatch.delenv(key)
    return monkeypatch
