from pathlib import Path

import numpy as np
import pytest

from quantum_guesswork.objects import Ensemble, basis_state, pure_state
from quantum_guesswork.serialization import load_ensemble

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"

ZERO = basis_state(2, 0)
ONE = basis_state(2, 1)
PLUS = pure_state([1, 1])
ZERO_PLUS_G = 1.5 - np.sqrt(2) / 4


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def zero_plus():
    return Ensemble([ZERO, PLUS], [0.5, 0.5])


@pytest.fixture
def orthogonal():
    return Ensemble([ZERO, ONE], [0.5, 0.5])


@pytest.fixture
def identical():
    return Ensemble([PLUS, PLUS], [0.5, 0.5])


@pytest.fixture
def nondominant():
    return load_ensemble(FIXTURES / "qutrit_nondominant.json")
