from __future__ import absolute_import

import numpy as np
import pytest

from quditmagic.densesim import DenseState


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def strangeState():
    """Get the qutrit state (|1> - |2>) / sqrt(2) as a density matrix."""
    vector = np.array([0, 1, -1], dtype=complex) / np.sqrt(2)
    return np.outer(vector, vector.conj())


@pytest.fixture
def zeroState():
    return DenseState.computational([0], 3).densityMatrix()
