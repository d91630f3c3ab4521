"""Shared fixtures"""

import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.linalg.bipartite import DensityMatrix, maximally_entangled, maximally_mixed


@pytest.fixture
def bell() -> DensityMatrix:
    """(|00> + |11>)(<00| + <11|) / 2"""
    return maximally_entangled(2)


@pytest.fixture
def mixed22() -> DensityMatrix:
    return maximally_mixed(2, 2)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)

