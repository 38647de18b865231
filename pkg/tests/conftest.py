"""Pytest configuration and shared fixtures."""

import cmath
import math
import shutil
import tempfile
from pathlib import Path
from typing import Generator

import numpy as np
import pytest

from coherent_calculus.core.funcalc import jordan_matrix


@pytest.fixture
def temp_dir() -> Generator[Path, None, None]:
    """Create a temporary directory for testing."""
    temp_path = Path(tempfile.mkdtemp())
    try:
        yield temp_path
    finally:
        shutil.rmtree(temp_path, ignore_errors=True)


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so numerical tests are reproducible."""
    return np.random.default_rng(20240611)


@pytest.fixture
def four_block_matrix() -> np.ndarray:
    """Four Jordan blocks with eigenvalues inside the unit disk, n = 10."""
    return jordan_matrix(
        [
            (0.75 * cmath.exp(1j * math.pi / 4), 3),
            (2.0 / 3.0 * cmath.exp(5j * math.pi / 6), 4),
            (0.4 * cmath.exp(-3j * math.pi / 4), 1),
            (0.6 * cmath.exp(-1j * math.pi / 3), 2),
        ]
    ).array
