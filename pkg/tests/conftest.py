"""
EPDiff-SW - Test Configuration
Pytest fixtures: grids, seeded generators and random band-limited fields
"""

import math
from typing import Callable

import numpy as np
import pytest

from epdiffsw.core.log_config import configure_logging
from epdiffsw.integrate import random_smooth_ic
from epdiffsw.schemas import OperatorParams
from epdiffsw.spectral import Grid, ScalarField, VectorField, make_grid

TWO_PI = 2.0 * math.pi


@pytest.fixture(scope="session", autouse=True)
def quiet_logging():
    """Keep library logs out of the test output"""
    configure_logging(level="WARNING")


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def grid_1d() -> Grid:
    """64 points on [0, 2 pi)"""
    return make_grid(1, (64,), (TWO_PI,))


@pytest.fixture
def grid_2d() -> Grid:
    """32 x 32 points on [0, 2 pi)^2"""
    return make_grid(2, (32, 32), (TWO_PI, TWO_PI))


@pytest.fixture
def random_field(rng) -> Callable[..., ScalarField]:
    """Factory for zero-mean fields built from modes |index| <= 4"""

    def factory(grid: Grid, amplitude: float = 1.0) -> ScalarField:
        return random_smooth_ic(grid, rng, amplitude)

    return factory


@pytest.fixture
def random_vector(random_field) -> Callable[..., VectorField]:
    def factory(grid: Grid, amplitude: float = 1.0) -> VectorField:
        return VectorField(tuple(random_field(grid, amplitude) for _ in range(grid.dim)))

    return factory


@pytest.fixture
def random_depth(random_field) -> Callable[..., ScalarField]:
    """Factory for positive layer depths 1 + small band-limited perturbation"""

    def factory(grid: Grid, amplitude: float = 0.1) -> ScalarField:
        return 1.0 + random_field(grid, amplitude)

    return factory


@pytest.fixture
def unit_op_1d() -> OperatorParams:
    return OperatorParams(alpha=1.0, nu=1.0, dim=1)


@pytest.fixture
def unit_op_2d() -> OperatorParams:
    return OperatorParams(alpha=0.5, nu=1.0, dim=2)
