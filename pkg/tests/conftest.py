"""Shared fixtures: the standard desk-scale grid and window samples."""
import numpy as np
import pytest

from gabframes import Grid, GridFunction, WindowSpec, sample_window, translate


@pytest.fixture(scope="session")
def grid():
    return Grid(4.0, 1 / 32)


@pytest.fixture(scope="session")
def chi(grid):
    return sample_window(WindowSpec.indicator_cube(1.0), grid)


@pytest.fixture(scope="session")
def hat(grid):
    return sample_window(WindowSpec.bspline(2), grid)


@pytest.fixture(scope="session")
def gauss(grid):
    return sample_window(WindowSpec.gaussian(1.0, 3.0), grid)


def random_interior(grid, seed, envelope_sigma=1.2, envelope_radius=2.0):
    """A random complex function supported well inside the domain."""
    rng = np.random.default_rng(seed)
    env = sample_window(WindowSpec.gaussian(envelope_sigma, envelope_radius), grid)
    noise = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    return GridFunction(grid, env.values * noise)


@pytest.fixture
def interior_f(grid):
    return random_interior(grid, seed=11)


def shifted_window(spec, grid, shift):
    return translate(sample_window(spec, grid), shift)
