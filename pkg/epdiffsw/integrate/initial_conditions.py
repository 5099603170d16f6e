"""
EPDiff-SW - Initial Conditions
Peakon, Gaussian and seeded random band-limited profiles
"""

from typing import Optional, Sequence

import numpy as np

from epdiffsw.core.exceptions import DimensionMismatchError
from epdiffsw.dynamics import EPDiffState
from epdiffsw.operators import apply_L
from epdiffsw.schemas import OperatorParams
from epdiffsw.spectral import Grid, ScalarField, VectorField, forward

RANDOM_MAX_INDEX = 4


def gaussian_ic(grid: Grid, amplitude: float, width: float, center: Sequence[float]) -> ScalarField:
    """amplitude * exp(-d^2 / (2 width^2)) with d the periodic distance to center"""
    if width <= 0:
        raise ValueError("width must be positive")
    d = grid.periodic_distance(center)
    return ScalarField(grid, amplitude * np.exp(-0.5 * (d / width) ** 2))


def random_smooth_ic(
    grid: Grid,
    rng: np.random.Generator,
    amplitude: float,
    max_index: int = RANDOM_MAX_INDEX,
) -> ScalarField:
    """
    Zero-mean random field built only from Fourier modes with |index| <= max_index

    Each retained mode gets a Gaussian magnitude and a uniform random phase;
    the real part is rescaled so that max|f| == |amplitude|.
    """
    coefficients = np.zeros(grid.sizes, dtype=np.complex128)
    keep = np.ones(grid.sizes, dtype=bool)
    for axis in range(grid.dim):
        shape = [1] * grid.dim
        shape[axis] = grid.sizes[axis]
        keep = keep & (np.abs(grid.signed_indices(axis)) <= max_index).reshape(shape)
    count = int(keep.sum())
    magnitude = rng.standard_normal(count)
    phase = rng.uniform(0.0, 2.0 * np.pi, count)
    coefficients[keep] = magnitude * np.exp(1j * phase)
    coefficients[(0,) * grid.dim] = 0.0

    values = np.fft.ifftn(coefficients).real
    peak = np.max(np.abs(values))
    if peak == 0.0:
        return ScalarField.zeros(grid)
    return ScalarField(grid, amplitude * values / peak)


def periodic_peakon_profile(grid: Grid, amplitude: float, alpha: float, center: float) -> ScalarField:
    """
    c cosh((L/2 - d)/alpha) / cosh(L/(2 alpha)), evaluated without overflow as
    c (e^{-d/alpha} + e^{(d - L)/alpha}) / (1 + e^{-L/alpha})
    """
    if grid.dim != 1:
        raise DimensionMismatchError("peakon profile is defined on 1-D grids only")
    length = grid.lengths[0]
    d = grid.periodic_distance((center,))
    values = (np.exp(-d / alpha) + np.exp((d - length) / alpha)) / (1.0 + np.exp(-length / alpha))
    return ScalarField(grid, amplitude * values)


def peakon_ic(
    grid: Grid,
    amplitude: float,
    alpha: float,
    center: float,
    op: Optional[OperatorParams] = None,
) -> EPDiffState:
    """
    Periodic peakon state

    Momentum is m = (1 - alpha^2 d_xx) u, the nu = 1 operator the profile is an
    exact Green's function of. The returned state carries `op` (default: the
    same nu = 1 operator) for the subsequent evolution.

    Raises:
        DimensionMismatchError: grid is not 1-D
    """
    u = periodic_peakon_profile(grid, amplitude, alpha, center)
    peakon_op = OperatorParams(alpha=alpha, nu=1.0, dim=1)
    m = apply_L(u, peakon_op)
    return EPDiffState(m=VectorField((m,)), op=op or peakon_op)


def max_mode_index(f: ScalarField) -> int:
    """Largest |signed index| carrying a coefficient above round-off"""
    coefficients = np.abs(forward(f))
    threshold = 1e-12 * max(coefficients.max(), 1.0)
    active = np.argwhere(coefficients > threshold)
    if active.size == 0:
        return 0
    largest = 0
    for axis in range(f.grid.dim):
        indices = f.grid.signed_indices(axis)[active[:, axis]]
        largest = max(largest, int(np.max(np.abs(indices))))
    return largest
