"""
EPDiff-SW - Spectral Transforms
Forward/inverse DFTs, spectral differentiation, 2/3-rule dealiasing
and grid quadrature

All transforms use numpy's unnormalized forward convention:
f_hat = fftn(f), f = ifftn(f_hat).
"""

from functools import lru_cache

import numpy as np

from epdiffsw.core.exceptions import DimensionMismatchError
from epdiffsw.spectral.fields import Field, ScalarField, VectorField
from epdiffsw.spectral.grid import Grid


def forward(f: ScalarField) -> np.ndarray:
    """Complex Fourier coefficients of a scalar field"""
    return np.fft.fftn(f.values)


def inverse(coefficients: np.ndarray, grid: Grid) -> ScalarField:
    """Real field from Fourier coefficients (imaginary round-off discarded)"""
    return ScalarField(grid, np.fft.ifftn(coefficients).real)


def apply_multiplier(f: ScalarField, symbol: np.ndarray) -> ScalarField:
    """Multiply every Fourier mode by `symbol` (broadcast over the lattice)"""
    return inverse(forward(f) * symbol, f.grid)


def transform_roundtrip(f: ScalarField) -> ScalarField:
    """inverse(forward(f)); exact up to round-off"""
    return inverse(forward(f), f.grid)


@lru_cache(maxsize=64)
def derivative_symbol(grid: Grid, axis: int) -> np.ndarray:
    """
    i*k_axis with the Nyquist coefficient zeroed

    The -N/2 mode has no conjugate partner on the lattice, so its odd
    derivative is set to zero to keep the result real.
    """
    grid.check_axis(axis)
    k = np.array(grid.broadcast_wavenumber(axis), dtype=np.complex128)
    symbol = 1j * k
    index = [slice(None)] * grid.dim
    index[axis] = grid.sizes[axis] // 2
    symbol[tuple(index)] = 0.0
    symbol.setflags(write=False)
    return symbol


def deriv(f: ScalarField, axis: int = 0) -> ScalarField:
    """
    Spectral partial derivative along one axis

    Raises:
        GridError: axis out of range
    """
    return apply_multiplier(f, derivative_symbol(f.grid, axis))


@lru_cache(maxsize=64)
def dealias_mask(grid: Grid) -> np.ndarray:
    """Keep modes with |signed index| <= floor(N/3) on every axis"""
    mask = np.ones(grid.sizes, dtype=bool)
    for axis in range(grid.dim):
        cutoff = grid.sizes[axis] // 3
        keep = np.abs(grid.signed_indices(axis)) <= cutoff
        shape = [1] * grid.dim
        shape[axis] = grid.sizes[axis]
        mask = mask & keep.reshape(shape)
    mask.setflags(write=False)
    return mask


def dealias(f: ScalarField) -> ScalarField:
    """2/3-rule truncation of a scalar field"""
    return apply_multiplier(f, dealias_mask(f.grid))


def dealiased_product(a: ScalarField, b: ScalarField, enabled: bool = True) -> ScalarField:
    """Pointwise product formed in real space, truncated when `enabled`"""
    product = a * b
    return dealias(product) if enabled else product


def inner(f: Field, g: Field) -> float:
    """
    Grid inner product: sum(f * g) * cell_volume

    Vector fields contribute the sum over their components.
    """
    if isinstance(f, VectorField) and isinstance(g, VectorField):
        if f.grid != g.grid or f.dim != g.dim:
            raise DimensionMismatchError("inner product of mismatched vector fields")
        return float(sum(inner(a, b) for a, b in zip(f, g)))
    if isinstance(f, ScalarField) and isinstance(g, ScalarField):
        if f.grid != g.grid:
            raise DimensionMismatchError("fields live on different grids")
        return float(np.sum(f.values * g.values) * f.grid.cell_volume)
    raise DimensionMismatchError("inner product needs two scalar or two vector fields")


def spectral_energy(f: ScalarField) -> float:
    """Parseval partner of inner(f, f): sum |f_hat|^2 * cell_volume / N"""
    coefficients = forward(f)
    return float(
        np.sum(np.abs(coefficients) ** 2) * f.grid.cell_volume / f.grid.num_points
    )
