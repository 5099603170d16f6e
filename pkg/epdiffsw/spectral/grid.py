"""
EPDiff-SW - Periodic Grid
Tensor-product periodic grid with an integer wavenumber lattice
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence, Tuple

import numpy as np
import structlog

from epdiffsw.core.exceptions import GridError

logger = structlog.get_logger()

SUPPORTED_DIMS = (1, 2)
MIN_POINTS = 4


@dataclass(frozen=True, eq=False)
class Grid:
    """
    Periodic box [0, L_0) x ... sampled at N_i points per axis

    Wavenumbers follow the DFT convention: axis i carries the signed
    frequencies {0, 1, ..., N/2 - 1, -N/2, ..., -1} scaled by 2*pi/L_i.
    Grids compare equal when dimension, sizes and lengths agree.
    """

    dim: int
    sizes: Tuple[int, ...]
    lengths: Tuple[float, ...]
    spacings: Tuple[float, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(
            self,
            "spacings",
            tuple(length / size for length, size in zip(self.lengths, self.sizes)),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Grid):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.sizes == other.sizes
            and self.lengths == other.lengths
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.sizes, self.lengths))

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.sizes

    @property
    def num_points(self) -> int:
        return int(np.prod(self.sizes))

    @property
    def cell_volume(self) -> float:
        return float(np.prod(self.spacings))

    @property
    def volume(self) -> float:
        return float(np.prod(self.lengths))

    def signed_indices(self, axis: int) -> np.ndarray:
        """Signed integer frequency indices along one axis"""
        self.check_axis(axis)
        n = self.sizes[axis]
        return np.rint(np.fft.fftfreq(n) * n).astype(np.int64)

    @cached_property
    def wavenumbers(self) -> Tuple[np.ndarray, ...]:
        """Per-axis 1-D wavenumber arrays k_i = 2*pi*index/L_i"""
        arrays = []
        for n, length in zip(self.sizes, self.lengths):
            k = 2.0 * np.pi * np.fft.fftfreq(n, d=length / n)
            k.setflags(write=False)
            arrays.append(k)
        return tuple(arrays)

    def broadcast_wavenumber(self, axis: int) -> np.ndarray:
        """Wavenumber of one axis shaped to broadcast against the full grid"""
        self.check_axis(axis)
        shape = [1] * self.dim
        shape[axis] = self.sizes[axis]
        return self.wavenumbers[axis].reshape(shape)

    @cached_property
    def k_squared(self) -> np.ndarray:
        """|k|^2 on the full spectral lattice"""
        total = np.zeros(self.sizes)
        for axis in range(self.dim):
            total = total + self.broadcast_wavenumber(axis) ** 2
        total.setflags(write=False)
        return total

    def coordinates(self) -> Tuple[np.ndarray, ...]:
        """Per-axis sample locations x_j = j * dx"""
        return tuple(
            np.arange(n) * spacing for n, spacing in zip(self.sizes, self.spacings)
        )

    def mesh(self) -> Tuple[np.ndarray, ...]:
        """Full coordinate arrays (indexing='ij', row-major)"""
        return tuple(np.meshgrid(*self.coordinates(), indexing="ij"))

    def periodic_distance(self, center: Sequence[float]) -> np.ndarray:
        """Euclidean distance to `center` using the nearest periodic image"""
        if len(center) != self.dim:
            raise GridError(f"center needs {self.dim} coordinates, got {len(center)}")
        total = np.zeros(self.sizes)
        for x, c, length in zip(self.mesh(), center, self.lengths):
            d = np.abs(x - c) % length
            d = np.minimum(d, length - d)
            total = total + d**2
        return np.sqrt(total)

    def check_axis(self, axis: int) -> None:
        if not 0 <= axis < self.dim:
            raise GridError(f"axis {axis} out of range for {self.dim}-D grid")


def make_grid(dim: int, sizes: Sequence[int], lengths: Sequence[float]) -> Grid:
    """
    Build a validated periodic grid

    Args:
        dim: Spatial dimension, 1 or 2
        sizes: Points per axis, each even and >= 4
        lengths: Physical box length per axis, each > 0

    Returns:
        Grid

    Raises:
        GridError: On unsupported dimension, odd/tiny sizes or bad lengths
    """
    if dim not in SUPPORTED_DIMS:
        raise GridError(f"dim must be one of {SUPPORTED_DIMS}, got {dim}")

    sizes = tuple(int(n) for n in sizes)
    lengths = tuple(float(length) for length in lengths)

    if len(sizes) != dim or len(lengths) != dim:
        raise GridError(
            f"expected {dim} sizes and lengths, got {len(sizes)} and {len(lengths)}"
        )

    for axis, n in enumerate(sizes):
        if n < MIN_POINTS or n % 2:
            raise GridError(f"axis {axis}: size must be even and >= {MIN_POINTS}, got {n}")

    for axis, length in enumerate(lengths):
        if not np.isfinite(length) or length <= 0:
            raise GridError(f"axis {axis}: length must be positive, got {length}")

    grid = Grid(dim=dim, sizes=sizes, lengths=lengths)
    logger.debug("grid_created", dim=dim, sizes=sizes, lengths=lengths)
    return grid
