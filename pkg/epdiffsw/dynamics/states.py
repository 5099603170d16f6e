"""
Model States

Immutable prognostic states for the shallow-water and EPDiff models and
the Tendency container returned by every right-hand side. States pack to
and unpack from a single (components, *grid.sizes) array so the time
integrator can treat all models alike.
"""

from dataclasses import dataclass
from typing import Union

import numpy as np

from epdiffsw.core.config import settings
from epdiffsw.core.exceptions import DimensionMismatchError, SurfaceFloorError
from epdiffsw.schemas import OperatorParams
from epdiffsw.spectral import Grid, ScalarField, VectorField


def check_surface(eta: ScalarField, floor: float | None = None) -> None:
    """
    Enforce eta > floor

    Raises:
        SurfaceFloorError: min(eta) <= floor
    """
    floor = settings.SURFACE_FLOOR if floor is None else floor
    minimum = float(eta.values.min())
    if minimum <= floor:
        raise SurfaceFloorError(minimum, floor)


def _split(grid: Grid, array: np.ndarray, expected: int) -> list[np.ndarray]:
    if array.shape != (expected, *grid.sizes):
        raise DimensionMismatchError(
            f"packed array has shape {array.shape}, expected {(expected, *grid.sizes)}"
        )
    return [array[i] for i in range(expected)]


@dataclass(frozen=True)
class Tendency:
    """Time derivative of each packed state component, in state order"""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.shape[1:] != self.grid.sizes:
            raise DimensionMismatchError("tendency components must match the grid")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_fields(cls, *fields: Union[ScalarField, VectorField]) -> "Tendency":
        arrays = []
        for f in fields:
            if isinstance(f, VectorField):
                arrays.extend(c.values for c in f)
            else:
                arrays.append(f.values)
        return cls(fields[0].grid, np.stack(arrays))

    @property
    def num_components(self) -> int:
        return self.values.shape[0]

    def scalar(self, index: int) -> ScalarField:
        return ScalarField(self.grid, self.values[index])

    def vector(self, start: int = 0) -> VectorField:
        """The grid.dim components beginning at `start` as a VectorField"""
        return VectorField.from_arrays(
            self.grid, [self.values[start + i] for i in range(self.grid.dim)]
        )

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.values)))

    def max_abs_diff(self, other: "Tendency") -> float:
        return float(np.max(np.abs(self.values - other.values)))


@dataclass(frozen=True)
class SWState:
    """Shallow-water state in primitive variables (velocity u, layer depth eta)"""

    u: VectorField
    eta: ScalarField
    g: float

    def __post_init__(self):
        if self.u.grid != self.eta.grid:
            raise DimensionMismatchError("u and eta must share one grid")
        check_surface(self.eta)

    @property
    def grid(self) -> Grid:
        return self.eta.grid

    def momentum(self) -> VectorField:
        return self.u * self.eta

    def to_momentum_state(self) -> "SWMomentumState":
        return SWMomentumState(m=self.momentum(), eta=self.eta, g=self.g)

    def pack(self) -> np.ndarray:
        return np.stack([*(c.values for c in self.u), self.eta.values])

    def unpack(self, array: np.ndarray) -> "SWState":
        parts = _split(self.grid, array, self.grid.dim + 1)
        return SWState(
            u=VectorField.from_arrays(self.grid, parts[:-1]),
            eta=ScalarField(self.grid, parts[-1]),
            g=self.g,
        )


@dataclass(frozen=True)
class SWMomentumState:
    """Shallow-water state in Hamiltonian variables (m = eta u, eta)"""

    m: VectorField
    eta: ScalarField
    g: float

    def __post_init__(self):
        if self.m.grid != self.eta.grid:
            raise DimensionMismatchError("m and eta must share one grid")
        check_surface(self.eta)

    @property
    def grid(self) -> Grid:
        return self.eta.grid

    def velocity(self) -> VectorField:
        return self.m / self.eta

    def to_primitive_state(self) -> SWState:
        return SWState(u=self.velocity(), eta=self.eta, g=self.g)

    def pack(self) -> np.ndarray:
        return np.stack([*(c.values for c in self.m), self.eta.values])

    def unpack(self, array: np.ndarray) -> "SWMomentumState":
        parts = _split(self.grid, array, self.grid.dim + 1)
        return SWMomentumState(
            m=VectorField.from_arrays(self.grid, parts[:-1]),
            eta=ScalarField(self.grid, parts[-1]),
            g=self.g,
        )


@dataclass(frozen=True)
class EPDiffState:
    """EPDiff state: momentum density m; velocity is recovered as L^{-nu} m"""

    m: VectorField
    op: OperatorParams

    def __post_init__(self):
        if self.m.grid.dim != self.op.dim:
            raise DimensionMismatchError(
                f"m is {self.m.grid.dim}-D but operator parameters are {self.op.dim}-D"
            )

    @property
    def grid(self) -> Grid:
        return self.m.grid

    def pack(self) -> np.ndarray:
        return self.m.stacked()

    def unpack(self, array: np.ndarray) -> "EPDiffState":
        parts = _split(self.grid, array, self.grid.dim)
        return EPDiffState(m=VectorField.from_arrays(self.grid, parts), op=self.op)
