"""
EPDiff-SW - Grid Fields
Immutable real-valued scalar and vector fields sampled on a Grid
"""

from dataclasses import dataclass
from typing import Iterator, Sequence, Tuple, Union

import numpy as np

from epdiffsw.core.exceptions import DimensionMismatchError, NonFiniteStateError
from epdiffsw.spectral.grid import Grid


def _frozen(values: np.ndarray) -> np.ndarray:
    array = np.array(values, dtype=np.float64, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class ScalarField:
    """
    Real samples on a grid, stored row-major with shape grid.sizes

    Values are copied and made read-only on construction, so a field can be
    shared freely between threads and between states.
    """

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.shape != self.grid.sizes:
            if values.size != self.grid.num_points:
                raise DimensionMismatchError(
                    f"field has {values.size} values, grid needs {self.grid.num_points}"
                )
            values = values.reshape(self.grid.sizes)
        if not np.all(np.isfinite(values)):
            raise NonFiniteStateError(None, "field values must be finite")
        object.__setattr__(self, "values", _frozen(values))

    # ------------------------------------------------------------------
    # Construction helpers
    # ------------------------------------------------------------------

    @classmethod
    def zeros(cls, grid: Grid) -> "ScalarField":
        return cls(grid, np.zeros(grid.sizes))

    @classmethod
    def constant(cls, grid: Grid, value: float) -> "ScalarField":
        return cls(grid, np.full(grid.sizes, float(value)))

    def zeros_like(self) -> "ScalarField":
        return ScalarField.zeros(self.grid)

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _other_values(self, other) -> np.ndarray | float:
        if isinstance(other, ScalarField):
            if other.grid != self.grid:
                raise DimensionMismatchError("fields live on different grids")
            return other.values
        if isinstance(other, (int, float, np.floating, np.integer)):
            return float(other)
        return NotImplemented

    def __add__(self, other):
        v = self._other_values(other)
        if v is NotImplemented:
            return NotImplemented
        return ScalarField(self.grid, self.values + v)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._other_values(other)
        if v is NotImplemented:
            return NotImplemented
        return ScalarField(self.grid, self.values - v)

    def __rsub__(self, other):
        v = self._other_values(other)
        if v is NotImplemented:
            return NotImplemented
        return ScalarField(self.grid, v - self.values)

    def __mul__(self, other):
        v = self._other_values(other)
        if v is NotImplemented:
            return NotImplemented
        return ScalarField(self.grid, self.values * v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._other_values(other)
        if v is NotImplemented:
            return NotImplemented
        return ScalarField(self.grid, self.values / v)

    def __neg__(self) -> "ScalarField":
        return ScalarField(self.grid, -self.values)

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    def shift(self, cells: int, axis: int = 0) -> "ScalarField":
        """Exact periodic translation by whole grid cells"""
        self.grid.check_axis(axis)
        return ScalarField(self.grid, np.roll(self.values, cells, axis=axis))

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def integral(self) -> float:
        return float(np.sum(self.values) * self.grid.cell_volume)

    def flat(self) -> np.ndarray:
        """Row-major flattened copy"""
        return self.values.ravel(order="C").copy()


@dataclass(frozen=True, eq=False)
class VectorField:
    """`dim` scalar components sharing one grid"""

    components: Tuple[ScalarField, ...]

    def __post_init__(self):
        components = tuple(self.components)
        if not components:
            raise DimensionMismatchError("vector field needs at least one component")
        grid = components[0].grid
        if any(c.grid != grid for c in components):
            raise DimensionMismatchError("vector components must share one grid")
        if len(components) != grid.dim:
            raise DimensionMismatchError(
                f"{grid.dim}-D grid needs {grid.dim} components, got {len(components)}"
            )
        object.__setattr__(self, "components", components)

    @classmethod
    def from_arrays(cls, grid: Grid, arrays: Sequence[np.ndarray]) -> "VectorField":
        return cls(tuple(ScalarField(grid, a) for a in arrays))

    @classmethod
    def zeros(cls, grid: Grid) -> "VectorField":
        return cls(tuple(ScalarField.zeros(grid) for _ in range(grid.dim)))

    @property
    def grid(self) -> Grid:
        return self.components[0].grid

    @property
    def dim(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[ScalarField]:
        return iter(self.components)

    def __getitem__(self, index: int) -> ScalarField:
        return self.components[index]

    def __len__(self) -> int:
        return len(self.components)

    def zeros_like(self) -> "VectorField":
        return VectorField.zeros(self.grid)

    def stacked(self) -> np.ndarray:
        """Component values stacked along a new leading axis"""
        return np.stack([c.values for c in self.components])

    def map(self, fn) -> "VectorField":
        return VectorField(tuple(fn(c) for c in self.components))

    def _zip(self, other, op) -> "VectorField":
        if isinstance(other, VectorField):
            if other.grid != self.grid:
                raise DimensionMismatchError("fields live on different grids")
            return VectorField(tuple(op(a, b) for a, b in zip(self, other)))
        if isinstance(other, (ScalarField, int, float, np.floating, np.integer)):
            return VectorField(tuple(op(a, other) for a in self))
        return NotImplemented

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __mul__(self, other):
        return self._zip(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._zip(other, lambda a, b: a / b)

    def __neg__(self) -> "VectorField":
        return self.map(lambda c: -c)

    def dot(self, other: "VectorField") -> ScalarField:
        """Pointwise Euclidean inner product"""
        if other.grid != self.grid:
            raise DimensionMismatchError("fields live on different grids")
        return ScalarField(
            self.grid, sum(a.values * b.values for a, b in zip(self, other))
        )

    def norm(self) -> ScalarField:
        return ScalarField(self.grid, np.sqrt(self.dot(self).values))

    def shift(self, cells: int, axis: int = 0) -> "VectorField":
        return self.map(lambda c: c.shift(cells, axis))

    def max_abs(self) -> float:
        return max(c.max_abs() for c in self.components)


Field = Union[ScalarField, VectorField]
