"""
EPDiff-SW - Spectral substrate

Periodic grids, immutable fields, FFT-based differentiation and
2/3-rule dealiasing used by every other module.
"""

from .grid import Grid, make_grid
from .fields import Field, ScalarField, VectorField
from .transforms import (
    apply_multiplier,
    dealias,
    dealias_mask,
    dealiased_product,
    deriv,
    forward,
    inner,
    inverse,
    spectral_energy,
    transform_roundtrip,
)

__all__ = [
    "Grid",
    "make_grid",
    "Field",
    "ScalarField",
    "VectorField",
    "apply_multiplier",
    "dealias",
    "dealias_mask",
    "dealiased_product",
    "deriv",
    "forward",
    "inner",
    "inverse",
    "spectral_energy",
    "transform_roundtrip",
]
