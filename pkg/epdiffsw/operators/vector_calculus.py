"""
Vector Calculus

Spectral grad, div, curl and Laplacian assembled from per-axis derivatives.
"""

from epdiffsw.core.exceptions import DimensionMismatchError
from epdiffsw.spectral import ScalarField, VectorField, apply_multiplier, deriv


def grad(f: ScalarField) -> VectorField:
    return VectorField(tuple(deriv(f, axis) for axis in range(f.grid.dim)))


def div(v: VectorField) -> ScalarField:
    total = deriv(v[0], 0)
    for axis in range(1, v.dim):
        total = total + deriv(v[axis], axis)
    return total


def curl_embedded(v: VectorField) -> ScalarField:
    """
    z-component of curl(v_x, v_y, 0): d_x v_y - d_y v_x

    Raises:
        DimensionMismatchError: unless v is 2-D
    """
    if v.dim != 2:
        raise DimensionMismatchError(f"curl needs a 2-D vector field, got {v.dim}-D")
    return deriv(v[1], 0) - deriv(v[0], 1)


def laplacian(f: ScalarField) -> ScalarField:
    return apply_multiplier(f, -f.grid.k_squared)
