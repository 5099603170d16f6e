"""
Yukawa Operator

Fractional Helmholtz operator L^nu = (I - alpha^2 Laplacian)^nu and its
inverse, realised as Fourier multipliers. Real, non-integer nu is handled
directly through the power of the symbol.
"""

from typing import overload

import numpy as np

from epdiffsw.core.exceptions import DimensionMismatchError
from epdiffsw.schemas import OperatorParams
from epdiffsw.spectral import Field, ScalarField, VectorField, apply_multiplier


def yukawa_symbol(k_sq, p: OperatorParams):
    """
    Forward symbol (1 + alpha^2 |k|^2)^nu

    Args:
        k_sq: |k|^2, scalar or array, non-negative
        p: Operator parameters

    Returns:
        Symbol value(s), same shape as k_sq
    """
    k_sq_arr = np.asarray(k_sq, dtype=np.float64)
    if np.any(k_sq_arr < 0):
        raise ValueError("k_sq must be non-negative")
    value = (1.0 + p.alpha**2 * k_sq_arr) ** p.nu
    if np.ndim(value) == 0:
        return float(value)
    return value


def _check_dim(field: Field, p: OperatorParams) -> None:
    if field.grid.dim != p.dim:
        raise DimensionMismatchError(
            f"field is {field.grid.dim}-D but operator parameters are {p.dim}-D"
        )


def _apply(field: Field, symbol: np.ndarray) -> Field:
    if isinstance(field, VectorField):
        return field.map(lambda c: apply_multiplier(c, symbol))
    return apply_multiplier(field, symbol)


@overload
def apply_L(u: ScalarField, p: OperatorParams) -> ScalarField: ...
@overload
def apply_L(u: VectorField, p: OperatorParams) -> VectorField: ...


def apply_L(u, p):
    """m = L^nu u, component by component"""
    _check_dim(u, p)
    return _apply(u, yukawa_symbol(u.grid.k_squared, p))


@overload
def apply_Linv(m: ScalarField, p: OperatorParams) -> ScalarField: ...
@overload
def apply_Linv(m: VectorField, p: OperatorParams) -> VectorField: ...


def apply_Linv(m, p):
    """u = L^{-nu} m, the spectral inverse (exact on the grid)"""
    _check_dim(m, p)
    return _apply(m, 1.0 / yukawa_symbol(m.grid.k_squared, p))
