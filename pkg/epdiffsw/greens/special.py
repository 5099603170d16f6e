"""
Special Functions

Gamma and modified Bessel K of real order, restricted to the envelope the
Green's-function code relies on.
"""

import numpy as np
from scipy import special

from epdiffsw.core.exceptions import SpecialFunctionDomainError

GAMMA_MAX_ARGUMENT = 170.0
BESSEL_MAX_ORDER = 6.0
BESSEL_MIN_Z = 1e-6
BESSEL_MAX_Z = 60.0


def gamma_fn(x):
    """
    Gamma function for positive arguments

    Raises:
        SpecialFunctionDomainError: x <= 0 or so large the result overflows
    """
    arr = np.asarray(x, dtype=np.float64)
    if np.any(~np.isfinite(arr)) or np.any(arr <= 0):
        raise SpecialFunctionDomainError("gamma_fn requires positive finite arguments")
    if np.any(arr > GAMMA_MAX_ARGUMENT):
        raise SpecialFunctionDomainError(f"gamma_fn overflows above {GAMMA_MAX_ARGUMENT}")
    value = special.gamma(arr)
    return float(value) if np.ndim(value) == 0 else value


def bessel_k(order: float, z):
    """
    Modified Bessel function of the second kind K_order(z)

    K is even in its order, so negative orders are folded onto |order|.
    Supported envelope: |order| <= 6, 1e-6 <= z <= 60.

    Args:
        order: Real order
        z: Scalar or array of positive arguments

    Raises:
        SpecialFunctionDomainError: Any argument outside the envelope
    """
    nu = abs(float(order))
    if not np.isfinite(nu) or nu > BESSEL_MAX_ORDER:
        raise SpecialFunctionDomainError(
            f"bessel_k order {order} outside |order| <= {BESSEL_MAX_ORDER}"
        )
    arr = np.asarray(z, dtype=np.float64)
    if np.any(~np.isfinite(arr)) or np.any(arr < BESSEL_MIN_Z) or np.any(arr > BESSEL_MAX_Z):
        raise SpecialFunctionDomainError(
            f"bessel_k argument outside [{BESSEL_MIN_Z}, {BESSEL_MAX_Z}]"
        )
    value = special.kv(nu, arr)
    return float(value) if np.ndim(value) == 0 else value
