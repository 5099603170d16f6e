"""
EPDiff-SW - Green's functions

Closed-form Yukawa kernel, its special-function ingredients, validation
against the spectral inverse and convolution-based velocity recovery.
"""

from .special import bessel_k, gamma_fn
from .kernel import (
    GreenKernel,
    build_kernel,
    discrete_delta,
    green_convolve,
    green_scalar,
    green_table,
    green_validate,
    spectral_kernel,
    two_d_peakon_kernel,
)

__all__ = [
    "bessel_k",
    "gamma_fn",
    "GreenKernel",
    "build_kernel",
    "discrete_delta",
    "green_convolve",
    "green_scalar",
    "green_table",
    "green_validate",
    "spectral_kernel",
    "two_d_peakon_kernel",
]
