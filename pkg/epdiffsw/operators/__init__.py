"""
EPDiff-SW - Operators

Yukawa operator and inverse, vector calculus helpers and the
shallow-water Poisson (Hamiltonian) operator.
"""

from .yukawa import apply_L, apply_Linv, yukawa_symbol
from .vector_calculus import curl_embedded, div, grad, laplacian
from .poisson import poisson_apply_1d, poisson_apply_nd

__all__ = [
    "apply_L",
    "apply_Linv",
    "yukawa_symbol",
    "curl_embedded",
    "div",
    "grad",
    "laplacian",
    "poisson_apply_1d",
    "poisson_apply_nd",
]
