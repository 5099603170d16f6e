"""
EPDiff-SW - Dynamics

Right-hand sides of the shallow-water (primitive, momentum, vector) and
EPDiff (1-D, advective, curl, Poisson-reduction) equations together with
their Hamiltonians.
"""

from .states import EPDiffState, SWMomentumState, SWState, Tendency, check_surface
from .shallow_water import (
    sw_hamiltonian,
    sw_rhs_momentum,
    sw_rhs_primitive,
    sw_rhs_vector_form,
    sw_var_derivatives,
)
from .epdiff import (
    epdiff_hamiltonian,
    epdiff_recover_u,
    epdiff_rhs_1d,
    epdiff_rhs_advective,
    epdiff_rhs_curl,
    epdiff_rhs_poisson,
)

__all__ = [
    "EPDiffState",
    "SWMomentumState",
    "SWState",
    "Tendency",
    "check_surface",
    "sw_hamiltonian",
    "sw_rhs_momentum",
    "sw_rhs_primitive",
    "sw_rhs_vector_form",
    "sw_var_derivatives",
    "epdiff_hamiltonian",
    "epdiff_recover_u",
    "epdiff_rhs_1d",
    "epdiff_rhs_advective",
    "epdiff_rhs_curl",
    "epdiff_rhs_poisson",
]
