"""
Shallow-Water Dynamics

Tendencies of the flat-bottom shallow-water equations in three equivalent
forms, the Hamiltonian and its variational derivatives:

- primitive:  u_t = -(u.grad)u - g grad(eta),  eta_t = -div(eta u)
- momentum:   Poisson operator applied to (dH/dm, dH/deta),
              simplifying to m_t = -d_j(m u_j) - g eta grad(eta)
- vector:     m_t = -(div m) u - (m.grad) u - g eta grad(eta)

With dealiasing off the three agree to round-off on resolved states
(m = eta u); that equivalence is what the identity tests measure.
"""

from typing import Tuple

import numpy as np

from epdiffsw.dynamics.states import SWState, Tendency, check_surface
from epdiffsw.operators import poisson_apply_1d, poisson_apply_nd
from epdiffsw.spectral import ScalarField, VectorField, dealiased_product, deriv


def sw_rhs_primitive(s: SWState, dealias: bool = True) -> Tendency:
    """(u_t, eta_t) in primitive variables"""
    check_surface(s.eta)
    u, eta, dim = s.u, s.eta, s.grid.dim

    velocity = []
    for i in range(dim):
        total = s.g * deriv(eta, i)
        for j in range(dim):
            total = total + dealiased_product(u[j], deriv(u[i], j), dealias)
        velocity.append(-total)

    flux = deriv(dealiased_product(eta, u[0], dealias), 0)
    for j in range(1, dim):
        flux = flux + deriv(dealiased_product(eta, u[j], dealias), j)

    return Tendency.from_fields(VectorField(tuple(velocity)), -flux)


def sw_var_derivatives(
    m: VectorField, eta: ScalarField, g: float
) -> Tuple[VectorField, ScalarField]:
    """
    Variational derivatives of the SW Hamiltonian

    Returns:
        (dH/dm, dH/deta) = (m/eta, -|m|^2/(2 eta^2) + g eta)
    """
    check_surface(eta)
    u = m / eta
    return u, -0.5 * u.dot(u) + g * eta


def sw_hamiltonian(m: VectorField, eta: ScalarField, g: float) -> float:
    """Grid quadrature of |m|^2/(2 eta) + g eta^2 / 2"""
    check_surface(eta)
    density = 0.5 * m.dot(m).values / eta.values + 0.5 * g * eta.values**2
    return float(np.sum(density) * eta.grid.cell_volume)


def sw_rhs_momentum(
    m: VectorField, eta: ScalarField, g: float, dealias: bool = True
) -> Tendency:
    """(m_t, eta_t) from the Poisson operator applied to the variational derivatives"""
    a, b = sw_var_derivatives(m, eta, g)
    if eta.grid.dim == 1:
        m_dot, eta_dot = poisson_apply_1d(m[0], eta, a[0], b, dealias=dealias)
        return Tendency.from_fields(m_dot, eta_dot)
    m_dot_vec, eta_dot = poisson_apply_nd(m, eta, a, b, dealias=dealias)
    return Tendency.from_fields(m_dot_vec, eta_dot)


def sw_rhs_vector_form(
    m: VectorField, eta: ScalarField, g: float, dealias: bool = True
) -> Tendency:
    """
    Momentum tendency obtained by multiplying the primitive equation by eta:
    m_t = -(div m) u - (m.grad) u - g eta grad(eta); eta_t = -div m
    """
    check_surface(eta)
    u = m / eta
    dim = eta.grid.dim

    div_m = deriv(m[0], 0)
    for j in range(1, dim):
        div_m = div_m + deriv(m[j], j)

    momentum = []
    for i in range(dim):
        total = dealiased_product(div_m, u[i], dealias) + g * dealiased_product(
            eta, deriv(eta, i), dealias
        )
        for j in range(dim):
            total = total + dealiased_product(m[j], deriv(u[i], j), dealias)
        momentum.append(-total)

    return Tendency.from_fields(VectorField(tuple(momentum)), -div_m)
