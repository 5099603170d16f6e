"""
Shallow-Water Poisson Operator

Application of the Hamiltonian (Lie-Poisson) matrix of the shallow-water
equations to a pair (a, b) of test fields:

    J(a, b) = -( m_j d_i a_j + d_j (m_i a_j) + eta d_i b ,  d_j (eta a_j) )

Substituting a = dH/dm, b = dH/deta gives the momentum-form tendencies.
Every pointwise product goes through dealiased_product so the operator and
the tendencies built on it share one truncation rule.
"""

from typing import Tuple

from epdiffsw.core.exceptions import DimensionMismatchError
from epdiffsw.spectral import ScalarField, VectorField, dealiased_product, deriv


def _same_grid(*fields) -> None:
    grid = fields[0].grid
    if any(f.grid != grid for f in fields[1:]):
        raise DimensionMismatchError("Poisson operator inputs live on different grids")


def poisson_apply_1d(
    m: ScalarField,
    eta: ScalarField,
    a: ScalarField,
    b: ScalarField,
    dealias: bool = True,
) -> Tuple[ScalarField, ScalarField]:
    """
    1-D Poisson matrix [[m d + d m, eta d], [d eta, 0]] applied to (a, b), negated

    Returns:
        (momentum component, eta component)
    """
    _same_grid(m, eta, a, b)
    if m.grid.dim != 1:
        raise DimensionMismatchError("poisson_apply_1d needs a 1-D grid")

    first = (
        dealiased_product(m, deriv(a), dealias)
        + deriv(dealiased_product(m, a, dealias))
        + dealiased_product(eta, deriv(b), dealias)
    )
    second = deriv(dealiased_product(eta, a, dealias))
    return -first, -second


def poisson_apply_nd(
    m: VectorField,
    eta: ScalarField,
    a: VectorField,
    b: ScalarField,
    dealias: bool = True,
) -> Tuple[VectorField, ScalarField]:
    """
    2-D Poisson matrix applied to (a, b), negated

    Index placement follows the momentum-form result
    m_dot_i = -d_j(m_i u_j) - g eta d_i eta.

    Returns:
        (momentum vector, eta component)
    """
    _same_grid(m[0], eta, a[0], b)
    if m.grid.dim != 2 or m.dim != 2 or a.dim != 2:
        raise DimensionMismatchError("poisson_apply_nd needs 2-D fields")

    dim = m.dim
    momentum = []
    for i in range(dim):
        total = dealiased_product(eta, deriv(b, i), dealias)
        for j in range(dim):
            total = total + dealiased_product(m[j], deriv(a[j], i), dealias)
            total = total + deriv(dealiased_product(m[i], a[j], dealias), j)
        momentum.append(-total)

    flux = deriv(dealiased_product(eta, a[0], dealias), 0)
    for j in range(1, dim):
        flux = flux + deriv(dealiased_product(eta, a[j], dealias), j)

    return VectorField(tuple(momentum)), -flux
