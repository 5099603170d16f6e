"""
EPDiff Dynamics

The shallow-water momentum equations with the free-surface coupling
dropped, closed by m = L^nu u:

- 1-D:        m_t = -(m u)_x - m u_x
- advective:  m_t = -[(grad u)^T m + (u.grad) m + m div u]
- curl:       m_t = u x curl m - grad(u.m) - m div u
- Poisson:    the SW Poisson operator with eta = 0 applied to (u, 0)

The 2-D cross product and curl use the (u, v, 0) embedding.
"""

from epdiffsw.core.exceptions import DimensionMismatchError
from epdiffsw.dynamics.states import EPDiffState, Tendency
from epdiffsw.operators import apply_Linv, curl_embedded, div, poisson_apply_1d, poisson_apply_nd
from epdiffsw.spectral import ScalarField, VectorField, dealiased_product, deriv, inner


def epdiff_recover_u(s: EPDiffState) -> VectorField:
    """u = L^{-nu} m"""
    return apply_Linv(s.m, s.op)


def _require_dim(s: EPDiffState, dim: int, name: str) -> None:
    if s.grid.dim != dim:
        raise DimensionMismatchError(f"{name} needs a {dim}-D state, got {s.grid.dim}-D")


def epdiff_rhs_1d(s: EPDiffState, dealias: bool = True) -> Tendency:
    _require_dim(s, 1, "epdiff_rhs_1d")
    m = s.m[0]
    u = epdiff_recover_u(s)[0]
    m_dot = -deriv(dealiased_product(m, u, dealias)) - dealiased_product(m, deriv(u), dealias)
    return Tendency.from_fields(m_dot)


def epdiff_rhs_advective(s: EPDiffState, dealias: bool = True) -> Tendency:
    _require_dim(s, 2, "epdiff_rhs_advective")
    m = s.m
    u = epdiff_recover_u(s)
    div_u = div(u)

    momentum = []
    for i in range(2):
        total = dealiased_product(m[i], div_u, dealias)
        for j in range(2):
            total = total + dealiased_product(m[j], deriv(u[j], i), dealias)
            total = total + dealiased_product(u[j], deriv(m[i], j), dealias)
        momentum.append(-total)
    return Tendency.from_fields(VectorField(tuple(momentum)))


def epdiff_rhs_curl(s: EPDiffState, dealias: bool = True) -> Tendency:
    _require_dim(s, 2, "epdiff_rhs_curl")
    m = s.m
    u = epdiff_recover_u(s)
    omega = curl_embedded(m)
    div_u = div(u)
    u_dot_m = dealiased_product(u[0], m[0], dealias) + dealiased_product(u[1], m[1], dealias)

    cross = (
        dealiased_product(u[1], omega, dealias),
        -dealiased_product(u[0], omega, dealias),
    )
    momentum = tuple(
        cross[i] - deriv(u_dot_m, i) - dealiased_product(m[i], div_u, dealias)
        for i in range(2)
    )
    return Tendency.from_fields(VectorField(momentum))


def epdiff_rhs_poisson(s: EPDiffState, dealias: bool = True) -> Tendency:
    """EPDiff as the eta -> 0 reduction of the SW Poisson operator"""
    u = epdiff_recover_u(s)
    zero = ScalarField.zeros(s.grid)
    if s.grid.dim == 1:
        m_dot, _ = poisson_apply_1d(s.m[0], zero, u[0], zero, dealias=dealias)
        return Tendency.from_fields(m_dot)
    m_dot_vec, _ = poisson_apply_nd(s.m, zero, u, zero, dealias=dealias)
    return Tendency.from_fields(m_dot_vec)


def epdiff_hamiltonian(s: EPDiffState) -> float:
    """Kinetic energy 1/2 <m, u>"""
    return 0.5 * inner(s.m, epdiff_recover_u(s))
