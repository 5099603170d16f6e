"""
EPDiff-SW - Verification Suites

Desk-scale invariant checks behind `epdiffsw verify <suite>`. Every check
measures one error against a fixed tolerance and reports a
VerificationCheck; a suite passes when all of its checks pass.

Suites:
- operators:    spectral derivative, Yukawa round trip, Laplacian, skew-adjoint Poisson operators
- greens:       Bessel/Gamma anchors, exponential kernel, closed-form shape fits
- identities:   SW form equivalence chain, curl vs advective EPDiff, eta -> 0 reductions,
                variational derivatives
- conservation: RK4 accuracy, SW mass/energy, EPDiff momentum/energy, SW forms agreement
"""

from typing import Callable, Dict, List, Tuple

import numpy as np
import structlog

from epdiffsw.core.exceptions import UnknownSuiteError
from epdiffsw.dynamics import (
    EPDiffState,
    SWMomentumState,
    SWState,
    epdiff_hamiltonian,
    epdiff_rhs_1d,
    epdiff_rhs_advective,
    epdiff_rhs_curl,
    epdiff_rhs_poisson,
    sw_hamiltonian,
    sw_rhs_momentum,
    sw_rhs_primitive,
    sw_rhs_vector_form,
    sw_var_derivatives,
)
from epdiffsw.greens import (
    bessel_k,
    gamma_fn,
    green_scalar,
    green_validate,
    spectral_kernel,
    two_d_peakon_kernel,
)
from epdiffsw.integrate import random_smooth_ic, relative_drift, rk4_step
from epdiffsw.operators import (
    apply_L,
    apply_Linv,
    div,
    grad,
    laplacian,
    poisson_apply_1d,
    poisson_apply_nd,
)
from epdiffsw.schemas import GreenParams, OperatorParams, VerificationCheck
from epdiffsw.spectral import Grid, ScalarField, VectorField, deriv, inner, make_grid

logger = structlog.get_logger()

VERIFY_SEED = 20231
IDENTITY_SAMPLES = 50
VARIATION_DIRECTIONS = 4
SKEW_SAMPLES = 20
CONSERVATION_STEPS = 1000
CONSERVATION_DT = 1e-3

SuiteFn = Callable[[], List[VerificationCheck]]
SUITES: Dict[str, SuiteFn] = {}


def register_suite(name: str) -> Callable[[SuiteFn], SuiteFn]:
    def decorator(fn: SuiteFn) -> SuiteFn:
        SUITES[name] = fn
        return fn

    return decorator


def suite_names() -> List[str]:
    return list(SUITES)


def run_suite(name: str) -> List[VerificationCheck]:
    """
    Run one named suite

    Raises:
        UnknownSuiteError: name is not registered
    """
    fn = SUITES.get(name)
    if fn is None:
        raise UnknownSuiteError(
            f"unknown suite {name!r}; available: {', '.join(suite_names())}"
        )
    checks = fn()
    logger.info(
        "verification_suite_completed",
        suite=name,
        checks=len(checks),
        failed=sum(not c.passed for c in checks),
    )
    return checks


def format_check(check: VerificationCheck) -> str:
    status = "PASS" if check.passed else "FAIL"
    line = (
        f"[{status}] {check.suite}.{check.name}: "
        f"measured={check.measured:.3e} tolerance={check.tolerance:.1e}"
    )
    return f"{line} ({check.note})" if check.note else line


def _check(suite: str, name: str, measured: float, tolerance: float, note: str = "") -> VerificationCheck:
    measured = float(measured)
    return VerificationCheck(
        suite=suite,
        name=name,
        measured=measured,
        tolerance=tolerance,
        passed=bool(np.isfinite(measured) and measured < tolerance),
        note=note,
    )


# ============================================================================
# Random band-limited states
# ============================================================================


def _rng() -> np.random.Generator:
    return np.random.default_rng(VERIFY_SEED)


def _random_vector(grid: Grid, rng: np.random.Generator, amplitude: float) -> VectorField:
    return VectorField(tuple(random_smooth_ic(grid, rng, amplitude) for _ in range(grid.dim)))


def _random_depth(grid: Grid, rng: np.random.Generator, amplitude: float = 0.1) -> ScalarField:
    return 1.0 + random_smooth_ic(grid, rng, amplitude)


def _grid(dim: int, n: int, length: float = 2.0 * np.pi) -> Grid:
    return make_grid(dim, (n,) * dim, (length,) * dim)


# ============================================================================
# operators
# ============================================================================


def _poisson_pair(m: VectorField, eta: ScalarField, a: VectorField, b: ScalarField):
    if eta.grid.dim == 1:
        mom, scalar = poisson_apply_1d(m[0], eta, a[0], b)
        return VectorField((mom,)), scalar
    return poisson_apply_nd(m, eta, a, b)


def poisson_skew_error(m, eta, first: Tuple, second: Tuple) -> float:
    """|<A, J B> + <J A, B>| for pairs A = (a, b) and B"""
    ja = _poisson_pair(m, eta, *first)
    jb = _poisson_pair(m, eta, *second)
    lhs = inner(first[0], jb[0]) + inner(first[1], jb[1])
    rhs = inner(ja[0], second[0]) + inner(ja[1], second[1])
    return abs(lhs + rhs)


@register_suite("operators")
def operators_suite() -> List[VerificationCheck]:
    suite = "operators"
    rng = _rng()
    checks = []

    grid = _grid(1, 64)
    (x,) = grid.coordinates()
    f = ScalarField(grid, np.sin(3 * x))
    error = np.max(np.abs(deriv(f).values - 3 * np.cos(3 * x)))
    checks.append(_check(suite, "derivative_of_sine", error, 1e-12))

    box = make_grid(1, (64,), (20.0,))
    u = random_smooth_ic(box, rng, 1.0)
    worst = 0.0
    for alpha in (0.1, 0.5, 1.0):
        for nu in (0.5, 1.0, 1.5, 2.0, 3.0):
            op = OperatorParams(alpha=alpha, nu=nu, dim=1)
            worst = max(worst, np.max(np.abs(apply_Linv(apply_L(u, op), op).values - u.values)))
    checks.append(_check(suite, "yukawa_roundtrip", worst, 1e-12, "alpha x nu grid of 15 pairs"))

    grid2 = _grid(2, 32)
    f2 = random_smooth_ic(grid2, rng, 1.0)
    error = np.max(np.abs(laplacian(f2).values - div(grad(f2)).values))
    checks.append(_check(suite, "laplacian_is_div_grad", error, 1e-12))

    for dim, n in ((1, 64), (2, 32)):
        g = _grid(dim, n)
        worst = 0.0
        for _ in range(SKEW_SAMPLES):
            m = _random_vector(g, rng, 0.5)
            eta = _random_depth(g, rng)
            first = (_random_vector(g, rng, 1.0), random_smooth_ic(g, rng, 1.0))
            second = (_random_vector(g, rng, 1.0), random_smooth_ic(g, rng, 1.0))
            worst = max(worst, poisson_skew_error(m, eta, first, second))
        checks.append(_check(suite, f"poisson_skew_adjoint_{dim}d", worst, 1e-10))

    return checks


# ============================================================================
# greens
# ============================================================================


def half_integer_bessel(order: float, z: np.ndarray) -> np.ndarray:
    """Closed forms of K_{1/2}, K_{3/2}, K_{5/2}"""
    base = np.sqrt(np.pi / (2.0 * z)) * np.exp(-z)
    if order == 0.5:
        return base
    if order == 1.5:
        return base * (1.0 + 1.0 / z)
    if order == 2.5:
        return base * (1.0 + 3.0 / z + 3.0 / z**2)
    raise ValueError(f"no closed form registered for order {order}")


def exponential_kernel_error(alpha: float = 1.0, points: int = 2**17) -> float:
    """Max |spectral kernel - e^{-|x|/alpha}/(2 alpha)| for |x| > 2 dx, box 40 alpha"""
    grid = make_grid(1, (points,), (40.0 * alpha,))
    gp = GreenParams(op=OperatorParams(alpha=alpha, nu=1.0, dim=1))
    g = spectral_kernel(gp, grid).values
    r = grid.periodic_distance((0.0,))
    away = r > 2.0 * grid.spacings[0]
    exact = np.exp(-r[away] / alpha) / (2.0 * alpha)
    return float(np.max(np.abs(g[away] - exact)))


@register_suite("greens")
def greens_suite() -> List[VerificationCheck]:
    suite = "greens"
    checks = []

    z = np.linspace(0.1, 20.0, 400)
    for order in (0.5, 1.5, 2.5):
        exact = half_integer_bessel(order, z)
        error = np.max(np.abs(bessel_k(order, z) - exact) / exact)
        checks.append(_check(suite, f"bessel_k_{order:g}_closed_form", error, 1e-10))
    checks.append(_check(suite, "gamma_half", abs(gamma_fn(0.5) - np.sqrt(np.pi)), 1e-12))

    checks.append(
        _check(suite, "exponential_kernel_1d", exponential_kernel_error(), 1e-6, "nu=1, L=40 alpha")
    )

    r = np.linspace(0.05, 5.0, 100)
    gp_peakon = GreenParams(op=OperatorParams(alpha=0.5, nu=1.5, dim=2))
    closed = two_d_peakon_kernel(r, 0.5)
    error = np.max(np.abs(green_scalar(r, gp_peakon) - closed) / closed)
    checks.append(_check(suite, "two_d_peakon_closed_form", error, 1e-12, "n=2, nu=3/2"))

    for dim, nu, n, tolerance in ((1, 1.0, 4096, 1e-5), (1, 2.0, 4096, 1e-5), (2, 1.5, 1024, 1e-4), (2, 2.0, 1024, 1e-4)):
        gp = GreenParams(op=OperatorParams(alpha=0.25, nu=nu, dim=dim))
        report = green_validate(gp, make_grid(dim, (n,) * dim, (16.0,) * dim))
        checks.append(
            _check(
                suite,
                f"closed_form_shape_n{dim}_nu{nu:g}",
                report.max_shape_error,
                tolerance,
                f"constant_ratio={report.constant_ratio:.6f}",
            )
        )
    return checks


# ============================================================================
# identities
# ============================================================================


def sw_equivalence_error(u: VectorField, eta: ScalarField, g: float) -> float:
    """Max |momentum-form tendency - eta-weighted primitive tendency| (dealiasing off)"""
    dim = eta.grid.dim
    primitive = sw_rhs_primitive(SWState(u=u, eta=eta, g=g), dealias=False)
    u_dot, eta_dot = primitive.vector(0), primitive.scalar(dim)
    composed_m = u_dot * eta + u * eta_dot
    momentum = sw_rhs_momentum(u * eta, eta, g, dealias=False)
    return max(
        max(np.max(np.abs(a.values - b.values)) for a, b in zip(momentum.vector(0), composed_m)),
        float(np.max(np.abs(momentum.scalar(dim).values - eta_dot.values))),
    )


def sw_vector_form_error(m: VectorField, eta: ScalarField, g: float) -> float:
    vector = sw_rhs_vector_form(m, eta, g, dealias=False)
    return vector.max_abs_diff(sw_rhs_momentum(m, eta, g, dealias=False))


def sw_variational_error(
    m: VectorField, eta: ScalarField, g: float, dm: VectorField, deta: ScalarField, eps: float = 1e-5
) -> float:
    """Relative error of <dH/dm, dm> + <dH/deta, deta> against a central difference"""
    a, b = sw_var_derivatives(m, eta, g)
    analytic = inner(a, dm) + inner(b, deta)
    plus = sw_hamiltonian(m + eps * dm, eta + eps * deta, g)
    minus = sw_hamiltonian(m - eps * dm, eta - eps * deta, g)
    numeric = (plus - minus) / (2.0 * eps)
    return abs(numeric - analytic) / abs(analytic)


@register_suite("identities")
def identities_suite() -> List[VerificationCheck]:
    suite = "identities"
    rng = _rng()
    checks = []
    g = 9.81
    sampled = f"{IDENTITY_SAMPLES} random states"

    for dim, n in ((1, 256), (2, 128)):
        grid = _grid(dim, n)
        worst_eq, worst_vec = 0.0, 0.0
        for _ in range(IDENTITY_SAMPLES):
            u = _random_vector(grid, rng, 0.1)
            eta = _random_depth(grid, rng)
            worst_eq = max(worst_eq, sw_equivalence_error(u, eta, g))
            worst_vec = max(worst_vec, sw_vector_form_error(u * eta, eta, g))
        checks.append(_check(suite, f"sw_momentum_equals_primitive_{dim}d", worst_eq, 1e-10, sampled))
        checks.append(_check(suite, f"sw_vector_form_equals_momentum_{dim}d", worst_vec, 1e-10, sampled))

    grid2 = _grid(2, 64)
    op2 = OperatorParams(alpha=0.5, nu=1.0, dim=2)
    worst_curl, worst_reduction = 0.0, 0.0
    for _ in range(IDENTITY_SAMPLES):
        s = EPDiffState(m=_random_vector(grid2, rng, 1.0), op=op2)
        advective = epdiff_rhs_advective(s, dealias=False)
        worst_curl = max(worst_curl, epdiff_rhs_curl(s, dealias=False).max_abs_diff(advective))
        worst_reduction = max(
            worst_reduction, epdiff_rhs_poisson(s, dealias=False).max_abs_diff(advective)
        )
    checks.append(_check(suite, "epdiff_curl_equals_advective", worst_curl, 1e-11, sampled))
    checks.append(_check(suite, "epdiff_poisson_reduction_2d", worst_reduction, 1e-11, sampled))

    grid1 = _grid(1, 256)
    op1 = OperatorParams(alpha=0.5, nu=1.0, dim=1)
    worst = 0.0
    for _ in range(IDENTITY_SAMPLES):
        s = EPDiffState(m=_random_vector(grid1, rng, 1.0), op=op1)
        worst = max(worst, epdiff_rhs_1d(s).max_abs_diff(epdiff_rhs_poisson(s)))
    checks.append(_check(suite, "epdiff_poisson_reduction_1d", worst, 1e-12, sampled))

    grid_fd = _grid(1, 64)
    worst = 0.0
    for _ in range(IDENTITY_SAMPLES):
        eta = _random_depth(grid_fd, rng)
        m = _random_vector(grid_fd, rng, 0.1) * eta
        for _ in range(VARIATION_DIRECTIONS):
            dm = _random_vector(grid_fd, rng, 0.1)
            deta = 0.05 + random_smooth_ic(grid_fd, rng, 0.1)
            worst = max(worst, sw_variational_error(m, eta, g, dm, deta))
    checks.append(_check(suite, "sw_variational_derivatives", worst, 1e-6, "central differences"))

    return checks


# ============================================================================
# conservation
# ============================================================================


def _integrate(state, rhs, steps: int, dt: float):
    for step in range(1, steps + 1):
        state = rk4_step(state, rhs, dt, step=step)
    return state


def sw_conservation_state(n: int = 64) -> SWMomentumState:
    grid = _grid(1, n)
    (x,) = grid.coordinates()
    eta = ScalarField(grid, 1.0 + 0.1 * np.sin(x))
    u = ScalarField(grid, 0.1 * np.cos(x))
    return SWMomentumState(m=VectorField((u * eta,)), eta=eta, g=1.0)


def epdiff_conservation_state(n: int = 64) -> EPDiffState:
    grid = _grid(1, n)
    (x,) = grid.coordinates()
    op = OperatorParams(alpha=0.5, nu=1.0, dim=1)
    u = ScalarField(grid, 0.5 + 0.2 * np.cos(x) + 0.1 * np.sin(2 * x))
    return EPDiffState(m=VectorField((apply_L(u, op),)), op=op)


@register_suite("conservation")
def conservation_suite() -> List[VerificationCheck]:
    suite = "conservation"
    checks = []

    y = rk4_step(1.0, lambda v: -v, 0.1)
    checks.append(_check(suite, "rk4_exponential_decay", abs(y - np.exp(-0.1)), 1e-7))

    def sw_rhs(s: SWMomentumState):
        return sw_rhs_momentum(s.m, s.eta, s.g, dealias=False)

    start = sw_conservation_state()
    end = _integrate(start, sw_rhs, CONSERVATION_STEPS, CONSERVATION_DT)
    checks.append(
        _check(
            suite,
            "sw_mass",
            relative_drift(start.eta.integral(), end.eta.integral()),
            1e-12,
            f"{CONSERVATION_STEPS} steps",
        )
    )
    checks.append(
        _check(
            suite,
            "sw_hamiltonian",
            relative_drift(
                sw_hamiltonian(start.m, start.eta, start.g), sw_hamiltonian(end.m, end.eta, end.g)
            ),
            1e-8,
            f"{CONSERVATION_STEPS} steps",
        )
    )

    def epdiff_rhs(s: EPDiffState):
        return epdiff_rhs_1d(s, dealias=False)

    e_start = epdiff_conservation_state()
    e_end = _integrate(e_start, epdiff_rhs, CONSERVATION_STEPS, CONSERVATION_DT)
    checks.append(
        _check(
            suite,
            "epdiff_momentum",
            relative_drift(e_start.m[0].integral(), e_end.m[0].integral()),
            1e-10,
        )
    )
    checks.append(
        _check(
            suite,
            "epdiff_hamiltonian",
            relative_drift(epdiff_hamiltonian(e_start), epdiff_hamiltonian(e_end)),
            1e-8,
        )
    )

    def primitive_rhs(s: SWState):
        return sw_rhs_primitive(s, dealias=False)

    p_end = _integrate(start.to_primitive_state(), primitive_rhs, CONSERVATION_STEPS, CONSERVATION_DT)
    gap = np.max(np.abs(p_end.u[0].values - end.velocity()[0].values))
    checks.append(_check(suite, "sw_forms_agree_at_t1", gap, 1e-6, "max |u| difference"))

    return checks
