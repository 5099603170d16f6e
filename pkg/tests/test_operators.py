"""
EPDiff-SW - Operator Tests
Yukawa operator, vector calculus and the shallow-water Poisson operator
"""

import math

import numpy as np
import pytest

from epdiffsw.core.exceptions import AlphaRangeWarning, DimensionMismatchError
from epdiffsw.operators import (
    apply_L,
    apply_Linv,
    curl_embedded,
    div,
    grad,
    laplacian,
    poisson_apply_1d,
    poisson_apply_nd,
    yukawa_symbol,
)
from epdiffsw.schemas import OperatorParams
from epdiffsw.spectral import ScalarField, VectorField, inner, make_grid


def _max_diff(a: ScalarField, b: ScalarField) -> float:
    return float(np.max(np.abs(a.values - b.values)))


class TestYukawaSymbol:
    """Test the Fourier symbol (1 + alpha^2 k^2)^nu"""

    @pytest.mark.parametrize(
        "k_sq,nu,expected",
        [
            (0.0, 1.0, 1.0),
            (1.0, 1.0, 2.0),
            (1.0, 1.5, 2.0**1.5),
        ],
    )
    def test_values(self, k_sq, nu, expected):
        """Test symbol values at alpha = 1"""
        op = OperatorParams(alpha=1.0, nu=nu, dim=1)
        assert yukawa_symbol(k_sq, op) == pytest.approx(expected, rel=1e-15)

    def test_array_input(self, unit_op_1d):
        values = yukawa_symbol(np.array([0.0, 1.0, 3.0]), unit_op_1d)
        np.testing.assert_allclose(values, [1.0, 2.0, 4.0])

    def test_negative_k_sq_rejected(self, unit_op_1d):
        with pytest.raises(ValueError):
            yukawa_symbol(-1.0, unit_op_1d)


class TestOperatorParams:
    """Test Yukawa parameter validation"""

    @pytest.mark.parametrize("alpha,nu", [(0.0, 1.0), (-0.5, 1.0), (0.5, 0.0), (0.5, -1.0)])
    def test_rejects_non_positive(self, alpha, nu):
        with pytest.raises(ValueError):
            OperatorParams(alpha=alpha, nu=nu, dim=1)

    def test_large_alpha_warns(self):
        """Test alpha^2 > 1 is accepted with a warning"""
        with pytest.warns(AlphaRangeWarning):
            op = OperatorParams(alpha=1.5, nu=1.0, dim=1)
        assert op.alpha == 1.5


class TestYukawaOperator:
    """Test L^nu and its inverse on grid fields"""

    def test_L_of_sine(self, grid_1d, unit_op_1d):
        (x,) = grid_1d.coordinates()
        m = apply_L(ScalarField(grid_1d, np.sin(x)), unit_op_1d)
        assert np.max(np.abs(m.values - 2.0 * np.sin(x))) < 1e-12

    def test_Linv_of_sine(self, grid_1d, unit_op_1d):
        (x,) = grid_1d.coordinates()
        u = apply_Linv(ScalarField(grid_1d, np.sin(x)), unit_op_1d)
        assert np.max(np.abs(u.values - 0.5 * np.sin(x))) < 1e-14

    @pytest.mark.parametrize("alpha", [0.1, 0.5, 1.0])
    @pytest.mark.parametrize("nu", [0.5, 1.0, 1.5, 2.0, 3.0])
    def test_roundtrip(self, grid_1d, random_field, alpha, nu):
        """Test L^{-nu} L^nu f recovers f"""
        op = OperatorParams(alpha=alpha, nu=nu, dim=1)
        f = random_field(grid_1d)
        back = apply_Linv(apply_L(f, op), op)
        assert _max_diff(back, f) / f.max_abs() < 1e-12

    def test_roundtrip_vector(self, grid_2d, random_vector, unit_op_2d):
        v = random_vector(grid_2d)
        back = apply_L(apply_Linv(v, unit_op_2d), unit_op_2d)
        for a, b in zip(back, v):
            assert _max_diff(a, b) < 1e-12

    def test_self_adjoint(self, grid_2d, random_field):
        op = OperatorParams(alpha=0.3, nu=1.5, dim=2)
        f, g = random_field(grid_2d), random_field(grid_2d)
        assert inner(apply_L(f, op), g) == pytest.approx(inner(f, apply_L(g, op)), rel=1e-12)

    def test_constant_unchanged(self, grid_2d, unit_op_2d):
        c = ScalarField.constant(grid_2d, 3.0)
        assert _max_diff(apply_L(c, unit_op_2d), c) < 1e-13

    def test_dimension_mismatch(self, grid_1d, unit_op_2d):
        with pytest.raises(DimensionMismatchError):
            apply_L(ScalarField.zeros(grid_1d), unit_op_2d)


class TestVectorCalculus:
    """Test grad, div, curl and Laplacian on trigonometric fields"""

    def test_grad(self, grid_2d):
        x, y = grid_2d.mesh()
        g = grad(ScalarField(grid_2d, np.sin(x) * np.cos(y)))
        assert np.max(np.abs(g[0].values - np.cos(x) * np.cos(y))) < 1e-12
        assert np.max(np.abs(g[1].values + np.sin(x) * np.sin(y))) < 1e-12

    def test_div(self, grid_2d):
        x, y = grid_2d.mesh()
        v = VectorField.from_arrays(grid_2d, [np.sin(x), np.sin(y)])
        assert np.max(np.abs(div(v).values - (np.cos(x) + np.cos(y)))) < 1e-12

    def test_curl(self, grid_2d):
        x, y = grid_2d.mesh()
        v = VectorField.from_arrays(grid_2d, [-np.sin(y), np.sin(x)])
        assert np.max(np.abs(curl_embedded(v).values - (np.cos(x) + np.cos(y)))) < 1e-12

    def test_curl_of_gradient_vanishes(self, grid_2d, random_field):
        assert curl_embedded(grad(random_field(grid_2d))).max_abs() < 1e-12

    def test_curl_needs_two_d(self, grid_1d):
        with pytest.raises(DimensionMismatchError):
            curl_embedded(VectorField((ScalarField.zeros(grid_1d),)))

    def test_laplacian(self, grid_2d):
        x, y = grid_2d.mesh()
        f = ScalarField(grid_2d, np.sin(x) * np.sin(2 * y))
        assert np.max(np.abs(laplacian(f).values + 5.0 * f.values)) < 1e-12

    def test_laplacian_is_div_grad(self, grid_2d, random_field):
        f = random_field(grid_2d)
        assert _max_diff(laplacian(f), div(grad(f))) < 1e-11


class TestPoissonOperator:
    """Test the shallow-water Hamiltonian operator"""

    def test_constant_depth_example(self, grid_1d):
        """Test m = 0, eta = h, a = 0, b = sin x gives (-h cos x, 0)"""
        (x,) = grid_1d.coordinates()
        h = 2.5
        zero = ScalarField.zeros(grid_1d)
        first, second = poisson_apply_1d(
            zero, ScalarField.constant(grid_1d, h), zero, ScalarField(grid_1d, np.sin(x))
        )
        assert np.max(np.abs(first.values + h * np.cos(x))) < 1e-12
        assert second.max_abs() < 1e-12

    def test_zero_arguments(self, grid_1d, random_field, random_depth):
        zero = ScalarField.zeros(grid_1d)
        first, second = poisson_apply_1d(random_field(grid_1d), random_depth(grid_1d), zero, zero)
        assert first.max_abs() == 0.0
        assert second.max_abs() == 0.0

    def test_mass_flux_component(self, grid_1d):
        """Test the eta component is -(eta a)'"""
        (x,) = grid_1d.coordinates()
        zero = ScalarField.zeros(grid_1d)
        one = ScalarField.constant(grid_1d, 1.0)
        _, second = poisson_apply_1d(zero, one, ScalarField(grid_1d, np.sin(x)), zero)
        assert np.max(np.abs(second.values + np.cos(x))) < 1e-12

    def test_skew_adjoint_1d(self, grid_1d, random_field, random_depth):
        """Test <(a1,b1), J(a2,b2)> = -<J(a1,b1), (a2,b2)>"""
        m, eta = random_field(grid_1d), random_depth(grid_1d)
        a1, b1, a2, b2 = (random_field(grid_1d) for _ in range(4))
        j2 = poisson_apply_1d(m, eta, a2, b2, dealias=False)
        j1 = poisson_apply_1d(m, eta, a1, b1, dealias=False)
        lhs = inner(a1, j2[0]) + inner(b1, j2[1])
        rhs = -(inner(j1[0], a2) + inner(j1[1], b2))
        assert abs(lhs - rhs) < 1e-10

    def test_skew_adjoint_2d(self, grid_2d, random_vector, random_field, random_depth):
        m, eta = random_vector(grid_2d), random_depth(grid_2d)
        a1, a2 = random_vector(grid_2d), random_vector(grid_2d)
        b1, b2 = random_field(grid_2d), random_field(grid_2d)
        j2 = poisson_apply_nd(m, eta, a2, b2, dealias=False)
        j1 = poisson_apply_nd(m, eta, a1, b1, dealias=False)
        lhs = inner(a1, j2[0]) + inner(b1, j2[1])
        rhs = -(inner(j1[0], a2) + inner(j1[1], b2))
        assert abs(lhs - rhs) < 1e-10

    def test_nd_reduces_to_1d_for_aligned_fields(self, grid_1d, random_field, random_depth):
        """Test y-independent 2-D fields with zero y-components reproduce the 1-D operator"""
        line = [random_field(grid_1d), random_depth(grid_1d), random_field(grid_1d), random_field(grid_1d)]
        first, second = poisson_apply_1d(*line, dealias=False)
        strip = make_grid(2, (grid_1d.sizes[0], 16), (grid_1d.lengths[0], 3.0))

        def extend(f: ScalarField) -> ScalarField:
            return ScalarField(strip, np.repeat(f.values[:, None], strip.sizes[1], axis=1))

        m2, eta2, a2, b2 = (extend(f) for f in line)
        zero = ScalarField.zeros(strip)
        momentum, flux = poisson_apply_nd(
            VectorField((m2, zero)), eta2, VectorField((a2, zero)), b2, dealias=False
        )
        assert np.max(np.abs(momentum[0].values - extend(first).values)) < 1e-12
        assert momentum[1].max_abs() < 1e-12
        assert np.max(np.abs(flux.values - extend(second).values)) < 1e-12

    def test_grid_mismatch(self, grid_1d):
        other = make_grid(1, (32,), (2 * math.pi,))
        zero = ScalarField.zeros(grid_1d)
        with pytest.raises(DimensionMismatchError):
            poisson_apply_1d(zero, zero, zero, ScalarField.zeros(other))
