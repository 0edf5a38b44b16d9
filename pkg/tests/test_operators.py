import math

import numpy as np
import pytest

from fraclab.core.constants import odd_riesz_constant
from fraclab.core.errors import ParameterRangeError
from fraclab.core.field import Field
from fraclab.core.grid import Grid
from fraclab.core.profiles import cosine_series, line_bump, one_minus_cos
from fraclab.core.quadrature import integrate_alg
from fraclab.operators.oracle import kernel_oracle
from fraclab.operators.spectral import (antiderivative, dealias, derivative, hilbert, lambda_alpha,
                                        lambda_at_origin, lambda_power, tail_fraction, velocity)


def trig(grid, fn):
    return Field.from_values(grid, fn(grid.nodes))


class TestMultipliers:
    def test_hilbert_maps_cos_to_sin(self, torus_grid):
        u = trig(torus_grid, lambda x: np.cos(3.0 * x))
        np.testing.assert_allclose(hilbert(u).values, np.sin(3.0 * torus_grid.nodes), atol=1e-13)

    def test_hilbert_kills_mean(self, torus_grid):
        u = trig(torus_grid, lambda x: 2.0 + 0.0 * x)
        assert hilbert(u).linf < 1e-15

    def test_lambda_power_scales_modes(self, torus_grid):
        u = trig(torus_grid, lambda x: np.cos(4.0 * x))
        out = lambda_power(u, 0.5)
        np.testing.assert_allclose(out.values, 2.0 * np.cos(4.0 * torus_grid.nodes), atol=1e-13)

    @pytest.mark.parametrize("s", [-1.0, 1.0, 1.5])
    def test_lambda_power_range(self, torus_grid, s):
        u = trig(torus_grid, np.cos)
        with pytest.raises(ParameterRangeError):
            lambda_power(u, s)

    def test_velocity_of_one_minus_cos(self, cos_field):
        for alpha in (0.3, 0.5, 1.0, 1.5):
            v = velocity(cos_field, alpha)
            np.testing.assert_allclose(v.values, -np.sin(cos_field.grid.nodes), atol=1e-13)

    def test_lambda_alpha_of_one_minus_cos(self, cos_field):
        out = lambda_alpha(cos_field, 0.7)
        np.testing.assert_allclose(out.values, -np.cos(cos_field.grid.nodes), atol=1e-13)

    def test_hilbert_squared_is_minus_identity(self, torus_grid):
        rng = np.random.default_rng(5)
        coeffs = np.zeros(torus_grid.n_modes, dtype=complex)
        coeffs[1:12] = rng.normal(size=11) + 1j * rng.normal(size=11)
        u = Field.from_coeffs(torus_grid, coeffs)
        np.testing.assert_allclose(hilbert(hilbert(u)).values, -u.values, atol=1e-13)

    @pytest.mark.parametrize("alpha", [0.3, 0.5, 1.5])
    def test_velocity_of_second_mode(self, torus_grid, alpha):
        u = trig(torus_grid, lambda x: np.cos(2.0 * x))
        expected = 2.0 ** (alpha - 1.0) * np.sin(2.0 * torus_grid.nodes)
        np.testing.assert_allclose(velocity(u, alpha).values, expected, atol=1e-13)

    def test_lambda_at_origin(self, cos_field):
        assert lambda_at_origin(cos_field) == pytest.approx(-1.0, abs=1e-14)

    def test_lambda_at_origin_higher_mode(self, torus_grid):
        u = Field.from_profile(torus_grid, cosine_series([0.0, 0.0, 0.0, -2.0]))
        assert lambda_at_origin(u) == pytest.approx(-6.0, abs=1e-13)


class TestCalculus:
    def test_derivative(self, torus_grid):
        u = trig(torus_grid, lambda x: np.cos(2.0 * x))
        np.testing.assert_allclose(derivative(u).values, -2.0 * np.sin(2.0 * torus_grid.nodes), atol=1e-12)

    def test_antiderivative_is_mean_free(self, torus_grid):
        u = trig(torus_grid, np.sin)
        primitive = antiderivative(u)
        np.testing.assert_allclose(primitive.values, -np.cos(torus_grid.nodes), atol=1e-13)
        assert abs(primitive.mean) < 1e-15

    def test_derivative_of_antiderivative(self, torus_grid):
        rng = np.random.default_rng(3)
        coeffs = np.zeros(torus_grid.n_modes, dtype=complex)
        coeffs[1:10] = rng.normal(size=9) + 1j * rng.normal(size=9)
        u = Field.from_coeffs(torus_grid, coeffs)
        np.testing.assert_allclose(derivative(antiderivative(u)).values, u.values, atol=1e-12)


class TestDealiasing:
    def test_two_thirds_rule(self, torus_grid):
        u = trig(torus_grid, lambda x: np.cos(5.0 * x) + np.cos(25.0 * x))
        out = dealias(u)
        np.testing.assert_allclose(out.values, np.cos(5.0 * torus_grid.nodes), atol=1e-13)
        assert torus_grid.dealias_cutoff == 21

    def test_tail_fraction_bounds(self, torus_grid, cos_field):
        assert tail_fraction(cos_field) == pytest.approx(0.0, abs=1e-28)
        high = trig(torus_grid, lambda x: np.cos(20.0 * x))
        assert tail_fraction(high) == pytest.approx(1.0)
        mixed = trig(torus_grid, lambda x: np.cos(2.0 * x) + np.cos(20.0 * x))
        assert tail_fraction(mixed) == pytest.approx(0.5)

    def test_tail_fraction_of_constant(self, torus_grid):
        assert tail_fraction(trig(torus_grid, lambda x: 3.0 + 0.0 * x)) == 0.0


class TestOracle:
    @pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
    def test_agrees_with_spectral_velocity(self, alpha):
        u = Field.from_profile(Grid.torus(256), one_minus_cos())
        for x in (0.4, 1.9, 3.3):
            expected = -math.sin(x)
            assert kernel_oracle(u, alpha, x, "lambda_hilbert") == pytest.approx(expected, abs=1e-5)

    def test_fractional_laplacian_on_cos(self):
        u = Field.from_profile(Grid.torus(256), one_minus_cos())
        # Lambda^{alpha-1}(1 - cos x) = -cos x
        assert kernel_oracle(u, 0.5, 1.0, "lambda") == pytest.approx(-math.cos(1.0), abs=1e-5)

    def test_exponent_range(self, cos_field):
        with pytest.raises(ParameterRangeError):
            kernel_oracle(cos_field, 1.0, 0.5, "lambda_hilbert")


class TestLineKernel:
    """For even u the line kernel of Lambda^{a-1} H folds to sign(x-y)|x-y|^{-a} + |x+y|^{-a}."""

    ALPHA = 0.5
    X = 0.5

    def spectral_value(self):
        grid = Grid.line(8192, 32.0)
        index = 64
        assert grid.signed_nodes[index] == self.X
        u = Field.from_profile(grid, line_bump(1, 2))
        return velocity(u, self.ALPHA).values[index]

    def same_side_form(self):
        # |x+y| replaced by |x-y|: only y < x contributes, with weight 2 |x-y|^{-a}
        bump = line_bump(1, 2)
        value, _ = integrate_alg(lambda y: float(bump(y)), 0.0, self.X, 0.0, -self.ALPHA)
        return 2.0 * odd_riesz_constant(self.ALPHA) * value

    def test_folded_kernel_matches_fourier(self, bump_field):
        folded = kernel_oracle(bump_field, self.ALPHA, self.X, "lambda_hilbert")
        assert folded == pytest.approx(self.spectral_value(), abs=2e-3)

    def test_same_side_kernel_does_not(self, bump_field):
        folded = kernel_oracle(bump_field, self.ALPHA, self.X, "lambda_hilbert")
        same_side = self.same_side_form()
        # the two kernels differ by |x-y|^{-a} - |x+y|^{-a} > 0 against u >= 0
        assert same_side - folded > 1e-2
        assert abs(same_side - self.spectral_value()) > 1e-2
