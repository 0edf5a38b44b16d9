
import numpy as np
import pytest

from fraclab.core.errors import (BlowupReachedError, DivergentWeightError, HypothesisViolationError,
                                 ParameterRangeError)
from fraclab.core.field import Field
from fraclab.core.grid import Grid
from fraclab.core.profiles import admissible_family, cosine_series, one_minus_cos
from fraclab.inequalities.alpha_one import (alpha1_weighted_identity, cotlar_residual, riccati_closure_residual,
                                            riccati_solution)
from fraclab.inequalities.bounds import c1_report, c2_c3_bounds, first_integral
from fraclab.inequalities.functionals import weighted_functional, weighted_functional_direct
from fraclab.inequalities.maincoro import ccfi_ratio, maincoro_check
from fraclab.inequalities.positivity import g0_positivity_scan


def random_mean_free(grid, seed, modes=8):
    rng = np.random.default_rng(seed)
    coeffs = np.zeros(grid.n_modes, dtype=complex)
    coeffs[1:modes + 1] = rng.normal(size=modes) + 1j * rng.normal(size=modes)
    return Field.from_coeffs(grid, coeffs)


class TestAlphaOne:
    @pytest.mark.parametrize("seed", range(5))
    def test_cotlar_identity(self, seed):
        assert cotlar_residual(random_mean_free(Grid.torus(128), seed)) <= 1e-10

    def test_cotlar_needs_torus(self, bump_field):
        with pytest.raises(ParameterRangeError):
            cotlar_residual(bump_field)

    def test_weighted_identity(self, bump_field):
        report = alpha1_weighted_identity(bump_field)
        assert report.passed
        assert abs(report.margin) <= 1e-6 * max(abs(report.lhs), abs(report.rhs))

    def test_weighted_identity_needs_double_zero(self, line_grid):
        shifted = Field.from_values(line_grid, np.where(np.abs(line_grid.signed_nodes) < 1.0,
                                                        1.0 - line_grid.signed_nodes ** 2, 0.0))
        with pytest.raises(HypothesisViolationError):
            alpha1_weighted_identity(shifted)

    def test_riccati_solution(self):
        assert riccati_solution(-1.0, 0.5) == pytest.approx(-2.0)
        assert riccati_solution(1.0, 1.0) == pytest.approx(0.5)
        with pytest.raises(BlowupReachedError):
            riccati_solution(-1.0, 1.0)

    def test_riccati_closure(self):
        u = Field.from_profile(Grid.torus(256), one_minus_cos())
        assert riccati_closure_residual(u) <= 1e-10


class TestFunctionals:
    def test_routes_agree_on_torus(self):
        grid = Grid.torus(64)
        exact = Field.from_profile(grid, one_minus_cos())
        sampled = Field.from_values(grid, exact.values)
        by_profile = weighted_functional(exact, 1.5)
        by_grid = weighted_functional(sampled, 1.5)
        by_direct = weighted_functional_direct(exact, 1.5)
        assert by_grid == pytest.approx(by_profile, rel=1e-7)
        assert by_direct == pytest.approx(by_profile, rel=1e-6)
        assert by_profile > 0.0

    def test_line_bump_closed_form(self, bump_field):
        # int_0^1 x^{-1/2} (1 - x^2)^2 dx = 2 - 2 * 2/5 + 2/9
        assert weighted_functional(bump_field, 2.5) == pytest.approx(2.0 - 0.8 + 2.0 / 9.0, rel=1e-9)

    def test_diverges_without_double_zero(self, torus_grid):
        u = Field.from_profile(torus_grid, cosine_series([2.0, 1.0]))
        with pytest.raises(DivergentWeightError):
            weighted_functional(u, 1.5)

    def test_power_range(self, cos_field):
        with pytest.raises(ParameterRangeError):
            weighted_functional(cos_field, 3.0)
        with pytest.raises(ParameterRangeError):
            weighted_functional(cos_field, 1.0)

    def test_zero_field(self, torus_grid):
        assert weighted_functional(Field.zeros(torus_grid), 1.5) == 0.0


class TestLineInequality:
    @pytest.mark.parametrize("beta", [0.25, 0.5, 0.75])
    def test_margin_nonnegative(self, bump_field, beta):
        report = maincoro_check(bump_field, beta)
        assert report.margin >= -1e-8
        assert report.rhs > 0.0

    @pytest.mark.slow
    def test_admissible_family(self, line_grid):
        for profile in admissible_family(20):
            report = maincoro_check(Field.from_profile(line_grid, profile), 0.5)
            assert report.margin >= -1e-8, profile.name

    def test_beta_range(self, bump_field):
        with pytest.raises(ParameterRangeError):
            maincoro_check(bump_field, 1.0)

    def test_rejects_torus(self, cos_field):
        with pytest.raises(ParameterRangeError):
            maincoro_check(cos_field, 0.5)

    def test_ccfi_lhs_nonnegative(self, bump_field):
        report = ccfi_ratio(bump_field, 0.5)
        assert report.lhs_nonnegative
        assert report.ratio is not None and report.ratio > 0.0


class TestConstants:
    @pytest.mark.parametrize("alpha", [0.2, 0.5, 0.8])
    def test_first_integral_closed_form(self, alpha):
        expected = 2.0 ** (1.0 - alpha) / (alpha - 1.0)
        assert first_integral(alpha) == pytest.approx(expected, abs=1e-8)

    @pytest.mark.parametrize("beta", [0.25, 0.5, 0.75])
    def test_g0_positivity(self, beta):
        assert g0_positivity_scan(beta).passed

    @pytest.mark.slow
    def test_c1_positive_and_routes_agree(self):
        report = c1_report(0.5)
        assert report.agree
        assert report.c1 > 0.0

    @pytest.mark.slow
    def test_c2_c3_finite(self):
        c2, c3 = c2_c3_bounds(0.5)
        assert np.isfinite(c2) and np.isfinite(c3)
        assert c2 > 0.0 and c3 > 0.0
