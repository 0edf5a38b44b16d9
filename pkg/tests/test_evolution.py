import math

import numpy as np
import pytest
from pydantic import ValidationError

from fraclab.core.errors import CheckpointError, MeanDriftError, ParameterRangeError
from fraclab.core.field import Field
from fraclab.core.grid import Grid
from fraclab.core.profiles import cosine_series, one_minus_cos
from fraclab.evolution.checkpoint import FORMAT_TAG, load_checkpoint, save_checkpoint
from fraclab.evolution.rhs import reconstruct_velocity, rhs_cht, rhs_ea
from fraclab.evolution.selfsim import selfsim_profile_check
from fraclab.evolution.state import EvolutionState, StepPolicy
from fraclab.evolution.stepper import RK4, evolve, temporal_order, time_step
from fraclab.inequalities.alpha_one import riccati_solution
from fraclab.operators.spectral import velocity


def even_field(grid, seed=0, modes=6):
    rng = np.random.default_rng(seed)
    a = np.concatenate([[2.0], rng.uniform(-0.3, 0.3, size=modes)])
    return Field.from_profile(grid, cosine_series(a))


class TestRightHandSide:
    def test_cht_example(self, cos_field):
        x = cos_field.grid.signed_nodes
        np.testing.assert_allclose(rhs_cht(cos_field, 0.5).values, np.cos(x) - np.cos(2.0 * x), atol=1e-12)

    def test_cht_zero(self, torus_grid):
        assert rhs_cht(Field.zeros(torus_grid), 0.5).linf == 0.0

    def test_rhs_conserves_mass(self, torus_grid):
        assert rhs_cht(even_field(torus_grid), 0.7).coeffs[0] == 0.0

    @pytest.mark.parametrize("alpha", [0.3, 0.5, 1.0, 1.5])
    def test_two_field_with_zero_G_matches_single_equation(self, torus_grid, alpha):
        u = even_field(torus_grid, seed=1)
        state = EvolutionState(u=u, G=Field.zeros(torus_grid))
        du, dG = rhs_ea(state, alpha)
        np.testing.assert_allclose(du.values, rhs_cht(u, alpha).values, atol=1e-12)
        assert dG.linf == 0.0

    def test_reconstructed_velocity(self, torus_grid):
        u = even_field(torus_grid, seed=2)
        v = reconstruct_velocity(u, None, 0.6)
        np.testing.assert_allclose(v.values, velocity(u, 0.6).values, atol=1e-13)
        shifted = reconstruct_velocity(u, None, 0.6, v_mean=0.25)
        assert shifted.mean == pytest.approx(0.25)

    def test_mean_drift(self, torus_grid, cos_field):
        G = Field.from_values(torus_grid, np.full(torus_grid.n_points, 0.1))
        with pytest.raises(MeanDriftError):
            rhs_ea(EvolutionState(u=cos_field, G=G), 0.5)
        with pytest.raises(MeanDriftError):
            evolve(cos_field, G, 0.5, StepPolicy(max_time=0.01))


class TestStepper:
    def test_rk4_table(self):
        scheme = RK4()
        assert scheme.s == 4 and scheme.n == 4
        assert sum(scheme.BT[3]) == pytest.approx(1.0)

    def test_rk4_exact_on_cubic(self):
        # y' = 3 t^2 is integrated exactly by a fourth order scheme
        scheme = RK4()
        f = lambda t, y: (np.array([3.0 * t * t], dtype=complex),)
        (y,) = scheme.step(f, 0.5, (np.array([0.0], dtype=complex),), 0.5)
        assert y[0].real == pytest.approx(1.0 - 0.125, abs=1e-15)

    def test_time_step(self, cos_field):
        state = EvolutionState(u=cos_field)
        dt = time_step(state, 0.5, StepPolicy(dt_safety=0.5))
        assert dt == pytest.approx(0.5 * cos_field.grid.spacing)
        assert time_step(state, 0.5, StepPolicy(dt_fixed=1e-3)) == 1e-3

    def test_temporal_order(self, cos_field):
        orders = temporal_order(cos_field, 0.5, [0.05, 0.025, 0.0125], 0.2)
        assert np.all(orders >= 3.5)

    def test_temporal_order_needs_three_steps(self, cos_field):
        with pytest.raises(ValueError):
            temporal_order(cos_field, 0.5, [0.1, 0.05], 0.2)

    def test_policy_is_strict(self):
        with pytest.raises(ValidationError):
            StepPolicy(dt_safty=0.1)
        with pytest.raises(ValidationError):
            StepPolicy(dt_safety=1.5)


class TestEvolve:
    def test_mass_and_evenness(self, cos_field):
        series, state = evolve(cos_field, None, 0.5, StepPolicy(max_time=0.3))
        assert series.stop_reason in ("max-time", "resolution-loss")
        assert abs(state.u.mass - series.rows[0].mass) <= 1e-12
        assert series.rows[0].mass == pytest.approx(2.0 * math.pi)
        assert state.u.parity == "even"
        assert series.rows[-1].t == state.t

    def test_reaches_max_time_exactly(self, cos_field):
        series, state = evolve(cos_field, None, 0.5, StepPolicy(max_time=0.05, tail_threshold=1.0))
        assert series.stop_reason == "max-time"
        assert state.t == pytest.approx(0.05, rel=1e-12)

    def test_max_steps(self, cos_field):
        series, state = evolve(cos_field, None, 0.5, StepPolicy(max_steps=3, tail_threshold=1.0))
        assert series.stop_reason == "max-steps"
        assert state.step == 3
        assert len(series) == 4

    def test_sampling_keeps_final_state(self, cos_field):
        series, state = evolve(cos_field, None, 0.5,
                               StepPolicy(max_steps=5, sample_every=2, tail_threshold=1.0))
        assert state.step == 5
        assert len(series) == 4
        assert series.rows[-1].t == state.t

    def test_boundary_guard(self):
        grid = Grid.line(64, 4.0)
        u = Field.from_values(grid, np.ones(grid.n_points))
        series, _ = evolve(u, None, 1.5, StepPolicy(max_time=1.0))
        assert series.stop_reason == "boundary-guard"

    def test_two_field_reduction(self, cos_field):
        policy = StepPolicy(max_time=0.3, tail_threshold=1.0)
        _, s_state = evolve(cos_field, None, 0.5, policy)
        pair, p_state = evolve(cos_field, Field.zeros(cos_field.grid), 0.5, policy)
        assert max(r.G_linf for r in pair.rows) <= 1e-8
        assert np.max(np.abs(s_state.u.values - p_state.u.values)) <= 1e-8

    def test_positive_density_stays_bounded(self, torus_grid):
        u0 = Field.from_profile(torus_grid, cosine_series([2.0, 1.0]))
        series, _ = evolve(u0, None, 0.5, StepPolicy(max_time=1.0, tail_threshold=1.0, sample_every=10))
        assert series.stop_reason == "max-time"
        assert np.all(series.max_ux <= 10.0 * series.max_ux[0])
        assert not series.has("weighted_functional")

    @pytest.mark.slow
    def test_riccati_tracking(self):
        u0 = Field.from_profile(Grid.torus(1024), one_minus_cos())
        series, _ = evolve(u0, None, 1.0, StepPolicy(max_time=0.8))
        assert series.stop_reason == "max-time"
        for row in series.rows:
            expected = riccati_solution(-1.0, row.t)
            assert row.lambda_u0 == pytest.approx(expected, rel=1e-3)


class TestCheckpoint:
    def test_roundtrip(self, tmp_path, cos_field):
        state = EvolutionState(t=0.25, u=cos_field, G=Field.zeros(cos_field.grid), v_mean=0.5, step=7)
        path = save_checkpoint(str(tmp_path / "ckpt.npz"), state, 0.5)
        loaded, alpha = load_checkpoint(path)
        assert alpha == 0.5
        assert (loaded.t, loaded.step, loaded.v_mean) == (0.25, 7, 0.5)
        np.testing.assert_array_equal(loaded.u.coeffs, cos_field.coeffs)
        assert loaded.G is not None and loaded.G.linf == 0.0
        assert loaded.grid == cos_field.grid

    def test_single_field(self, tmp_path, cos_field):
        path = save_checkpoint(str(tmp_path / "ckpt.npz"), EvolutionState(u=cos_field), 1.0)
        loaded, _ = load_checkpoint(path)
        assert loaded.G is None

    def test_bad_tag(self, tmp_path):
        path = str(tmp_path / "other.npz")
        np.savez(path, format=np.array("something-else"))
        with pytest.raises(CheckpointError):
            load_checkpoint(path)

    def test_missing_fields(self, tmp_path):
        path = str(tmp_path / "partial.npz")
        np.savez(path, format=np.array(FORMAT_TAG))
        with pytest.raises(CheckpointError):
            load_checkpoint(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(CheckpointError):
            load_checkpoint(str(tmp_path / "absent.npz"))


class TestSelfsim:
    def test_alpha_one_is_linear(self):
        report = selfsim_profile_check(1.0)
        assert report.passed
        assert report.slope == pytest.approx(2.0 / math.pi, rel=1e-4)
        assert report.endpoint_exponent == pytest.approx(0.5, abs=0.05)

    def test_slope_scales_with_mass(self):
        one = selfsim_profile_check(1.0, scale=1.0)
        two = selfsim_profile_check(1.0, scale=2.0)
        assert two.slope == pytest.approx(2.0 * one.slope, rel=1e-8)

    @pytest.mark.slow
    @pytest.mark.parametrize("alpha", [1.2, 1.5])
    def test_fractional_profiles(self, alpha):
        assert selfsim_profile_check(alpha).passed

    def test_range(self):
        with pytest.raises(ParameterRangeError):
            selfsim_profile_check(2.0)
