import math

import numpy as np
import pytest

from fraclab.core.constants import make_constants
from fraclab.core.errors import ParameterRangeError, TooFewSamplesError
from fraclab.core.field import Field
from fraclab.evolution.state import EvolutionState
from fraclab.monitor.blowup import blowup_fit
from fraclab.monitor.odes import ode_inequality_residual, periodic_ode_check
from fraclab.monitor.series import CSV_COLUMNS, MonitorRow, MonitorSeries, Scenario, sample_monitors

HEADER = "t,mass,min_u,max_u,max_ux,weighted_functional,lambda_u0,tail_fraction,G_linf"


def synthetic(times, max_ux=None, functional=None, lambda_u0=None, domain="torus", stop="max-time"):
    n = len(times)
    max_ux = np.ones(n) if max_ux is None else max_ux
    series = MonitorSeries(scenario=Scenario(domain=domain), stop_reason=stop)
    for i, t in enumerate(times):
        series.append(MonitorRow(
            t=float(t), mass=1.0, min_u=0.0, max_u=1.0, max_ux=float(max_ux[i]),
            weighted_functional=None if functional is None else float(functional[i]),
            lambda_u0=None if lambda_u0 is None else float(lambda_u0[i]),
            tail_fraction=0.0,
        ))
    return series


class TestSampling:
    def test_zero_row(self, torus_grid):
        row = sample_monitors(EvolutionState(u=Field.zeros(torus_grid)), Scenario.default("torus", 0.5))
        assert (row.mass, row.max_ux, row.tail_fraction) == (0.0, 0.0, 0.0)
        assert row.weighted_functional == 0.0
        assert row.lambda_u0 is None and row.G_linf is None

    def test_one_minus_cos_row(self, cos_field):
        row = sample_monitors(EvolutionState(u=cos_field), Scenario.default("torus", 1.0))
        assert row.mass == pytest.approx(2.0 * math.pi)
        assert row.max_ux == pytest.approx(1.0)
        assert row.min_u == pytest.approx(0.0, abs=1e-15)
        assert row.max_u == pytest.approx(2.0)
        assert row.lambda_u0 == pytest.approx(-1.0)
        assert row.weighted_functional > 0.0

    def test_functional_dropped_without_double_zero(self, torus_grid):
        u = Field.from_values(torus_grid, 2.0 + np.cos(torus_grid.nodes))
        row = sample_monitors(EvolutionState(u=u, G=Field.zeros(torus_grid)), Scenario.default("torus", 0.5))
        assert row.weighted_functional is None
        assert row.G_linf == 0.0

    def test_default_power(self):
        assert Scenario.default("line", 1.5).weighted_power == pytest.approx(2.5)
        assert Scenario.default("torus", 0.5).weighted_power == pytest.approx(1.5)
        assert Scenario.default("torus", 1.0).track_lambda_origin


class TestSeries:
    def test_times_must_increase(self):
        series = synthetic([0.0, 0.1])
        with pytest.raises(ValueError):
            series.append(series.rows[-1])

    def test_column_and_has(self):
        series = synthetic([0.0, 0.1], functional=[1.0, 2.0])
        assert series.has("weighted_functional")
        assert not series.has("lambda_u0")
        assert np.all(np.isnan(series.column("G_linf")))
        with pytest.raises(KeyError):
            series.column("nope")

    def test_csv_header_and_roundtrip(self, tmp_path):
        series = synthetic([0.0, 0.1, 0.30000000000000004], functional=[1.0, 1.0 / 3.0, 2.0])
        path = series.to_csv(str(tmp_path / "monitors.csv"))
        with open(path, encoding="utf-8") as f:
            lines = f.read().split("\n")
        assert lines[0] == HEADER
        assert lines[1].split(",")[6] == ""
        back = MonitorSeries.from_csv(path)
        assert back.rows == series.rows

    def test_csv_is_deterministic(self, tmp_path, cos_field):
        scenario = Scenario.default("torus", 0.5)
        first = MonitorSeries(scenario=scenario)
        first.append(sample_monitors(EvolutionState(u=cos_field), scenario))
        second = MonitorSeries(scenario=scenario)
        second.append(sample_monitors(EvolutionState(u=cos_field), scenario))
        a = first.to_csv(str(tmp_path / "a.csv"))
        b = second.to_csv(str(tmp_path / "b.csv"))
        with open(a, "rb") as fa, open(b, "rb") as fb:
            assert fa.read() == fb.read()

    def test_bad_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("t,mass\n0,1\n", encoding="utf-8")
        with pytest.raises(ValueError):
            MonitorSeries.from_csv(str(path))

    def test_columns_constant(self):
        assert ",".join(CSV_COLUMNS) == HEADER


class TestOdeResiduals:
    def test_too_few_samples(self):
        series = synthetic([0.0, 0.1], functional=[1.0, 1.1])
        with pytest.raises(TooFewSamplesError):
            periodic_ode_check(series, 0.5, 1.0, 0.0, 0.0, 1.0)

    def test_missing_functional_counts_as_absent(self):
        series = synthetic([0.0, 0.1, 0.2, 0.3])
        with pytest.raises(TooFewSamplesError):
            periodic_ode_check(series, 0.5, 1.0, 0.0, 0.0, 1.0)

    def test_zero_solution(self):
        t = np.linspace(0.0, 1.0, 6)
        line = synthetic(t, functional=np.zeros(6), domain="line")
        np.testing.assert_array_equal(ode_inequality_residual(line, 0.5, make_constants(1.5)), np.zeros(6))
        torus = synthetic(t, functional=np.zeros(6))
        np.testing.assert_array_equal(periodic_ode_check(torus, 0.5, 1.0, 2.0, 3.0, 0.0), np.zeros(6))

    def test_riccati_saturates_inequality(self):
        t = np.linspace(0.0, 0.5, 51)
        J = 1.0 / (1.0 - t)
        margins = periodic_ode_check(synthetic(t, functional=J), 0.5, 1.0, 0.0, 0.0, 1.0)
        assert np.all(np.abs(margins) <= 1e-2 * J ** 2)

    def test_domain_and_range(self):
        t = np.linspace(0.0, 1.0, 4)
        with pytest.raises(ParameterRangeError):
            ode_inequality_residual(synthetic(t, functional=np.ones(4)), 0.5, make_constants(1.5))
        with pytest.raises(ParameterRangeError):
            periodic_ode_check(synthetic(t, functional=np.ones(4), domain="line"), 0.5, 1.0, 0.0, 0.0, 1.0)
        with pytest.raises(ParameterRangeError):
            ode_inequality_residual(synthetic(t, functional=np.ones(4), domain="line"), 1.0, make_constants(1.5))


class TestBlowupFit:
    def test_constant_series(self):
        report = blowup_fit(synthetic(np.linspace(0.0, 1.0, 20)))
        assert not report.detected
        assert report.growth_factor == pytest.approx(1.0)
        assert report.t_estimate is None
        assert report.stop_reason == "max-time"

    def test_riccati_series(self):
        t = np.linspace(0.0, 0.95, 40)
        report = blowup_fit(synthetic(t, max_ux=1.0 / (1.0 - t), stop="resolution-loss"), ode_margin_min=-0.5)
        assert report.detected
        assert report.t_estimate == pytest.approx(1.0, abs=1e-9)
        assert report.growth_factor == pytest.approx(20.0)
        assert report.norm == "max_ux"
        assert report.ode_margin_min == -0.5

    def test_growth_without_stop_is_not_detected(self):
        t = np.linspace(0.0, 0.95, 40)
        report = blowup_fit(synthetic(t, max_ux=1.0 / (1.0 - t), stop="max-time"))
        assert not report.detected
        assert report.t_estimate == pytest.approx(1.0, abs=1e-9)

    def test_lambda_proxy(self):
        t = np.linspace(0.0, 0.9, 30)
        report = blowup_fit(synthetic(t, max_ux=1.0 + t, lambda_u0=-1.0 / (1.0 - t), stop="threshold"))
        assert report.norm == "lambda_u0"
        assert report.t_estimate == pytest.approx(1.0, abs=1e-9)
        assert not report.detected

    def test_record_fields(self):
        record = blowup_fit(synthetic([0.0, 0.1, 0.2])).to_record()
        assert set(record) == {"detected", "t_estimate", "growth_factor", "stop_reason", "ode_margin_min"}
