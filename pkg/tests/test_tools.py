import glob
import json
import os

import numpy as np
import pytest

from fraclab.cli import EXIT_CONFIG, EXIT_OK, run
from fraclab.config.settings import settings
from fraclab.core.errors import ConfigError
from fraclab.evolution.stepper import evolve
from fraclab.monitor.blowup import blowup_fit
from fraclab.monitor.odes import functional_history
from fraclab.monitor.series import Scenario
from fraclab.services.runner import resolve_threads, run_sweep
from fraclab.tools import BUILT_IN_COMMANDS
from fraclab.tools.config import load_config, parse_config
from fraclab.tools.evolve.evolve import ode_margins
from fraclab.tools.presets import PRESETS, initial_field
from fraclab.tools.registry import CommandRegistry
from fraclab.tools.svg import line_chart

HEADER = "t,mass,min_u,max_u,max_ux,weighted_functional,lambda_u0,tail_fraction,G_linf"


def write_config(path, payload) -> str:
    path.write_text(json.dumps(payload, indent=2), encoding="utf-8")
    return str(path)


def small_evolve(out_dir) -> dict:
    return {
        "command": "evolve",
        "params": {"alpha": 0.5, "n_points": 32},
        "initial_data": {"preset": "one_minus_cos", "amplitude": 1.0},
        "policy": {"max_time": 0.05},
        "ode_check": False,
        "output_dir": str(out_dir),
    }


class TestParseConfig:
    def test_unknown_key_reports_line(self):
        text = '{\n  "command": "evolve",\n  "bogus": 1\n}'
        with pytest.raises(ConfigError) as info:
            parse_config(text)
        assert info.value.key == "bogus"
        assert info.value.line == 3
        assert "unknown key" in str(info.value)

    def test_nested_unknown_key(self):
        text = '{\n  "command": "evolve",\n  "policy": {\n    "max_time": 1.0,\n    "dt": 0.1\n  }\n}'
        with pytest.raises(ConfigError) as info:
            parse_config(text)
        assert info.value.key == "dt"
        assert info.value.line == 5

    def test_invalid_json(self):
        with pytest.raises(ConfigError) as info:
            parse_config('{\n  "command": "evolve",\n}')
        assert info.value.line == 3

    def test_domain_mismatch(self):
        payload = {"command": "evolve", "params": {"domain": "line", "alpha": 1.5},
                   "initial_data": {"preset": "one_minus_cos"}}
        with pytest.raises(ConfigError):
            parse_config(json.dumps(payload))

    def test_scan_needs_sweep(self):
        with pytest.raises(ConfigError):
            parse_config('{"command": "blowup-scan"}')

    def test_unknown_preset(self):
        with pytest.raises(ConfigError):
            parse_config('{"command": "evolve", "initial_data": {"preset": "nope"}}')

    def test_defaults(self):
        config = parse_config('{"command": "selftest"}')
        assert config.params.alpha == 0.5
        assert config.initial_data.domain == "torus"
        assert config.sweep is None

    def test_shipped_configs_parse(self):
        paths = sorted(glob.glob(os.path.join(settings.CONFIGS_PATH, "*.json")))
        assert paths
        for path in paths:
            with open(path, encoding="utf-8") as f:
                config = parse_config(f.read(), source=path)
            assert config.command in BUILT_IN_COMMANDS


class TestCli:
    def test_unknown_key_exit(self, tmp_path):
        path = write_config(tmp_path / "bad.json", {"command": "evolve", "bogus": 1})
        assert run(["evolve", "--config", path]) == EXIT_CONFIG

    def test_command_mismatch_exit(self, tmp_path):
        path = write_config(tmp_path / "selftest.json", {"command": "selftest"})
        assert run(["evolve", "--config", path]) == EXIT_CONFIG

    def test_missing_file_exit(self, tmp_path):
        assert run(["evolve", "--config", str(tmp_path / "absent.json")]) == EXIT_CONFIG

    def test_evolve_and_report(self, tmp_path):
        out = tmp_path / "run"
        path = write_config(tmp_path / "evolve.json", small_evolve(out))
        assert run(["evolve", "--config", path, "--out", str(out)]) == EXIT_OK

        csv_path = out / "monitors_a0.5_A1.csv"
        first = csv_path.read_bytes()
        assert first.decode("utf-8").split("\n")[0] == HEADER
        assert (out / "checkpoint_a0.5_A1.npz").exists()
        record = json.loads((out / "blowup_a0.5_A1.json").read_text(encoding="utf-8"))
        assert record["stop_reason"] == "max-time"

        assert run(["evolve", "--config", path, "--out", str(out)]) == EXIT_OK
        assert csv_path.read_bytes() == first

        report = write_config(tmp_path / "report.json",
                              {"command": "report", "report": {"input_dir": str(out)}})
        charts = tmp_path / "charts"
        assert run(["report", "--config", report, "--out", str(charts)]) == EXIT_OK
        assert (charts / "report_a0.5_A1_max_ux.svg").exists()


class TestRunner:
    def test_order_and_errors(self):
        def work(cell):
            if cell == 3:
                raise ValueError("boom")
            return cell * cell

        results = run_sweep([1, 2, 3, 4], work, threads=2)
        assert results[:2] == [1, 4]
        assert results[2] == {"cell": 3, "error": "ValueError: boom"}
        assert results[3] == 16

    def test_serial_matches_threaded(self):
        cells = list(range(8))
        assert run_sweep(cells, lambda c: c + 1, threads=1) == run_sweep(cells, lambda c: c + 1, threads=4)

    def test_resolve_threads(self):
        assert resolve_threads(0) == 1
        assert resolve_threads(3) == 3
        assert resolve_threads() >= 1


class TestSvg:
    def test_chart(self):
        doc = line_chart({"a": ([0.0, 1.0, 2.0], [1.0, 2.0, 3.0])}, title="t < 1")
        assert doc.startswith("<svg")
        assert doc.rstrip().endswith("</svg>")
        assert "t &lt; 1" in doc
        assert "<polyline" in doc

    def test_log_drops_nonpositive(self):
        doc = line_chart({"a": ([0.0, 1.0, 2.0], [0.0, 10.0, 100.0])}, log_y=True)
        polyline = [line for line in doc.split("\n") if line.startswith("<polyline")][0]
        assert len(polyline.split('points="')[1].split()) == 2

    def test_no_data(self):
        doc = line_chart({"a": ([0.0, 1.0], [-1.0, 0.0])}, log_y=True)
        assert "no data" in doc
        assert "<polyline" not in doc


class TestRegistry:
    def test_builtin_commands(self):
        registry = CommandRegistry()
        assert sorted(registry.list_commands()) == sorted(BUILT_IN_COMMANDS)
        assert registry.get_command("evolve").command.name == "evolve"
        assert registry.get_command("nope") is None
        assert len(registry.get_command_descriptions().split("\n")) == len(BUILT_IN_COMMANDS)

    def test_presets_match_domains(self):
        from fraclab.core.params import Params

        for name, preset in PRESETS.items():
            alpha = 1.5 if preset.domain == "line" else 0.5
            params = Params(alpha=alpha, domain=preset.domain, n_points=64)
            field = initial_field(params, name)
            assert field.grid.domain == preset.domain
            assert field.linf > 0.0


def shipped_run(name):
    config = load_config(os.path.join(settings.CONFIGS_PATH, name))
    params, data = config.params, config.initial_data
    u0 = initial_field(params, data.preset, data.amplitude, data.coefficients)
    series, state = evolve(u0, None, params.alpha, config.policy, Scenario.default(params.domain, params.alpha))
    return config, u0, series, state


@pytest.mark.slow
class TestShippedRuns:
    def test_periodic_blowup(self):
        config, u0, series, _ = shipped_run("periodic_alpha05.json")
        report = blowup_fit(series)
        assert report.growth_factor >= 10.0
        assert report.detected
        _, functional = functional_history(series)
        assert np.all(np.diff(functional) >= -1e-10 * np.abs(functional[1:]))
        margins = ode_margins(series, config.params.alpha, u0.linf)
        assert margins is not None
        assert np.all(margins >= -1e-3 * functional ** 2)

    def test_positive_density_lives_to_horizon(self):
        config, _, series, state = shipped_run("positive_density.json")
        assert series.stop_reason == "max-time"
        assert state.t == pytest.approx(config.policy.max_time)
        assert np.all(series.max_ux <= 10.0 * series.max_ux[0])

    def test_line_inequality(self):
        config, u0, series, _ = shipped_run("line_beta05.json")
        _, functional = functional_history(series)
        margins = ode_margins(series, config.params.alpha, u0.linf)
        assert margins is not None
        assert np.all(margins >= -1e-6 * functional ** 2)
