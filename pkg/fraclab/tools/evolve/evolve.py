"""Evolve command: one run from a preset, with monitors, checkpoint and blow-up report."""

import os
from functools import lru_cache
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from fraclab.core.constants import make_constants
from fraclab.core.errors import FracLabError
from fraclab.core.field import Field
from fraclab.core.params import Params
from fraclab.evolution.checkpoint import save_checkpoint
from fraclab.evolution.stepper import evolve
from fraclab.inequalities.bounds import c1_of_alpha, c2_c3_bounds
from fraclab.monitor.blowup import blowup_fit
from fraclab.monitor.odes import ode_inequality_residual, periodic_ode_check
from fraclab.monitor.series import MonitorSeries, Scenario
from fraclab.tools.base import BaseCommand, CommandResult
from fraclab.tools.presets import initial_field
from fraclab.utils.helpers import cell_tag, write_json
from fraclab.utils.xlogger import logger

MASS_RTOL = 1e-8


@lru_cache(maxsize=16)
def periodic_constants(alpha: float, epsilon_holder: float = 0.25) -> Tuple[float, float, float]:
    """(C1, C2, C3) of the periodic inequality, shared by the cells of a sweep."""
    c2, c3 = c2_c3_bounds(alpha, epsilon_holder)
    return c1_of_alpha(alpha), c2, c3


def ode_margins(series: MonitorSeries, alpha: float, norm_u0: float,
                epsilon_holder: float = 0.25) -> Optional[np.ndarray]:
    """
    Margins of the differential inequality that applies to the run, or None
    when none applies (alpha = 1, line runs outside 1 < alpha < 2, periodic
    runs with alpha >= 1) or the functional history is too short.
    """
    domain = series.scenario.domain
    try:
        if domain == "line" and 1.0 < alpha < 2.0:
            return ode_inequality_residual(series, alpha - 1.0, make_constants(alpha))
        if domain == "torus" and 0.0 < alpha < 1.0:
            c1, c2, c3 = periodic_constants(alpha, epsilon_holder)
            return periodic_ode_check(series, alpha, c1, c2, c3, norm_u0)
    except FracLabError as e:
        logger.warning(f"ODE residual skipped: {e}", category="evolve")
    return None


def run_cell(config, params: Params, amplitude: float, out_dir: str, tag: str) -> Dict[str, Any]:
    """
    Evolve one (alpha, amplitude) cell and write its files:
    monitors_<tag>.csv, checkpoint_<tag>.npz and blowup_<tag>.json.

    Returns:
        Summary record with the blow-up report, artifact paths and failures
    """
    data = config.initial_data
    u0 = initial_field(params, data.preset, amplitude, data.coefficients)
    G0 = Field.zeros(u0.grid) if data.two_field else None
    scenario = Scenario.default(params.domain, params.alpha, name=tag)
    series, state = evolve(u0, G0, params.alpha, config.policy, scenario)

    failures: List[str] = []
    mass0, mass1 = series.rows[0].mass, state.u.mass
    if abs(mass1 - mass0) > MASS_RTOL * max(abs(mass0), 1e-300):
        failures.append(f"{tag}: mass drift {abs(mass1 - mass0):.3e}")
    if series.stop_reason == "nan-guard":
        failures.append(f"{tag}: non-finite state at t={state.t:g}")

    margins = None
    if config.ode_check:
        margins = ode_margins(series, params.alpha, u0.linf, config.inequalities.epsilon_holder)
    margin_min = float(np.min(margins)) if margins is not None else None
    report = blowup_fit(series, ode_margin_min=margin_min)

    artifacts = [
        series.to_csv(os.path.join(out_dir, f"monitors_{tag}.csv")),
        save_checkpoint(os.path.join(out_dir, f"checkpoint_{tag}.npz"), state, params.alpha),
        write_json(os.path.join(out_dir, f"blowup_{tag}.json"), report.to_record()),
    ]
    logger.info(f"Cell {tag} done: {series.stop_reason}",
                data={"t": state.t, "detected": report.detected, "t_estimate": report.t_estimate},
                category="evolve")
    return {
        "tag": tag,
        "alpha": params.alpha,
        "amplitude": amplitude,
        "t_final": state.t,
        "steps": state.step,
        "report": report.to_record(),
        "artifacts": artifacts,
        "failures": failures,
    }


class EvolveCommand(BaseCommand):
    """Evolve one initial datum and write the monitor CSV, checkpoint and blow-up report."""

    category = "evolve"

    def __init__(self):
        super().__init__()
        self.name = "evolve"

    def execute(self, config, out_dir: str) -> CommandResult:
        try:
            params = config.params
            tag = cell_tag(params.alpha, config.initial_data.amplitude)
            summary = run_cell(config, params, config.initial_data.amplitude, out_dir, tag)
            return self.format_result(summary["report"], failures=summary["failures"],
                                      artifacts=summary["artifacts"], tag=tag,
                                      t_final=summary["t_final"], steps=summary["steps"])
        except Exception as e:
            return self.handle_error(e)
