"""
Pseudospectral time marching.

The state vector is the tuple of rfft coefficient arrays (u) or (u, G); the
Runge-Kutta scheme only combines arrays, the right-hand side rebuilds Fields.
"""

import math
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from fraclab.core.field import Field
from fraclab.core.hypotheses import validate_hypotheses
from fraclab.evolution.rhs import check_mean_free, reconstruct_velocity, rhs_cht, rhs_ea
from fraclab.evolution.state import EvolutionState, StepPolicy, StopReason
from fraclab.monitor.series import MonitorSeries, Scenario, sample_monitors
from fraclab.operators.spectral import derivative, tail_fraction, velocity
from fraclab.utils.xlogger import logger

Vector = Tuple[np.ndarray, ...]
RightHandSide = Callable[[float, Vector], Vector]

# max-time is reached when the remaining interval is below this fraction
TIME_SLACK = 1e-12


class ExplicitRungeKutta:
    """
    Explicit Runge-Kutta scheme given by its Butcher table.

    ``BT[i]`` for i < s - 1 holds the weights of the slopes k_0..k_i that build
    stage i + 1; ``BT[s - 1]`` holds the final weights. ``eval_stages`` are the
    stage times as fractions of the step.
    """

    def __init__(self):
        self.s = 1
        self.n = 1
        self.eval_stages = [0.0]
        self.BT: Dict[int, List[float]] = {0: [1.0]}

    @staticmethod
    def _combine(y: Vector, dt: float, weights: Sequence[float], slopes: List[Vector]) -> Vector:
        out = []
        for c, y_c in enumerate(y):
            acc = np.array(y_c, dtype=complex)
            for w, k in zip(weights, slopes):
                if w:
                    acc += (dt * w) * k[c]
            out.append(acc)
        return tuple(out)

    def step(self, f: RightHandSide, t: float, y: Vector, dt: float) -> Vector:
        slopes: List[Vector] = []
        for i in range(self.s):
            stage = y if i == 0 else self._combine(y, dt, self.BT[i - 1], slopes)
            slopes.append(f(t + self.eval_stages[i] * dt, stage))
        return self._combine(y, dt, self.BT[self.s - 1], slopes)


class RK4(ExplicitRungeKutta):
    """Classic four-stage, fourth order scheme."""

    def __init__(self):
        super().__init__()

        # number of stages in RK scheme
        self.s = 4

        # order of scheme
        self.n = 4

        # intermediate evaluation times
        self.eval_stages = [0.0, 1/2, 1/2, 1.0]

        # butcher table
        self.BT = {
            0: [1/2],
            1: [0.0, 1/2],
            2: [0.0, 0.0, 1.0],
            3: [1/6, 1/3, 1/3, 1/6]
            }


SCHEMES = {"rk4": RK4}


def _right_hand_side(grid, alpha: float, two_field: bool, v_mean: float) -> RightHandSide:
    if not two_field:
        def f(t: float, y: Vector) -> Vector:
            return (rhs_cht(Field.from_coeffs(grid, y[0]), alpha).coeffs,)
        return f

    def f(t: float, y: Vector) -> Vector:
        state = EvolutionState(t=max(t, 0.0), u=Field.from_coeffs(grid, y[0]),
                               G=Field.from_coeffs(grid, y[1]), v_mean=v_mean)
        du, dG = rhs_ea(state, alpha)
        return du.coeffs, dG.coeffs
    return f


def time_step(state: EvolutionState, alpha: float, policy: StepPolicy) -> float:
    """dt = dt_safety * dx / max(1, max|v|), or the fixed step."""
    if policy.dt_fixed is not None:
        return policy.dt_fixed
    if state.G is not None:
        v = reconstruct_velocity(state.u, state.G, alpha, state.v_mean)
    else:
        v = velocity(state.u, alpha)
    return policy.dt_safety * state.grid.spacing / max(1.0, v.linf)


def _boundary_level(u: Field, policy: StepPolicy) -> float:
    scale = u.linf
    if scale == 0.0:
        return 0.0
    outer = np.abs(u.grid.signed_nodes) >= policy.boundary_zone * u.grid.half_width
    return float(np.max(np.abs(u.values[outer]))) / scale


def evolve(u0: Field, G0: Optional[Field], alpha: float, policy: Optional[StepPolicy] = None,
           scenario: Optional[Scenario] = None) -> Tuple[MonitorSeries, EvolutionState]:
    """
    March u (and G) with RK4 until a stop rule fires.

    Args:
        u0: Initial density
        G0: Initial alignment field for two-field runs, None for the single equation
        alpha: Kernel exponent in (0, 2)
        policy: Step and stop rules
        scenario: Monitor selection; defaults to the functional of the grid's domain

    Returns:
        (series, final state); ``series.stop_reason`` records why the run ended.
        A nan-guard stop returns the last finite state.

    Raises:
        MeanDriftError: G0 carries a nonzero mean
    """
    policy = policy or StepPolicy()
    grid = u0.grid
    scenario = scenario or Scenario.default(grid.domain, alpha)
    two_field = G0 is not None
    if two_field:
        check_mean_free(G0, policy.mean_tol)

    report = validate_hypotheses(u0, grid.domain)
    failed = [name for name, flag in (("H1", report.h1), ("H2", report.h2), ("H3", report.h3),
                                      ("H4", report.h4)) if flag is False]
    if failed:
        logger.warning(f"Initial data outside the blow-up hypotheses: {', '.join(failed)}",
                       data=dict(report.diagnostics), category="evolve")

    # monitors always see the grid route, also at t = 0
    u = Field.from_values(grid, u0.values)
    G = Field.from_values(grid, G0.values) if two_field else None
    state = EvolutionState(t=0.0, u=u, G=G)
    series = MonitorSeries(scenario=scenario)
    series.append(sample_monitors(state, scenario))
    ux0 = series.rows[0].max_ux

    scheme = SCHEMES[policy.scheme]()
    f = _right_hand_side(grid, alpha, two_field, state.v_mean)
    y: Vector = (u.coeffs, G.coeffs) if two_field else (u.coeffs,)
    reason: StopReason = "running"
    logger.info(f"Evolution start: {scenario.name} alpha={alpha:g} N={grid.n_points}",
                data={"domain": grid.domain, "policy": policy.model_dump()}, category="evolve")

    while True:
        remaining = policy.max_time - state.t
        if remaining <= TIME_SLACK * policy.max_time:
            reason = "max-time"
            break
        if state.step >= policy.max_steps:
            reason = "max-steps"
            break
        dt = min(time_step(state, alpha, policy), remaining)
        y_new = scheme.step(f, state.t, y, dt)
        if not all(np.all(np.isfinite(c)) for c in y_new):
            reason = "nan-guard"
            logger.error(f"Non-finite state at t={state.t + dt:g}; keeping t={state.t:g}", category="evolve")
            break
        y = y_new
        state = EvolutionState(
            t=state.t + dt,
            u=Field.from_coeffs(grid, y[0]),
            G=Field.from_coeffs(grid, y[1]) if two_field else None,
            v_mean=state.v_mean,
            step=state.step + 1,
        )
        row = None
        if state.step % policy.sample_every == 0:
            row = sample_monitors(state, scenario)
            series.append(row)

        reason = _stop_rule(state, row, ux0, policy, grid.domain)
        if reason != "running":
            if row is None:
                series.append(sample_monitors(state, scenario))
            break

    if series.rows[-1].t < state.t:
        series.append(sample_monitors(state, scenario))
    series.stop_reason = reason
    logger.info(f"Evolution stop: {reason} at t={state.t:.6g} after {state.step} steps",
                data={"max_ux": series.rows[-1].max_ux, "tail": series.rows[-1].tail_fraction},
                category="evolve")
    return series, state


def _stop_rule(state: EvolutionState, row, ux0: float, policy: StepPolicy, domain: str) -> StopReason:
    u = state.u
    tail = row.tail_fraction if row is not None else None
    if tail is None:
        tail = tail_fraction(u)
    if tail > policy.tail_threshold:
        return "resolution-loss"
    if domain == "line" and _boundary_level(u, policy) > policy.boundary_tol:
        return "boundary-guard"
    if policy.growth_cap is not None and ux0 > 0.0:
        max_ux = row.max_ux if row is not None else derivative(u).linf
        if max_ux >= policy.growth_cap * ux0:
            return "threshold"
    return "running"


def temporal_order(u0: Field, alpha: float, dts: Sequence[float], t_end: float) -> np.ndarray:
    """
    Observed orders log(e_i / e_{i+1}) / log(dt_i / dt_{i+1}) from the
    differences e_i = |u_{dt_i} - u_{dt_{i+1}}|_inf at t_end.
    """
    if len(dts) < 3:
        raise ValueError("temporal_order needs at least three step sizes")
    scenario = Scenario(name="order", domain=u0.grid.domain, alpha=alpha)
    finals = []
    for dt in dts:
        policy = StepPolicy(dt_fixed=dt, max_time=t_end, tail_threshold=1.0, boundary_tol=1.0,
                            sample_every=10 ** 9)
        _, state = evolve(u0, None, alpha, policy, scenario)
        finals.append(state.u.values)
    errors = [float(np.max(np.abs(a - b))) for a, b in zip(finals[:-1], finals[1:])]
    orders = [math.log(errors[i] / errors[i + 1]) / math.log(dts[i] / dts[i + 1])
              for i in range(len(errors) - 1)]
    logger.info("Temporal order", data={"dts": list(dts), "errors": errors, "orders": orders},
                category="evolve")
    return np.array(orders)
