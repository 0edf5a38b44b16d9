"""
Per-step monitor rows and the series collected along a run.

CSV layout (exact column order):

    t,mass,min_u,max_u,max_ux,weighted_functional,lambda_u0,tail_fraction,G_linf

Floats are written with ``repr`` so a rerun of the same configuration gives a
byte-identical file; quantities that do not apply to a run are empty fields.
"""

import csv
import os
from typing import List, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from fraclab.core.errors import DivergentWeightError
from fraclab.evolution.state import EvolutionState, StopReason
from fraclab.inequalities.functionals import weighted_functional
from fraclab.operators.spectral import derivative, lambda_at_origin, tail_fraction
from fraclab.utils.xlogger import logger

CSV_COLUMNS = (
    "t", "mass", "min_u", "max_u", "max_ux",
    "weighted_functional", "lambda_u0", "tail_fraction", "G_linf",
)

# u(0), u'(0) drift tolerated by the monitors before the functional is dropped
MONITOR_ZERO_TOL = 1e-6


class Scenario(BaseModel):
    """What the monitors measure for one run."""

    model_config = ConfigDict(frozen=True)

    name: str = "run"
    domain: Literal["torus", "line"] = "torus"
    alpha: float = 0.5
    weighted_power: Optional[float] = None
    track_lambda_origin: bool = False

    @classmethod
    def default(cls, domain: str, alpha: float, name: str = "run") -> "Scenario":
        """
        I = int u / x^{2+beta} on the line and J = int u / x^{1+alpha} on the
        torus share the exponent 1 + alpha; Lambda u(0, t) is tracked at alpha = 1.
        """
        return cls(name=name, domain=domain, alpha=alpha,
                   weighted_power=1.0 + alpha, track_lambda_origin=alpha == 1.0)


class MonitorRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    t: float
    mass: float
    min_u: float
    max_u: float
    max_ux: float
    weighted_functional: Optional[float] = None
    lambda_u0: Optional[float] = None
    tail_fraction: float
    G_linf: Optional[float] = None


def sample_monitors(state: EvolutionState, scenario: Scenario) -> MonitorRow:
    u = state.u
    functional = None
    if scenario.weighted_power is not None:
        try:
            functional = weighted_functional(u, scenario.weighted_power, scenario.domain,
                                             zero_tol=MONITOR_ZERO_TOL)
        except DivergentWeightError as e:
            logger.debug(f"Functional dropped at t={state.t:g}: {e}", category="monitor")
    return MonitorRow(
        t=state.t,
        mass=u.mass,
        min_u=float(np.min(u.values)),
        max_u=float(np.max(u.values)),
        max_ux=derivative(u).linf,
        weighted_functional=functional,
        lambda_u0=lambda_at_origin(u) if scenario.track_lambda_origin else None,
        tail_fraction=tail_fraction(u),
        G_linf=state.G.linf if state.G is not None else None,
    )


def _format(value: Optional[float]) -> str:
    return "" if value is None else repr(float(value))


def _parse(text: str) -> Optional[float]:
    return None if text == "" else float(text)


class MonitorSeries(BaseModel):
    """Rows in strictly increasing time with the reason the run stopped."""

    scenario: Scenario = Scenario()
    rows: List[MonitorRow] = []
    stop_reason: StopReason = "running"

    def append(self, row: MonitorRow) -> None:
        if self.rows and row.t <= self.rows[-1].t:
            raise ValueError(f"monitor times must increase: {row.t} after {self.rows[-1].t}")
        self.rows.append(row)

    def __len__(self) -> int:
        return len(self.rows)

    def column(self, name: str) -> np.ndarray:
        """One CSV column as floats; absent entries are NaN."""
        if name not in CSV_COLUMNS:
            raise KeyError(name)
        return np.array([np.nan if getattr(r, name) is None else getattr(r, name) for r in self.rows],
                        dtype=float)

    def has(self, name: str) -> bool:
        return bool(self.rows) and all(getattr(r, name) is not None for r in self.rows)

    @property
    def times(self) -> np.ndarray:
        return self.column("t")

    @property
    def max_ux(self) -> np.ndarray:
        return self.column("max_ux")

    @property
    def functional(self) -> np.ndarray:
        return self.column("weighted_functional")

    @property
    def lambda_u0(self) -> np.ndarray:
        return self.column("lambda_u0")

    def to_csv(self, path: str) -> str:
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for row in self.rows:
                writer.writerow([_format(getattr(row, name)) for name in CSV_COLUMNS])
        return path

    @classmethod
    def from_csv(cls, path: str, scenario: Optional[Scenario] = None,
                 stop_reason: StopReason = "running") -> "MonitorSeries":
        with open(path, newline="", encoding="utf-8") as f:
            reader = csv.reader(f)
            header = next(reader, None)
            if header is None or tuple(header) != CSV_COLUMNS:
                raise ValueError(f"{path}: unexpected monitor header {header}")
            rows = [MonitorRow(**{name: _parse(text) for name, text in zip(CSV_COLUMNS, record)})
                    for record in reader if record]
        return cls(scenario=scenario or Scenario(), rows=rows, stop_reason=stop_reason)
