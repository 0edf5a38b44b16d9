"""Run state and step policy of the time integrator."""

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field as PydanticField

from fraclab.config.settings import settings
from fraclab.core.field import Field

StopReason = Literal[
    "running",
    "max-time",
    "max-steps",
    "resolution-loss",
    "nan-guard",
    "boundary-guard",
    "threshold",
]


class EvolutionState(BaseModel):
    """
    Density u, optional alignment field G and the Galilean constant used to
    reconstruct the velocity of two-field runs.
    """

    model_config = ConfigDict(frozen=True)

    t: float = PydanticField(0.0, ge=0.0)
    u: Field
    G: Optional[Field] = None
    v_mean: float = 0.0
    step: int = 0

    @property
    def grid(self):
        return self.u.grid

    @property
    def two_field(self) -> bool:
        return self.G is not None


class StepPolicy(BaseModel):
    """
    Fixed classic RK4 with dt = dt_safety * dx / max(1, max|v|) unless
    ``dt_fixed`` is set. A run stops on the first rule that fires.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    scheme: Literal["rk4"] = "rk4"
    dt_safety: float = PydanticField(0.2, gt=0.0, lt=1.0)
    dt_fixed: Optional[float] = PydanticField(None, gt=0.0)
    max_time: float = PydanticField(1.0, gt=0.0)
    max_steps: int = PydanticField(200_000, gt=0)
    tail_threshold: float = PydanticField(settings.TAIL_THRESHOLD, gt=0.0)
    growth_cap: Optional[float] = PydanticField(None, gt=1.0)   # threshold stop on max|u_x| / initial
    boundary_tol: float = PydanticField(1e-10, gt=0.0)          # line runs: |u| near the window edge / |u|_inf
    boundary_zone: float = PydanticField(0.9, gt=0.0, lt=1.0)   # fraction of the half width
    sample_every: int = PydanticField(1, ge=1)
    mean_tol: float = PydanticField(1e-10, gt=0.0)
