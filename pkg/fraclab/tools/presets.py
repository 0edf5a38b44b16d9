"""Named initial data for the experiment scenarios."""

from typing import Callable, Dict, Literal, Optional, Sequence

from pydantic import BaseModel, ConfigDict

from fraclab.core.errors import ConfigError
from fraclab.core.field import Field
from fraclab.core.grid import Grid
from fraclab.core.params import Params
from fraclab.core.profiles import Profile, cosine_series, line_bump, one_minus_cos, selfsim_profile


class Preset(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    domain: Literal["torus", "line"]
    description: str
    build: Callable[[float, float], Profile]      # (alpha, amplitude) -> profile


PRESETS: Dict[str, Preset] = {
    p.name: p for p in (
        Preset(name="one_minus_cos", domain="torus", description="A (1 - cos x), H2-H4 periodic datum",
               build=lambda alpha, a: one_minus_cos(a)),
        Preset(name="positive_density", domain="torus", description="A (2 + cos x), strictly positive control",
               build=lambda alpha, a: cosine_series([2.0 * a, a], name=f"{a:g}(2+cos x)")),
        Preset(name="one_plus_cos", domain="torus", description="A (1 + cos x), vanishing at x = pi",
               build=lambda alpha, a: cosine_series([a, a], name=f"{a:g}(1+cos x)")),
        Preset(name="riccati", domain="torus", description="1 - cos x at alpha = 1, Lambda u0(0) = -A",
               build=lambda alpha, a: one_minus_cos(a)),
        Preset(name="line_bump", domain="line", description="A x^2 (1 - x^2)_+^2, admissible line datum",
               build=lambda alpha, a: line_bump(1, 2, a)),
        Preset(name="selfsim", domain="line", description="A K (1 - x^2)_+^{alpha/2}, unit mass at A = 1",
               build=lambda alpha, a: selfsim_profile(alpha, a)),
    )
}


def preset_profile(name: Optional[str], alpha: float, amplitude: float = 1.0,
                   coefficients: Optional[Sequence[float]] = None) -> Profile:
    """
    Raises:
        ConfigError: unknown preset
    """
    if coefficients is not None:
        return cosine_series([amplitude * c for c in coefficients])
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; choose one of {sorted(PRESETS)}", key="preset")
    return PRESETS[name].build(alpha, amplitude)


def initial_field(params: Params, name: Optional[str], amplitude: float = 1.0,
                  coefficients: Optional[Sequence[float]] = None) -> Field:
    """Sample a preset (or a cosine series) on the grid described by params."""
    profile = preset_profile(name, params.alpha, amplitude, coefficients)
    return Field.from_profile(Grid.from_params(params), profile)
