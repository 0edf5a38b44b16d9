"""
Closed-form constants of the fractional operators.

All Gamma evaluations go through scipy.special; the reciprocal gamma
``rgamma`` vanishes at the poles of Gamma, which is exactly what the Riesz
constant needs at alpha = 1 and what the influence constant needs for
Gamma(-alpha/2).
"""

import math
from typing import Optional

from pydantic import BaseModel, ConfigDict
from scipy.special import gamma, rgamma

from fraclab.core.errors import ParameterRangeError

SQRT_PI = math.sqrt(math.pi)


def _check_exponent(value: float, name: str = "alpha", upper: float = 2.0) -> float:
    value = float(value)
    if not (0.0 < value < upper) or not math.isfinite(value):
        raise ParameterRangeError(f"{name} must lie in (0, {upper:g}), got {value}")
    return value


def riesz_constant(a: float) -> float:
    """c_a with Lambda^{a-1} u = c_a * integral u(y) |x-y|^{-a} dy (zero at a = 1)."""
    a = _check_exponent(a)
    return float(gamma(a / 2.0) * rgamma((1.0 - a) / 2.0) / (SQRT_PI * 2.0 ** (1.0 - a)))


def odd_riesz_constant(a: float) -> float:
    """c_bar_a = Gamma(a) sin(pi a / 2) / pi, the kernel constant of Lambda^{a-1} H."""
    a = _check_exponent(a)
    return float(gamma(a) * math.sin(math.pi * a / 2.0) / math.pi)


def influence_constant(a: float) -> float:
    """k_a = -2^a Gamma((1+a)/2) / (sqrt(pi) Gamma(-a/2))."""
    a = _check_exponent(a)
    return float(-(2.0 ** a) * gamma((1.0 + a) / 2.0) * rgamma(-a / 2.0) / SQRT_PI)


def blowup_constant(b: float) -> float:
    """(1+b) b c_b, the coefficient of the quadratic term in the line inequality."""
    b = _check_exponent(b, name="exponent", upper=1.0)
    return (1.0 + b) * b * riesz_constant(b)


class Constants(BaseModel):
    """Closed-form constants for one exponent alpha."""

    model_config = ConfigDict(frozen=True)

    alpha: float
    c_alpha: float
    c_bar_alpha: float
    k_alpha: float
    blowup_exponent: float
    blowup_const: float


def make_constants(alpha: float, exponent: Optional[float] = None) -> Constants:
    """
    Evaluate c_alpha, c_bar_alpha, k_alpha and the blow-up constant.

    Args:
        alpha: Exponent in (0, 2)
        exponent: Exponent used in the blow-up constant; defaults to
            beta = alpha - 1 when alpha > 1 and to alpha otherwise

    Returns:
        Constants

    Raises:
        ParameterRangeError: alpha or exponent out of range
    """
    alpha = _check_exponent(alpha)
    if exponent is None:
        exponent = alpha - 1.0 if alpha > 1.0 else alpha
    return Constants(
        alpha=alpha,
        c_alpha=riesz_constant(alpha),
        c_bar_alpha=odd_riesz_constant(alpha),
        k_alpha=influence_constant(alpha),
        blowup_exponent=exponent,
        blowup_const=blowup_constant(exponent) if exponent < 1.0 else 0.0,
    )
