"""
Singular-weight functionals

    line:  I = int_0^inf u(x) x^{-p} dx
    torus: J = int_0^inf u(x) x^{-p} dx = int_0^{2 pi} W(x) u(x) dx,
           W(x) = sum_{n>=0} (x + 2 pi n)^{-p}

for data with a double zero at the origin, so the integrals converge for p < 3.

Fields with an exact Profile are integrated by adaptive quadrature. Plain
grid fields (the evolution monitors) go through precomputed moments of the
weight against every Fourier mode on a graded Gauss-Legendre rule; the
moments subtract the value and slope at 0, which vanish under the double
zero, and the piece [0, delta] is closed with the Taylor term u''(0)/2 x^2.
"""

import math
from functools import lru_cache
from typing import Callable, Literal, Optional, Sequence, Tuple

import numpy as np

from fraclab.core.errors import DivergentWeightError, ParameterRangeError
from fraclab.core.field import Field
from fraclab.core.quadrature import GradedRule, fourier_tail, integrate
from fraclab.mellin.hurwitz import periodic_weight
from fraclab.utils.xlogger import logger

Setting = Literal["line", "torus"]

TWO_PI = 2.0 * math.pi
DOUBLE_ZERO_TOL = 1e-8
SINE_SERIES_CUT = 1e-3


def profile_integral(f: Callable[[float], float], upper: float,
                     points: Optional[Sequence[float]] = None) -> float:
    """int_0^upper f(x) dx for integrands with an integrable singularity at 0."""
    value, _ = integrate(lambda x: float(f(x)), 0.0, upper, points=points)
    return value


def _mode_weights(n_modes: int) -> np.ndarray:
    w = np.full(n_modes, 2.0)
    w[0] = 1.0
    w[-1] = 1.0
    return w


def _check_double_zero(u: Field, power: float, tol: float = DOUBLE_ZERO_TOL) -> None:
    k = u.grid.wavenumbers
    w = _mode_weights(k.size)
    value = float(np.sum(w * u.coeffs.real))
    slope = float(np.sum(w * (-k) * u.coeffs.imag))
    scale = max(1.0, u.linf)
    if power >= 1.0 and abs(value) > tol * scale:
        raise DivergentWeightError(f"u(0) = {value:.3e} makes the x^-{power:g} functional diverge")
    if power >= 2.0 and abs(slope) > tol * scale:
        raise DivergentWeightError(f"u'(0) = {slope:.3e} makes the x^-{power:g} functional diverge")


def _sine_minus_linear(t: np.ndarray) -> np.ndarray:
    small = np.abs(t) < SINE_SERIES_CUT
    t3 = t ** 3
    series = -t3 / 6.0 + t3 * t * t / 120.0
    return np.where(small, series, np.sin(t) - t)


@lru_cache(maxsize=32)
def _moments(domain: str, period: float, n_points: int, power: float) -> Tuple[np.ndarray, float]:
    """
    mu_n = int_delta^X W(x) [(cos k_n x - 1) + i (sin k_n x - [p >= 2] k_n x)] dx
    with X = period / 2 on the line and 2 pi on the torus.
    """
    k = TWO_PI * np.fft.rfftfreq(n_points, d=period / n_points)
    upper = period / 2.0 if domain == "line" else TWO_PI
    panel = min(upper, TWO_PI / max(float(k[-1]), 1.0))
    rule = GradedRule(upper, panel)
    x = rule.nodes
    weight = x ** (-power) if domain == "line" else np.asarray(periodic_weight(x, power))
    wq = rule.weights * weight
    phase = np.multiply.outer(k, x)
    cos_part = -2.0 * np.sin(0.5 * phase) ** 2
    sin_part = _sine_minus_linear(phase) if power >= 2.0 else np.sin(phase)
    mu = (cos_part + 1j * sin_part) @ wq
    logger.debug(f"Functional moments for {domain} N={n_points} p={power:g}",
                 data={"nodes": int(x.size), "delta": rule.delta}, category="inequalities")
    return mu, rule.delta


def _grid_functional(u: Field, power: float, setting: Setting, zero_tol: float = DOUBLE_ZERO_TOL) -> float:
    _check_double_zero(u, power, zero_tol)
    grid = u.grid
    mu, delta = _moments(setting, grid.period, grid.n_points, float(power))
    w = _mode_weights(grid.n_modes)
    body = float(np.sum(w * np.real(u.coeffs * mu)))
    k = grid.wavenumbers
    uxx0 = float(np.sum(w * np.real(u.coeffs * -(k ** 2))))
    remainder = 0.5 * uxx0 * delta ** (3.0 - power) / (3.0 - power)
    return body + remainder


def weighted_functional(u: Field, power: float, setting: Optional[Setting] = None,
                        zero_tol: float = DOUBLE_ZERO_TOL) -> float:
    """
    int_0^inf u(x) x^{-power} dx for data with a double zero at 0.

    Args:
        u: Field, with or without an exact Profile
        power: Weight exponent, < 3 (and > 1 on the torus)
        setting: "line" or "torus"; defaults to the grid's domain
        zero_tol: Relative size of u(0), u'(0) tolerated as a double zero

    Returns:
        The functional value

    Raises:
        ParameterRangeError: power outside its range
        DivergentWeightError: u lacks the double zero at 0
    """
    setting = setting or u.grid.domain
    if power >= 3.0:
        raise ParameterRangeError(f"power must be < 3, got {power}")
    if setting == "torus" and power <= 1.0:
        raise ParameterRangeError(f"torus functional needs power > 1, got {power}")
    if u.linf == 0.0:
        return 0.0
    profile = u.profile
    if profile is None:
        return _grid_functional(u, power, setting, zero_tol)
    if setting == "line":
        upper = profile.support if profile.support is not None else u.grid.half_width
        return profile_integral(lambda x: profile(x) * x ** (-power), upper)
    _check_double_zero(u, power, zero_tol)
    return profile_integral(lambda x: profile(x) * periodic_weight(x, power), TWO_PI)


def weighted_functional_direct(u: Field, power: float, periods: int = 8) -> float:
    """
    Second route for the torus functional: direct quadrature of u x^{-p} on
    [0, X], X = 2 pi * periods, plus the tail of every Fourier mode beyond X.
    """
    if u.grid.domain != "torus":
        raise ParameterRangeError("weighted_functional_direct is the torus cross-check")
    if u.linf == 0.0:
        return 0.0
    upper = TWO_PI * periods
    points = [TWO_PI * j for j in range(1, periods)]
    head = profile_integral(lambda x: float(u.evaluate(x)) * x ** (-power), upper, points=points)

    k = u.grid.wavenumbers
    w = _mode_weights(k.size)
    tail = u.mean * upper ** (1.0 - power) / (power - 1.0)
    g = lambda x: x ** (-power)
    for n in range(1, k.size):
        c = u.coeffs[n]
        if abs(c) == 0.0:
            continue
        osc, _ = fourier_tail(g, upper, float(k[n]))
        tail += w[n] * float((c * osc).real)
    return head + tail
