"""
Numerical Mellin transform M[u](lam) = int_0^inf x^{i lam - 1} u(x) dx.

The integral is taken in log coordinates: x = e^{-s} on (0, 1] and x = e^t
on [1, inf). Each end is classified from two samples. A true limit u(0+)
or u(inf) is subtracted and its contribution added back in closed
(Abel-summed) form, so QAWF only sees decaying integrands. An end where u
behaves like a power x^p is integrated up to X_MIN (X_MAX) and the
remaining piece is added as u(X_MIN) X_MIN^{i lam} / (p + i lam).
"""

import math
from typing import Callable, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from fraclab.core.errors import DivergentWeightError
from fraclab.core.quadrature import fourier_segment, fourier_tail, integrate
from fraclab.utils.xlogger import logger

X_MIN = 1e-12
X_MAX = 1e12
X_FIT_ZERO = 1e-9
X_FIT_INF = 1e9
LIMIT_TOL = 1e-10
CONSTANT_RTOL = 1e-6
LOG_BREAKS = (-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0)

Sampled = Callable[[float], float]


def weighted(u: Sampled, power: float) -> Sampled:
    """x -> x^power u(x)."""
    return lambda x: x ** power * float(u(x))


class EndBehaviour(NamedTuple):
    """How u behaves at one end of (0, inf): a limit value or a power law."""

    kind: str       # "limit" or "power"
    value: float    # the limit, or u at the cut-off point
    power: float = 0.0


def end_behaviour(u: Sampled, x_end: float, x_fit: float) -> EndBehaviour:
    """
    Classify u near 0 (x_end < x_fit) or near inf (x_end > x_fit).

    Raises:
        DivergentWeightError: u changes sign between the samples, or grows
            toward the end
    """
    u_end, u_fit = float(u(x_end)), float(u(x_fit))
    if abs(u_end) <= LIMIT_TOL and abs(u_fit) <= LIMIT_TOL:
        return EndBehaviour("limit", u_end)
    if abs(u_end - u_fit) <= CONSTANT_RTOL * max(abs(u_end), abs(u_fit)):
        return EndBehaviour("limit", u_end)
    where = "0" if x_end < x_fit else "inf"
    if u_end * u_fit <= 0.0:
        raise DivergentWeightError(f"u changes sign near {where}: u({x_end:g})={u_end:.3e}, u({x_fit:g})={u_fit:.3e}")
    p = math.log(u_end / u_fit) / math.log(x_end / x_fit)
    if (x_end < x_fit and p <= 0.0) or (x_end > x_fit and p >= 0.0):
        raise DivergentWeightError(f"u grows like x^{p:.3f} near {where}")
    return EndBehaviour("power", u_end, p)


def _head(u: Sampled, lam: float, end: EndBehaviour) -> Tuple[complex, float]:
    """int_0^1 x^{i lam - 1} u(x) dx."""
    if end.kind == "power":
        s_max = -math.log(X_MIN)
        f, err = fourier_segment(lambda s: float(u(math.exp(-s))), 0.0, s_max, lam)
        rest = end.value * complex(math.cos(lam * math.log(X_MIN)), math.sin(lam * math.log(X_MIN))) \
            / complex(end.power, lam)
        return f.conjugate() + rest, err
    h = lambda s: float(u(max(math.exp(-s), X_MIN))) - end.value
    if lam == 0.0:
        value, err = integrate(h, 0.0, np.inf)
        return complex(value), err
    f, err = fourier_tail(h, 0.0, lam)
    return f.conjugate() + end.value / (1j * lam), err


def _tail(u: Sampled, lam: float, end: EndBehaviour) -> Tuple[complex, float]:
    """int_1^inf x^{i lam - 1} u(x) dx."""
    if end.kind == "power":
        t_max = math.log(X_MAX)
        f, err = fourier_segment(lambda t: float(u(math.exp(t))), 0.0, t_max, lam)
        rest = end.value * complex(math.cos(lam * t_max), math.sin(lam * t_max)) / complex(end.power, lam)
        return f - rest, err
    h = lambda t: float(u(min(math.exp(t), X_MAX))) - end.value
    if lam == 0.0:
        value, err = integrate(h, 0.0, np.inf)
        return complex(value), err
    f, err = fourier_tail(h, 0.0, lam)
    return f - end.value / (1j * lam), err


def mellin(u: Sampled, lam: float, tol: float = 1e-8) -> complex:
    """
    Mellin transform of a real function at one frequency.

    Args:
        u: Real function on (0, inf)
        lam: Frequency
        tol: Cap on the reported quadrature error (relative to max(1, |M|))

    Returns:
        M[u](lam)

    Raises:
        DivergentWeightError: lam = 0 with nonzero limits at 0 or inf, u
            growing at either end, or a quadrature that does not settle
    """
    lam = float(lam)
    at_zero = end_behaviour(u, X_MIN, X_FIT_ZERO)
    at_inf = end_behaviour(u, X_MAX, X_FIT_INF)
    nonzero_limit = lambda end: end.kind == "limit" and abs(end.value) > LIMIT_TOL
    if lam == 0.0 and (nonzero_limit(at_zero) or nonzero_limit(at_inf)):
        raise DivergentWeightError(
            f"M[u](0) diverges: u(0+)={at_zero.value:.3e}, u(inf)={at_inf.value:.3e}"
        )

    v_head, e_head = _head(u, lam, at_zero)
    v_tail, e_tail = _tail(u, lam, at_inf)
    value, err = v_head + v_tail, e_head + e_tail

    if not (math.isfinite(value.real) and math.isfinite(value.imag)) or err > tol * max(1.0, abs(value)):
        logger.warning(f"Mellin transform at lam={lam} unsettled", data={"abserr": err}, category="mellin")
        raise DivergentWeightError(f"M[u]({lam}) quadrature error {err:.3e} above tolerance")
    return value


class MellinSample(BaseModel):
    """Mellin transform values of one function on a lambda grid."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    lambda_grid: np.ndarray
    values: np.ndarray
    epsilon: float = 0.0
    exponent: float = 0.0

    def conjugate_symmetry_residual(self) -> float:
        """max |M(-lam) - conj M(lam)| over grid points whose mirror is present."""
        index = {float(l): i for i, l in enumerate(self.lambda_grid)}
        worst = 0.0
        for lam, i in index.items():
            j = index.get(-lam)
            if j is not None:
                worst = max(worst, abs(self.values[j] - np.conj(self.values[i])))
        return worst


def mellin_sample(u: Sampled, lambda_grid: Sequence[float],
                  epsilon: float = 0.0, exponent: float = 0.0) -> MellinSample:
    grid = np.asarray(lambda_grid, dtype=float)
    values = np.array([mellin(u, lam) for lam in grid], dtype=complex)
    return MellinSample(lambda_grid=grid, values=values, epsilon=epsilon, exponent=exponent)


class ParsevalReport(BaseModel):
    """Both sides of int u v dx/x = (1/2pi) int M[u] conj(M[v]) dlam."""

    model_config = ConfigDict(frozen=True)

    lhs: float
    rhs: float
    residual: float
    truncation_bound: float
    lambda_max: float
    inconclusive: bool


def parseval_residual(u: Sampled, v: Sampled, lambda_max: float = 200.0,
                      tol: float = 1e-6, breakpoints: Optional[Sequence[float]] = None) -> ParsevalReport:
    """
    Compare the two sides of the Mellin-Parseval identity.

    The right side is truncated at |lam| <= lambda_max; the reported
    truncation bound is lambda_max |integrand(lambda_max)| / pi, and the
    result is inconclusive when that bound exceeds ``tol``.
    """
    # x = e^t on [X_MIN, X_MAX]
    g = lambda t: float(u(math.exp(t))) * float(v(math.exp(t)))
    lhs, _ = integrate(g, math.log(X_MIN), math.log(X_MAX), points=LOG_BREAKS, epsrel=1e-10)

    def integrand(lam: float) -> float:
        mu = mellin(u, lam) if lam != 0.0 else _mellin_or_zero(u)
        mv = mellin(v, lam) if lam != 0.0 else _mellin_or_zero(v)
        return float((mu * np.conj(mv)).real)

    points = breakpoints or [0.0, 2.0, 10.0, 50.0, lambda_max]
    rhs_half, _ = integrate(integrand, 0.0, lambda_max, points=points, epsrel=1e-10)
    rhs = rhs_half / math.pi
    bound = lambda_max * abs(integrand(lambda_max)) / math.pi
    residual = abs(lhs - rhs)
    logger.debug("Parseval check", data={"lhs": lhs, "rhs": rhs, "bound": bound}, category="mellin")
    return ParsevalReport(lhs=lhs, rhs=rhs, residual=residual, truncation_bound=bound,
                          lambda_max=lambda_max, inconclusive=bound > tol)


def _mellin_or_zero(u: Sampled) -> complex:
    try:
        return mellin(u, 0.0)
    except DivergentWeightError:
        return complex("nan")
