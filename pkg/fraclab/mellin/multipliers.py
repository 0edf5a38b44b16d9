"""
Mellin multipliers of the weighted nonlocal operators.

Line case (exponent b = beta):
    m(lam, eps, b) = c_b int_0^inf x^{i lam + eps - 2} (|x-1|^{-b} - |x+1|^{-b}) dx
    B(lam, eps, b) = conj(m) (i lam - eps + 1 + b),   B0 = lim Re B
Periodic case (exponent a = alpha):
    m_p(lam, eps, a) = c_bar_a int_0^inf x^{i lam + eps - 2} (sign(x-1)|x-1|^{-a} + |x+1|^{-a}) dx
    A = -conj(m_p),   A0 = lim Re A

The range [1, inf) is folded onto [0, 1] with x -> 1/x, so every multiplier
is one integral over (0, 1):
    m   = c_b   int_0^1 [x^{i lam+eps-2} K(x) + x^{-i lam+b-eps} K(x)] dx
    m_p = c_bar int_0^1 [-x^{i lam+eps-2} K(x) + x^{-i lam+a-eps} R(x)] dx
with K(x) = (1-x)^{-e} - (1+x)^{-e} and R(x) = (1-x)^{-e} + (1+x)^{-e}.
Near 0, K(x) = 2 e x + O(x^3); the linear part is integrated in closed form
(the pole 2e 2^{-z}/z, z = i lam + eps) and the rest runs through QAWF in
s = -log x. On [1/2, 1] the (1-x)^{-e} singularity goes to QAWS.
"""

import math
from functools import lru_cache
from typing import Callable, Dict, List, Literal, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from fraclab.config.settings import settings
from fraclab.core.constants import odd_riesz_constant, riesz_constant
from fraclab.core.errors import ConsistencyError, ExtrapolationError, ParameterRangeError
from fraclab.core.profiles import Profile, mellin_of_polynomial
from fraclab.core.quadrature import fourier_tail, integrate, integrate_alg
from fraclab.mellin.transform import mellin, weighted
from fraclab.utils.xlogger import logger

Kernel = Literal["line_beta", "periodic_alpha"]
TableKind = Literal["m", "B", "B0", "m_p", "A", "A0", "U"]

LOG2 = math.log(2.0)
S_CUT = 40.0                 # e^{-40}: contributions beyond are below double precision
SERIES_CUT = 1e-3
ROUTE_RTOL = 1e-6
RICHARDSON_RTOL = 1e-4
BYPARTS_RTOL = 1e-5


# --------------------------------------------------------------------------
# Kernel pieces
# --------------------------------------------------------------------------

def _rising(e: float, j: int) -> float:
    out = 1.0
    for i in range(j):
        out *= e + i
    return out


def kernel_odd(x: float, e: float) -> float:
    """K(x) = (1-x)^{-e} - (1+x)^{-e}, accurate for small x."""
    return math.expm1(-e * math.log1p(-x)) - math.expm1(-e * math.log1p(x))


def kernel_even(x: float, e: float) -> float:
    """R(x) = (1-x)^{-e} + (1+x)^{-e}."""
    return (1.0 - x) ** (-e) + (1.0 + x) ** (-e)


def kernel_odd_reduced(x: float, e: float) -> float:
    """K(x)/x - 2e, which is O(x^2)."""
    if x < SERIES_CUT:
        x2 = x * x
        return _rising(e, 3) / 3.0 * x2 + _rising(e, 5) / 60.0 * x2 * x2
    return kernel_odd(x, e) / x - 2.0 * e


def _kernel_derivative(j: int, x: float, y: float, e: float) -> float:
    """j-th derivative of K at x, with y = 1 - x passed in separately."""
    p = _rising(e, j)
    q = e + j
    if j % 2:
        return p * (y ** (-q) + (1.0 + x) ** (-q))
    if x < 0.5:
        return p * kernel_odd(x, q)
    return p * (y ** (-q) - (1.0 + x) ** (-q))


def _check_multiplier_args(epsilon: float, exponent: float) -> None:
    if not 0.0 < exponent < 1.0:
        raise ParameterRangeError(f"exponent must lie in (0, 1), got {exponent}")
    if not 0.0 < epsilon < 1.0 - exponent:
        raise ParameterRangeError(f"epsilon must lie in (0, {1.0 - exponent:g}), got {epsilon}")


# --------------------------------------------------------------------------
# Folded integrals
# --------------------------------------------------------------------------

def _near_origin_odd(lam: float, eps: float, e: float) -> Tuple[complex, float]:
    """int_0^{1/2} x^{i lam + eps - 2} K(x) dx."""
    z = complex(eps, lam)
    if z == 0:
        raise ParameterRangeError("the multiplier has a pole at lam = eps = 0")
    pole = 2.0 * e * 2.0 ** (-z) / z
    g = lambda s: math.exp(-eps * s) * kernel_odd_reduced(math.exp(-s), e)
    value, err = fourier_tail(g, LOG2, lam)
    return value.conjugate() + pole, err


def _near_origin_conj(lam: float, power: float, kernel: Callable[[float, float], float],
                      e: float) -> Tuple[complex, float]:
    """int_0^{1/2} x^{-i lam + power} kernel(x) dx."""
    g = lambda s: math.exp(-(1.0 + power) * s) * kernel(math.exp(-s), e)
    return fourier_tail(g, LOG2, lam)


def _half_to_one(lam: float, e: float, terms: Sequence[Tuple[float, int, float, float]]) -> Tuple[complex, float]:
    """
    int_{1/2}^1 sum_k x^{p_k + i s_k lam} [a_k (1-x)^{-e} + b_k (1+x)^{-e}] dx.

    Args:
        terms: (p_k, s_k, a_k, b_k) with phase sign s_k = +-1
    """
    def part(x: float, singular: bool, imag: bool) -> float:
        t = lam * math.log(x)
        c, s = math.cos(t), math.sin(t)
        total = 0.0
        for p, sign, a, b in terms:
            coef = a if singular else b * (1.0 + x) ** (-e)
            total += coef * x ** p * (sign * s if imag else c)
        return total

    re_s, e1 = integrate_alg(lambda x: part(x, True, False), 0.5, 1.0, 0.0, -e)
    im_s, e2 = integrate_alg(lambda x: part(x, True, True), 0.5, 1.0, 0.0, -e)
    re_r, e3 = integrate(lambda x: part(x, False, False), 0.5, 1.0)
    im_r, e4 = integrate(lambda x: part(x, False, True), 0.5, 1.0)
    return complex(re_s + re_r, im_s + im_r), e1 + e2 + e3 + e4


def _m_line(lam: float, eps: float, b: float) -> complex:
    t1, e1 = _near_origin_odd(lam, eps, b)
    t2, e2 = _near_origin_conj(lam, b - eps, kernel_odd, b)
    t3, e3 = _half_to_one(lam, b, [(eps - 2.0, 1, 1.0, -1.0), (b - eps, -1, 1.0, -1.0)])
    return _settle(riesz_constant(b) * (t1 + t2 + t3), e1 + e2 + e3, "m", lam)


def _m_periodic(lam: float, eps: float, a: float) -> complex:
    t1, e1 = _near_origin_odd(lam, eps, a)
    t2, e2 = _near_origin_conj(lam, a - eps, kernel_even, a)
    t3, e3 = _half_to_one(lam, a, [(eps - 2.0, 1, -1.0, 1.0), (a - eps, -1, 1.0, 1.0)])
    return _settle(odd_riesz_constant(a) * (-t1 + t2 + t3), e1 + e2 + e3, "m_p", lam)


def _settle(value: complex, err: float, name: str, lam: float) -> complex:
    if err > 1e-8 * max(1.0, abs(value)):
        logger.warning(f"{name} quadrature at lam={lam:g} above target accuracy",
                       data={"abserr": err}, category="mellin")
    return complex(value)


# --------------------------------------------------------------------------
# Public multipliers
# --------------------------------------------------------------------------

def eval_m(lam: float, epsilon: float, exponent: float, kernel: Kernel = "line_beta") -> complex:
    """
    m(lam, eps, beta) for the line kernel or m_p(lam, eps, alpha) for the periodic one.

    Raises:
        ParameterRangeError: exponent outside (0, 1) or eps outside (0, 1 - exponent)
    """
    _check_multiplier_args(epsilon, exponent)
    if kernel == "line_beta":
        return _m_line(float(lam), float(epsilon), float(exponent))
    if kernel == "periodic_alpha":
        return _m_periodic(float(lam), float(epsilon), float(exponent))
    raise ParameterRangeError(f"unknown kernel {kernel!r}")


def eval_mp(lam: float, epsilon: float, alpha: float) -> complex:
    return eval_m(lam, epsilon, alpha, kernel="periodic_alpha")


def eval_B(lam: float, epsilon: float, beta: float) -> complex:
    """B(lam, eps, beta) = conj(m) (i lam - eps + 1 + beta)."""
    m = eval_m(lam, epsilon, beta)
    return m.conjugate() * complex(1.0 + beta - epsilon, lam)


def eval_A(lam: float, epsilon: float, alpha: float) -> complex:
    """A(lam, eps, alpha) = -conj(m_p)."""
    return -eval_mp(lam, epsilon, alpha).conjugate()


# --------------------------------------------------------------------------
# B0: explicit route and integrated-by-parts route
# --------------------------------------------------------------------------

def _b0_weight(s: float, b: float) -> float:
    """w(s) = x (d/dx)(x G0(x, b)) at x = e^{-s}."""
    if s > S_CUT:
        return 0.0
    x = math.exp(-s)
    y = -math.expm1(-s)
    k0, k1, k2, k3 = (_kernel_derivative(j, x, y, b) for j in range(4))
    om = -math.expm1(-(2.0 + b) * s)
    xb = x ** b
    g0 = b * (k1 / x - k0 / (x * x)) - (2.0 + b) * xb * x * k1 + om * k2
    g0p = (b * (k2 / x - 2.0 * k1 / (x * x) + 2.0 * k0 / x ** 3)
           - (2.0 + b) * (1.0 + b) * xb * k1 - 2.0 * (2.0 + b) * xb * x * k2 + om * k3)
    return x * (g0 + x * g0p)


def _b0_route_e(lam: float, b: float) -> float:
    m0 = _m_line(lam, 0.0, b)
    return float((m0.conjugate() * complex(1.0 + b, lam)).real)


def _b0_route_g(lam: float, b: float) -> float:
    w = lambda s: _b0_weight(s, b)
    c = riesz_constant(b)
    if lam == 0.0:
        value, _ = integrate(lambda s: 0.5 * s * s * w(s), 0.0, np.inf)
        return c * value
    s1 = min(1.0, math.pi / abs(lam))
    head, _ = integrate(lambda s: 2.0 * math.sin(0.5 * lam * s) ** 2 * w(s), 0.0, s1)
    flat, _ = integrate(w, s1, np.inf)
    osc, _ = fourier_tail(w, s1, lam)
    return c * (head + flat - osc.real) / (lam * lam)


def b0_at_zero(beta: float) -> float:
    """lim_{lam -> 0} B0(lam, beta)."""
    return _b0_route_g(0.0, beta)


def eval_B0(lam: float, beta: float, check: bool = True) -> float:
    """
    B0(lam, beta) = lim_{eps -> 0+} Re B(lam, eps, beta).

    The explicit route evaluates Re[conj(m(lam, 0)) (i lam + 1 + beta)] with the
    small-x pole taken in closed form; the second route integrates
    (c_b / lam^2) int_0^inf (1 - cos lam s) w(s) ds with w from G0.

    Raises:
        ParameterRangeError: lam = 0 or beta outside (0, 1)
        ConsistencyError: the two routes disagree by more than 1e-6 relative
    """
    if lam == 0.0:
        raise ParameterRangeError("B0 is evaluated at lam != 0")
    if not 0.0 < beta < 1.0:
        raise ParameterRangeError(f"beta must lie in (0, 1), got {beta}")
    lam = abs(float(lam))
    route_e = _b0_route_e(lam, beta)
    if check:
        route_g = _b0_route_g(lam, beta)
        if abs(route_e - route_g) > ROUTE_RTOL * max(abs(route_e), abs(route_g)) + 1e-12:
            logger.error(f"B0 routes disagree at lam={lam:g}, beta={beta:g}",
                         data={"route_e": route_e, "route_g": route_g}, category="mellin")
            raise ConsistencyError("B0 explicit and G0 routes disagree", route_e, route_g)
    return route_e


# --------------------------------------------------------------------------
# A0: Richardson over eps, regularized quadrature, integrated-by-parts form
# --------------------------------------------------------------------------

def _pole_real(lam: float, eps: float, a: float) -> float:
    """Real part contributed to A by the closed-form pole at small x."""
    z = complex(eps, lam)
    return odd_riesz_constant(a) * (2.0 * a * 2.0 ** (-z) / z).real


def _a0_richardson(lam: float, a: float) -> float:
    ladder = settings.EPS_LADDER
    smooth = [eval_A(lam, eps, a).real - _pole_real(lam, eps, a) for eps in ladder]
    first = [2.0 * smooth[i + 1] - smooth[i] for i in range(len(smooth) - 1)]
    second = (4.0 * first[1] - first[0]) / 3.0
    if abs(second - first[1]) > RICHARDSON_RTOL * max(1.0, abs(second)):
        raise ExtrapolationError(
            f"eps extrapolation of A0 at lam={lam:g} not settled: {first[1]:.10g} vs {second:.10g}"
        )
    return second + _pole_real(lam, 0.0, a)


def _a0_integrand(s: float, a: float) -> float:
    """x F0(x) + 2a at x = e^{-s}."""
    if s > S_CUT:
        return 0.0
    x = math.exp(-s)
    return -kernel_odd_reduced(x, a) + x ** (1.0 + a) * kernel_even(x, a)


@lru_cache(maxsize=8192)
def _a0_regularized(lam: float, a: float) -> float:
    h = lambda s: _a0_integrand(s, a)
    if lam == 0.0:
        value, _ = integrate(h, 0.0, np.inf)
    else:
        s1 = min(1.0, math.pi / lam)
        head, _ = integrate(lambda s: math.cos(lam * s) * h(s), 0.0, s1)
        tail, _ = fourier_tail(h, s1, lam)
        value = head + tail.real
    return -odd_riesz_constant(a) * value


def _a0_byparts_integrand(s: float, a: float) -> float:
    """x G(x, a) at x = e^{-s}, with G = d/dx (x F0)."""
    if s > S_CUT:
        return 0.0
    x = math.exp(-s)
    y = -math.expm1(-s)
    xa = x ** (1.0 + a)
    return (kernel_odd(x, a) / x
            + (1.0 + a) * xa * kernel_even(x, a)
            + a * y ** (-a - 1.0) * math.expm1(-(2.0 + a) * s)
            - a * (1.0 + x) ** (-a - 1.0) * (1.0 + x * xa))


def _a0_byparts(lam: float, a: float) -> float:
    g = lambda s: _a0_byparts_integrand(s, a)
    s1 = min(1.0, math.pi / lam)
    head, _ = integrate(lambda s: math.sin(lam * s) * g(s), 0.0, s1)
    tail, _ = fourier_tail(g, s1, lam)
    return -odd_riesz_constant(a) / lam * (head + tail.imag)


def a0_at_zero(alpha: float) -> float:
    """lim_{lam -> 0} A0(lam, alpha)."""
    return _a0_regularized(0.0, float(alpha))


def eval_A0(lam: float, alpha: float,
            method: Literal["richardson", "regularized", "byparts"] = "richardson",
            check: bool = True) -> float:
    """
    A0(lam, alpha) = lim_{eps -> 0+} Re A(lam, eps, alpha), real and even in lam.

    Args:
        lam: Nonzero frequency
        alpha: Exponent in (0, 1)
        method: "richardson" extrapolates Re A over the eps ladder in
            settings.EPS_LADDER; "regularized" integrates the eps = 0 form
            directly; "byparts" integrates sin(lam s) against x G(x, alpha)
        check: Cross-check the result against the integrated-by-parts form

    Raises:
        ParameterRangeError: lam = 0 or alpha outside (0, 1)
        ExtrapolationError: the eps extrapolation does not settle
        ConsistencyError: the cross-check fails
    """
    if lam == 0.0:
        raise ParameterRangeError("A0 is evaluated at lam != 0")
    if not 0.0 < alpha < 1.0:
        raise ParameterRangeError(f"alpha must lie in (0, 1), got {alpha}")
    lam, alpha = abs(float(lam)), float(alpha)
    if method == "richardson":
        value = _a0_richardson(lam, alpha)
    elif method == "regularized":
        value = _a0_regularized(lam, alpha)
    elif method == "byparts":
        return _a0_byparts(lam, alpha)
    else:
        raise ParameterRangeError(f"unknown A0 method {method!r}")
    if check:
        reference = _a0_byparts(lam, alpha)
        if abs(value - reference) > BYPARTS_RTOL * max(abs(value), abs(reference)) + 1e-10:
            logger.error(f"A0 routes disagree at lam={lam:g}, alpha={alpha:g}",
                         data={"value": value, "byparts": reference, "method": method},
                         category="mellin")
            raise ConsistencyError(f"A0 {method} and integrated-by-parts routes disagree", value, reference)
    return value


# --------------------------------------------------------------------------
# U and tables
# --------------------------------------------------------------------------

def _weighted_mellin(profile: Profile, power: float, lam: float) -> complex:
    if profile.coefficients is not None:
        return mellin_of_polynomial(profile, complex(power, lam))
    return mellin(weighted(profile, power), lam)


def eval_U(lam: float, epsilon: float, beta: float, profile: Profile) -> complex:
    """U(lam, eps, beta) = conj(M[x^{eps-1-beta} u]) M[x^{-eps-1-beta} u] for a line profile."""
    if profile.is_periodic:
        raise ParameterRangeError("U is tabulated for compactly supported line profiles")
    left = _weighted_mellin(profile, epsilon - 1.0 - beta, lam)
    right = _weighted_mellin(profile, -epsilon - 1.0 - beta, lam)
    return left.conjugate() * right


class MultiplierTable(BaseModel):
    """Sampled multiplier values on a lambda grid at fixed (epsilon, exponent)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    kind: TableKind
    lambda_grid: np.ndarray
    values: np.ndarray
    epsilon: float
    exponent: float
    profile: Optional[str] = None

    @property
    def is_real(self) -> bool:
        return self.kind in ("B0", "A0")

    def component(self, part: Literal["abs", "re", "im"] = "abs") -> np.ndarray:
        if part == "re":
            return np.real(self.values)
        if part == "im":
            return np.imag(self.values)
        return np.abs(self.values)

    def to_record(self) -> Dict:
        return {
            "kind": self.kind,
            "epsilon": self.epsilon,
            "exponent": self.exponent,
            "profile": self.profile,
            "lambda": [float(v) for v in self.lambda_grid],
            "re": [float(v) for v in np.real(self.values)],
            "im": [float(v) for v in np.imag(self.values)],
        }

    @classmethod
    def from_record(cls, record: Dict) -> "MultiplierTable":
        values = np.asarray(record["re"], dtype=float) + 1j * np.asarray(record["im"], dtype=float)
        return cls(kind=record["kind"], lambda_grid=np.asarray(record["lambda"], dtype=float),
                   values=values, epsilon=record["epsilon"], exponent=record["exponent"],
                   profile=record.get("profile"))


def _table_entry(kind: TableKind, lam: float, epsilon: float, exponent: float,
                 profile: Optional[Profile]) -> complex:
    if kind == "m":
        return eval_m(lam, epsilon, exponent)
    if kind == "B":
        return eval_B(lam, epsilon, exponent)
    if kind == "m_p":
        return eval_mp(lam, epsilon, exponent)
    if kind == "A":
        return eval_A(lam, epsilon, exponent)
    if kind == "B0":
        return complex(b0_at_zero(exponent) if lam == 0.0 else eval_B0(lam, exponent, check=False))
    if kind == "A0":
        return complex(a0_value(lam, exponent))
    if kind == "U":
        if profile is None:
            raise ParameterRangeError("a U table needs a profile")
        return eval_U(lam, epsilon, exponent, profile)
    raise ParameterRangeError(f"unknown table kind {kind!r}")


def build_table(kind: TableKind, lambda_grid: Sequence[float], epsilon: float, exponent: float,
                profile: Optional[Profile] = None) -> MultiplierTable:
    """
    Tabulate one multiplier over a lambda grid.

    B0 and A0 tables use the limit value at lam = 0 and, for A0, the
    regularized quadrature route.
    """
    grid = np.asarray(lambda_grid, dtype=float)
    values: List[complex] = [_table_entry(kind, float(lam), epsilon, exponent, profile) for lam in grid]
    table = MultiplierTable(kind=kind, lambda_grid=grid, values=np.asarray(values, dtype=complex),
                            epsilon=epsilon, exponent=exponent,
                            profile=None if profile is None else profile.name)
    logger.info(f"Built {kind} table", data={"points": len(grid), "epsilon": epsilon,
                                             "exponent": exponent}, category="mellin")
    return table


def a0_value(lam: float, alpha: float) -> float:
    """A0 by the regularized route, including the limit at lam = 0; used inside lam integrals."""
    return _a0_regularized(abs(float(lam)), float(alpha))
