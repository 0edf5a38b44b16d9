"""
Thin wrappers around QUADPACK (scipy.integrate.quad) and a graded
Gauss-Legendre rule.

Every wrapper returns ``(value, abserr)``; callers add the error estimates
up and decide whether the result is trustworthy. QUADPACK warnings are
caught and logged instead of being printed.
"""

import math
import warnings
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import IntegrationWarning, quad

from fraclab.config.settings import settings
from fraclab.utils.xlogger import logger

Quad = Tuple[float, float]

_LOG_WEIGHTS = {None: "alg", "a": "alg-loga", "b": "alg-logb", "both": "alg-log"}


def _run(f: Callable, a: float, b: float, **kwargs) -> Quad:
    kwargs.setdefault("limit", settings.QUAD_LIMIT)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", IntegrationWarning)
        value, abserr = quad(f, a, b, **kwargs)[:2]
    for w in caught:
        if issubclass(w.category, IntegrationWarning):
            logger.debug(f"QUADPACK on [{a}, {b}]: {str(w.message).splitlines()[0]}",
                         data={"abserr": abserr}, category="quadrature")
    return float(value), float(abserr)


def integrate(f: Callable[[float], float], a: float, b: float,
              points: Optional[Sequence[float]] = None,
              epsabs: Optional[float] = None, epsrel: Optional[float] = None) -> Quad:
    """Adaptive integral of a real function (QAGS/QAGP/QAGI)."""
    kwargs = {
        "epsabs": settings.QUAD_EPSABS if epsabs is None else epsabs,
        "epsrel": settings.QUAD_EPSREL if epsrel is None else epsrel,
    }
    if points is not None:
        inner = [p for p in points if a < p < b]
        if inner:
            kwargs["points"] = inner
    return _run(f, a, b, **kwargs)


def integrate_alg(f: Callable[[float], float], a: float, b: float,
                  power_a: float, power_b: float, log: Optional[str] = None,
                  epsabs: Optional[float] = None, epsrel: Optional[float] = None) -> Quad:
    """
    integral_a^b f(y) (y - a)^power_a (b - y)^power_b [log factors] dy (QAWS).

    Args:
        log: None, "a" for log(y - a), "b" for log(b - y), "both" for the product

    Note:
        QUADPACK evaluates f at the endpoints; f itself must be finite there.
    """
    if b <= a:
        return 0.0, 0.0
    return _run(f, a, b, weight=_LOG_WEIGHTS[log], wvar=(power_a, power_b),
                epsabs=settings.QUAD_EPSABS if epsabs is None else epsabs,
                epsrel=settings.QUAD_EPSREL if epsrel is None else epsrel)


def fourier_tail(g: Callable[[float], float], start: float, lam: float) -> Tuple[complex, float]:
    """
    integral_start^inf g(s) e^{i lam s} ds for a real, decaying g (QAWF).

    lam = 0 falls back to a plain improper integral.
    """
    if lam == 0.0:
        value, err = _run(g, start, np.inf, epsabs=settings.QUAD_EPSABS, epsrel=settings.QUAD_EPSREL)
        return complex(value, 0.0), err
    w = abs(lam)
    re, err_re = _run(g, start, np.inf, weight="cos", wvar=w,
                      epsabs=settings.QUAD_EPSABS, limlst=settings.QUAD_LIMLST)
    im, err_im = _run(g, start, np.inf, weight="sin", wvar=w,
                      epsabs=settings.QUAD_EPSABS, limlst=settings.QUAD_LIMLST)
    if lam < 0.0:
        im = -im
    return complex(re, im), err_re + err_im


def fourier_segment(g: Callable[[float], float], a: float, b: float, lam: float) -> Tuple[complex, float]:
    """integral_a^b g(s) e^{i lam s} ds for a real g on a finite interval (QAWO)."""
    if b <= a:
        return 0j, 0.0
    tol = {"epsabs": settings.QUAD_EPSABS, "epsrel": settings.QUAD_EPSREL}
    if lam == 0.0:
        value, err = _run(g, a, b, **tol)
        return complex(value, 0.0), err
    w = abs(lam)
    re, err_re = _run(g, a, b, weight="cos", wvar=w, **tol)
    im, err_im = _run(g, a, b, weight="sin", wvar=w, **tol)
    if lam < 0.0:
        im = -im
    return complex(re, im), err_re + err_im


class GradedRule:
    """
    Gauss-Legendre nodes on [delta, upper]: uniform panels of width ``panel``
    down to ``panel`` itself, then geometric panels (ratio ``ratio``) toward
    zero until the left end falls below ``floor``.

    The piece [0, delta] is left to the caller, who bounds it with the
    Taylor expansion of a function with a double zero at the origin.
    """

    def __init__(self, upper: float, panel: float, order: int = 16,
                 ratio: float = 0.25, floor: float = 1e-10):
        if upper <= 0.0 or panel <= 0.0:
            raise ValueError("GradedRule needs positive upper limit and panel width")
        panel = min(panel, upper)
        n_uniform = max(1, int(math.ceil((upper - panel) / panel)))
        edges = list(np.linspace(panel, upper, n_uniform + 1)) if upper > panel else [panel]
        left = panel
        graded = []
        while left > floor:
            left_next = left * ratio
            graded.append(left_next)
            left = left_next
        edges = sorted(set(graded + edges))
        self.delta = edges[0]
        self.upper = upper

        x_ref, w_ref = leggauss(order)
        nodes, weights = [], []
        for lo, hi in zip(edges[:-1], edges[1:]):
            half = 0.5 * (hi - lo)
            nodes.append(lo + half * (x_ref + 1.0))
            weights.append(half * w_ref)
        self.nodes = np.concatenate(nodes)
        self.weights = np.concatenate(weights)

    def integrate(self, values: np.ndarray) -> float:
        return float(np.dot(self.weights, values))
