"""
Analytic descriptions of initial data.

A Profile carries everything the quadrature routes need beyond grid
samples: the exact function and derivative, and for compactly supported
line data the edge behaviour u(y) = r(y) (R - y)^e (R + y)^e with a smooth
reduced factor r, so singular weights can be handed to QUADPACK.
"""

from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import Polynomial
from pydantic import BaseModel, ConfigDict
from scipy.special import beta as beta_fn

from fraclab.core.errors import ParameterRangeError

ArrayFunc = Callable[[np.ndarray], np.ndarray]


class Profile(BaseModel):
    """Exact initial data, evaluated pointwise."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    func: ArrayFunc
    derivative: ArrayFunc
    support: Optional[float] = None          # R for line data, None for 2 pi periodic data
    edge_exponent: float = 0.0
    reduced: Optional[ArrayFunc] = None
    reduced_derivative: Optional[ArrayFunc] = None
    derivative_edge_exponent: float = 0.0
    coefficients: Optional[Tuple[float, ...]] = None   # ascending powers on [0, R]

    @property
    def is_periodic(self) -> bool:
        return self.support is None

    def __call__(self, x):
        return self.func(np.asarray(x, dtype=float))

    def deriv(self, x):
        return self.derivative(np.asarray(x, dtype=float))

    @property
    def polynomial(self) -> Optional[Polynomial]:
        return None if self.coefficients is None else Polynomial(self.coefficients)

    def scaled(self, factor: float) -> "Profile":
        """The profile multiplied by a constant factor."""
        f, d, r, rd = self.func, self.derivative, self.reduced, self.reduced_derivative
        return self.model_copy(update={
            "name": f"{factor:g}*{self.name}",
            "func": lambda x: factor * f(x),
            "derivative": lambda x: factor * d(x),
            "reduced": None if r is None else (lambda x: factor * r(x)),
            "reduced_derivative": None if rd is None else (lambda x: factor * rd(x)),
            "coefficients": None if self.coefficients is None
            else tuple(factor * c for c in self.coefficients),
        })


def bump_family(terms: Sequence[Tuple[int, int, float]], name: Optional[str] = None) -> Profile:
    """
    Sum of bumps a x^{2k} (1 - x^2)_+^m supported in [-1, 1].

    Args:
        terms: (k, m, a) triples with k >= 1, m >= 2 and a >= 0
        name: Optional display name

    Returns:
        Even profile with a double zero at the origin
    """
    if not terms:
        raise ParameterRangeError("bump_family needs at least one term")
    for k, m, a in terms:
        if k < 1 or m < 2 or a < 0:
            raise ParameterRangeError(f"bump term (k={k}, m={m}, a={a}) is not admissible")
    m_min = min(m for _, m, _ in terms)
    one_minus_sq = Polynomial([1.0, 0.0, -1.0])
    x = Polynomial([0.0, 1.0])

    full = Polynomial([0.0])
    reduced = Polynomial([0.0])
    for k, m, a in terms:
        full = full + a * x ** (2 * k) * one_minus_sq ** m
        reduced = reduced + a * x ** (2 * k) * one_minus_sq ** (m - m_min)
    full_d = full.deriv()
    # u' = (1 - x^2)^{m_min - 1} * (r' (1 - x^2) - 2 m_min x r)
    reduced_d = reduced.deriv() * one_minus_sq - 2.0 * m_min * x * reduced

    def func(y):
        y = np.asarray(y, dtype=float)
        return np.where(np.abs(y) < 1.0, full(y), 0.0)

    def derivative(y):
        y = np.asarray(y, dtype=float)
        return np.where(np.abs(y) < 1.0, full_d(y), 0.0)

    label = name or "+".join(f"{a:g}x^{2 * k}(1-x^2)^{m}" for k, m, a in terms)
    return Profile(
        name=label,
        func=func,
        derivative=derivative,
        support=1.0,
        edge_exponent=float(m_min),
        reduced=reduced,
        reduced_derivative=reduced_d,
        derivative_edge_exponent=float(m_min - 1),
        coefficients=tuple(float(c) for c in full.coef),
    )


def line_bump(k: int = 1, m: int = 2, amplitude: float = 1.0) -> Profile:
    """x^{2k} (1 - x^2)_+^m, the standard admissible line datum."""
    return bump_family([(k, m, amplitude)], name=f"x^{2 * k}(1-x^2)^{m}")


def admissible_family(n: int = 20, seed: int = 0) -> list:
    """Seeded family of nonnegative bump sums used for inequality sweeps."""
    rng = np.random.default_rng(seed)
    family = []
    for i in range(n):
        n_terms = int(rng.integers(1, 4))
        terms = []
        for _ in range(n_terms):
            k = int(rng.integers(1, 4))
            m = int(rng.integers(2, 5))
            terms.append((k, m, float(rng.uniform(0.1, 2.0))))
        family.append(bump_family(terms, name=f"family[{seed}:{i}]"))
    return family


def cosine_series(coefficients: Sequence[float], name: Optional[str] = None) -> Profile:
    """2 pi periodic even profile a_0 + sum a_n cos(n x)."""
    coeffs = np.asarray(coefficients, dtype=float)
    n = np.arange(coeffs.size)

    def func(x):
        x = np.asarray(x, dtype=float)
        return np.cos(np.multiply.outer(x, n)) @ coeffs

    def derivative(x):
        x = np.asarray(x, dtype=float)
        return -np.sin(np.multiply.outer(x, n)) @ (n * coeffs)

    return Profile(name=name or f"cos{list(coeffs)}", func=func, derivative=derivative)


def one_minus_cos(amplitude: float = 1.0) -> Profile:
    return cosine_series([amplitude, -amplitude], name=f"{amplitude:g}(1-cos x)")


def selfsim_profile(alpha: float, scale: float = 1.0) -> Profile:
    """
    K (1 - x^2)_+^{alpha/2}, normalized to unit mass when scale = 1.

    Args:
        alpha: Exponent in (0, 2)
        scale: Extra constant factor

    Returns:
        Compactly supported profile of Hoelder exponent alpha/2 at x = +-1
    """
    if not 0.0 < alpha < 2.0:
        raise ParameterRangeError(f"alpha must lie in (0, 2), got {alpha}")
    a = alpha / 2.0
    k = scale / float(beta_fn(0.5, a + 1.0))

    def func(y):
        y = np.asarray(y, dtype=float)
        return k * np.clip(1.0 - y * y, 0.0, None) ** a

    def derivative(y):
        y = np.asarray(y, dtype=float)
        inside = np.abs(y) < 1.0
        base = np.where(inside, 1.0 - y * y, 1.0)
        return np.where(inside, -2.0 * a * k * y * base ** (a - 1.0), 0.0)

    return Profile(
        name=f"selfsim(alpha={alpha:g})",
        func=func,
        derivative=derivative,
        support=1.0,
        edge_exponent=a,
        reduced=lambda y: k * np.ones_like(np.asarray(y, dtype=float)),
        reduced_derivative=lambda y: -2.0 * a * k * np.asarray(y, dtype=float),
        derivative_edge_exponent=a - 1.0,
    )


def selfsim_mass_constant(alpha: float) -> float:
    """K(alpha) giving unit mass; equals Gamma(a + 3/2) / (sqrt(pi) Gamma(a + 1)), a = alpha/2."""
    return 1.0 / float(beta_fn(0.5, alpha / 2.0 + 1.0))


def mellin_of_polynomial(profile: Profile, shift: complex) -> complex:
    """
    Exact integral_0^R x^{shift - 1} u(x) dx for a polynomial profile.

    Args:
        profile: Profile with ``coefficients``
        shift: Complex exponent z; requires Re z + j > 0 for every nonzero
            coefficient j

    Returns:
        sum_j a_j R^{z+j} / (z + j)
    """
    if profile.coefficients is None or profile.support is None:
        raise ParameterRangeError(f"profile {profile.name} has no polynomial representation")
    radius = profile.support
    total = 0.0 + 0.0j
    for j, a in enumerate(profile.coefficients):
        if a == 0.0:
            continue
        z = shift + j
        if z.real <= 0.0:
            raise ParameterRangeError(f"Mellin exponent {shift} is not integrable against x^{j}")
        total += a * radius ** z / z
    return complex(total)
