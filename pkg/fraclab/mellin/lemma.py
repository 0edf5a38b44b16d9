"""
Numerical check of the epsilon-limit of int B(lam, eps) U(lam, eps) dlam.

As eps -> 0+, Re B(lam, eps) tends to B0(lam) plus a concentrating term
whose mass is 2 pi (1+beta) beta c_beta at lam = 0, so

    lim int B U dlam = 2 pi (1+beta) beta c_beta U(0, 0) + int B0(lam) U(lam, 0) dlam.

Both integrands are even in lam (B(-lam) = conj B(lam), U likewise), so
only [0, lambda_max] is integrated.
"""

import math
from typing import List, Sequence

from pydantic import BaseModel, ConfigDict

from fraclab.config.settings import settings
from fraclab.core.constants import blowup_constant
from fraclab.core.profiles import Profile
from fraclab.core.quadrature import integrate
from fraclab.mellin.multipliers import b0_at_zero, eval_B, eval_B0, eval_U
from fraclab.utils.xlogger import logger

PASS_RTOL = 1e-3
NOISE_FLOOR = 1e-6


class LemmaReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    beta: float
    eps_list: List[float]
    lhs: List[float]
    rhs: float
    errors: List[float]
    truncation_bound: float
    inconclusive: bool
    passed: bool


def _breakpoints(eps: float, lambda_max: float) -> List[float]:
    candidates = [eps, 10.0 * eps, 1.0, 10.0, 50.0]
    return sorted({p for p in candidates if 0.0 < p < lambda_max})


def mellin_lemma_check(u: Profile, beta: float, eps_list: Sequence[float],
                       lambda_max: float = None) -> LemmaReport:
    """
    Evaluate int B U at each eps and the limit expression once.

    Args:
        u: Even, compactly supported line profile with a double zero at 0
        beta: Exponent in (0, 1)
        eps_list: Decreasing regularization parameters
        lambda_max: Frequency cutoff; defaults to settings.LAMBDA_MAX

    Returns:
        LemmaReport; passes when the error sequence does not grow beyond the
        quadrature noise floor and the last error is <= 1e-3 relative
    """
    lambda_max = settings.LAMBDA_MAX if lambda_max is None else lambda_max

    def limit_integrand(lam: float) -> float:
        b0 = b0_at_zero(beta) if lam == 0.0 else eval_B0(lam, beta, check=False)
        return b0 * eval_U(lam, 0.0, beta, u).real

    u00 = eval_U(0.0, 0.0, beta, u).real
    tail, _ = integrate(limit_integrand, 0.0, lambda_max, points=_breakpoints(1.0, lambda_max))
    rhs = 2.0 * math.pi * blowup_constant(beta) * u00 + 2.0 * tail

    lhs_values, errors = [], []
    bound = 0.0
    scale = max(abs(rhs), 1e-300)
    for eps in eps_list:
        integrand = lambda lam, eps=eps: (eval_B(lam, eps, beta) * eval_U(lam, eps, beta, u)).real
        value, _ = integrate(integrand, 0.0, lambda_max, points=_breakpoints(eps, lambda_max))
        lhs = 2.0 * value
        lhs_values.append(lhs)
        errors.append(abs(lhs - rhs) / scale if rhs != 0.0 else abs(lhs))
        bound = max(bound, 2.0 * lambda_max * abs(integrand(lambda_max)) / math.pi)
        logger.debug(f"Lemma check eps={eps:g}", data={"lhs": lhs, "rhs": rhs}, category="mellin")

    monotone = all(b <= a + NOISE_FLOOR for a, b in zip(errors, errors[1:]))
    final_ok = bool(errors) and errors[-1] <= PASS_RTOL
    inconclusive = rhs != 0.0 and bound > PASS_RTOL * abs(rhs)
    report = LemmaReport(beta=beta, eps_list=list(eps_list), lhs=lhs_values, rhs=rhs, errors=errors,
                         truncation_bound=bound, inconclusive=inconclusive,
                         passed=monotone and final_ok and not inconclusive)
    logger.info("Mellin lemma check", data={"errors": errors, "passed": report.passed}, category="mellin")
    return report
