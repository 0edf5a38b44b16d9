"""
Exception hierarchy for FracLab.

Every failure raised by the numerical library derives from FracLabError so
callers (commands, the CLI) can catch one type and still report a precise
reason.
"""

from typing import Optional


class FracLabError(Exception):
    """Base class for all FracLab errors."""


class ParameterRangeError(FracLabError, ValueError):
    """A parameter lies outside the range where the object is defined."""


class HypothesisViolationError(FracLabError):
    """Initial data does not satisfy the hypotheses an operation requires."""

    def __init__(self, message: str, violations: Optional[dict] = None):
        super().__init__(message)
        self.violations = violations or {}


class OracleDivergenceError(FracLabError):
    """Singular-kernel quadrature did not reach the requested accuracy."""


class DivergentWeightError(FracLabError):
    """A weighted integral diverges for the given data."""


class ConsistencyError(FracLabError):
    """Two independent evaluation routes disagree beyond tolerance."""

    def __init__(self, message: str, first: float = float("nan"), second: float = float("nan")):
        super().__init__(message)
        self.first = first
        self.second = second


class ExtrapolationError(FracLabError):
    """An epsilon-limit extrapolation did not converge."""


class InsufficientGridError(FracLabError):
    """A lambda grid is too coarse or too short for a certificate."""


class BlowupReachedError(FracLabError):
    """Evaluation requested at or past a closed-form blow-up time."""


class MissingCertificateError(FracLabError):
    """A bound needs a certificate that has not been produced."""


class TooFewSamplesError(FracLabError):
    """A time series is too short for the requested stencil."""


class MeanDriftError(FracLabError):
    """A field that must be mean-free carries a nonzero mean."""


class CheckpointError(FracLabError):
    """A checkpoint file is unreadable or has an unknown format tag."""


class ConfigError(FracLabError):
    """Invalid experiment configuration."""

    def __init__(self, message: str, key: Optional[str] = None, line: Optional[int] = None):
        self.key = key
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")
