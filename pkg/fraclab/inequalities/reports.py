"""Report model shared by the inequality checks and small argument guards."""

from typing import Dict, Sequence

from pydantic import BaseModel, ConfigDict, Field as PydanticField

from fraclab.core.errors import ParameterRangeError
from fraclab.core.field import Field
from fraclab.core.hypotheses import validate_hypotheses


class InequalityReport(BaseModel):
    """Both sides of an inequality (or identity) and the signed margin lhs - rhs."""

    model_config = ConfigDict(frozen=True)

    name: str
    lhs: float
    rhs: float
    margin: float
    tol: float
    passed: bool
    details: Dict[str, float] = PydanticField(default_factory=dict)

    @classmethod
    def build(cls, name: str, lhs: float, rhs: float, tol: float,
              equality: bool = False, **details: float) -> "InequalityReport":
        margin = lhs - rhs
        if equality:
            passed = abs(margin) <= tol * max(abs(lhs), abs(rhs), 1.0)
        else:
            passed = margin >= -tol
        return cls(name=name, lhs=lhs, rhs=rhs, margin=margin, tol=tol, passed=passed, details=details)


def require_line_data(u: Field, names: Sequence[str], context: str) -> None:
    if u.grid.domain != "line":
        raise ParameterRangeError(f"{context} needs a line field")
    validate_hypotheses(u, "line").require(names, context)


def line_support(u: Field) -> float:
    if u.profile is not None and u.profile.support is not None:
        return u.profile.support
    return u.grid.half_width
