"""
Helper utilities module for FracLab.
This module provides small utility functions used across the project.
"""

import os
import re
import json
import math
from typing import Any, Optional, Sequence, Tuple

import numpy as np

from fraclab.utils.xlogger import logger

def to_jsonable(obj: Any) -> Any:
    """
    Convert numpy scalars/arrays, complex numbers and pydantic models into
    plain JSON types.

    Args:
        obj: Arbitrary nested object

    Returns:
        Object made of dict/list/str/float/int/bool/None

    Note:
        - Complex numbers become {"re": ..., "im": ...}
        - Non-finite floats become strings ("inf", "-inf", "nan") so the
          output stays strict JSON
    """
    if hasattr(obj, "model_dump"):
        return to_jsonable(obj.model_dump())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": to_jsonable(float(obj.real)), "im": to_jsonable(float(obj.imag))}
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        if math.isfinite(value):
            return value
        return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
    return obj

def write_json(path: str, payload: Any) -> str:
    """Write payload as indented JSON, creating parent directories."""
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(to_jsonable(payload), f, indent=2, sort_keys=False)
        f.write("\n")
    logger.debug(f"Wrote {path}", category="helpers")
    return path

def read_json(path: str) -> Any:
    with open(path, encoding="utf-8") as f:
        return json.load(f)

def linear_fit(x: Sequence[float], y: Sequence[float]) -> Tuple[float, float, float]:
    """
    Least-squares line y = intercept + slope * x.

    Returns:
        (slope, intercept, r_squared); r_squared is 0 for constant data
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (intercept + slope * x)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        return float(slope), float(intercept), 0.0
    return float(slope), float(intercept), 1.0 - float(np.sum(residual ** 2)) / ss_tot

def power_law_fit(x: Sequence[float], y: Sequence[float]) -> Tuple[float, float, float]:
    """
    Fit |y| ~ C |x|^p in log-log coordinates.

    Returns:
        (p, C, residual) where residual is the max relative deviation of |y|
        from C |x|^p over the samples
    """
    ax = np.abs(np.asarray(x, dtype=float))
    ay = np.abs(np.asarray(y, dtype=float))
    floor = np.finfo(float).tiny
    p, log_c = np.polyfit(np.log(ax), np.log(np.maximum(ay, floor)), 1)
    model = np.exp(log_c) * ax ** p
    residual = float(np.max(np.abs(ay - model) / model))
    return float(p), float(np.exp(log_c)), residual

def find_key_line(text: str, key: str) -> Optional[int]:
    """1-based line number of the first occurrence of a quoted JSON key."""
    pattern = re.compile(r'"' + re.escape(str(key)) + r'"\s*:')
    for number, line in enumerate(text.splitlines(), start=1):
        if pattern.search(line):
            return number
    return None

def cell_tag(alpha: float, amplitude: float) -> str:
    """File-name tag for a sweep cell, e.g. a0.5_A10."""
    return f"a{alpha:g}_A{amplitude:g}"
