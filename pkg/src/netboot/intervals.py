"""Bootstrap confidence intervals from replicate vectors."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError


@dataclass(frozen=True)
class ConfidenceInterval:
    lower: float
    upper: float
    level: float
    method: str  # "percentile" | "basic"
    point: float

    def contains(self, value: float) -> bool:
        return self.lower <= value <= self.upper

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def to_dict(self) -> dict:
        return {"lower": self.lower, "upper": self.upper, "level": self.level, "method": self.method}


def _check_level(level: float):
    if not 0 < level < 1:
        raise ParameterError(f"confidence level must be in (0, 1), got {level}")


def percentile_bounds(replicates, level: float) -> tuple[float, float]:
    """Order-statistic endpoints: the ceil(B*alpha/2)-th and ceil(B*(1-alpha/2))-th
    smallest replicates (1-based), so both endpoints are sample members."""
    _check_level(level)
    values = np.sort(np.asarray(replicates, dtype=float))
    b = values.size
    if b < 1:
        raise ParameterError("need at least one replicate")
    alpha = 1.0 - level
    lo = max(math.ceil(b * alpha / 2.0), 1)
    hi = min(math.ceil(b * (1.0 - alpha / 2.0)), b)
    return float(values[lo - 1]), float(values[hi - 1])


def percentile_ci(replicates, level: float, point: float) -> ConfidenceInterval:
    lo, hi = percentile_bounds(replicates, level)
    return ConfidenceInterval(lo, hi, level, "percentile", point)


def basic_ci(replicates, level: float, point: float) -> ConfidenceInterval:
    """Reflection of the percentile interval around twice the point estimate."""
    lo, hi = percentile_bounds(replicates, level)
    return ConfidenceInterval(2.0 * point - hi, 2.0 * point - lo, level, "basic", point)


def bootstrap_ci(replicates, level: float, point: float, method: str = "percentile") -> ConfidenceInterval:
    if method == "percentile":
        return percentile_ci(replicates, level, point)
    if method == "basic":
        return basic_ci(replicates, level, point)
    raise ParameterError(f"unknown interval method {method!r}")
