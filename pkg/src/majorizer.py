"""
Quadratic majorizers for one-dimensional majorization-minimization.

At an iterate x_t the degree-2 enclosure on the trust region
[x_t - r, x_t + r] gives

    f(x) <= u(x) = f(x_t) + f'(x_t) (x - x_t) + z_upper (x - x_t)^2

with z_upper the upper endpoint of the interval coefficient. u is tight at
x_t, so its minimizer over the region never increases f.
"""

import logging
import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from catalog import FunctionDescriptor
from enclosure import MethodTag, enclose
from errors import InvalidArgumentError, VacuousMajorizerError
from interval import Interval

logger = logging.getLogger(__name__)


class QuadraticMajorizer(BaseModel):
    """u(x) = f_t + slope (x - x_t) + z_upper (x - x_t)^2 on region."""

    model_config = ConfigDict(frozen=True)

    x_t: float
    f_t: float
    slope: float
    z_upper: float = Field(description="Upper endpoint of the quadratic interval coefficient")
    region: Interval
    method: MethodTag

    def value(self, x: float) -> float:
        d = x - self.x_t
        return self.f_t + self.slope * d + self.z_upper * d * d

    def values(self, xs) -> np.ndarray:
        d = np.asarray(xs, dtype=float) - self.x_t
        return self.f_t + self.slope * d + self.z_upper * d * d

    def minimize(self) -> float:
        """Exact minimizer of u over the region; ties keep x_t."""
        lo, hi = self.region.lo, self.region.hi
        if self.z_upper > 0:
            vertex = self.x_t - self.slope / (2.0 * self.z_upper)
            if lo <= vertex <= hi:
                return vertex
            return lo if self.value(lo) <= self.value(hi) else hi
        best = self.x_t
        for candidate in (lo, hi):
            if self.value(candidate) < self.value(best):
                best = candidate
        return best


class MMRecord(BaseModel):
    """One iterate of the MM loop; the last record of a trace has no majorizer."""

    model_config = ConfigDict(frozen=True)

    iteration: int
    x: float
    loss: float
    region: Interval
    z_upper: Optional[float] = None


def trust_region(f: FunctionDescriptor, x_t: float, radius: float) -> Interval:
    if not (math.isfinite(radius) and radius > 0):
        raise InvalidArgumentError(f"Trust radius must be positive and finite, got {radius!r}")
    lo = max(x_t - radius, f.domain.lo)
    hi = min(x_t + radius, f.domain.hi)
    if not lo < hi:
        raise InvalidArgumentError(f"Trust region around x={x_t!r} is empty inside the domain of {f.name}")
    return Interval(lo, hi)


def build_majorizer(
    f: FunctionDescriptor,
    x_t: float,
    radius: float,
    use_baseline: bool = False,
) -> QuadraticMajorizer:
    """
    Quadratic majorizer of f at x_t over [x_t - radius, x_t + radius].

    Args:
        f: Function descriptor
        x_t: Current iterate
        radius: Trust radius (the region is clipped to f's domain)
        use_baseline: Use the Lagrange baseline upper endpoint instead of the
            dispatcher's interval

    Raises:
        VacuousMajorizerError: If the upper coefficient is +inf
    """
    region = trust_region(f, x_t, radius)
    report = enclose(f, 2, x_t, region)
    source = report.baseline_interval if use_baseline else report.enclosure.interval_coeff
    z_upper = source.hi
    if math.isinf(z_upper):
        raise VacuousMajorizerError(
            f"{f.name}: upper quadratic coefficient is +inf on [{region.lo}, {region.hi}]"
        )
    coeffs = report.enclosure.lower_coeffs.coeffs
    method = MethodTag.LAGRANGE_BASELINE if use_baseline else report.enclosure.method
    return QuadraticMajorizer(
        x_t=x_t, f_t=coeffs[0], slope=coeffs[1], z_upper=z_upper, region=region, method=method
    )


def mm_step(f: FunctionDescriptor, x_t: float, radius: float, use_baseline: bool = False) -> float:
    """Minimizer of the quadratic majorizer at x_t over the trust region."""
    majorizer = build_majorizer(f, x_t, radius, use_baseline=use_baseline)
    x_next = majorizer.minimize()
    logger.debug(f"{f.name}: mm_step {x_t!r} -> {x_next!r} (z_upper={majorizer.z_upper!r})")
    return x_next
