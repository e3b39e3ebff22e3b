"""
Brute-force checks of the enclosure engine.

    - grid_sharp_interval: min/max of the remainder ratio on a dense grid
      that includes a, b and x0, converging to the sharp interval
    - verify_enclosure: audits f(x) against the enclosure bounds on a grid,
      with an outward inflation of a few ulps of the bound magnitude
    - width_ratio_series: baseline/sharp width ratios on shrinking regions
      [x0, x0 + eps], which approach binom(k + l, l) where l is the order
      of the first nonvanishing derivative past k

None of these share code with the dispatcher beyond the remainder ratio
itself.
"""

import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from catalog import FunctionDescriptor
from config import get_settings
from enclosure import TaylorEnclosure, enclosure_bounds, enclosure_magnitude, lagrange_baseline, sharp_monotone
from errors import DomainError, InvalidArgumentError, PreconditionError
from interval import Interval
from reporting import csv_text
from taylor_core import expansion_side, remainder_ratio_values, taylor_coefficients

logger = logging.getLogger(__name__)

_MIN_GRID = 100


def _grid_size(n: Optional[int], default: int) -> int:
    n = default if n is None else n
    if n < _MIN_GRID:
        raise InvalidArgumentError(f"Grid size must be >= {_MIN_GRID}, got {n}")
    return n


def grid_sharp_interval(
    f: FunctionDescriptor,
    k: int,
    x0: float,
    region: Interval,
    n: Optional[int] = None,
) -> Interval:
    """
    Grid estimate of the sharp interval coefficient.

    Args:
        f: Function descriptor
        k: Degree, k >= 1
        x0: Expansion point inside the region
        region: Trust region
        n: Uniform grid size (defaults to Settings.oracle_grid_size); a, b
            and x0 are always included

    Returns:
        Interval: [min, max] of the ratio over the grid; NaN points are skipped
    """
    n = _grid_size(n, get_settings().oracle_grid_size)
    side = expansion_side(x0, region)
    poly = taylor_coefficients(f, k - 1, x0, side=side)
    xs = np.union1d(np.linspace(region.lo, region.hi, n), [x0])
    ratios = remainder_ratio_values(f, k, poly, xs, side=side)

    undefined = np.isnan(ratios)
    if undefined.any():
        logger.warning(f"{f.name}: skipped {int(undefined.sum())} grid points with undefined ratio")
    result = Interval.hull(ratios)
    if not result.is_finite():
        logger.warning(f"{f.name}: grid ratio is unbounded on [{region.lo}, {region.hi}]: {result!r}")
    return result


class Violation(BaseModel):
    model_config = ConfigDict(frozen=True)

    x: float
    fx: float
    bound: Interval


class ValidityReport(BaseModel):
    """Outcome of a grid audit of an enclosure."""

    model_config = ConfigDict(frozen=True)

    points_checked: int
    violations: Tuple[Violation, ...] = Field(default=())
    max_violation_magnitude: float = 0.0

    @model_validator(mode="after")
    def _consistent(self):
        if bool(self.violations) != (self.max_violation_magnitude > 0):
            raise ValueError("violations must be empty exactly when max_violation_magnitude is 0")
        return self

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json_dict(self) -> dict:
        return {
            "points_checked": self.points_checked,
            "violations": [
                {"x": v.x, "fx": v.fx, "lo": v.bound.lo, "hi": v.bound.hi} for v in self.violations
            ],
            "max_violation_magnitude": self.max_violation_magnitude,
        }


def verify_enclosure(f: FunctionDescriptor, e: TaylorEnclosure, n: Optional[int] = None) -> ValidityReport:
    """Check f(x) against the enclosure bounds at n uniform points of its trust region."""
    settings = get_settings()
    n = _grid_size(n, settings.audit_grid_size)
    region = e.trust_region
    xs = np.linspace(region.lo, region.hi, n)
    fx = f.values(xs)
    lower, upper = enclosure_bounds(e, xs)

    skipped = np.isnan(fx)
    if skipped.any():
        logger.warning(f"{f.name}: skipped {int(skipped.sum())} audit points where f is undefined")
    pad = settings.inflation_ulps * np.spacing(enclosure_magnitude(e, xs) + np.abs(np.nan_to_num(fx)))
    with np.errstate(invalid="ignore"):
        excess = np.maximum((lower - pad) - fx, fx - (upper + pad))
    bad = np.nonzero(~skipped & (excess > 0))[0]

    violations = tuple(
        Violation(x=float(xs[i]), fx=float(fx[i]), bound=Interval(float(lower[i]), float(upper[i])))
        for i in bad
    )
    magnitude = float(excess[bad].max()) if bad.size else 0.0
    if violations:
        logger.warning(f"{f.name}: {len(violations)} enclosure violations, worst {magnitude!r}")
    return ValidityReport(points_checked=n, violations=violations, max_violation_magnitude=magnitude)


class RatioSeries(BaseModel):
    """Baseline-to-sharp width ratios on the regions [x0, x0 + eps]."""

    model_config = ConfigDict(frozen=True)

    epsilons: Tuple[float, ...]
    ratios: Tuple[float, ...]
    baseline_widths: Tuple[float, ...]
    sharp_widths: Tuple[float, ...]
    ell: int = Field(ge=1, description="Order of the first nonvanishing derivative past k")
    predicted_limit: float
    baseline_slope: float = Field(description="Fitted log-log slope of the baseline widths")
    sharp_slope: float = Field(description="Fitted log-log slope of the sharp widths")

    @model_validator(mode="after")
    def _lengths(self):
        sizes = {len(self.epsilons), len(self.ratios), len(self.baseline_widths), len(self.sharp_widths)}
        if len(sizes) != 1:
            raise ValueError("RatioSeries columns must have equal lengths")
        return self

    def to_csv(self) -> str:
        rows = zip(self.epsilons, self.baseline_widths, self.sharp_widths, self.ratios)
        return csv_text(
            ["epsilon", "baseline_width", "sharp_width", "ratio", "predicted_limit"],
            [(eps, bw, sw, r, self.predicted_limit) for eps, bw, sw, r in rows],
        )

    def to_json_dict(self) -> dict:
        return self.model_dump()


def first_nonvanishing_order(f: FunctionDescriptor, k: int, x0: float, side: int = 1) -> int:
    """
    Smallest l >= 1 with f^(k+l)(x0) != 0.

    Raises:
        PreconditionError: If every derivative up to Settings.max_ell vanishes
    """
    settings = get_settings()
    for ell in range(1, settings.max_ell + 1):
        order = k + ell
        if f.max_derivative_order is not None and order > f.max_derivative_order:
            break
        try:
            value = f.nth_derivative(order, x0, side=side)
        except DomainError:
            break
        if abs(value) > settings.zero_derivative_tolerance:
            return ell
    raise PreconditionError(
        f"{f.name}: derivatives of orders {k + 1}..{k + settings.max_ell} vanish at x0={x0!r}; "
        f"cannot determine the width-ratio limit"
    )


def _loglog_slope(epsilons: np.ndarray, widths: np.ndarray) -> float:
    """Slope over the smallest two decades of eps with positive finite widths."""
    usable = (widths > 0) & np.isfinite(widths) & (epsilons <= epsilons.min() * 100.0 * (1 + 1e-9))
    if usable.sum() < 2:
        return math.nan
    slope, _ = np.polyfit(np.log(epsilons[usable]), np.log(widths[usable]), 1)
    return float(slope)


def width_ratio_series(
    f: FunctionDescriptor,
    k: int,
    x0: float,
    epsilons: Optional[Sequence[float]] = None,
) -> RatioSeries:
    """
    Width ratios of the Lagrange baseline over the sharp interval as eps shrinks.

    Args:
        f: Function analytic near x0 and not a polynomial of degree <= k
        k: Degree, k >= 1
        x0: Left endpoint of every region
        epsilons: Descending region widths (defaults to Settings.epsilon_ladder)

    Returns:
        RatioSeries: Ratios, widths, l, binom(k + l, l) and the fitted slopes
    """
    if k < 1:
        raise InvalidArgumentError(f"Degree k must be >= 1, got {k}")
    epsilons = list(epsilons if epsilons is not None else get_settings().epsilon_ladder)
    if not epsilons or any(not (eps > 0 and math.isfinite(eps)) for eps in epsilons):
        raise InvalidArgumentError(f"Epsilons must be positive and finite, got {epsilons}")
    epsilons = sorted(epsilons, reverse=True)
    ell = first_nonvanishing_order(f, k, x0)

    baseline_widths: List[float] = []
    sharp_widths: List[float] = []
    ratios: List[float] = []
    for eps in epsilons:
        region = Interval(x0, x0 + eps)
        baseline = lagrange_baseline(f, k, region)
        try:
            sharp = sharp_monotone(f, k, x0, region)
        except PreconditionError:
            sharp = grid_sharp_interval(f, k, x0, region, n=get_settings().audit_grid_size)
        bw, sw = baseline.width(), sharp.width()
        baseline_widths.append(bw)
        sharp_widths.append(sw)
        ratios.append(bw / sw if sw > 0 else math.inf)
        logger.debug(f"{f.name}: eps={eps!r} baseline={bw!r} sharp={sw!r}")

    eps_array = np.array(epsilons)
    return RatioSeries(
        epsilons=tuple(epsilons),
        ratios=tuple(ratios),
        baseline_widths=tuple(baseline_widths),
        sharp_widths=tuple(sharp_widths),
        ell=ell,
        predicted_limit=float(math.comb(k + ell, ell)),
        baseline_slope=_loglog_slope(eps_array, np.array(baseline_widths)),
        sharp_slope=_loglog_slope(eps_array, np.array(sharp_widths)),
    )
