"""
Enclosure engine for degree-k Taylor polynomial enclosures.

An enclosure of f at x0 over the trust region [a, b] is

    f(x) in T_{k-1}(x) + I (x - x0)^k      for every x in [a, b]

The sharp interval I is the inf/sup of the remainder ratio over the region.
`enclose` dispatches to the tightest method available:

    1. f^(k) monotone on [a, b] (certificate, extrema oracle, or the sign of
       f^(k+1))                                   -> sharp_monotone
    2. k = 2, even-symmetric Hessian covering [a, b], a < x0 < b
                                                  -> sharp_even_symmetric_quadratic
    3. otherwise                                  -> lagrange_baseline

Every report carries the Lagrange baseline (1/k!) range(f^(k)) for
comparison, and the sharp interval is clipped to it.

For odd k the factor (x - x0)^k changes sign at x0, so the upper and lower
bounds swap roles left of x0. Interval.scale handles this automatically;
`enclose_split` instead builds one enclosure per side.

Usage:
    from catalog import exp_function
    from enclosure import enclose

    report = enclose(exp_function(), 2, 0.5, Interval(0, 2))
    report.enclosure.interval_coeff     # Interval(0.70255..., 1.4522...)
    report.width_ratio                  # 4.26...
"""

import logging
import math
from enum import Enum
from typing import Any, Dict, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from catalog import (
    FunctionDescriptor,
    Monotonicity,
    RangeSource,
    derivative_range_detail,
    resolve_monotonicity,
)
from errors import DomainError, InvalidArgumentError, OutOfRegionError, PreconditionError
from interval import Interval
from taylor_core import TaylorPoly, expansion_side, remainder_ratio_values, taylor_coefficients

logger = logging.getLogger(__name__)


class MethodTag(str, Enum):
    """Which method produced an enclosure's interval coefficient."""

    SHARP_MONOTONE = "SharpMonotone"
    SHARP_EVEN_SYMMETRIC = "SharpEvenSymmetric"
    LOCAL_EXTREMA = "LocalExtrema"
    INTERVAL_DERIVATIVE = "IntervalDerivative"
    LAGRANGE_BASELINE = "LagrangeBaseline"


SHARP_METHODS = (MethodTag.SHARP_MONOTONE, MethodTag.SHARP_EVEN_SYMMETRIC)

_BASELINE_TAGS = {
    RangeSource.LOCAL_EXTREMA: MethodTag.LOCAL_EXTREMA,
    RangeSource.INTERVAL_EXTENSION: MethodTag.INTERVAL_DERIVATIVE,
}


class TaylorEnclosure(BaseModel):
    """T_{k-1}(x) + interval_coeff (x - x0)^k, valid on trust_region."""

    model_config = ConfigDict(frozen=True)

    x0: float = Field(description="Expansion point")
    k: int = Field(ge=1, description="Degree of the interval term")
    lower_coeffs: TaylorPoly = Field(description="Shared Taylor coefficients through degree k-1")
    interval_coeff: Interval = Field(description="Interval coefficient of (x - x0)^k")
    trust_region: Interval
    method: MethodTag

    @model_validator(mode="after")
    def _check_x0(self):
        if not self.trust_region.contains(self.x0):
            raise ValueError(
                f"x0={self.x0!r} is outside the trust region "
                f"[{self.trust_region.lo}, {self.trust_region.hi}]"
            )
        if self.lower_coeffs.degree != self.k - 1:
            raise ValueError(f"Expected {self.k} Taylor coefficients, got {self.lower_coeffs.degree + 1}")
        return self


class EnclosureReport(BaseModel):
    """An enclosure with its baseline and the method that produced it."""

    model_config = ConfigDict(frozen=True)

    function: str
    enclosure: TaylorEnclosure
    baseline_interval: Interval
    width_ratio: float = Field(description="Baseline width over enclosure width")
    diagnostics: Tuple[str, ...] = Field(default=())

    def to_json_dict(self) -> Dict[str, Any]:
        e = self.enclosure
        return {
            "function": self.function,
            "k": e.k,
            "x0": e.x0,
            "region": {"lo": e.trust_region.lo, "hi": e.trust_region.hi},
            "method": e.method.value,
            "interval": {"lo": e.interval_coeff.lo, "hi": e.interval_coeff.hi},
            "baseline": {"lo": self.baseline_interval.lo, "hi": self.baseline_interval.hi},
            "width_ratio": self.width_ratio,
            "taylor_coeffs": list(e.lower_coeffs.coeffs),
            "diagnostics": list(self.diagnostics),
        }


# Validation


def _validate(f: FunctionDescriptor, k: int, x0: float, region: Interval) -> None:
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool) or k < 1:
        raise InvalidArgumentError(f"Degree k must be an integer >= 1, got {k!r}")
    if not math.isfinite(x0):
        raise InvalidArgumentError(f"x0 must be finite, got {x0!r}")
    if not region.is_finite():
        raise InvalidArgumentError(f"Trust region must be finite, got [{region.lo}, {region.hi}]")
    if not region.lo < region.hi:
        raise InvalidArgumentError(f"Trust region is degenerate: [{region.lo}, {region.hi}]")
    if not region.contains(x0):
        raise InvalidArgumentError(f"x0={x0!r} is outside the trust region [{region.lo}, {region.hi}]")
    f.check_region(region)


def _ratios(f: FunctionDescriptor, k: int, x0: float, points: Sequence[float], side: int) -> np.ndarray:
    poly = taylor_coefficients(f, k - 1, x0, side=side)
    values = remainder_ratio_values(f, k, poly, np.asarray(points, dtype=float), side=side)
    if np.isnan(values).any():
        raise DomainError(f"{f.name}: remainder ratio undefined at one of {list(points)}")
    return values


# Sharp closed forms


def sharp_monotone(
    f: FunctionDescriptor,
    k: int,
    x0: float,
    region: Interval,
    direction: Optional[Monotonicity] = None,
) -> Interval:
    """
    Sharp interval when f^(k) is monotone on the region.

    The ratio is then monotone in the same direction, so its extremes sit at
    the endpoints. An endpoint equal to x0 contributes the limit
    f^(k)(x0)/k!, using the derivative from inside the region.

    Raises:
        PreconditionError: If f^(k) cannot be shown monotone on the region
    """
    _validate(f, k, x0, region)
    direction = direction or resolve_monotonicity(f, k, region)
    if direction == Monotonicity.UNKNOWN:
        raise PreconditionError(
            f"{f.name}: derivative of order {k} is not known to be monotone on "
            f"[{region.lo}, {region.hi}]"
        )
    r = _ratios(f, k, x0, [region.lo, region.hi], expansion_side(x0, region))
    return Interval.hull(r)


def sharp_even_symmetric_quadratic(f: FunctionDescriptor, x0: float, region: Interval) -> Interval:
    """
    Sharp quadratic interval for an even-symmetric Hessian.

    With c = min(b, max(-x0, a)) the ratio increases up to c and decreases
    after it, so I = [min(r(a), r(b)), r(c)].

    Raises:
        PreconditionError: Without a certificate covering the region, or with
            x0 on the region boundary
    """
    _validate(f, 2, x0, region)
    certificate = f.structure.even_symmetric_hessian
    if certificate is None:
        raise PreconditionError(f"{f.name}: no even-symmetric Hessian certificate")
    if not certificate.covers(region):
        raise PreconditionError(
            f"{f.name}: region [{region.lo}, {region.hi}] is not inside "
            f"[-{certificate.alpha}, {certificate.alpha}]"
        )
    a, b = region.lo, region.hi
    if not a < x0 < b:
        raise PreconditionError(f"x0={x0!r} must lie strictly inside [{a}, {b}]")
    c = min(b, max(-x0, a))
    r = _ratios(f, 2, x0, [a, b, c], 0)
    logger.debug(f"{f.name}: even-symmetric peak at c={c!r}, r(a)={r[0]!r}, r(b)={r[1]!r}, r(c)={r[2]!r}")
    return Interval.hull(r)


# Baseline


def lagrange_baseline(f: FunctionDescriptor, k: int, region: Interval) -> Interval:
    """(1/k!) [min f^(k), max f^(k)] over the region; may be vacuous."""
    if k < 1:
        raise InvalidArgumentError(f"Degree k must be >= 1, got {k}")
    return derivative_range_detail(f, k, region).interval.scale(1.0 / math.factorial(k))


# Dispatcher


def _intersect(sharp: Interval, baseline: Interval) -> Optional[Interval]:
    lo, hi = max(sharp.lo, baseline.lo), min(sharp.hi, baseline.hi)
    if lo > hi:
        return None
    return Interval(lo, hi)


def _width_ratio(baseline: Interval, interval: Interval) -> float:
    base_width = baseline.width()
    sharp_width = interval.width()
    if math.isinf(base_width):
        return math.inf
    if sharp_width == 0:
        return math.inf if base_width > 0 else 1.0
    return base_width / sharp_width


def enclose(f: FunctionDescriptor, k: int, x0: float, region: Interval) -> EnclosureReport:
    """
    Tightest available degree-k enclosure of f at x0 over the region.

    Args:
        f: Function descriptor
        k: Degree, k >= 1
        x0: Expansion point inside the region
        region: Nondegenerate finite trust region inside f's domain

    Returns:
        EnclosureReport: The enclosure, the Lagrange baseline and their width ratio

    Raises:
        InvalidArgumentError: For a bad k, a degenerate region or x0 outside it
        DomainError: If the region leaves f's domain or a Taylor coefficient is undefined
    """
    _validate(f, k, x0, region)
    a, b = region.lo, region.hi
    side = expansion_side(x0, region)
    diagnostics = []

    detail = derivative_range_detail(f, k, region)
    baseline = detail.interval.scale(1.0 / math.factorial(k))
    diagnostics.extend(detail.diagnostics)

    interval = None
    method = None
    direction = resolve_monotonicity(f, k, region)
    if direction != Monotonicity.UNKNOWN:
        try:
            interval = sharp_monotone(f, k, x0, region, direction=direction)
            method = MethodTag.SHARP_MONOTONE
        except DomainError as exc:
            diagnostics.append(f"sharp monotone path failed: {exc}")
            logger.warning(diagnostics[-1])

    certificate = f.structure.even_symmetric_hessian
    if interval is None and k == 2 and certificate is not None and certificate.covers(region) and a < x0 < b:
        try:
            interval = sharp_even_symmetric_quadratic(f, x0, region)
            method = MethodTag.SHARP_EVEN_SYMMETRIC
        except DomainError as exc:
            diagnostics.append(f"sharp even-symmetric path failed: {exc}")
            logger.warning(diagnostics[-1])

    if interval is not None:
        clipped = _intersect(interval, baseline)
        if clipped is None:
            logger.debug(f"{f.name}: sharp {interval!r} and baseline {baseline!r} disagree by rounding")
            interval = baseline
        else:
            interval = clipped
    else:
        interval = baseline
        method = _BASELINE_TAGS.get(detail.source, MethodTag.LAGRANGE_BASELINE)

    if not interval.is_finite():
        diagnostics.append(f"interval coefficient is unbounded: [{interval.lo}, {interval.hi}]")
        logger.warning(f"{f.name}: {diagnostics[-1]}")
    if not baseline.is_finite():
        diagnostics.append("Lagrange baseline is vacuous; width ratio reported as inf")
        logger.warning(f"{f.name}: {diagnostics[-1]}")

    enclosure = TaylorEnclosure(
        x0=x0,
        k=k,
        lower_coeffs=taylor_coefficients(f, k - 1, x0, side=side),
        interval_coeff=interval,
        trust_region=region,
        method=method,
    )
    logger.info(f"enclose {f.name} k={k} x0={x0!r} on [{a}, {b}]: {method.value} {interval!r}")
    return EnclosureReport(
        function=f.name,
        enclosure=enclosure,
        baseline_interval=baseline,
        width_ratio=_width_ratio(baseline, interval),
        diagnostics=tuple(diagnostics),
    )


# Evaluation


def _check_in_region(e: TaylorEnclosure, xs: np.ndarray) -> None:
    region = e.trust_region
    outside = (xs < region.lo) | (xs > region.hi) | np.isnan(xs)
    if outside.any():
        x = float(xs[outside][0])
        raise OutOfRegionError(f"x={x!r} is outside the trust region [{region.lo}, {region.hi}]")


def eval_enclosure(e: TaylorEnclosure, x: float) -> Interval:
    """
    Bounds on f(x) claimed by the enclosure.

    Raises:
        OutOfRegionError: If x is outside the trust region
    """
    _check_in_region(e, np.array([x], dtype=float))
    t = e.lower_coeffs.eval(x)
    if x == e.x0:
        return Interval.point(t)
    return e.interval_coeff.scale((x - e.x0) ** e.k).shift(t)


def enclosure_bounds(e: TaylorEnclosure, xs) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorized lower and upper bounds over an array of points in the trust region."""
    xs = np.asarray(xs, dtype=float)
    _check_in_region(e, xs)
    t = e.lower_coeffs.values(xs)
    p = (xs - e.x0) ** e.k
    lo, hi = e.interval_coeff.lo, e.interval_coeff.hi
    with np.errstate(invalid="ignore"):
        at_lo = np.where(p == 0, 0.0, lo * p)
        at_hi = np.where(p == 0, 0.0, hi * p)
    lower = t + np.minimum(at_lo, at_hi)
    upper = t + np.maximum(at_lo, at_hi)
    return lower, upper


def enclosure_magnitude(e: TaylorEnclosure, xs) -> np.ndarray:
    """Scale of the rounding error in the bounds, used to size the validity inflation."""
    xs = np.asarray(xs, dtype=float)
    widest = max(abs(e.interval_coeff.lo), abs(e.interval_coeff.hi))
    p = np.abs(xs - e.x0) ** e.k
    with np.errstate(invalid="ignore"):
        tail = np.where(p == 0, 0.0, widest * p)
    return e.lower_coeffs.magnitude(xs) + tail


# Split enclosures for odd k


def enclose_split(f: FunctionDescriptor, k: int, x0: float, region: Interval) -> Tuple[TaylorEnclosure, ...]:
    """
    Separate enclosures on [a, x0] and [x0, b] for odd k.

    Each piece has x0 as an endpoint. When x0 is already a region endpoint
    the single one-sided enclosure is returned.
    """
    if k < 1 or k % 2 == 0:
        raise InvalidArgumentError(f"Split enclosures need an odd degree, got k={k}")
    _validate(f, k, x0, region)
    if x0 in (region.lo, region.hi):
        return (enclose(f, k, x0, region).enclosure,)
    left = enclose(f, k, x0, Interval(region.lo, x0)).enclosure
    right = enclose(f, k, x0, Interval(x0, region.hi)).enclosure
    return left, right


def split_bounds(pieces: Sequence[TaylorEnclosure], xs) -> Tuple[np.ndarray, np.ndarray]:
    """Pointwise bounds from split enclosures; each x uses the first piece containing it."""
    xs = np.asarray(xs, dtype=float)
    lower = np.full(xs.shape, np.nan)
    upper = np.full(xs.shape, np.nan)
    pending = np.ones(xs.shape, dtype=bool)
    for piece in pieces:
        region = piece.trust_region
        mask = pending & (xs >= region.lo) & (xs <= region.hi)
        if mask.any():
            lower[mask], upper[mask] = enclosure_bounds(piece, xs[mask])
            pending &= ~mask
    if pending.any():
        raise OutOfRegionError(f"x={float(xs[pending][0])!r} is outside every split piece")
    return lower, upper


def enclosure_from_json(data: Dict[str, Any]) -> TaylorEnclosure:
    """Rebuild an enclosure from the JSON form written by EnclosureReport.to_json_dict."""
    try:
        x0 = float(data["x0"])
        return TaylorEnclosure(
            x0=x0,
            k=int(data["k"]),
            lower_coeffs=TaylorPoly(x0=x0, coeffs=tuple(float(c) for c in data["taylor_coeffs"])),
            interval_coeff=Interval(**data["interval"]),
            trust_region=Interval(**data["region"]),
            method=MethodTag(data["method"]),
        )
    except (KeyError, TypeError) as exc:
        raise InvalidArgumentError(f"Malformed enclosure JSON: {exc}")
