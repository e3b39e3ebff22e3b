"""
Ranges of f^(k) over a region and monotonicity resolution.

`derivative_range_detail` tries, in order:

    1. the monotone certificate: f^(k) at the two endpoints
    2. the local-extrema oracle: f^(k) at the endpoints and at every zero of f^(k+1)
    3. the function's interval extension of f^(k)

The first two are exact; the third is only guaranteed to contain the true
range. Endpoint values use one-sided derivatives taken from inside the
region. A range that cannot be established is returned as the whole real
line with a diagnostic instead of raising.
"""

import logging
from enum import Enum
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from errors import DomainError, InvalidArgumentError
from interval import Interval

from .descriptor import FunctionDescriptor, Monotonicity

logger = logging.getLogger(__name__)


class RangeSource(str, Enum):
    MONOTONE = "monotone"
    LOCAL_EXTREMA = "local-extrema"
    INTERVAL_EXTENSION = "interval-extension"
    UNDEFINED = "undefined"


class DerivativeRange(BaseModel):
    """Range of f^(k) over a region, with how it was obtained."""

    model_config = ConfigDict(frozen=True)

    interval: Interval
    source: RangeSource
    diagnostics: Tuple[str, ...] = Field(default=())


def _endpoint_values(f: FunctionDescriptor, k: int, region: Interval) -> np.ndarray:
    a, b = region.lo, region.hi
    return np.array([
        f.derivative_values(k, a, side=1)[0],
        f.derivative_values(k, b, side=-1)[0],
    ])


def _exact_range(values: np.ndarray) -> Interval:
    if np.isnan(values).any():
        raise DomainError("derivative undefined at a candidate extremum")
    return Interval.hull(values)


def derivative_range_detail(f: FunctionDescriptor, k: int, region: Interval) -> DerivativeRange:
    """
    Range of f^(k) over a closed region.

    Args:
        f: Function descriptor
        k: Derivative order, k >= 0
        region: Closed interval inside f's domain

    Returns:
        DerivativeRange: The interval, its source and any diagnostics

    Raises:
        InvalidArgumentError: If k < 0
        DomainError: If the region leaves f's domain
    """
    if k < 0:
        raise InvalidArgumentError(f"Derivative order must be >= 0, got {k}")
    f.check_region(region)
    structure = f.structure
    result = None

    try:
        if structure.monotone_kth(k, region) != Monotonicity.UNKNOWN:
            result = (_exact_range(_endpoint_values(f, k, region)), RangeSource.MONOTONE)
        elif structure.local_extrema_oracle is not None:
            zeros = structure.local_extrema_oracle(k, region)
            interior = [z for z in zeros if region.lo < z < region.hi]
            values = np.concatenate([_endpoint_values(f, k, region), f.derivative_values(k, interior)])
            result = (_exact_range(values), RangeSource.LOCAL_EXTREMA)
    except DomainError as exc:
        logger.debug(f"{f.name}: exact range of order {k} unavailable ({exc})")

    if result is None and f.interval_derivative is not None:
        result = (f.interval_derivative(k, region), RangeSource.INTERVAL_EXTENSION)

    if result is None:
        message = f"{f.name}: derivative of order {k} has no range on [{region.lo}, {region.hi}]"
        logger.warning(message)
        return DerivativeRange(interval=Interval.whole(), source=RangeSource.UNDEFINED, diagnostics=(message,))

    interval, source = result
    diagnostics = ()
    if not interval.is_finite():
        message = (
            f"{f.name}: derivative of order {k} is unbounded on [{region.lo}, {region.hi}]: "
            f"[{interval.lo}, {interval.hi}]"
        )
        logger.warning(message)
        diagnostics = (message,)
    return DerivativeRange(interval=interval, source=source, diagnostics=diagnostics)


def derivative_range(f: FunctionDescriptor, k: int, region: Interval) -> Interval:
    """[min, max] of f^(k) over the region (an enclosure of it for interval extensions)."""
    return derivative_range_detail(f, k, region).interval


def resolve_monotonicity(f: FunctionDescriptor, k: int, region: Interval) -> Monotonicity:
    """
    Monotonicity of f^(k) on the region from any available evidence.

    The monotone certificate is trusted first. An extrema oracle reporting no
    zero of f^(k+1) strictly inside the region fixes the direction from the
    endpoint values. Otherwise the sign of the range of f^(k+1) decides.
    """
    certified = f.structure.monotone_kth(k, region)
    if certified != Monotonicity.UNKNOWN:
        return certified

    oracle = f.structure.local_extrema_oracle
    if oracle is not None:
        interior = [z for z in oracle(k, region) if region.lo < z < region.hi]
        if not interior:
            values = _endpoint_values(f, k, region)
            if not np.isnan(values).any():
                return Monotonicity.INCREASING if values[1] >= values[0] else Monotonicity.DECREASING

    try:
        next_range = derivative_range_detail(f, k + 1, region)
    except DomainError as exc:
        logger.debug(f"{f.name}: no range for order {k + 1} ({exc})")
        return Monotonicity.UNKNOWN
    if next_range.source == RangeSource.UNDEFINED:
        return Monotonicity.UNKNOWN
    if next_range.interval.lo >= 0:
        return Monotonicity.INCREASING
    if next_range.interval.hi <= 0:
        return Monotonicity.DECREASING
    return Monotonicity.UNKNOWN
