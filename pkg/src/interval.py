"""
Closed-interval kernel used as the universal bound carrier.

An Interval is an immutable pair lo <= hi of 64-bit floats. Infinite
endpoints are allowed (vacuous Lagrange bounds produce [0, +inf]); NaN never
is. Arithmetic is plain round-to-nearest. Where enclosure validity is
asserted, callers widen with `inflate`, which moves each endpoint outward by
a fixed number of ulps of a reference magnitude.

JSON form: {"lo": number | "inf" | "-inf", "hi": ...}.

Usage:
    from interval import Interval, scale

    I = Interval(0.70255, 1.4522)
    scale(I, -2.0)          # Interval(lo=-2.9044, hi=-1.4051)
    I.is_subset(Interval(0.5, 3.6945))
"""

import logging
import math
from typing import Iterable, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator, model_validator

from errors import InvalidArgumentError

logger = logging.getLogger(__name__)

JsonFloat = Union[float, str]


def _mul(a: float, b: float) -> float:
    """Product with 0 * inf defined as 0."""
    if a == 0.0 or b == 0.0:
        return 0.0
    return a * b


def _ulp(magnitude: float) -> float:
    if not math.isfinite(magnitude):
        return 0.0
    return float(np.spacing(abs(magnitude)))


class Interval(BaseModel):
    """Closed real interval [lo, hi]."""

    model_config = ConfigDict(frozen=True)

    lo: float = Field(description="Lower endpoint, may be -inf")
    hi: float = Field(description="Upper endpoint, may be +inf")

    def __init__(self, lo: JsonFloat = None, hi: JsonFloat = None, **data):
        if lo is not None:
            data["lo"] = lo
        if hi is not None:
            data["hi"] = hi
        super().__init__(**data)

    @field_validator("lo", "hi", mode="before")
    @classmethod
    def _parse_infinite(cls, value):
        if isinstance(value, str):
            text = value.strip().lower()
            if text in ("inf", "+inf", "infinity"):
                return math.inf
            if text in ("-inf", "-infinity"):
                return -math.inf
        return value

    @model_validator(mode="after")
    def _check_order(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ValueError(f"Interval endpoints must not be NaN: [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise ValueError(f"Interval requires lo <= hi, got [{self.lo}, {self.hi}]")
        return self

    @field_serializer("lo", "hi")
    def _serialize_endpoint(self, value: float) -> JsonFloat:
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value

    # Construction helpers

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(x, x)

    @classmethod
    def hull(cls, values: Iterable[float]) -> "Interval":
        """Smallest interval containing every non-NaN value."""
        arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values, dtype=float)
        arr = arr[~np.isnan(arr)]
        if arr.size == 0:
            raise InvalidArgumentError("Cannot build an interval hull from no finite values")
        return cls(float(arr.min()), float(arr.max()))

    @classmethod
    def whole(cls) -> "Interval":
        return cls(-math.inf, math.inf)

    # Operations

    def scale(self, alpha: float) -> "Interval":
        """{z * alpha : z in I}; 0 * inf is taken as 0."""
        alpha = float(alpha)
        if math.isnan(alpha):
            raise InvalidArgumentError("Cannot scale an interval by NaN")
        lo = _mul(self.lo, alpha)
        hi = _mul(self.hi, alpha)
        if alpha >= 0:
            return Interval(lo, hi)
        return Interval(hi, lo)

    def width(self) -> float:
        if self.lo == self.hi:
            return 0.0
        return self.hi - self.lo

    def contains(self, x: float) -> bool:
        if math.isnan(x):
            logger.warning(f"NaN membership query against [{self.lo}, {self.hi}]")
            return False
        return self.lo <= x <= self.hi

    def is_subset(self, other: "Interval") -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def shift(self, c: float) -> "Interval":
        return self + Interval(c, c)

    def inflate(self, ulps: int, magnitude: Optional[float] = None) -> "Interval":
        """
        Widen both endpoints outward by `ulps` units in the last place.

        Args:
            ulps: Number of ulps to move each endpoint
            magnitude: Reference magnitude for the ulp size. Defaults to the
                larger endpoint magnitude.

        Returns:
            Interval: The widened interval (infinite endpoints are unchanged)
        """
        finite = [abs(v) for v in (self.lo, self.hi) if math.isfinite(v)]
        reference = max(finite + [abs(magnitude) if magnitude is not None else 0.0] + [0.0])
        pad = ulps * _ulp(reference)
        return Interval(self.lo - pad, self.hi + pad)

    def is_finite(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    def __add__(self, other: "Interval") -> "Interval":
        lo = self.lo + other.lo
        hi = self.hi + other.hi
        if math.isnan(lo):
            lo = -math.inf
        if math.isnan(hi):
            hi = math.inf
        return Interval(lo, hi)

    def __repr__(self) -> str:
        return f"Interval({self.lo!r}, {self.hi!r})"


def scale(interval: Interval, alpha: float) -> Interval:
    return interval.scale(alpha)


def width(interval: Interval) -> float:
    return interval.width()


def contains(interval: Interval, x: float) -> bool:
    return interval.contains(x)


def is_subset(inner: Interval, outer: Interval) -> bool:
    return inner.is_subset(outer)
