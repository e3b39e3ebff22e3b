"""
Taylor polynomials, remainders and the remainder-over-power ratio.

For a function f, a degree j and an expansion point x0:

    T_j(x)  = sum_{i<=j} f^(i)(x0) (x - x0)^i / i!     (T_{-1} = 0)
    R_j(x)  = f(x) - T_j(x)                            (R_{-1} = f)
    r_k(x)  = R_{k-1}(x) / (x - x0)^k                  (r_k(x0) = f^(k)(x0)/k!)

The inf and sup of r_k over a trust region are the endpoints of the sharp
interval coefficient. Close to x0 the quotient loses every significant
digit, so within `near_x0_tolerance^(2/k) * (1 + |x0|)` (exactly the
tolerance at k = 2) the ratio is evaluated from the Taylor tail
sum_{i>=k} f^(i)(x0) (x - x0)^(i-k) / i! instead. The k-dependent radius keeps
the quotient's cancellation error near eps / tol^2 for every degree. The
radius never exceeds a tenth of the distance to the nearest breakpoint,
singularity or domain endpoint, and a truncated tail whose last terms are
not negligible falls back to the quotient.

`side` selects one-sided derivatives at x0: +1 uses the derivative from the
right, -1 from the left, 0 the function's two-sided convention. The
enclosure engine passes the inside direction when x0 is a trust-region
endpoint.

Usage:
    from taylor_core import taylor_coefficients, remainder_ratio

    T = taylor_coefficients(exp_fn, 1, 0.5)     # coeffs [sqrt(e), sqrt(e)]
    remainder_ratio(exp_fn, 2, 0.5, 2.0)        # 1.4522...
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from config import get_settings
from errors import DomainError, InvalidArgumentError

logger = logging.getLogger(__name__)

TAIL_RADIUS_FRACTION = 0.1
TAIL_CONVERGENCE_RTOL = 1e-16


class TaylorPoly(BaseModel):
    """Polynomial in powers of (x - x0) with coeffs[i] = f^(i)(x0)/i!."""

    model_config = ConfigDict(frozen=True)

    x0: float = Field(description="Expansion point")
    coeffs: Tuple[float, ...] = Field(default=(), description="Coefficients, lowest degree first")

    @field_validator("coeffs")
    @classmethod
    def _finite(cls, coeffs):
        for i, c in enumerate(coeffs):
            if not math.isfinite(c):
                raise ValueError(f"Taylor coefficient of degree {i} is not finite: {c}")
        return coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def eval(self, x: float) -> float:
        """Horner evaluation from the highest degree."""
        return float(self.values(np.float64(x)))

    def values(self, xs):
        d = np.asarray(xs, dtype=float) - self.x0
        result = np.zeros_like(d)
        for c in reversed(self.coeffs):
            result = result * d + c
        return result

    def magnitude(self, xs):
        """Horner sum of |c_i| |x - x0|^i, the scale of rounding errors in `values`."""
        d = np.abs(np.asarray(xs, dtype=float) - self.x0)
        result = np.zeros_like(d)
        for c in reversed(self.coeffs):
            result = result * d + abs(c)
        return result


def expansion_side(x0: float, region) -> int:
    """Direction pointing into the region when x0 is one of its endpoints."""
    if x0 == region.lo:
        return 1
    if x0 == region.hi:
        return -1
    return 0


def taylor_coefficients(f, j: int, x0: float, side: int = 0) -> TaylorPoly:
    """
    Build T_j(.; f, x0).

    Args:
        f: FunctionDescriptor
        j: Degree, j >= -1 (j = -1 gives the empty polynomial)
        x0: Expansion point
        side: One-sided derivative selector (see module docstring)

    Returns:
        TaylorPoly: Polynomial with coeffs[i] = f^(i)(x0)/i!

    Raises:
        InvalidArgumentError: If j < -1
        DomainError: If a derivative up to order j is undefined or infinite at x0
    """
    if j < -1:
        raise InvalidArgumentError(f"Taylor degree must be >= -1, got {j}")
    coeffs = []
    for i in range(j + 1):
        value = f.nth_derivative(i, x0, side=side)
        if not math.isfinite(value):
            raise DomainError(
                f"{f.name}: derivative of order {i} at x0={x0!r} is not finite ({value})"
            )
        coeffs.append(value / math.factorial(i))
    return TaylorPoly(x0=x0, coeffs=tuple(coeffs))


def remainder(f, j: int, x0: float, x: float, side: int = 0) -> float:
    """R_j(x; f, x0) = f(x) - T_j(x; f, x0)."""
    poly = taylor_coefficients(f, j, x0, side=side)
    return f.eval(x) - poly.eval(x)


def ratio_limit(f, k: int, x0: float, side: int = 0) -> float:
    """Removable-singularity value f^(k)(x0)/k! of the ratio at x0."""
    value = f.nth_derivative(k, x0, side=side)
    return value / math.factorial(k)


def remainder_ratio(f, k: int, x0: float, x: float, side: int = 0) -> float:
    """
    R_{k-1}(x; f, x0) / (x - x0)^k, with the limit value at x = x0.

    Raises:
        InvalidArgumentError: If k < 1
        DomainError: If x is outside f's domain or the needed derivatives are undefined
    """
    if k < 1:
        raise InvalidArgumentError(f"Ratio degree k must be >= 1, got {k}")
    if x == x0:
        return ratio_limit(f, k, x0, side=side)
    f.check_domain(x)
    poly = taylor_coefficients(f, k - 1, x0, side=side)
    return float(remainder_ratio_values(f, k, poly, np.array([x]), side=side)[0])


def _tail_coefficients(f, k: int, x0: float, side: int) -> Tuple[Optional[np.ndarray], bool]:
    """Coefficients f^(i)(x0)/i! for i >= k, and whether they are the whole series."""
    settings = get_settings()
    top = k + settings.tail_max_terms
    exact = False
    if f.max_derivative_order is not None and f.max_derivative_order + 1 <= top:
        top = f.max_derivative_order + 1
        exact = True
    coeffs = []
    for i in range(k, top):
        try:
            value = f.nth_derivative(i, x0, side=side)
        except DomainError:
            return None, exact
        if not math.isfinite(value):
            return None, exact
        coeffs.append(value / math.factorial(i))
    if not coeffs:
        return None, exact
    return np.array(coeffs), exact


def _tail_eligible(f, x0: float, xs: np.ndarray, side: int) -> np.ndarray:
    """Points whose segment to x0 crosses no breakpoint or singularity."""
    eligible = np.ones(xs.shape, dtype=bool)
    lo = np.minimum(xs, x0)
    hi = np.maximum(xs, x0)
    for p in tuple(f.breakpoints) + tuple(f.singularities):
        blocked = (lo <= p) & (p <= hi)
        if p == x0 and side != 0:
            blocked &= np.sign(xs - x0) != side
        eligible &= ~blocked
    return eligible


def singular_distance(f, x0: float) -> float:
    """Distance from x0 to the nearest breakpoint, singularity or finite domain endpoint."""
    points = tuple(f.breakpoints) + tuple(f.singularities) + (f.domain.lo, f.domain.hi)
    distances = [abs(p - x0) for p in points if math.isfinite(p) and p != x0]
    return min(distances, default=math.inf)


def near_x0_radius(k: int, x0: float, f=None) -> float:
    """
    Distance from x0 below which the ratio uses the Taylor tail.

    Given a descriptor, the radius is also capped at a tenth of the distance
    from x0 to the nearest point where its series stops converging.
    """
    radius = get_settings().near_x0_tolerance ** (2.0 / k) * (1.0 + abs(x0))
    if f is not None:
        radius = min(radius, TAIL_RADIUS_FRACTION * singular_distance(f, x0))
    return radius


def remainder_ratio_values(f, k: int, poly: TaylorPoly, xs, side: int = 0) -> np.ndarray:
    """
    Vectorized remainder ratio over an array of points.

    The caller supplies T_{k-1} so it is built once per grid. Points equal to
    x0 get the limit value; points within the near-x0 tolerance use the
    Taylor tail when the function is smooth between them and x0; NaN marks
    points where the ratio is undefined.
    """
    x0 = poly.x0
    xs = np.asarray(xs, dtype=float)
    out = np.full(xs.shape, np.nan)

    at_x0 = xs == x0
    if at_x0.any():
        try:
            out[at_x0] = ratio_limit(f, k, x0, side=side)
        except DomainError as exc:
            logger.warning(f"Ratio limit unavailable at x0={x0!r}: {exc}")

    d = xs - x0
    threshold = near_x0_radius(k, x0, f)
    near = (~at_x0) & (np.abs(d) < threshold) & _tail_eligible(f, x0, xs, side)
    if near.any():
        tail, exact = _tail_coefficients(f, k, x0, side)
        if tail is None:
            near[:] = False
        else:
            near_idx = np.flatnonzero(near)
            dn = d[near_idx]
            acc = np.zeros_like(dn)
            for c in reversed(tail):
                acc = acc * dn + c
            converged = np.ones(dn.shape, dtype=bool)
            if not exact:
                # truncated series: keep only sums whose last terms are below rounding
                n = len(tail)
                last = np.abs(tail[-1]) * np.abs(dn) ** (n - 1)
                if n > 1:
                    last = np.maximum(last, np.abs(tail[-2]) * np.abs(dn) ** (n - 2))
                converged = last <= TAIL_CONVERGENCE_RTOL * np.abs(acc)
            out[near_idx[converged]] = acc[converged]
            near[near_idx[~converged]] = False

    far = (~at_x0) & (~near)
    if far.any():
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            fx = f.values(xs[far])
            out[far] = (fx - poly.values(xs[far])) / d[far] ** k
    return out
