"""
Elementary functions: exponentials, logarithm, powers, abs, sin and cos.

Closed-form derivatives:

    (c^x)^(n)  = ln(c)^n c^x
    log^(n)(x) = (-1)^(n-1) (n-1)! / x^n
    (x^c)^(n)  = c (c-1) ... (c-n+1) x^(c-n)
    sin^(n)(x) = sin(x + n pi/2),  cos^(n)(x) = sin(x + (n+1) pi/2)

Monotonicity of f^(k) comes from the sign of f^(k+1) over the region; sin
and cos instead expose the zeros of f^(k+1) through an extrema oracle.
"""

import math
from typing import List

import numpy as np

from errors import InvalidArgumentError
from interval import Interval

from .descriptor import (
    FunctionDescriptor,
    Monotonicity,
    StructureCertificate,
    sign_monotonicity,
)
from .piecewise import PiecewisePolynomial


def require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise InvalidArgumentError(f"{name}: parameter must be finite, got {value!r}")
    return value


def exp_function() -> FunctionDescriptor:
    return FunctionDescriptor(
        name="exp",
        value_fn=np.exp,
        derivative_fn=lambda n, xs, side: np.exp(xs),
        structure=StructureCertificate(monotone_kth=lambda k, region: Monotonicity.INCREASING),
    )


def pow_c_x_function(c: float) -> FunctionDescriptor:
    """x -> c^x for c > 0."""
    c = require_finite("pow_c_x", c)
    if c <= 0:
        raise InvalidArgumentError(f"pow_c_x: base must be > 0, got {c!r}")
    log_c = math.log(c)

    def monotone_kth(k: int, region: Interval) -> Monotonicity:
        return sign_monotonicity(log_c ** (k + 1))

    return FunctionDescriptor(
        name=f"pow_c_x:{c!r}",
        value_fn=lambda xs: np.exp(xs * log_c),
        derivative_fn=lambda n, xs, side: log_c ** n * np.exp(xs * log_c),
        structure=StructureCertificate(monotone_kth=monotone_kth),
    )


def log_function() -> FunctionDescriptor:
    def derivative_fn(n: int, xs: np.ndarray, side: int) -> np.ndarray:
        return (-1) ** (n - 1) * math.factorial(n - 1) * np.power(xs, -float(n))

    def monotone_kth(k: int, region: Interval) -> Monotonicity:
        # sign of log^(k+1) on x > 0 is (-1)^k
        return Monotonicity.INCREASING if k % 2 == 0 else Monotonicity.DECREASING

    return FunctionDescriptor(
        name="log",
        value_fn=np.log,
        derivative_fn=derivative_fn,
        domain=Interval(0.0, math.inf),
        singularities=(0.0,),
        structure=StructureCertificate(monotone_kth=monotone_kth),
    )


def falling_factorial(c: float, n: int) -> float:
    result = 1.0
    for i in range(n):
        result *= c - i
    return result


def pow_x_c_function(c: float) -> FunctionDescriptor:
    """
    x -> x^c.

    Integer c is defined on all reals (0 is a singularity when c < 0);
    non-integer c must be positive and lives on [0, inf).
    """
    c = require_finite("pow_x_c", c)
    integer = c == round(c)
    if not integer and c <= 0:
        raise InvalidArgumentError(f"pow_x_c: non-integer exponent must be > 0, got {c!r}")

    def derivative_fn(n: int, xs: np.ndarray, side: int) -> np.ndarray:
        coefficient = falling_factorial(c, n)
        if coefficient == 0:
            return np.zeros_like(xs)
        return coefficient * np.power(xs, c - n)

    def monotone_kth(k: int, region: Interval) -> Monotonicity:
        coefficient = falling_factorial(c, k + 1)
        if coefficient == 0:
            return Monotonicity.INCREASING
        exponent = c - k - 1
        sign = math.copysign(1.0, coefficient)
        if region.lo < 0 < region.hi and exponent < 0:
            return Monotonicity.UNKNOWN
        if not integer or int(exponent) % 2 == 0:
            return sign_monotonicity(sign)
        if region.lo >= 0:
            return sign_monotonicity(sign)
        if region.hi <= 0:
            return sign_monotonicity(-sign)
        return Monotonicity.UNKNOWN

    singular = (not integer) or c < 0
    return FunctionDescriptor(
        name=f"pow_x_c:{c!r}",
        value_fn=lambda xs: np.power(xs, c),
        derivative_fn=derivative_fn,
        domain=Interval.whole() if integer else Interval(0.0, math.inf),
        singularities=(0.0,) if singular else (),
        structure=StructureCertificate(monotone_kth=monotone_kth),
    )


def abs_function() -> FunctionDescriptor:
    """|x|; derivatives of order >= 1 are undefined at 0."""
    pieces = PiecewisePolynomial([0.0], [[0.0, -1.0], [0.0, 1.0]], one_sided=False)

    def monotone_kth(k: int, region: Interval) -> Monotonicity:
        if k == 1:
            return Monotonicity.INCREASING
        if k == 0:
            if region.lo >= 0:
                return Monotonicity.INCREASING
            if region.hi <= 0:
                return Monotonicity.DECREASING
            return Monotonicity.UNKNOWN
        if not (region.lo <= 0 <= region.hi):
            return Monotonicity.INCREASING
        return Monotonicity.UNKNOWN

    return FunctionDescriptor(
        name="abs",
        value_fn=np.abs,
        derivative_fn=lambda n, xs, side: pieces.values(n, xs, side),
        breakpoints=(0.0,),
        structure=StructureCertificate(monotone_kth=monotone_kth),
        interval_derivative=pieces.range,
    )


_QUARTER_TURNS = (np.sin, np.cos, lambda xs: -np.sin(xs), lambda xs: -np.cos(xs))


def _trig_function(name: str, phase: int) -> FunctionDescriptor:
    """sin for phase 0, cos for phase 1; f^(n)(x) = sin(x + (n + phase) pi/2)."""

    def derivative_fn(n: int, xs: np.ndarray, side: int) -> np.ndarray:
        return _QUARTER_TURNS[(n + phase) % 4](xs)

    def local_extrema(k: int, region: Interval) -> List[float]:
        # f^(k+1) is +-sin (zeros at j*pi) or +-cos (zeros at pi/2 + j*pi)
        offset = 0.0 if (k + 1 + phase) % 2 == 0 else math.pi / 2
        first = math.ceil((region.lo - offset) / math.pi)
        last = math.floor((region.hi - offset) / math.pi)
        zeros = [offset + j * math.pi for j in range(first, last + 1)]
        return [z for z in zeros if region.lo <= z <= region.hi]

    return FunctionDescriptor(
        name=name,
        value_fn=_QUARTER_TURNS[phase],
        derivative_fn=derivative_fn,
        structure=StructureCertificate(local_extrema_oracle=local_extrema),
    )


def sin_function() -> FunctionDescriptor:
    return _trig_function("sin", 0)


def cos_function() -> FunctionDescriptor:
    return _trig_function("cos", 1)

