"""
Neural-network activations: softplus, gelu, silu and the kinked family.

The smooth activations have closed-form derivatives of every order built
from two polynomial recurrences, cached per order:

    logistic s = expit(x):   s^(m) = P_m(s),  P_0 = s,  P_{m+1} = P_m'(s) s (1 - s)
    softplus:                f^(n) = P_{n-1}(s)
    silu = x s(x):           f^(n) = x P_n(s) + n P_{n-1}(s)
    gelu = x Phi(x):         f' = Phi + x phi,  f^(n) = phi q_n  (n >= 2)
                             q_2 = 2 - x^2,  q_{n+1} = q_n' - x q_n

Every activation here, leaky_relu with slope above 1 aside, has an even
second derivative that is nonincreasing on [0, alpha]. The radii for gelu and
silu are the first positive zero of f''' (see catalog/radii.py), rounded
down; the kinked family has alpha = inf.
"""

import math
from functools import lru_cache
from typing import List, Optional

import numpy as np
from numpy.polynomial import Polynomial
from scipy.special import expit, logit, ndtr

from interval import Interval

from .descriptor import EvenSymmetricHessian, FunctionDescriptor, Monotonicity, StructureCertificate
from .elementary import require_finite
from .piecewise import PiecewisePolynomial
from .roots import real_roots_in, scan_zeros

GELU_HESSIAN_RADIUS = 2.0
SILU_HESSIAN_RADIUS = 3.4357
HARD_SILU_HESSIAN_RADIUS = math.inf

_LOGISTIC_SLOPE = Polynomial([0.0, 1.0, -1.0])
_X = Polynomial([0.0, 1.0])
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


@lru_cache(maxsize=None)
def sigmoid_derivative_poly(m: int) -> Polynomial:
    """P_m with d^m/dx^m expit(x) = P_m(expit(x))."""
    if m == 0:
        return Polynomial([0.0, 1.0])
    return sigmoid_derivative_poly(m - 1).deriv() * _LOGISTIC_SLOPE


@lru_cache(maxsize=None)
def gelu_hessian_factor(n: int) -> Polynomial:
    """q_n with gelu^(n)(x) = phi(x) q_n(x), n >= 2."""
    if n == 2:
        return Polynomial([2.0, 0.0, -1.0])
    previous = gelu_hessian_factor(n - 1)
    return previous.deriv() - _X * previous


def _std_normal_pdf(xs: np.ndarray) -> np.ndarray:
    return _INV_SQRT_2PI * np.exp(-0.5 * xs * xs)


# Softplus


def _softplus_derivative(n: int, xs: np.ndarray, side: int) -> np.ndarray:
    return sigmoid_derivative_poly(n - 1)(expit(xs))


def _softplus_extrema(k: int, region: Interval) -> List[float]:
    # f^(k+1) = P_k(s) with s in (0, 1); map the sigmoid-space roots back through logit
    zeros = []
    for s in real_roots_in(sigmoid_derivative_poly(k).coef, 0.0, 1.0):
        if 0.0 < s < 1.0:
            x = float(logit(s))
            if region.lo <= x <= region.hi:
                zeros.append(x)
    return sorted(zeros)


def softplus_function() -> FunctionDescriptor:
    return FunctionDescriptor(
        name="softplus",
        value_fn=lambda xs: np.logaddexp(0.0, xs),
        derivative_fn=_softplus_derivative,
        structure=StructureCertificate(
            even_symmetric_hessian=EvenSymmetricHessian(alpha=math.inf),
            local_extrema_oracle=_softplus_extrema,
        ),
    )


# GELU


def _gelu_derivative(n: int, xs: np.ndarray, side: int) -> np.ndarray:
    if n == 1:
        return ndtr(xs) + xs * _std_normal_pdf(xs)
    return _std_normal_pdf(xs) * gelu_hessian_factor(n)(xs)


def _gelu_extrema(k: int, region: Interval) -> List[float]:
    if k == 0:
        return scan_zeros(lambda xs: _gelu_derivative(1, xs, 0), region)
    return real_roots_in(gelu_hessian_factor(k + 1).coef, region.lo, region.hi)


def gelu_function() -> FunctionDescriptor:
    return FunctionDescriptor(
        name="gelu",
        value_fn=lambda xs: xs * ndtr(xs),
        derivative_fn=_gelu_derivative,
        structure=StructureCertificate(
            even_symmetric_hessian=EvenSymmetricHessian(alpha=GELU_HESSIAN_RADIUS),
            local_extrema_oracle=_gelu_extrema,
        ),
    )


# SiLU


def _silu_derivative(n: int, xs: np.ndarray, side: int) -> np.ndarray:
    s = expit(xs)
    return xs * sigmoid_derivative_poly(n)(s) + n * sigmoid_derivative_poly(n - 1)(s)


def _silu_extrema(k: int, region: Interval) -> List[float]:
    return scan_zeros(lambda xs: _silu_derivative(k + 1, xs, 0), region)


def silu_function() -> FunctionDescriptor:
    return FunctionDescriptor(
        name="silu",
        value_fn=lambda xs: xs * expit(xs),
        derivative_fn=_silu_derivative,
        structure=StructureCertificate(
            even_symmetric_hessian=EvenSymmetricHessian(alpha=SILU_HESSIAN_RADIUS),
            local_extrema_oracle=_silu_extrema,
        ),
    )


# Kinked activations


def _kinked_activation(name: str, pieces: PiecewisePolynomial, alpha: Optional[float]) -> FunctionDescriptor:
    def monotone_kth(k: int, region: Interval) -> Monotonicity:
        next_range = pieces.range(k + 1, region)
        if next_range.lo >= 0:
            return Monotonicity.INCREASING
        if next_range.hi <= 0:
            return Monotonicity.DECREASING
        return Monotonicity.UNKNOWN

    return FunctionDescriptor(
        name=name,
        value_fn=lambda xs: pieces.values(0, xs),
        derivative_fn=lambda n, xs, side: pieces.values(n, xs, side),
        breakpoints=tuple(float(p) for p in pieces.breakpoints),
        structure=StructureCertificate(
            monotone_kth=monotone_kth,
            even_symmetric_hessian=None if alpha is None else EvenSymmetricHessian(alpha=alpha),
        ),
        interval_derivative=pieces.range,
    )


def relu_function() -> FunctionDescriptor:
    return _kinked_activation("relu", PiecewisePolynomial([0.0], [[0.0], [0.0, 1.0]]), math.inf)


def leaky_relu_function(slope: float) -> FunctionDescriptor:
    """
    x for x >= 0, slope * x below; any finite slope.

    f'' is a point mass of 1 - slope at 0, which is nonincreasing on [0, inf)
    only when slope <= 1; steeper slopes get no even-symmetric certificate.
    """
    slope = require_finite("leaky_relu", slope)
    pieces = PiecewisePolynomial([0.0], [[0.0, slope], [0.0, 1.0]])
    alpha = math.inf if slope <= 1 else None
    return _kinked_activation(f"leaky_relu:{slope!r}", pieces, alpha)


def hard_silu_function() -> FunctionDescriptor:
    """x * relu6(x + 3) / 6: 0 below -3, x(x+3)/6 on [-3, 3], x above 3."""
    pieces = PiecewisePolynomial([-3.0, 3.0], [[0.0], [0.0, 0.5, 1.0 / 6.0], [0.0, 1.0]])
    # f'' is 1/3 on (-3, 3), 0 outside, with negative point masses at +-3
    return _kinked_activation("hard_silu", pieces, HARD_SILU_HESSIAN_RADIUS)
