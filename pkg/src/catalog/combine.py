"""
Linear combinations of catalog functions with affine arguments plus a polynomial:

    g(x) = sum_i w_i f_i(s_i x + t_i) + poly(x)
    g^(n)(x) = sum_i w_i s_i^n f_i^(n)(s_i x + t_i) + poly^(n)(x)

The result carries no structural certificate; the dispatcher resolves
monotonicity from the interval extension, which sums the scaled ranges of
each term over its image region.
"""

import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from numpy.polynomial import Polynomial

from errors import InvalidArgumentError
from interval import Interval

from .descriptor import FunctionDescriptor
from .piecewise import polynomial_range
from .ranges import derivative_range

Term = Tuple[float, FunctionDescriptor, float, float]


def _format_number(value: float) -> str:
    return f"{value:g}"


def _preimage(domain: Interval, s: float, t: float) -> Interval:
    if s == 0:
        if domain.contains(t):
            return Interval.whole()
        raise InvalidArgumentError(f"Constant argument {t!r} lies outside the domain")
    ends = [(domain.lo - t) / s, (domain.hi - t) / s]
    return Interval(min(ends), max(ends))


def _image(region: Interval, s: float, t: float) -> Interval:
    return Interval.hull([s * region.lo + t, s * region.hi + t])


def combine_linear(terms: Sequence[Term], poly: Optional[Sequence[float]] = None) -> FunctionDescriptor:
    """
    Build the descriptor of sum_i w_i f_i(s_i x + t_i) + poly(x).

    Args:
        terms: (weight, descriptor, arg_scale, arg_shift) tuples
        poly: Polynomial coefficients in powers of x, lowest degree first

    Returns:
        FunctionDescriptor: Combined function with chain-rule derivatives

    Raises:
        InvalidArgumentError: If both terms and poly are empty, a scalar is not
            finite, or the domains of the terms do not intersect
    """
    terms = [(float(w), f, float(s), float(t)) for w, f, s, t in terms]
    coeffs = [float(c) for c in (poly or [])]
    if not terms and not coeffs:
        raise InvalidArgumentError("combine_linear needs at least one term or polynomial coefficient")
    for w, f, s, t in terms:
        if not all(math.isfinite(v) for v in (w, s, t)):
            raise InvalidArgumentError(f"Non-finite scalar in term ({w}, {f.name}, {s}, {t})")
    if not all(math.isfinite(c) for c in coeffs):
        raise InvalidArgumentError(f"Non-finite polynomial coefficient in {coeffs}")
    polynomial = Polynomial(coeffs or [0.0])

    lo, hi = -math.inf, math.inf
    breakpoints: List[float] = []
    singularities: List[float] = []
    for w, f, s, t in terms:
        pre = _preimage(f.domain, s, t)
        lo, hi = max(lo, pre.lo), min(hi, pre.hi)
        if s != 0:
            breakpoints.extend((p - t) / s for p in f.breakpoints)
            singularities.extend((p - t) / s for p in f.singularities)
    if lo > hi:
        raise InvalidArgumentError("The domains of the combined terms do not intersect")

    orders = [f.max_derivative_order for _, f, _, _ in terms if f.max_derivative_order is not None]

    def value_fn(xs: np.ndarray) -> np.ndarray:
        total = polynomial(xs)
        for w, f, s, t in terms:
            total = total + w * f.values(s * xs + t)
        return total

    def derivative_fn(n: int, xs: np.ndarray, side: int) -> np.ndarray:
        total = polynomial.deriv(n)(xs)
        for w, f, s, t in terms:
            if s == 0:
                continue
            inner_side = side * int(np.sign(s))
            total = total + w * s ** n * f.derivative_values(n, s * xs + t, side=inner_side)
        return total

    def interval_derivative(n: int, region: Interval) -> Interval:
        total = polynomial_range(polynomial.deriv(n) if n > 0 else polynomial, region.lo, region.hi)
        for w, f, s, t in terms:
            if s == 0 and n >= 1:
                continue
            term_range = derivative_range(f, n, _image(region, s, t))
            total = total + term_range.scale(w * s ** n)
        return total

    parts = [
        f"({_format_number(w)},{f.name},{_format_number(s)},{_format_number(t)})" for w, f, s, t in terms
    ]
    name = f"lincomb:[{','.join(parts)}]" if terms else ""
    if coeffs:
        poly_text = f"poly:[{','.join(_format_number(c) for c in coeffs)}]"
        name = f"{name}+{poly_text}" if name else poly_text

    return FunctionDescriptor(
        name=name,
        value_fn=value_fn,
        derivative_fn=derivative_fn,
        max_derivative_order=min(orders) if orders else None,
        domain=Interval(lo, hi),
        breakpoints=tuple(sorted(set(breakpoints))),
        singularities=tuple(sorted(set(singularities))),
        interval_derivative=interval_derivative,
    )
