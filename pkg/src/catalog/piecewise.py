"""
Piecewise-polynomial functions with kinks.

relu, leaky_relu, hard_silu and abs are polynomials between breakpoints.
Their derivatives are exact per piece; at a breakpoint the behavior of
order n depends on the lowest order m whose derivative jumps there:

    one-sided convention (activations)      strict convention (abs)
    m >= n : right-piece value              m > n  : piece value
    m == n-1 : sign(jump) * inf  (a delta)  m <= n : undefined (NaN)
    m < n-1 : undefined (NaN)

Ranges over a region are exact: each piece contributes its polynomial range
(endpoints plus interior critical points) and interior breakpoints add the
infinite contributions above. Breakpoints sitting on a region endpoint add
nothing, since the restriction of f to the closed region is smooth there.
"""

import math
from functools import lru_cache
from typing import List, Optional, Sequence

import numpy as np
from numpy.polynomial import Polynomial

from interval import Interval

_JUMP_TOLERANCE = 1e-15


def polynomial_range(poly: Polynomial, lo: float, hi: float) -> Interval:
    """Exact range of a polynomial over [lo, hi] from endpoints and critical points."""
    points = [lo, hi]
    for root in np.atleast_1d(poly.deriv().roots()):
        if abs(root.imag) < 1e-12 and lo < root.real < hi:
            points.append(float(root.real))
    return Interval.hull(poly(np.array(points)))


class PiecewisePolynomial:
    """Polynomial pieces separated by sorted breakpoints."""

    def __init__(self, breakpoints: Sequence[float], pieces: Sequence[Sequence[float]], one_sided: bool = True):
        if len(pieces) != len(breakpoints) + 1:
            raise ValueError("Need exactly one more piece than breakpoints")
        self.breakpoints = np.asarray(breakpoints, dtype=float)
        self.pieces = [Polynomial(c) for c in pieces]
        self.one_sided = one_sided
        self._max_degree = max(p.degree() for p in self.pieces)

    @lru_cache(maxsize=None)
    def _piece_derivative(self, j: int, n: int) -> Polynomial:
        return self.pieces[j].deriv(n) if n > 0 else self.pieces[j]

    def _jump(self, i: int, n: int) -> float:
        p = self.breakpoints[i]
        return float(self._piece_derivative(i + 1, n)(p) - self._piece_derivative(i, n)(p))

    def first_jump(self, i: int) -> Optional[int]:
        """Lowest derivative order that jumps at breakpoint i."""
        for m in range(self._max_degree + 1):
            if abs(self._jump(i, m)) > _JUMP_TOLERANCE:
                return m
        return None

    def _breakpoint_value(self, i: int, n: int) -> float:
        m = self.first_jump(i)
        if m is None:
            return float(self._piece_derivative(i + 1, n)(self.breakpoints[i]))
        if self.one_sided:
            if m >= n:
                return float(self._piece_derivative(i + 1, n)(self.breakpoints[i]))
            if m == n - 1:
                return math.copysign(math.inf, self._jump(i, m))
            return math.nan
        if m > n:
            return float(self._piece_derivative(i + 1, n)(self.breakpoints[i]))
        return math.nan

    def values(self, n: int, xs: np.ndarray, side: int = 0) -> np.ndarray:
        """f^(n) at xs; side -1 takes the left piece at breakpoints, +1 or 0 the right."""
        xs = np.asarray(xs, dtype=float)
        idx = np.searchsorted(self.breakpoints, xs, side="left" if side < 0 else "right")
        out = np.empty(xs.shape)
        for j in range(len(self.pieces)):
            mask = idx == j
            if mask.any():
                out[mask] = self._piece_derivative(j, n)(xs[mask])
        if side == 0:
            for i, p in enumerate(self.breakpoints):
                hit = xs == p
                if hit.any():
                    out[hit] = self._breakpoint_value(i, n)
        return out

    def _contribution(self, i: int, n: int) -> Optional[Interval]:
        m = self.first_jump(i)
        if m is None or m >= n:
            return None
        if self.one_sided and m == n - 1:
            return Interval.point(math.copysign(math.inf, self._jump(i, m)))
        return Interval.whole()

    def range(self, n: int, region: Interval) -> Interval:
        """Exact range of f^(n) over the closed region, including interior kinks."""
        a, b = region.lo, region.hi
        edges = [-math.inf] + list(self.breakpoints) + [math.inf]
        lows: List[float] = []
        highs: List[float] = []
        for j in range(len(self.pieces)):
            lo = max(a, edges[j])
            hi = min(b, edges[j + 1])
            if lo > hi or (lo == hi and a < b):
                continue
            piece = polynomial_range(self._piece_derivative(j, n), lo, hi)
            lows.append(piece.lo)
            highs.append(piece.hi)
        for i, p in enumerate(self.breakpoints):
            if a < p < b:
                extra = self._contribution(i, n)
                if extra is not None:
                    lows.append(extra.lo)
                    highs.append(extra.hi)
        return Interval(min(lows), max(highs))
