"""
Root location helpers for the local-extrema oracles.

`scan_zeros` finds the zeros of a vectorized function on a closed interval by
scanning a uniform grid for sign changes and refining each bracket with
scipy's brentq. Exact zeros on grid points are kept as they are.
"""

import logging
import math
from typing import Callable, List

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.optimize import brentq

from config import get_settings
from interval import Interval

logger = logging.getLogger(__name__)

MAX_SCAN_POINTS = 2_000_000


def scan_zeros(g: Callable[[np.ndarray], np.ndarray], region: Interval, n: int = None) -> List[float]:
    """
    Zeros of g in [region.lo, region.hi], sorted.

    Args:
        g: Vectorized function
        region: Closed search interval
        n: Number of scan points. Defaults to Settings.root_scan_points, raised to
            Settings.root_scan_density points per unit width on wide regions

    Returns:
        List[float]: Zeros found, one per sign change plus exact grid zeros
    """
    settings = get_settings()
    a, b = region.lo, region.hi
    if not n:
        n = settings.root_scan_points
        if math.isfinite(b - a):
            n = max(n, math.ceil((b - a) * settings.root_scan_density) + 1)
        n = min(n, MAX_SCAN_POINTS)
    if a == b:
        return [a] if g(np.array([a]))[0] == 0 else []
    xs = np.linspace(a, b, n)
    ys = g(xs)
    roots = [float(x) for x in xs[ys == 0]]
    sign = np.sign(ys)
    for i in np.nonzero(sign[:-1] * sign[1:] < 0)[0]:
        root = brentq(lambda x: float(g(np.array([x]))[0]), xs[i], xs[i + 1], xtol=1e-14)
        roots.append(float(root))
    logger.debug(f"scan_zeros found {len(roots)} zeros on [{a}, {b}]")
    return sorted(roots)


def real_roots_in(coefficients: np.ndarray, lo: float, hi: float) -> List[float]:
    """Real roots of a polynomial (numpy.polynomial coefficient order) inside [lo, hi]."""
    if len(coefficients) < 2 or not np.any(coefficients[1:]):
        return []
    roots = []
    for root in np.atleast_1d(P.polyroots(coefficients)):
        if abs(root.imag) <= 1e-10 * max(1.0, abs(root.real)) and lo <= root.real <= hi:
            roots.append(float(root.real))
    return sorted(roots)
