"""
Derivation of the even-symmetric Hessian radii for gelu and silu.

For both activations f'' is even and decreasing just right of 0; it stops
decreasing at the first positive zero of f'''. That zero is located by a
sign-change scan followed by bisection, and the catalog constants are the
results rounded down.

Usage:
    cd src && python -m catalog.radii
"""

import logging
import math

import numpy as np
from scipy.optimize import bisect

from errors import PreconditionError

from .descriptor import FunctionDescriptor

logger = logging.getLogger(__name__)


def derive_hessian_radius(
    f: FunctionDescriptor,
    start: float = 1e-3,
    stop: float = 20.0,
    n: int = 20_000,
    xtol: float = 1e-12,
) -> float:
    """
    First zero of f''' on (start, stop].

    Args:
        f: Descriptor with derivatives up to order 3
        start: Small positive offset (f''' vanishes at 0 for even f'')
        stop: End of the search window
        n: Scan points used to bracket the zero
        xtol: Bisection tolerance

    Returns:
        float: The radius, or +inf when f''' keeps its sign on the window

    Raises:
        PreconditionError: If f''' is not negative just right of 0
    """

    def third(x):
        return f.derivative_values(3, x)

    xs = np.linspace(start, stop, n)
    ys = third(xs)
    if not ys[0] < 0:
        raise PreconditionError(f"{f.name}: f''' must be negative right of 0, got {ys[0]!r}")
    crossing = np.nonzero(ys > 0)[0]
    if crossing.size == 0:
        return math.inf
    i = int(crossing[0])
    radius = bisect(lambda x: float(third(x)[0]), xs[i - 1], xs[i], xtol=xtol)
    logger.info(f"{f.name}: first zero of f''' at {radius!r}")
    return float(radius)


def main() -> None:
    from .activations import GELU_HESSIAN_RADIUS, SILU_HESSIAN_RADIUS, gelu_function, silu_function

    for f, constant in ((gelu_function(), GELU_HESSIAN_RADIUS), (silu_function(), SILU_HESSIAN_RADIUS)):
        print(f"{f.name}: derived {derive_hessian_radius(f)!r}, catalog constant {constant!r}")


if __name__ == "__main__":
    main()
