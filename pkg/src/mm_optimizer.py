"""
One-dimensional majorization-minimization with sharp quadratic majorizers.

Each step minimizes the quadratic upper bound from the degree-2 enclosure
over a fixed-radius trust region, so the loss never increases. The loop
itself runs as the LangGraph workflow in workflow.py.

Usage:
    from mm_optimizer import mm_minimize

    trace = mm_minimize(parse_function("poly:[0,0,1]"), x_init=5.0, radius=10.0)
    trace.iterates      # [5.0, 0.0, 0.0]
    print(trace.to_csv())
"""

import logging
import math
from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from catalog import FunctionDescriptor
from errors import InvalidArgumentError
from majorizer import MMRecord, QuadraticMajorizer, build_majorizer, mm_step
from reporting import csv_text
from workflow import MMWorkflow

logger = logging.getLogger(__name__)

__all__ = ["MMRecord", "MMTrace", "QuadraticMajorizer", "build_majorizer", "mm_minimize", "mm_step"]


class MMTrace(BaseModel):
    """Sequence of MM iterates, the last one without a majorizer."""

    model_config = ConfigDict(frozen=True)

    function: str
    records: Tuple[MMRecord, ...]
    converged: bool = False
    diagnostics: Tuple[str, ...] = Field(default=())

    @property
    def iterates(self) -> List[float]:
        return [r.x for r in self.records]

    @property
    def losses(self) -> List[float]:
        return [r.loss for r in self.records]

    def to_csv(self) -> str:
        return csv_text(
            ["iter", "x", "loss", "z_upper"],
            [(r.iteration, r.x, r.loss, "" if r.z_upper is None else r.z_upper) for r in self.records],
        )


def mm_minimize(
    f: FunctionDescriptor,
    x_init: float,
    radius: Optional[float] = None,
    max_iters: Optional[int] = None,
    tol: Optional[float] = None,
    use_baseline: bool = False,
) -> MMTrace:
    """
    Iterate mm_step until the step is shorter than tol or max_iters is reached.

    Args:
        f: Function to minimize
        x_init: Starting point inside f's domain
        radius: Trust radius (default Settings.mm_radius)
        max_iters: Iteration cap (default Settings.mm_max_iters)
        tol: Convergence tolerance on |x_{t+1} - x_t| (default Settings.mm_tol)
        use_baseline: Use Lagrange-baseline majorizers instead of sharp ones

    Returns:
        MMTrace: Records with nonincreasing losses

    Raises:
        InvalidArgumentError: For non-finite inputs or nonpositive radius, max_iters or tol
    """
    if not math.isfinite(x_init):
        raise InvalidArgumentError(f"x_init must be finite, got {x_init!r}")
    if radius is not None and not (math.isfinite(radius) and radius > 0):
        raise InvalidArgumentError(f"radius must be positive and finite, got {radius!r}")
    if max_iters is not None and max_iters < 1:
        raise InvalidArgumentError(f"max_iters must be >= 1, got {max_iters!r}")
    if tol is not None and not tol > 0:
        raise InvalidArgumentError(f"tol must be > 0, got {tol!r}")

    workflow = MMWorkflow(f)
    initial_state = workflow.create(x_init, radius=radius, max_iters=max_iters, tol=tol, use_baseline=use_baseline)
    result = workflow.run(initial_state)

    trace = MMTrace(
        function=f.name,
        records=tuple(MMRecord.model_validate(r) for r in result["records"]),
        converged=bool(result["converged"]),
        diagnostics=tuple(result["diagnostics"]),
    )
    logger.info(
        f"mm_minimize {f.name}: {len(trace.records)} records, converged={trace.converged}, "
        f"final x={trace.iterates[-1]!r}"
    )
    return trace
