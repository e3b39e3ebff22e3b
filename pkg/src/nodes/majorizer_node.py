"""
Majorizer Node for the MM workflow.

Builds the quadratic majorizer at the current iterate. A vacuous majorizer
(upper coefficient +inf, as for relu with the baseline) is retried once
with half the radius; a second failure terminates the loop.

State Updates:
- majorizer: QuadraticMajorizer dump, or None
- terminated, diagnostics: when no majorizer could be built
"""

import logging

from catalog import FunctionDescriptor
from errors import VacuousMajorizerError
from majorizer import build_majorizer
from state import MMWorkflowState

logger = logging.getLogger(__name__)


def build_majorizer_node(state: MMWorkflowState, f: FunctionDescriptor) -> dict:
    """LangGraph node: build the majorizer at state["x"]."""

    logger.info(f"STEP: build_majorizer_node")

    radius = state["radius"]
    diagnostics = []
    for _ in range(2):
        try:
            majorizer = build_majorizer(f, state["x"], radius, use_baseline=state["use_baseline"])
            return {"majorizer": majorizer.model_dump(mode="json"), "diagnostics": diagnostics}
        except VacuousMajorizerError as exc:
            diagnostics.append(f"iteration {state['iteration']}: {exc} (radius {radius!r})")
            logger.warning(diagnostics[-1])
            radius /= 2.0

    diagnostics.append(f"iteration {state['iteration']}: step rejected at the smallest radius {radius * 2.0!r}")
    logger.warning(diagnostics[-1])
    return {"majorizer": None, "terminated": True, "diagnostics": diagnostics}
