"""
Step and finalize nodes for the MM workflow.

minimize_step_node moves to the minimizer of the current majorizer and
records the iterate it leaves. finalize_node appends the last iterate,
which has no majorizer of its own.

State Updates:
- x, loss, iteration, records, converged (minimize_step_node)
- records (finalize_node)
"""

import logging

from catalog import FunctionDescriptor
from interval import Interval
from majorizer import MMRecord, QuadraticMajorizer
from state import MMWorkflowState

logger = logging.getLogger(__name__)

_DESCENT_SLACK = 1e-12


def minimize_step_node(state: MMWorkflowState, f: FunctionDescriptor) -> dict:
    """LangGraph node: minimize the majorizer and take the step."""

    logger.info(f"STEP: minimize_step_node")

    majorizer = QuadraticMajorizer.model_validate(state["majorizer"])
    x, loss = state["x"], state["loss"]
    record = MMRecord(
        iteration=state["iteration"], x=x, loss=loss, region=majorizer.region, z_upper=majorizer.z_upper
    )

    x_next = majorizer.minimize()
    loss_next = f.eval(x_next)
    if loss_next > loss + _DESCENT_SLACK * (1.0 + abs(loss)):
        message = f"iteration {state['iteration']}: step to {x_next!r} increased the loss, rejected"
        logger.warning(message)
        return {
            "records": [record.model_dump(mode="json")],
            "iteration": state["iteration"] + 1,
            "terminated": True,
            "diagnostics": [message],
        }

    return {
        "x": x_next,
        "loss": loss_next,
        "iteration": state["iteration"] + 1,
        "records": [record.model_dump(mode="json")],
        "converged": abs(x_next - x) < state["tol"],
    }


def finalize_node(state: MMWorkflowState) -> dict:
    """LangGraph node: record the final iterate."""

    logger.info(f"STEP: finalize_node")

    record = MMRecord(
        iteration=state["iteration"], x=state["x"], loss=state["loss"], region=Interval.point(state["x"])
    )
    return {"records": [record.model_dump(mode="json")]}
