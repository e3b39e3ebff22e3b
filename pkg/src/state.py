"""
Workflow state for the MM optimization loop.

MMWorkflowState is the TypedDict that flows through the LangGraph loop
build_majorizer -> minimize_step -> (build_majorizer | finalize). It holds
only plain data: the function descriptor itself is bound to the workflow
object, and models travel as their JSON dumps so the checkpointer can
store every step.

State Structure:
    - Inputs: function_name, radius, max_iters, tol, use_baseline
    - Loop: x, loss, iteration, majorizer
    - Outputs: records, diagnostics, converged, terminated

Usage:
    from state import MMWorkflowState

    def process_node(state: MMWorkflowState) -> dict:
        ...
"""

import operator
from typing import Annotated, Any, Dict, List, Optional, TypedDict


def last_value_reducer(current_value, new_value):
    """Keep the latest write; scalar MM state (x, loss, iteration, flags) is overwritten each step."""
    return new_value


class MMWorkflowState(TypedDict):
    """
    State of one MM run. Nodes return partial updates; `records` and
    `diagnostics` accumulate through operator.add.
    """

    # Inputs
    function_name: Annotated[str, last_value_reducer]
    radius: Annotated[float, last_value_reducer]
    max_iters: Annotated[int, last_value_reducer]
    tol: Annotated[float, last_value_reducer]
    use_baseline: Annotated[bool, last_value_reducer]

    # Loop
    x: Annotated[float, last_value_reducer]
    """Current iterate x_t."""

    loss: Annotated[float, last_value_reducer]
    """f(x_t)."""

    iteration: Annotated[int, last_value_reducer]

    majorizer: Annotated[Optional[Dict[str, Any]], last_value_reducer]
    """QuadraticMajorizer.model_dump(mode="json") for the current iterate, None when the step was rejected."""

    # Outputs
    records: Annotated[List[Dict[str, Any]], operator.add]
    """MMRecord dumps, one per iterate."""

    diagnostics: Annotated[List[str], operator.add]

    converged: Annotated[bool, last_value_reducer]
    """|x_{t+1} - x_t| < tol."""

    terminated: Annotated[bool, last_value_reducer]
    """The loop stopped without converging (vacuous majorizer or rejected step)."""
