"""
Nodes package for the MM workflow.

Each node is a plain function of the workflow state (plus the function
descriptor bound by the workflow) returning a partial state update.

Nodes:
- build_majorizer_node: Builds the quadratic majorizer at the current iterate
- minimize_step_node: Moves to the majorizer's minimizer
- finalize_node: Records the final iterate

Usage:
    from nodes.majorizer_node import build_majorizer_node
    from nodes.step_node import minimize_step_node, finalize_node
"""

from .majorizer_node import build_majorizer_node
from .step_node import finalize_node, minimize_step_node

__all__ = [
    "build_majorizer_node",
    "minimize_step_node",
    "finalize_node",
]
