"""
Workflow module for the MM optimization loop.

This module defines the MMWorkflow class, which runs majorization-
minimization on a one-dimensional function as a LangGraph state machine:

1. build_majorizer: Quadratic upper bound at x_t from the degree-2 enclosure
2. minimize_step: Move to the exact minimizer of that bound over the trust region
3. finalize: Record the last iterate

    build_majorizer --(rejected)--> finalize --> END
          |
          v
    minimize_step --(converged | max_iters | rejected)--> finalize
          |
          +--(otherwise)--> build_majorizer

Usage:
    workflow = MMWorkflow(f=softplus_function())
    initial_state = workflow.create(x_init=3.0, radius=1.0, max_iters=20, tol=1e-10)
    result = workflow.run(initial_state)
    records = result["records"]
"""

import logging
import uuid
from typing import Any, Dict, Optional

from langchain_core.runnables import RunnableConfig
from langgraph.checkpoint.memory import MemorySaver
from langgraph.graph import END, StateGraph

from catalog import FunctionDescriptor
from config import get_settings
from nodes import build_majorizer_node, finalize_node, minimize_step_node
from state import MMWorkflowState

logger = logging.getLogger(__name__)


class MMWorkflow:
    """
    Orchestrator for one MM run on a fixed function.

    Attributes:
        f: Function being minimized; bound to the nodes, never stored in state
        workflow: Compiled LangGraph workflow
        thread_id: Identifier of the last execution thread
        initial_state: State built by create()
    """

    def __init__(self, f: FunctionDescriptor):
        self.f = f
        self.workflow = None
        self.thread_id = None
        self.initial_state = None

    def create(
        self,
        x_init: float,
        radius: Optional[float] = None,
        max_iters: Optional[int] = None,
        tol: Optional[float] = None,
        use_baseline: bool = False,
    ) -> MMWorkflowState:
        """
        Build the initial state and compile the workflow.

        Args:
            x_init: Starting point, inside f's domain
            radius: Trust radius (default Settings.mm_radius)
            max_iters: Iteration cap (default Settings.mm_max_iters)
            tol: Step-length convergence tolerance (default Settings.mm_tol)
            use_baseline: Build majorizers from the Lagrange baseline

        Returns:
            MMWorkflowState: Initial state
        """
        settings = get_settings()
        self.initial_state = {
            "function_name": self.f.name,
            "radius": settings.mm_radius if radius is None else radius,
            "max_iters": settings.mm_max_iters if max_iters is None else max_iters,
            "tol": settings.mm_tol if tol is None else tol,
            "use_baseline": use_baseline,
            "x": x_init,
            "loss": self.f.eval(x_init),
            "iteration": 0,
            "majorizer": None,
            "records": [],
            "diagnostics": [],
            "converged": False,
            "terminated": False,
        }
        logger.info(f"Initial state: {self.initial_state}")

        self.workflow = MMWorkflow.create_workflow(self)
        return self.initial_state

    def run(self, initial_state: Dict[str, Any] = None, thread_id: str = None) -> Dict[str, Any]:
        """Execute the loop and return the final state."""
        self.thread_id = str(uuid.uuid4()) if thread_id is None else thread_id
        if initial_state is None:
            initial_state = self.initial_state
        return MMWorkflow.run_workflow(initial_state, self.workflow, self.thread_id)

    # Delegate to the node functions

    def _build_majorizer(self, state: MMWorkflowState, config: RunnableConfig) -> dict:
        return build_majorizer_node(state, f=self.f)

    def _minimize_step(self, state: MMWorkflowState, config: RunnableConfig) -> dict:
        return minimize_step_node(state, f=self.f)

    def _finalize(self, state: MMWorkflowState, config: RunnableConfig) -> dict:
        return finalize_node(state)

    # Routing

    @staticmethod
    def _after_majorizer(state: MMWorkflowState) -> str:
        return "finalize" if state["terminated"] else "minimize_step"

    @staticmethod
    def _after_step(state: MMWorkflowState) -> str:
        if state["terminated"] or state["converged"] or state["iteration"] >= state["max_iters"]:
            return "finalize"
        return "build_majorizer"

    @staticmethod
    def create_workflow(workflow: "MMWorkflow", checkpointer=None):
        """
        Create and compile the LangGraph loop.

        Args:
            workflow: MMWorkflow instance providing the node implementations
            checkpointer: Optional LangGraph checkpointer (MemorySaver by default)

        Returns:
            Compiled LangGraph workflow ready for execution
        """
        graph = StateGraph(MMWorkflowState)

        logger.info(f"Creating MM workflow for {workflow.f.name}")

        graph.add_node("build_majorizer", workflow._build_majorizer)
        graph.add_node("minimize_step", workflow._minimize_step)
        graph.add_node("finalize", workflow._finalize)

        graph.set_entry_point("build_majorizer")
        graph.add_conditional_edges(
            "build_majorizer",
            MMWorkflow._after_majorizer,
            {"minimize_step": "minimize_step", "finalize": "finalize"},
        )
        graph.add_conditional_edges(
            "minimize_step",
            MMWorkflow._after_step,
            {"build_majorizer": "build_majorizer", "finalize": "finalize"},
        )
        graph.add_edge("finalize", END)

        if checkpointer is None:
            checkpointer = MemorySaver()

        return graph.compile(checkpointer=checkpointer)

    @staticmethod
    def run_workflow(initial_state: Dict[str, Any], graph, thread_id: str) -> Dict[str, Any]:
        """
        Invoke the compiled workflow on one thread.

        The recursion limit allows two node visits per iteration plus the
        entry and finalize steps.
        """
        logger.info(f"RUNNING MM workflow for {initial_state['function_name']} - {thread_id}")

        config: RunnableConfig = {
            "configurable": {"thread_id": thread_id},
            "recursion_limit": 2 * initial_state["max_iters"] + 10,
        }
        return graph.invoke(initial_state, config=config)
