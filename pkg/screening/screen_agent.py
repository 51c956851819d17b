"""
Screening Pipeline Graph Definition

Workflow:
check_bracket → measure_mass → check_necessary → classify → bound → build_report → END
(each of the first three steps may jump straight to build_report)
"""

import logging
from typing import Optional

from langgraph.graph import END, StateGraph

from algebra.weyl_core import WeylElement
from screening.nodes import (
    bound_node,
    build_report_node,
    check_bracket_node,
    check_necessary_node,
    classify_node,
    measure_mass_node,
    route_after_bracket,
    route_after_mass,
    route_after_necessary,
)
from screening.states import ScreenState, initial_state
from shared.models.schemas import ScreenReport

logger = logging.getLogger(__name__)

# Create the workflow
screen_workflow = StateGraph(state_schema=ScreenState)

# Add nodes
screen_workflow.add_node("check_bracket", check_bracket_node)
screen_workflow.add_node("measure_mass", measure_mass_node)
screen_workflow.add_node("check_necessary", check_necessary_node)
screen_workflow.add_node("classify", classify_node)
screen_workflow.add_node("bound", bound_node)
screen_workflow.add_node("build_report", build_report_node)

# Define the workflow edges
screen_workflow.set_entry_point("check_bracket")
screen_workflow.add_conditional_edges(
    "check_bracket", route_after_bracket, {"measure_mass": "measure_mass", "build_report": "build_report"}
)
screen_workflow.add_conditional_edges(
    "measure_mass", route_after_mass, {"check_necessary": "check_necessary", "build_report": "build_report"}
)
screen_workflow.add_conditional_edges(
    "check_necessary", route_after_necessary, {"classify": "classify", "build_report": "build_report"}
)
screen_workflow.add_edge("classify", "bound")
screen_workflow.add_edge("bound", "build_report")
screen_workflow.add_edge("build_report", END)

# Compile the graph
screen_graph = screen_workflow.compile()


def check_pair(P: WeylElement, Q: WeylElement, max_k: Optional[int] = None) -> ScreenReport:
    """
    Screen a pair against the mass results.

    Raises the first error a node recorded, so precondition failures and
    invariant breaches keep their type.
    """
    final = screen_graph.invoke(initial_state(P, Q, max_k=max_k))
    if final.get("error"):
        raise final["error"]
    return final["report"]
