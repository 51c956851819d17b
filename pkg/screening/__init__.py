"""
Screening Module

Provides:
- check_pair: the screening pipeline graph (bracket, mass, necessary conditions, case, bound)
- Case table, bound table, power decompositions, F search and upper edge untwisting
"""

from screening.analysis import (
    Decomposition,
    FSearchResult,
    classify_case,
    covering_rows,
    decompose_leading_power,
    find_F,
    mass_bound_report,
    reduce_by_tau,
    reduce_upper_edge,
    solve_leading_power,
)
from screening.screen_agent import check_pair, screen_graph
from screening.states import ScreenState

__all__ = [
    "Decomposition",
    "FSearchResult",
    "ScreenState",
    "check_pair",
    "classify_case",
    "covering_rows",
    "decompose_leading_power",
    "find_F",
    "mass_bound_report",
    "reduce_by_tau",
    "reduce_upper_edge",
    "screen_graph",
    "solve_leading_power",
]
