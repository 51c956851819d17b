"""
Screening Pipeline State Schemas

Defines the state structures for the check_pair pipeline:
- ScreenState: Full internal state
- initial_state: the state check_pair starts from
"""

from typing import List, Optional, TypedDict

from algebra.weyl_core import WeylElement
from shared.models.schemas import BoundReport, CaseResult, ScreenReport, Verdict, Witness
from shared.utils.errors import WeylMassError


class ScreenState(TypedDict):
    """
    check_pair full internal state.

    Every node reads the elements and writes its own slice; routing
    short-circuits to build_report as soon as a verdict is known.
    """
    # Input
    P: WeylElement
    Q: WeylElement
    max_k: Optional[int]

    # Bracket check
    bracket_value: Optional[WeylElement]
    bracket_ok: bool

    # Mass
    mass_p: Optional[int]
    mass_q: Optional[int]

    # Necessary conditions (both elements)
    violations: List[str]

    # Case analysis of P
    case_result: Optional[CaseResult]
    tau_case: Optional[CaseResult]
    bound_report: Optional[BoundReport]

    # Output
    verdict: Optional[Verdict]
    witnesses: List[Witness]
    report: Optional[ScreenReport]

    # Control
    current_step: str
    error_message: Optional[str]
    error: Optional[WeylMassError]


def initial_state(P: WeylElement, Q: WeylElement, max_k: Optional[int] = None) -> ScreenState:
    """Fresh state with every slice unset."""
    return ScreenState(
        P=P,
        Q=Q,
        max_k=max_k,
        bracket_value=None,
        bracket_ok=False,
        mass_p=None,
        mass_q=None,
        violations=[],
        case_result=None,
        tau_case=None,
        bound_report=None,
        verdict=None,
        witnesses=[],
        report=None,
        current_step="start",
        error_message=None,
        error=None,
    )
