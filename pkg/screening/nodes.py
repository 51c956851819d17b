"""
Screening Pipeline Nodes

Implements the workflow nodes of check_pair:
1. check_bracket: verify [P, Q] = 1
2. measure_mass: m(P), m(Q); the corollary applies when min <= 4
3. check_necessary: valuation signs every counterexample satisfies
4. classify: case of l_{1,1}(P), plus the case of tau(P) when it reduces
5. bound: first matching row of the bound table
6. build_report: verdict and ScreenReport
"""

import logging

from algebra.support_geometry import mass, necessary_conditions
from algebra.weyl_core import WeylElement, bracket
from screening.analysis import classify_case, covering_rows, mass_bound_report, reduce_by_tau
from screening.states import ScreenState
from shared.models.schemas import ScreenReport, Verdict, Witness
from shared.utils.errors import WeylMassError
from shared.utils.text_io import render_element

logger = logging.getLogger(__name__)

COROLLARY_MASS = 4


def _record_error(state: ScreenState, step: str, error: WeylMassError) -> ScreenState:
    state["error"] = error
    state["error_message"] = f"{step} failed: {error.message}"
    logger.error(state["error_message"])
    return state


def check_bracket_node(state: ScreenState) -> ScreenState:
    """Compute [P, Q] and compare with 1."""
    try:
        value = bracket(state["P"], state["Q"])
        state["bracket_value"] = value
        state["bracket_ok"] = value == WeylElement.one()
        if not state["bracket_ok"]:
            state["verdict"] = Verdict.BRACKET_NOT_ONE
        state["current_step"] = "bracket_checked"
        logger.info(f"[P,Q] = {render_element(value)}")

    except WeylMassError as e:
        _record_error(state, "Bracket check", e)

    return state


def measure_mass_node(state: ScreenState) -> ScreenState:
    """Masses of both elements; at most four homogeneous components means they generate."""
    try:
        state["mass_p"] = mass(state["P"])
        state["mass_q"] = mass(state["Q"])
        state["witnesses"].append(Witness(name="m(Q)", value=state["mass_q"]))
        if min(state["mass_p"], state["mass_q"]) <= COROLLARY_MASS:
            state["verdict"] = Verdict.GENERATES_BY_COROLLARY
        state["current_step"] = "mass_measured"
        logger.info(f"m(P) = {state['mass_p']}, m(Q) = {state['mass_q']}")

    except WeylMassError as e:
        _record_error(state, "Mass measurement", e)

    return state


def check_necessary_node(state: ScreenState) -> ScreenState:
    """v_{1,-1} > 0, v_{-1,1} > 0 and v > 0 on the positive edge directions, for P and Q."""
    try:
        for name in ("P", "Q"):
            state["violations"] += [f"{name}: {text}" for text in necessary_conditions(state[name])]
        if state["violations"]:
            state["verdict"] = Verdict.NECESSARY_CONDITION_VIOLATED
        state["current_step"] = "necessary_checked"
        logger.info(f"Necessary conditions: {len(state['violations'])} violation(s)")

    except WeylMassError as e:
        _record_error(state, "Necessary conditions", e)

    return state


def classify_node(state: ScreenState) -> ScreenState:
    """Case of l_{1,1}(P), with tau(P) reported for 1c and 2b."""
    try:
        result = classify_case(state["P"])
        state["case_result"] = result
        state["tau_case"] = reduce_by_tau(state["P"], result)
        if state["tau_case"] is not None:
            state["witnesses"].append(Witness(name="tau_case", value=state["tau_case"].label.value))
        state["witnesses"].append(Witness(name="covering_rows", value=covering_rows(result.label)))
        state["current_step"] = "classified"
        logger.info(f"Case {result.label.value}")

    except WeylMassError as e:
        _record_error(state, "Classification", e)

    return state


def bound_node(state: ScreenState) -> ScreenState:
    try:
        report = mass_bound_report(state["P"], max_k=state.get("max_k"))
        state["bound_report"] = report
        state["witnesses"].append(Witness(name="bound_rationale", value=report.rationale))
        bound = report.implied_bound
        if bound is not None and state["mass_p"] < bound:
            state["verdict"] = Verdict.CONTRADICTS_BOUND
        else:
            state["verdict"] = Verdict.CONSISTENT_WITH_BOUNDS
        state["current_step"] = "bounded"
        logger.info(f"Implied bound {bound} against m(P) = {state['mass_p']}")

    except WeylMassError as e:
        _record_error(state, "Bound report", e)

    return state


def build_report_node(state: ScreenState) -> ScreenState:
    """Assemble the ScreenReport from whatever the earlier nodes recorded."""
    if state.get("error"):
        return state

    bound_report = state.get("bound_report")
    state["report"] = ScreenReport(
        bracket_ok=state["bracket_ok"],
        bracket=render_element(state["bracket_value"]),
        mass=state.get("mass_p"),
        mass_q=state.get("mass_q"),
        case=state.get("case_result"),
        implied_bound=bound_report.implied_bound if bound_report else None,
        verdict=state["verdict"],
        violations=state["violations"],
        witnesses=state["witnesses"],
    )
    state["current_step"] = "completed"
    logger.info(f"Verdict {state['verdict'].value}")
    return state


# ---------- routing ----------

def _finished(state: ScreenState) -> bool:
    return bool(state.get("error")) or state.get("verdict") is not None


def route_after_bracket(state: ScreenState) -> str:
    return "build_report" if _finished(state) else "measure_mass"


def route_after_mass(state: ScreenState) -> str:
    return "build_report" if _finished(state) else "check_necessary"


def route_after_necessary(state: ScreenState) -> str:
    return "build_report" if _finished(state) else "classify"
