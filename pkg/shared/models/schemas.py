from datetime import datetime
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


# Base response
class BaseResponse(BaseModel):
    """Envelope returned by every HTTP endpoint"""
    success: bool = Field(..., description="Whether the request succeeded")
    message: str = Field(..., description="Human readable message")
    data: Optional[Any] = Field(None, description="Payload")
    timestamp: datetime = Field(default_factory=datetime.now, description="Server time")


# Report documents
class ReportMeta(BaseModel):
    """Tool metadata attached to every report"""
    version: str = Field(..., description="Tool version")
    seed: Optional[int] = Field(None, description="RNG seed when the command is randomized")


class Witness(BaseModel):
    """A named fact backing a result (valuation, st/en point, decomposition...)"""
    name: str = Field(..., description="Witness name")
    value: Any = Field(..., description="JSON-ready value")


class ReportDocument(BaseModel):
    """Deterministic result of one command"""
    command: str = Field(..., description="Command name")
    inputs: Dict[str, Any] = Field(default_factory=dict, description="Echo of arguments and flags")
    result: Any = Field(None, description="Command payload")
    witnesses: List[Witness] = Field(default_factory=list, description="Supporting facts")
    meta: ReportMeta


class CommandRequest(BaseModel):
    """Body of POST /api/commands/{name}"""
    args: List[str] = Field(default_factory=list, description="Positional element sources or integers")
    flags: Dict[str, Any] = Field(default_factory=dict, description="Flags such as dir, bound, square")


# Screening
class CaseLabel(str, Enum):
    CASE_1A = "1a"
    CASE_1B = "1b"
    CASE_1C = "1c"
    CASE_2A = "2a"
    CASE_2B = "2b"
    CASE_2C = "2c"
    CASE_3 = "3"
    EXCLUDED = "EXCLUDED"


class Verdict(str, Enum):
    GENERATES_BY_COROLLARY = "GENERATES_BY_COROLLARY"
    NECESSARY_CONDITION_VIOLATED = "NECESSARY_CONDITION_VIOLATED"
    CONSISTENT_WITH_BOUNDS = "CONSISTENT_WITH_BOUNDS"
    CONTRADICTS_BOUND = "CONTRADICTS_BOUND"
    BRACKET_NOT_ONE = "BRACKET_NOT_ONE"


class CaseResult(BaseModel):
    """Case label of l_{1,1}(P) with the predicates that decided it"""
    label: CaseLabel
    reason: Optional[str] = Field(None, description="Why the input was excluded")
    witnesses: List[Witness] = Field(default_factory=list)

    @property
    def case(self) -> str:
        return self.label.value


class BoundReport(BaseModel):
    """First matching row of the mass bound table"""
    implied_bound: Optional[int] = Field(None, description="5, 10 or 17 (meaning m(P) > 16)")
    row: Optional[int] = Field(None, ge=1, le=7, description="Matching row number")
    rationale: str = Field(..., description="Evaluated row predicates")
    predicates: Dict[str, Any] = Field(default_factory=dict)


class ScreenReport(BaseModel):
    """Verdict of check_pair"""
    bracket_ok: bool
    bracket: str = Field(..., description="Rendered [P, Q]")
    mass: Optional[int] = Field(None, description="m(P)")
    mass_q: Optional[int] = Field(None, description="m(Q)")
    case: Optional[CaseResult] = None
    implied_bound: Optional[int] = None
    verdict: Verdict
    violations: List[str] = Field(default_factory=list)
    witnesses: List[Witness] = Field(default_factory=list)


# Oracle suite
class OracleFailure(BaseModel):
    suite: str
    case: int
    detail: str = Field(..., description="Counterexample input, verbatim")


class SuiteResult(BaseModel):
    name: str
    passed: int = 0
    failed: int = 0
    failures: List[OracleFailure] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0


class OracleSummary(BaseModel):
    seed: int
    cases: int
    workers: int = 1
    suites: List[SuiteResult] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(suite.ok for suite in self.suites)
