# Pydantic models
from . import schemas
from .schemas import (
    BaseResponse,
    BoundReport,
    CaseLabel,
    CaseResult,
    ReportDocument,
    ScreenReport,
    Verdict,
    Witness,
)

__all__ = [
    # Responses and reports
    "BaseResponse",
    "ReportDocument",
    "Witness",

    # Screening
    "BoundReport",
    "CaseLabel",
    "CaseResult",
    "ScreenReport",
    "Verdict",

    "schemas"
]
