"""
Screening API Router

Provides endpoints for:
- POST /api/screen: check_pair on two element sources
- POST /api/selftest: run the oracle suites
"""

import logging
from typing import Optional

from fastapi import APIRouter, HTTPException, status
from pydantic import BaseModel, Field

from screening.screen_agent import check_pair
from shared.config.settings import get_settings
from shared.models.schemas import BaseResponse
from shared.services.oracle_suite import oracle_suite
from shared.utils.errors import WeylMassError
from shared.utils.text_io import parse_element

logger = logging.getLogger(__name__)

router = APIRouter(tags=["screening"])


class ScreenRequest(BaseModel):
    """Pair to screen"""
    P: str = Field(..., description="Element source of P")
    Q: str = Field(..., description="Element source of Q")


class SelftestRequest(BaseModel):
    """Oracle suite parameters"""
    seed: Optional[int] = Field(None, description="RNG seed (default from settings)")
    cases: Optional[int] = Field(None, ge=1, le=2000, description="Cases per suite (default from settings)")


@router.post("/screen", response_model=BaseResponse)
async def screen_pair(request: ScreenRequest):
    """
    Screen (P, Q).

    Returns the ScreenReport: bracket check, masses, case, implied bound, verdict.
    """
    try:
        settings = get_settings()
        report = check_pair(parse_element(request.P), parse_element(request.Q), max_k=settings.decompose_max_k)
        return BaseResponse(success=True, message=report.verdict.value, data=report.model_dump(mode="json"))

    except WeylMassError:
        raise
    except Exception as e:
        logger.error(f"Screening failed: {e}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"Screening failed: {str(e)}"
        )


@router.post("/selftest", response_model=BaseResponse)
async def run_selftest(request: SelftestRequest):
    """Run every oracle suite in-process."""
    settings = get_settings()
    seed = settings.selftest_seed if request.seed is None else request.seed
    cases = settings.selftest_cases if request.cases is None else request.cases
    summary = oracle_suite(seed, cases)
    return BaseResponse(
        success=summary.ok,
        message="All suites passed" if summary.ok else "Some suites failed",
        data=summary.model_dump(mode="json"),
    )
