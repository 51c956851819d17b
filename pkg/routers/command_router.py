"""
Command API Router

Provides endpoints for:
- GET /api/commands: List command names
- POST /api/commands/{name}: Run one command and return its ReportDocument
"""

import logging

from fastapi import APIRouter, HTTPException, status

from shared.models.schemas import BaseResponse, CommandRequest
from shared.services.command_service import list_commands, run_command
from shared.utils.errors import WeylMassError

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/commands", tags=["commands"])


@router.get("", response_model=BaseResponse)
async def get_commands():
    """List every command run_command accepts."""
    return BaseResponse(success=True, message="Available commands", data=list_commands())


@router.post("/{name}", response_model=BaseResponse)
async def post_command(name: str, request: CommandRequest):
    """
    Run a command.

    Body:
    - args: positional element sources or integers
    - flags: e.g. {"dir": "3,-1", "square": true, "bound": 10}

    Returns the ReportDocument in data.
    """
    try:
        document = run_command(name, request.args, request.flags)
        return BaseResponse(success=True, message=f"{name} completed", data=document.model_dump(mode="json"))

    except WeylMassError:
        raise
    except Exception as e:
        logger.error(f"Command {name} failed: {e}")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"Command {name} failed: {str(e)}"
        )
