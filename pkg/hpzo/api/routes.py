"""
hpzo FastAPI Routes
Read-only endpoints over the schedule, bound and comparison calculators.
"""

import logging
from typing import Dict, List, Optional

from fastapi import APIRouter, FastAPI, HTTPException
from pydantic import BaseModel, Field

from .. import __version__
from ..config import settings
from ..core import guarantee_for, schedule_for
from ..core.oracles import Regime, list_problems
from ..core.schedules import ComparisonRow, ScheduleReport, comparison_table
from ..errors import HpzoError

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/hpzo", tags=["hpzo"])


# --- Request Models ---
class ProblemConstants(BaseModel):
    regime: str = Field(description="strongly_convex | convex | nonconvex (or sc, cvx, nc)")
    d: int = Field(ge=1)
    L: float = Field(gt=0)
    delta: float = Field(gt=0, lt=1)
    epsilon: Optional[float] = Field(default=None, gt=0)
    mu: Optional[float] = Field(default=None, gt=0)
    Delta0: Optional[float] = Field(default=None, ge=0)
    R: Optional[float] = Field(default=None, ge=0)


class BoundsRequest(ProblemConstants):
    T: Optional[int] = Field(default=None, ge=1)
    alpha: Optional[float] = Field(default=None, gt=0)
    simple: bool = True


class CompareRequest(BaseModel):
    d: int = Field(ge=1)
    L: float = Field(gt=0)
    mu: float = Field(gt=0)
    R: float = Field(ge=0)
    Delta0: float = Field(ge=0)
    epsilon: float = Field(gt=0)
    delta: float = Field(gt=0, lt=1)


# --- Response Models ---
class StatusResponse(BaseModel):
    status: str
    version: str
    environment: str
    regimes: List[str]


class ProblemsResponse(BaseModel):
    problems: Dict[str, str]
    count: int


class BoundsResponse(BaseModel):
    regime: str
    T: int
    alpha: float
    bound: float
    bound_rounded: float


class CompareResponse(BaseModel):
    rows: List[ComparisonRow]
    count: int


@router.get("/status", response_model=StatusResponse)
async def get_status():
    return StatusResponse(
        status="ok",
        version=__version__,
        environment=settings.environment,
        regimes=[regime.value for regime in Regime],
    )


@router.get("/problems", response_model=ProblemsResponse)
async def get_problems():
    """Registered test problems with a one-line description each."""
    problems = list_problems()
    return ProblemsResponse(problems=problems, count=len(problems))


@router.post("/schedule", response_model=ScheduleReport)
async def compute_schedule(request: ProblemConstants):
    """
    Computes the admissible (T, α) for the given regime and constants
    """
    try:
        return schedule_for(
            request.regime,
            request.d,
            request.L,
            request.delta,
            epsilon=request.epsilon,
            mu=request.mu,
            Delta0=request.Delta0,
            R=request.R,
        )
    except HpzoError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.exception("Schedule computation failed")
        raise HTTPException(status_code=500, detail=f"Failed to compute schedule: {str(e)}")


@router.post("/bounds", response_model=BoundsResponse)
async def compute_bounds(request: BoundsRequest):
    """
    Evaluates the high-probability guarantee; T and α default to the schedule's values
    """
    try:
        result = guarantee_for(
            request.regime,
            request.d,
            request.L,
            request.delta,
            T=request.T,
            alpha=request.alpha,
            epsilon=request.epsilon,
            mu=request.mu,
            Delta0=request.Delta0,
            R=request.R,
            simple=request.simple,
        )
        return BoundsResponse(**result)
    except HpzoError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.exception("Bound evaluation failed")
        raise HTTPException(status_code=500, detail=f"Failed to evaluate bound: {str(e)}")


@router.post("/compare", response_model=CompareResponse)
async def compare_baselines(request: CompareRequest):
    try:
        rows = comparison_table(
            request.d, request.L, request.mu, request.R, request.Delta0, request.epsilon, request.delta
        )
        return CompareResponse(rows=rows, count=len(rows))
    except HpzoError as e:
        raise HTTPException(status_code=400, detail=str(e))


def create_app() -> FastAPI:
    """Standalone application with the hpzo router mounted."""
    app = FastAPI(
        title="hpzo API",
        description="Schedules and high-probability guarantees for zeroth-order gradient descent",
        version=__version__,
    )
    app.include_router(router)
    return app
