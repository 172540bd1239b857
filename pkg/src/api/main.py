"""FastAPI application exposing the scheduling workbench over HTTP."""

import logging
from typing import Any, Dict, Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware

from .. import __version__
from ..config import get_settings
from ..errors import DomainError, InvariantViolation
from ..models import FrozenModel, HealthCheck, Rational, TaskSet
from ..utils.file_utils import jsonable
from ..utils.workbench_service import WorkbenchService

logger = logging.getLogger(__name__)

# Initialize FastAPI app
app = FastAPI(
    title="MoldSched Workbench",
    description="Scheduling (delta, k)-monotonic moldable tasks: UnitAlgo, makespan bisection and welfare greedy",
    version=__version__,
    docs_url="/docs",
    redoc_url="/redoc",
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

settings = get_settings()
workbench = WorkbenchService(settings)


class DeadlineRequest(FrozenModel):
    """Task set plus a deadline."""
    instance: TaskSet
    d: Rational


class MakespanRequest(FrozenModel):
    """Task set plus an optional tolerance."""
    instance: TaskSet
    epsilon: Optional[Rational] = None


class WelfareRequest(FrozenModel):
    """Task set with values plus a deadline tau."""
    instance: TaskSet
    tau: Rational


def _run(operation, *args) -> Dict[str, Any]:
    try:
        return jsonable(operation(*args))
    except DomainError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except InvariantViolation as e:
        logger.error("self-check failed: %s", e)
        raise HTTPException(status_code=500, detail=f"Self-check failed: {e}")


@app.get("/health", response_model=HealthCheck)
async def health_check():
    """Health check endpoint."""
    return HealthCheck(status="healthy", version=__version__)


@app.get("/params/{delta}")
async def get_params(delta: int, k: Optional[int] = None, m: Optional[int] = None):
    """Parameter search result for delta, with the utilization bound when k and m are given."""
    return _run(workbench.params_report, delta, k, m)


@app.get("/tables")
async def get_tables():
    """Recompute the reference constant tables."""
    return _run(workbench.tables_report)


@app.post("/classify")
async def classify_tasks(request: DeadlineRequest):
    """Classify every task of an instance at deadline d."""
    return _run(workbench.classify_report, request.instance, request.d)


@app.post("/schedule")
async def schedule_tasks(request: DeadlineRequest):
    """Run UnitAlgo at deadline d."""
    def operation():
        schedule = workbench.schedule(request.instance, request.d)
        return workbench.schedule_report(request.instance, schedule)
    return _run(operation)


@app.post("/makespan")
async def minimize_makespan(request: MakespanRequest):
    """Minimize the makespan by bisection over the deadline."""
    def operation():
        result = workbench.makespan(request.instance, request.epsilon)
        return workbench.makespan_report(request.instance, result)
    return _run(operation)


@app.post("/welfare")
async def maximize_welfare(request: WelfareRequest):
    """Greedy social-welfare maximization within tau."""
    def operation():
        return workbench.welfare_report(request.instance, workbench.welfare(request.instance, request.tau))
    return _run(operation)


if __name__ == "__main__":
    import uvicorn

    uvicorn.run(app, host=settings.host, port=settings.port)
