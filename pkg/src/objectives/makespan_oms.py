"""
Makespan minimization by bisection over the UnitAlgo deadline.

Each probe runs UnitAlgo at a candidate deadline; a probe succeeds when every
task is placed. The search keeps a failing lower end L and a succeeding
upper end U and stops once U <= L(1 + epsilon).
"""

import logging
from fractions import Fraction
from typing import List, Optional, Tuple

from ..config import get_settings
from ..errors import DomainError, InfeasibleInputError
from ..models import OmsResult, ParamSet, Schedule, TaskSet
from ..scheduling.task_model import exec_time, fastest_time, workload
from ..scheduling.unit_algo import unit_algo

logger = logging.getLogger(__name__)


def makespan_lower_bound(tasks: TaskSet) -> Fraction:
    """max(longest fastest-possible task, total single-processor work / m)."""
    if not tasks.tasks:
        raise DomainError("task set is empty")
    fastest = max(fastest_time(task, tasks.k) for task in tasks.tasks)
    area = sum(workload(task, 1, tasks.k) for task in tasks.tasks) / tasks.m
    return max(fastest, area)


def initial_upper_bound(tasks: TaskSet) -> Fraction:
    """2 n max_j t_{j,1}."""
    return 2 * tasks.n * max(exec_time(task, 1, tasks.k) for task in tasks.tasks)


def approximation_guarantee(theta: Fraction, epsilon: Fraction) -> Optional[Fraction]:
    """Factor (1 + epsilon) / theta bounding U against the optimal makespan; None when theta <= 0."""
    if theta <= 0:
        return None
    return (1 + epsilon) / theta


def oms(tasks: TaskSet, params: ParamSet, epsilon: Optional[Fraction] = None) -> OmsResult:
    """Minimize the makespan of a task set.

    The lower bound is probed first and returned directly when it already
    succeeds. Otherwise it becomes the failing end and the succeeding end
    starts at 2 n max_j t_{j,1}; midpoints are exact rationals.

    Args:
        tasks: Non-empty validated task set
        params: Output of the parameter search for tasks.delta
        epsilon: Relative tolerance in (0, 1); defaults to the configured value

    Returns:
        OmsResult with the schedule found at U

    Raises:
        DomainError: If the task set is empty or epsilon is out of range
        InfeasibleInputError: If even the initial upper bound fails, e.g. m < delta'
    """
    if epsilon is None:
        epsilon = get_settings().default_epsilon
    if not (0 < epsilon < 1):
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon}")
    if not tasks.tasks:
        raise DomainError("task set is empty")

    lower_bound = makespan_lower_bound(tasks)
    initial_upper = initial_upper_bound(tasks)
    probes: List[Tuple[Fraction, bool]] = []

    def probe(d: Fraction) -> Tuple[Schedule, bool]:
        schedule = unit_algo(tasks, d, params)
        probes.append((d, schedule.all_placed))
        return schedule, schedule.all_placed

    schedule, ok = probe(lower_bound)
    if ok:
        logger.info("lower bound %s is already feasible", lower_bound)
        return OmsResult(
            schedule=schedule,
            U=lower_bound,
            L=lower_bound / 2,
            iterations=0,
            epsilon=epsilon,
            lower_bound=lower_bound,
            initial_upper=initial_upper,
            fast_exit=True,
            probes=probes,
        )

    best, ok = probe(initial_upper)
    if not ok:
        raise InfeasibleInputError(
            f"UnitAlgo fails at the upper bound {initial_upper} "
            f"(m={tasks.m}, delta'={params.delta_prime}, exit={best.exit_reason.value})"
        )

    low, high = lower_bound, initial_upper
    iterations = 0
    while high > low * (1 + epsilon):
        mid = (low + high) / 2
        iterations += 1
        schedule, ok = probe(mid)
        if ok:
            high, best = mid, schedule
        else:
            low = mid

    violations = monotonicity_violations(probes)
    if violations:
        logger.warning("feasibility was not monotone in d at %d probe(s): %s", len(violations), violations)
    logger.info("makespan U=%s after %d iteration(s), L=%s", high, iterations, low)

    return OmsResult(
        schedule=best,
        U=high,
        L=low,
        iterations=iterations,
        epsilon=epsilon,
        lower_bound=lower_bound,
        initial_upper=initial_upper,
        probes=probes,
        monotonicity_violations=violations,
    )


def monotonicity_violations(probes: List[Tuple[Fraction, bool]]) -> List[Fraction]:
    """Succeeding deadlines that lie below some failing deadline."""
    failures = [d for d, ok in probes if not ok]
    if not failures:
        return []
    highest_failure = max(failures)
    return sorted(d for d, ok in probes if ok and d < highest_failure)
