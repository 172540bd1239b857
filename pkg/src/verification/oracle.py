"""
Exact optima for tiny instances by exhaustive enumeration.

Every width allocation is combined with every task order and decoded by a
serial schedule generation scheme: each task starts at the earliest time
its processor demand fits. Some optimal schedule is active, so the best
decoded makespan is optimal. Times are scaled to integers first.
"""

import logging
from fractions import Fraction
from itertools import combinations, permutations, product
from math import lcm
from typing import List, Optional, Sequence, Tuple

from ..errors import DomainError, OracleLimitError
from ..models import OracleLimits, Task, TaskSet
from ..scheduling.task_model import canonical_processors, exec_time

logger = logging.getLogger(__name__)

Option = Tuple[int, Fraction]  # (width, execution time)
Job = Tuple[int, int]  # (width, scaled duration)


def _check_limits(tasks: TaskSet, limits: OracleLimits) -> None:
    if tasks.n > limits.max_tasks:
        raise OracleLimitError(f"{tasks.n} tasks exceed the oracle limit of {limits.max_tasks}")
    if tasks.m > limits.max_procs:
        raise OracleLimitError(f"m={tasks.m} exceeds the oracle limit of {limits.max_procs}")


def _options(task: Task, k: int, cap: int, deadline: Optional[Fraction] = None) -> List[Option]:
    """Widths worth trying: a width is skipped when a smaller one runs no slower."""
    options = []
    best: Optional[Fraction] = None
    for p in range(1, cap + 1):
        t = exec_time(task, p, k)
        if best is not None and t >= best:
            continue
        best = t
        if deadline is None or t <= deadline:
            options.append((p, t))
    return options


def _fits(placed: Sequence[Tuple[int, int, int]], start: int, end: int, width: int, m: int) -> bool:
    points = {start} | {s for s, _, _ in placed if start < s < end}
    for point in points:
        used = sum(w for s, e, w in placed if s <= point < e)
        if used + width > m:
            return False
    return True


def _serial_decode(jobs: Sequence[Job], m: int, cutoff: Optional[int]) -> Optional[int]:
    """Makespan of the earliest-fit schedule for jobs in this order; None once it reaches cutoff."""
    placed: List[Tuple[int, int, int]] = []
    makespan = 0
    for width, duration in jobs:
        for start in sorted({0} | {e for _, e, _ in placed}):
            if _fits(placed, start, start + duration, width, m):
                break
        placed.append((start, start + duration, width))
        makespan = max(makespan, start + duration)
        if cutoff is not None and makespan >= cutoff:
            return None
    return makespan


def _lower_bound(jobs: Sequence[Job], m: int) -> int:
    area = sum(w * t for w, t in jobs)
    return max(max(t for _, t in jobs), -(-area // m))


def _min_makespan(option_sets: List[List[Option]], m: int, target: Optional[int] = None, scale: int = 1) -> Optional[int]:
    """Smallest scaled makespan over all allocations and orders.

    With ``target`` set, returns as soon as a makespan <= target is found and
    None if none exists.
    """
    best: Optional[int] = None
    cutoff = None if target is None else target + 1
    for allocation in product(*option_sets):
        jobs = [(w, int(t * scale)) for w, t in allocation]
        bound = _lower_bound(jobs, m)
        if cutoff is not None and bound >= cutoff:
            continue
        seen = set()
        for order in permutations(jobs):
            if order in seen:
                continue
            seen.add(order)
            makespan = _serial_decode(order, m, cutoff)
            if makespan is None:
                continue
            cutoff = makespan
            best = makespan
            if target is not None or makespan == bound:
                break
        if best is not None and target is not None:
            return best
    return best


def _scale(option_sets: List[List[Option]], *extra: Fraction) -> int:
    denominators = [t.denominator for options in option_sets for _, t in options]
    denominators.extend(x.denominator for x in extra)
    return lcm(1, *denominators)


def brute_makespan(tasks: TaskSet, limits: Optional[OracleLimits] = None) -> Fraction:
    """Optimal makespan by exhaustive search.

    Raises:
        OracleLimitError: If the instance exceeds the limits
    """
    limits = limits or OracleLimits()
    _check_limits(tasks, limits)
    if not tasks.tasks:
        return Fraction(0)
    cap = limits.width_cap(tasks.k, tasks.m)
    option_sets = [_options(task, tasks.k, cap) for task in tasks.tasks]
    scale = _scale(option_sets)
    best = _min_makespan(option_sets, tasks.m, scale=scale)
    logger.debug("brute makespan over %d task(s): %s", tasks.n, Fraction(best, scale))
    return Fraction(best, scale)


def brute_welfare(tasks: TaskSet, tau: Fraction, limits: Optional[OracleLimits] = None) -> Fraction:
    """Highest total value of a task subset schedulable within tau.

    Subsets are tried in order of decreasing value; the first one with a
    schedule of makespan <= tau is optimal.

    Raises:
        DomainError: If tau <= 0 or a task has no value
        OracleLimitError: If the instance exceeds the limits
    """
    limits = limits or OracleLimits()
    _check_limits(tasks, limits)
    if tau <= 0:
        raise DomainError(f"tau must be positive, got {tau}")
    for task in tasks.tasks:
        if task.value is None:
            raise DomainError(f"task {task.id} has no value")

    cap = limits.width_cap(tasks.k, tasks.m)
    candidates = []
    for task in tasks.tasks:
        if canonical_processors(task, tau, tasks.k) is None:
            continue
        options = _options(task, tasks.k, cap, deadline=tau)
        if options:
            candidates.append((task, options))

    subsets = []
    for size in range(len(candidates), 0, -1):
        for subset in combinations(candidates, size):
            subsets.append((sum(task.value for task, _ in subset), subset))
    subsets.sort(key=lambda item: -item[0])

    for value, subset in subsets:
        option_sets = [options for _, options in subset]
        scale = _scale(option_sets, tau)
        if _min_makespan(option_sets, tasks.m, target=int(tau * scale), scale=scale) is not None:
            return value
    return Fraction(0)
