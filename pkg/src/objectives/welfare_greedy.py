"""
Social-welfare maximization for a fixed deadline tau.

Tasks are ranked by value per unit of minimal work. The greedy accepts the
longest prefix of that ranking that UnitAlgo can place in full.
"""

import logging
from fractions import Fraction
from typing import List, Optional, Tuple

from ..errors import DomainError
from ..models import ParamSet, Task, TaskSet, ValidationReport, Violation, WelfareResult
from ..scheduling.params import theta_bound
from ..scheduling.task_model import canonical_processors, workload
from ..scheduling.unit_algo import unit_algo, utilization

logger = logging.getLogger(__name__)


def _value(task: Task) -> Fraction:
    if task.value is None:
        raise DomainError(f"task {task.id} has no value")
    return task.value


def marginal_order(tasks: TaskSet, tau: Fraction) -> Tuple[List[Task], List[int]]:
    """Rank tasks by v_j / D_{j, gamma(j, tau)} descending, ties by id.

    Returns:
        Ordered tasks, and the ids of tasks dropped because no processor count
        meets tau

    Raises:
        DomainError: If tau <= 0 or a task has no value
    """
    if tau <= 0:
        raise DomainError(f"tau must be positive, got {tau}")
    ranked = []
    dropped = []
    for task in tasks.tasks:
        value = _value(task)
        gamma = canonical_processors(task, tau, tasks.k)
        if gamma is None:
            dropped.append(task.id)
            continue
        ranked.append((value / workload(task, gamma, tasks.k), task))
    ranked.sort(key=lambda item: (-item[0], item[1].id))
    return [task for _, task in ranked], sorted(dropped)


def knapsack_upper_bound(tasks: TaskSet, tau: Fraction) -> Fraction:
    """Fractional knapsack over minimal workloads with capacity m*tau.

    No schedule within tau can collect more value, since every accepted task
    occupies at least its minimal workload of the m*tau processor-time.
    """
    ordered, _ = marginal_order(tasks, tau)
    remaining = tasks.m * tau
    total = Fraction(0)
    for task in ordered:
        size = workload(task, canonical_processors(task, tau, tasks.k), tasks.k)
        if size <= remaining:
            total += _value(task)
            remaining -= size
        else:
            total += _value(task) * remaining / size
            break
    return total


def gen_greedy(tasks: TaskSet, tau: Fraction, params: ParamSet) -> WelfareResult:
    """Accept the longest feasible prefix of the marginal order.

    Prefixes are tried in increasing length and the search stops at the first
    prefix UnitAlgo cannot place in full.
    """
    ordered, dropped = marginal_order(tasks, tau)
    if dropped:
        logger.info("dropping %d task(s) infeasible at tau=%s: %s", len(dropped), tau, dropped)

    best = unit_algo(tasks.with_tasks([]), tau, params)
    accepted = 0
    calls = 0
    first_rejected: Optional[int] = None
    for i in range(1, len(ordered) + 1):
        schedule = unit_algo(tasks.with_tasks(ordered[:i]), tau, params)
        calls += 1
        if not schedule.all_placed:
            first_rejected = ordered[i - 1].id
            break
        accepted, best = i, schedule

    welfare = sum((_value(task) for task in ordered[:accepted]), Fraction(0))
    alpha = Fraction(1)
    task_map = tasks.task_map()
    for placement in best.placements:
        task = task_map[placement.task_id]
        gamma = canonical_processors(task, tau, tasks.k)
        alpha = min(alpha, workload(task, gamma, tasks.k) / workload(task, placement.width, tasks.k))

    result = WelfareResult(
        tau=tau,
        accepted_prefix_len=accepted,
        order=[task.id for task in ordered],
        schedule=best,
        welfare=welfare,
        omega=utilization(best),
        alpha=alpha,
        upper_bound=knapsack_upper_bound(tasks, tau),
        theta=theta_bound(params, tasks.k).theta(tasks.m),
        dropped_infeasible=dropped,
        first_rejected=first_rejected,
        unit_algo_calls=calls,
    )
    logger.info("welfare %s from %d of %d task(s), upper bound %s", welfare, accepted, len(ordered), result.upper_bound)
    return result


def check_welfare(result: WelfareResult, tasks: TaskSet) -> ValidationReport:
    """Check the guarantees a greedy result carries against its knapsack bound.

    welfare <= UB, welfare >= omega * alpha * UB, and when a task was
    rejected, welfare plus that task's value reaches theta * UB.
    """
    violations = []
    task_map = tasks.task_map()
    if result.alpha != 1:
        violations.append(Violation(subject="alpha", message=f"alpha={result.alpha}, expected 1"))
    if result.welfare > result.upper_bound:
        violations.append(Violation(subject="welfare", message=f"{result.welfare} exceeds upper bound {result.upper_bound}"))
    if result.welfare < result.omega * result.alpha * result.upper_bound:
        violations.append(Violation(subject="welfare", message="below omega * alpha * UB"))
    if result.first_rejected is not None:
        augmented = result.welfare + _value(task_map[result.first_rejected])
        if augmented < result.theta * result.upper_bound:
            violations.append(Violation(
                subject="welfare",
                message=f"welfare plus first rejected value {augmented} below theta * UB",
            ))
    placed = sorted(p.task_id for p in result.schedule.placements)
    if placed != sorted(result.order[:result.accepted_prefix_len]):
        violations.append(Violation(subject="prefix", message="placed tasks differ from the accepted prefix"))
    if result.unit_algo_calls > len(result.order):
        violations.append(Violation(subject="calls", message=f"{result.unit_algo_calls} UnitAlgo calls"))
    return ValidationReport(check="welfare", checked=len(result.order), violations=violations)
