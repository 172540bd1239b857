"""
UnitAlgo: pack a task set into [0, d] on m processors.

Phase 1 gives every A' task gamma processors of its own for the whole window.
Phase 2 opens groups of delta' processors and fills each group
sequentially, always drawing from the highest non-empty class
(A_{H-1} first, A'' last), until the next task would overrun d.
"""

import logging
import random
from collections import deque
from fractions import Fraction
from typing import Deque, Dict, List, Optional, Tuple

from ..errors import DomainError
from ..models import (
    ExitReason,
    GroupRecord,
    ParamSet,
    Placement,
    Schedule,
    TaskSet,
    ValidationReport,
    Violation,
)
from .classifier import classify
from .params import theta_bound
from .task_model import canonical_processors, exec_time, workload

logger = logging.getLogger(__name__)

CAPACITY_EXITS = (ExitReason.INSUFFICIENT_FOR_A_PRIME, ExitReason.INSUFFICIENT_FOR_GROUP)


def unit_algo(
    tasks: TaskSet,
    d: Fraction,
    params: ParamSet,
    shuffle_seed: Optional[int] = None,
) -> Schedule:
    """Schedule a task set within deadline d.

    Args:
        tasks: Validated task set
        d: Positive deadline
        params: Output of the parameter search for tasks.delta
        shuffle_seed: If given, order within each class is shuffled with this
            seed instead of following task ids

    Returns:
        Schedule whose exit reason tells whether every task was placed

    Raises:
        DomainError: If d <= 0
    """
    if d <= 0:
        raise DomainError(f"deadline must be positive, got {d}")

    cls = classify(tasks, d, params)
    task_map = tasks.task_map()
    k, m, dp = tasks.k, tasks.m, params.delta_prime
    rng = random.Random(shuffle_seed) if shuffle_seed is not None else None

    placements: List[Placement] = []
    groups: List[GroupRecord] = []
    rejected: List[int] = list(cls.infeasible)
    examinations = 0
    next_free = 1
    idle = m

    # Phase 1: A'
    a_prime = sorted(cls.a_prime, key=lambda item: (-item[1], item[0]))
    if rng is not None:
        rng.shuffle(a_prime)
    queues: List[Tuple[int, Deque[int]]] = []
    for h in params.group_classes:
        members = list(cls.a_dprime if h == params.a_dprime_index else cls.a_h.get(h, []))
        if rng is not None:
            rng.shuffle(members)
        queues.append((h, deque(members)))

    exit_reason: Optional[ExitReason] = None
    for index, (task_id, gamma) in enumerate(a_prime):
        examinations += 1
        if gamma > idle:
            exit_reason = ExitReason.INSUFFICIENT_FOR_A_PRIME
            rejected.extend(tid for tid, _ in a_prime[index:])
            for _, queue in queues:
                rejected.extend(queue)
            break
        placements.append(Placement(
            task_id=task_id,
            first_processor=next_free,
            width=gamma,
            start=Fraction(0),
            end=exec_time(task_map[task_id], gamma, k),
        ))
        next_free += gamma
        idle -= gamma

    # Phase 2: groups of delta' processors
    if exit_reason is None:
        while any(queue for _, queue in queues):
            if idle < dp:
                exit_reason = ExitReason.INSUFFICIENT_FOR_GROUP
                for _, queue in queues:
                    rejected.extend(queue)
                break
            clock = Fraction(0)
            served: List[int] = []
            closing: Optional[int] = None
            for h, queue in queues:
                while queue:
                    task_id = queue[0]
                    examinations += 1
                    t = exec_time(task_map[task_id], dp, k)
                    if clock + t > d:
                        closing = h
                        break
                    queue.popleft()
                    placements.append(Placement(
                        task_id=task_id,
                        first_processor=next_free,
                        width=dp,
                        start=clock,
                        end=clock + t,
                    ))
                    clock += t
                    served.append(h)
                if closing is not None:
                    break
            groups.append(GroupRecord(first_processor=next_free, classes=served, closing_class=closing, busy=clock))
            next_free += dp
            idle -= dp

    if exit_reason is None:
        exit_reason = ExitReason.INFEASIBLE_TASK if cls.infeasible else ExitReason.ALL_PLACED

    logger.debug(
        "unit_algo d=%s m=%d: %d placed, %d rejected, %d group(s), exit=%s",
        d, m, len(placements), len(rejected), len(groups), exit_reason.value,
    )
    return Schedule(
        d=d,
        m=m,
        exit_reason=exit_reason,
        placements=placements,
        rejected=rejected,
        groups=groups,
        examinations=examinations,
    )


def utilization(schedule: Schedule) -> Fraction:
    """Busy processor-time divided by m*d."""
    busy = sum((p.width * (p.end - p.start) for p in schedule.placements), Fraction(0))
    return busy / (schedule.m * schedule.d)


def min_workload_check(schedule: Schedule, tasks: TaskSet, d: Optional[Fraction] = None) -> ValidationReport:
    """Check that every placed task does the same work it would on gamma(j, d) processors."""
    d = schedule.d if d is None else d
    task_map = tasks.task_map()
    violations = []
    for placement in schedule.placements:
        task = task_map[placement.task_id]
        gamma = canonical_processors(task, d, tasks.k)
        if gamma is None:
            violations.append(Violation(subject="task", position=placement.task_id, message="no feasible processor count"))
            continue
        used, minimal = workload(task, placement.width, tasks.k), workload(task, gamma, tasks.k)
        if used != minimal:
            violations.append(Violation(
                subject="task",
                position=placement.task_id,
                message=f"workload {used} on {placement.width} processors exceeds {minimal}",
            ))
    return ValidationReport(check="min_workload", checked=len(schedule.placements), violations=violations)


def _group_bound(group: GroupRecord, params: ParamSet) -> Optional[Fraction]:
    if group.closing_class is None:
        return None
    closing = group.closing_class
    if closing == params.a_dprime_index or all(h == closing for h in group.classes):
        return params.r
    return 1 - Fraction(closing, params.delta_prime) * params.r


def verify_schedule(schedule: Schedule, tasks: TaskSet, params: ParamSet) -> ValidationReport:
    """Check a UnitAlgo schedule against its structural and load guarantees.

    Covers execution times, the [0, d] window, processor bounds, overlaps,
    widths by class, the load of every closed group, the utilization bound
    on capacity exits and the examination count.
    """
    violations = []
    task_map = tasks.task_map()
    d, m, k = schedule.d, schedule.m, tasks.k

    placed_ids = [p.task_id for p in schedule.placements]
    if len(set(placed_ids)) != len(placed_ids):
        violations.append(Violation(subject="placements", message="a task is placed twice"))
    if set(placed_ids) & set(schedule.rejected):
        violations.append(Violation(subject="placements", message="a task is both placed and rejected"))
    if sorted(placed_ids + schedule.rejected) != sorted(task_map):
        violations.append(Violation(subject="placements", message="placed and rejected tasks do not cover the task set"))
    if bool(schedule.rejected) != (schedule.exit_reason != ExitReason.ALL_PLACED):
        violations.append(Violation(subject="exit_reason", message=f"{schedule.exit_reason.value} with {len(schedule.rejected)} rejected"))

    for p in schedule.placements:
        task = task_map.get(p.task_id)
        if task is None:
            violations.append(Violation(subject="task", position=p.task_id, message="unknown task"))
            continue
        if p.end - p.start != exec_time(task, p.width, k):
            violations.append(Violation(subject="task", position=p.task_id, message="duration differs from t_{j,p}"))
        if not (0 <= p.start < p.end <= d):
            violations.append(Violation(subject="task", position=p.task_id, message=f"[{p.start}, {p.end}) leaves [0, {d}]"))
        if p.last_processor > m:
            violations.append(Violation(subject="task", position=p.task_id, message=f"uses processor {p.last_processor} > m"))

    ordered = sorted(schedule.placements, key=lambda p: (p.first_processor, p.start))
    for i, a in enumerate(ordered):
        for b in ordered[i + 1:]:
            if b.first_processor > a.last_processor:
                break
            if a.start < b.end and b.start < a.end:
                violations.append(Violation(subject="overlap", position=a.task_id, message=f"overlaps task {b.task_id}"))

    cls = classify(tasks, d, params)
    a_prime = dict(cls.a_prime)
    for p in schedule.placements:
        expected = a_prime.get(p.task_id, params.delta_prime)
        if p.width != expected:
            violations.append(Violation(subject="width", position=p.task_id, message=f"width {p.width}, expected {expected}"))

    mixed_closings: Dict[int, int] = {}
    for group in schedule.groups:
        bound = _group_bound(group, params)
        if bound is None:
            continue
        load = group.busy / d
        if load < bound:
            violations.append(Violation(
                subject="group",
                position=group.first_processor,
                message=f"load {load} below {bound}",
            ))
        if bound != params.r:
            mixed_closings[group.closing_class] = mixed_closings.get(group.closing_class, 0) + 1
    for closing, count in mixed_closings.items():
        if count > 1:
            violations.append(Violation(subject="group", message=f"{count} mixed groups close on class {closing}"))

    if schedule.exit_reason in CAPACITY_EXITS and not cls.infeasible:
        theta = theta_bound(params, k).theta(m)
        util = utilization(schedule)
        if util < theta:
            violations.append(Violation(subject="utilization", message=f"{util} below theta={theta}"))

    if schedule.examinations > 2 * len(task_map):
        violations.append(Violation(subject="examinations", message=f"{schedule.examinations} exceeds 2n"))

    return ValidationReport(check="schedule", checked=len(schedule.placements), violations=violations)
