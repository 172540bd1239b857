"""Partition tasks into A', A_{H-1}, ..., A_nu and A'' for a deadline d."""

import logging
import random
from fractions import Fraction
from itertools import combinations, islice
from math import comb
from typing import Dict, List, Optional

from ..errors import DomainError
from ..models import Classification, ParamSet, TaskSet, ValidationReport, Violation
from .task_model import canonical_processors, exec_time

logger = logging.getLogger(__name__)


def classify(tasks: TaskSet, d: Fraction, params: ParamSet) -> Classification:
    """Classify every task of a task set at deadline d.

    A task whose canonical count gamma reaches H, or whose time on gamma
    processors is at least r*d, goes to A'. Otherwise it goes to A'' when
    gamma <= nu-1 or its time on delta' processors is below (1-r)*d, and to
    A_gamma in every remaining case. Tasks with no feasible processor count
    are listed as infeasible.

    Args:
        tasks: Validated task set
        d: Positive deadline
        params: Output of the parameter search for tasks.delta

    Returns:
        Classification with members sorted by task id
    """
    if d <= 0:
        raise DomainError(f"deadline must be positive, got {d}")
    if params.delta != tasks.delta:
        raise DomainError(f"parameters were computed for delta={params.delta}, not {tasks.delta}")

    r, H, nu, dp, k = params.r, params.H, params.nu, params.delta_prime, tasks.k
    a_prime = []
    a_h: Dict[int, List[int]] = {h: [] for h in range(H - 1, nu - 1, -1)}
    a_dprime = []
    infeasible = []
    gammas = {}

    for task in sorted(tasks.tasks, key=lambda t: t.id):
        gamma = canonical_processors(task, d, k)
        if gamma is None:
            infeasible.append(task.id)
            continue
        gammas[task.id] = gamma
        if gamma >= H or exec_time(task, gamma, k) >= r * d:
            a_prime.append((task.id, gamma))
        elif gamma <= nu - 1 or exec_time(task, dp, k) < (1 - r) * d:
            a_dprime.append(task.id)
        else:
            a_h[gamma].append(task.id)

    if infeasible:
        logger.info("%d task(s) cannot meet d=%s on any processor count", len(infeasible), d)
    return Classification(
        d=d,
        a_prime=a_prime,
        a_h=a_h,
        a_dprime=a_dprime,
        infeasible=infeasible,
        gammas=gammas,
    )


def check_classification(cls: Classification, tasks: TaskSet, params: ParamSet) -> ValidationReport:
    """Check the partition and the per-class execution time intervals.

    Every task appears in exactly one class. A' members run at least r*d on
    gamma processors or have gamma >= H; A_h members run on delta' processors
    in [max(1-r, (h-1)/delta')*d, (h/delta')*r*d); A'' members run below
    (1-r)*d on delta' processors or have gamma <= nu-1 with time below r*d.
    """
    violations = []
    ids = cls.all_ids()
    expected = sorted(t.id for t in tasks.tasks)
    if sorted(ids) != expected:
        violations.append(Violation(subject="partition", message="classes do not partition the task set"))

    task_map = tasks.task_map()
    d, r, dp, k = cls.d, params.r, params.delta_prime, tasks.k

    for task_id, gamma in cls.a_prime:
        task = task_map[task_id]
        if gamma < params.H and exec_time(task, gamma, k) < r * d:
            violations.append(Violation(subject="a_prime", position=task_id, message="runs below r*d with gamma < H"))

    for h, members in cls.a_h.items():
        low = max(1 - r, Fraction(h - 1, dp)) * d
        high = Fraction(h, dp) * r * d
        for task_id in members:
            t = exec_time(task_map[task_id], dp, k)
            if not (low <= t < high):
                violations.append(Violation(
                    subject=f"a_{h}",
                    position=task_id,
                    message=f"time {t} on delta' processors outside [{low}, {high})",
                ))

    for task_id in cls.a_dprime:
        task = task_map[task_id]
        t = exec_time(task, dp, k)
        gamma = cls.gammas.get(task_id)
        if t >= (1 - r) * d and (gamma is None or gamma > params.nu - 1):
            violations.append(Violation(subject="a_dprime", position=task_id, message=f"time {t} is not below (1-r)*d"))
        if t >= r * d:
            violations.append(Violation(subject="a_dprime", position=task_id, message=f"time {t} reaches r*d"))

    return ValidationReport(check="classification", checked=len(ids), violations=violations)


def x_h_property_check(
    cls: Classification,
    params: ParamSet,
    tasks: TaskSet,
    sample_limit: Optional[int] = None,
    seed: int = 0,
) -> ValidationReport:
    """Check that any x_h tasks of A_h fill one group to a load in [r*d, d].

    Combinations are enumerated exhaustively while their count stays within
    ``sample_limit``; beyond that a seeded random sample of that size is drawn.
    Classes with fewer than x_h members pass vacuously.
    """
    if sample_limit is None:
        from ..config import get_settings
        sample_limit = get_settings().x_h_sample_limit

    rng = random.Random(seed)
    task_map = tasks.task_map()
    d, dp, k = cls.d, params.delta_prime, tasks.k
    violations = []
    checked = 0

    for h, members in sorted(cls.a_h.items()):
        x = params.x[h]
        if len(members) < x:
            continue
        times = {task_id: exec_time(task_map[task_id], dp, k) for task_id in members}
        if comb(len(members), x) <= sample_limit:
            subsets = combinations(members, x)
        else:
            subsets = (rng.sample(members, x) for _ in range(sample_limit))
        for subset in islice(subsets, sample_limit):
            checked += 1
            load = sum(times[task_id] for task_id in subset)
            if not (params.r * d <= load <= d):
                violations.append(Violation(
                    subject=f"a_{h}",
                    message=f"tasks {sorted(subset)} load {load}, outside [{params.r * d}, {d}]",
                ))

    return ValidationReport(check="x_h", checked=checked, violations=violations)
