"""
Speedup profiles of (delta, k)-monotonic tasks.

Workloads D_{j,p} are exact rationals. Piecewise profiles are evaluated in
closed form so that large k never materializes a table.
"""

import logging
from fractions import Fraction
from math import ceil
from typing import Optional, Union

from ..errors import DomainError
from ..models import (
    PiecewiseProfile,
    SpeedupProfile,
    TableProfile,
    Task,
    ValidationReport,
    Violation,
)

logger = logging.getLogger(__name__)

ProfileOrTask = Union[SpeedupProfile, Task]


def _profile(subject: ProfileOrTask) -> SpeedupProfile:
    return subject.profile if isinstance(subject, Task) else subject


def workload(subject: ProfileOrTask, p: int, k: Optional[int] = None) -> Fraction:
    """Total work D_{j,p} when the task runs on p processors.

    Args:
        subject: Task or bare speedup profile
        p: Processor count, 1 <= p <= k
        k: Parallelism bound; defaults to the table length for table profiles

    Returns:
        Exact workload

    Raises:
        DomainError: If p lies outside [1, k]
    """
    profile = _profile(subject)
    if isinstance(profile, TableProfile):
        bound = len(profile.workloads) if k is None else min(k, len(profile.workloads))
    else:
        bound = k
    if p < 1 or (bound is not None and p > bound):
        raise DomainError(f"processor count {p} outside [1, {bound}]")

    if isinstance(profile, TableProfile):
        return profile.workloads[p - 1]
    if p <= profile.linear_limit:
        return profile.base_workload
    return profile.base_workload * (1 + profile.growth_rate * (p - profile.linear_limit))


def exec_time(subject: ProfileOrTask, p: int, k: Optional[int] = None) -> Fraction:
    """Execution time t_{j,p} = D_{j,p} / p."""
    return workload(subject, p, k) / p


def fastest_time(subject: ProfileOrTask, k: int) -> Fraction:
    """Smallest execution time over every allowed processor count."""
    return min(exec_time(subject, p, k) for p in range(1, k + 1))


def canonical_processors(task: ProfileOrTask, d: Fraction, k: int) -> Optional[int]:
    """Smallest p in [1, k] with t_{j,p} <= d, or None if no such p exists.

    The scan starts at ceil(D_{j,1} / d), below which no processor count can
    meet the deadline since workloads never drop beneath D_{j,1}.
    """
    if d <= 0:
        raise DomainError(f"deadline must be positive, got {d}")
    first = max(1, ceil(workload(task, 1, k) / d))
    for p in range(min(first, k), k + 1):
        if workload(task, p, k) <= p * d:
            return p
    return None


def validate_profile(profile: SpeedupProfile, delta: int, k: int) -> ValidationReport:
    """Check that a profile is (delta, k)-monotonic.

    Workloads must be positive, constant on [1, delta] and non-decreasing on
    [delta, k]. Positions in the report are 1-based processor counts.
    """
    violations = []
    if isinstance(profile, TableProfile):
        workloads = profile.workloads
        if len(workloads) != k:
            violations.append(Violation(
                subject="workloads",
                message=f"expected {k} workloads, found {len(workloads)}",
            ))
        for p, value in enumerate(workloads, start=1):
            if value <= 0:
                violations.append(Violation(subject="workloads", position=p, message="workload must be positive"))
        for p in range(2, min(delta, len(workloads)) + 1):
            if workloads[p - 1] != workloads[0]:
                violations.append(Violation(
                    subject="workloads",
                    position=p,
                    message=f"workload {workloads[p - 1]} differs from D1={workloads[0]} inside [1, {delta}]",
                ))
        for p in range(max(delta, 1) + 1, len(workloads) + 1):
            if workloads[p - 1] < workloads[p - 2]:
                violations.append(Violation(
                    subject="workloads",
                    position=p,
                    message=f"workload decreases from {workloads[p - 2]} to {workloads[p - 1]}",
                ))
        checked = len(workloads)
    else:
        if profile.base_workload <= 0:
            violations.append(Violation(subject="d1", position=1, message="workload must be positive"))
        if profile.growth_rate < 0:
            violations.append(Violation(
                subject="growth",
                position=profile.linear_limit + 1,
                message="negative growth makes the workload decrease",
            ))
        if profile.linear_limit > k:
            violations.append(Violation(
                subject="linear_limit",
                position=profile.linear_limit,
                message=f"linear limit exceeds k={k}",
            ))
        if profile.linear_limit < delta and profile.growth_rate != 0:
            violations.append(Violation(
                subject="linear_limit",
                position=profile.linear_limit + 1,
                message=f"workload grows inside the constant region [1, {delta}]",
            ))
        checked = k
    return ValidationReport(check="profile", checked=checked, violations=violations)


def profile_table(subject: ProfileOrTask, k: int) -> TableProfile:
    """Materialize any profile as an explicit table of k workloads."""
    return TableProfile(workloads=[workload(subject, p, k) for p in range(1, k + 1)])
