"""Builders for test instances."""

from fractions import Fraction

from src.models import GeneratorSpec, TableProfile, Task, TaskSet
from src.utils.generator import generate


def uniform_task(task_id: int, workload, k: int, value=None) -> Task:
    """Task whose workload is the same on every processor count."""
    return Task(
        id=task_id,
        profile=TableProfile(workloads=[Fraction(workload)] * k),
        value=None if value is None else Fraction(value),
    )


def random_taskset(seed: int, delta: int = 5, n: int = 30, m: int = 40, with_values: bool = False) -> TaskSet:
    """Seeded piecewise instance used by property tests."""
    return generate(GeneratorSpec(
        n=n,
        delta=delta,
        k=delta + 3,
        m=m,
        workload_range=(Fraction(1), Fraction(20)),
        growth_range=(Fraction(0), Fraction(1, 4)),
        value_range=(Fraction(1), Fraction(10)) if with_values else None,
        seed=seed,
    ))
