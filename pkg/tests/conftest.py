"""Shared pytest fixtures for the moldable scheduling test suite."""

from typing import Callable, Iterable, Optional

import pytest
from hypothesis import HealthCheck, settings

from src.models import TaskSet
from src.scheduling.params import search_params
from tests.fixtures import uniform_task

settings.register_profile(
    "moldsched",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("moldsched")


@pytest.fixture
def make_taskset() -> Callable[..., TaskSet]:
    """Build a task set of uniform tasks from a list of workloads."""

    def _make(
        workloads: Iterable,
        delta: int = 5,
        k: int = 5,
        m: int = 11,
        values: Optional[Iterable] = None,
    ) -> TaskSet:
        workloads = list(workloads)
        values = list(values) if values is not None else [None] * len(workloads)
        tasks = [uniform_task(i, w, k, v) for i, (w, v) in enumerate(zip(workloads, values))]
        return TaskSet(delta=delta, k=k, m=m, tasks=tasks)

    return _make


@pytest.fixture
def params5():
    """Parameters for delta=5: H=4, nu=2, delta'=5, r=3/4."""
    return search_params(5)


@pytest.fixture
def eleven_processor_example(make_taskset) -> TaskSet:
    """One A' task (2.4), two A_3 tasks (2.2 each) and one A'' task (0.7) at d=1."""
    return make_taskset(["2.4", "2.2", "2.2", "0.7"], m=11)
