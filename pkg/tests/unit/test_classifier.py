"""Tests for task classification."""

from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.errors import DomainError
from src.models import PiecewiseProfile, Task, TaskSet
from src.scheduling.classifier import check_classification, classify, x_h_property_check
from src.scheduling.params import search_params
from tests.fixtures import random_taskset


def test_classify_examples(make_taskset, params5):
    """Test each class at d=1 for delta=5."""
    tasks = make_taskset(["2.4", "2.2", "0.6", "7", "1.35"])
    cls = classify(tasks, F(1), params5)
    assert cls.a_prime == [(0, 3)]
    assert cls.a_h == {3: [1], 2: [4]}
    assert cls.a_dprime == [2]
    assert cls.infeasible == [3]
    assert cls.gammas == {0: 3, 1: 3, 2: 1, 4: 2}


def test_classify_rejects_bad_input(make_taskset, params5):
    """Test non-positive deadlines and mismatched parameters."""
    tasks = make_taskset(["1"])
    with pytest.raises(DomainError):
        classify(tasks, F(0), params5)
    with pytest.raises(DomainError):
        classify(tasks, F(1), search_params(8))


def test_classification_checks_pass(make_taskset, params5):
    """Test the partition and interval checks on a mixed instance."""
    tasks = make_taskset(["2.4", "2.2", "2.1", "1.35", "1.35", "1.35", "0.6", "7"])
    cls = classify(tasks, F(1), params5)
    assert check_classification(cls, tasks, params5).ok
    report = x_h_property_check(cls, params5, tasks, sample_limit=100)
    assert report.ok
    assert report.checked == 2


def test_x_h_check_is_vacuous_for_small_classes(make_taskset, params5):
    """Test that classes with fewer than x_h members are skipped."""
    tasks = make_taskset(["2.2", "1.35"])
    cls = classify(tasks, F(1), params5)
    assert x_h_property_check(cls, params5, tasks, sample_limit=100).checked == 0


def test_x_h_check_samples_large_classes(make_taskset, params5):
    """Test that sampling is capped by the limit and seeded."""
    tasks = make_taskset(["1.35"] * 12)
    cls = classify(tasks, F(1), params5)
    first = x_h_property_check(cls, params5, tasks, sample_limit=10, seed=3)
    second = x_h_property_check(cls, params5, tasks, sample_limit=10, seed=3)
    assert first.checked == 10
    assert first == second
    assert first.ok


def test_classification_is_scale_invariant(make_taskset, params5):
    """Test that scaling workloads and deadline together keeps every class."""
    workloads = ["2.4", "2.2", "0.6", "7", "1.35"]
    base = classify(make_taskset(workloads), F(1), params5)
    scaled = classify(make_taskset([F(w) * 3 for w in workloads]), F(3), params5)
    assert base.model_dump(exclude={"d"}) == scaled.model_dump(exclude={"d"})


def test_classification_ignores_input_order(make_taskset, params5):
    """Test that reordering the task list does not change classification."""
    tasks = make_taskset(["2.4", "2.2", "0.6", "7", "1.35"])
    shuffled = tasks.with_tasks(list(reversed(tasks.tasks)))
    assert classify(tasks, F(1), params5) == classify(shuffled, F(1), params5)


@given(
    seed=st.integers(min_value=0, max_value=2**32),
    delta=st.sampled_from([2, 3, 5, 8, 10]),
    d=st.fractions(min_value=F(1, 2), max_value=F(12), max_denominator=12),
)
def test_classification_invariants_on_random_instances(seed, delta, d):
    """Test partition completeness and interval checks on seeded instances."""
    tasks = random_taskset(seed, delta=delta, n=25)
    params = search_params(delta)
    cls = classify(tasks, d, params)
    assert check_classification(cls, tasks, params).ok
    assert x_h_property_check(cls, params, tasks, sample_limit=20, seed=seed).ok


def test_piecewise_tasks_classify_like_tables(params5):
    """Test that a piecewise task lands in the same class as its table."""
    profile = PiecewiseProfile(base_workload=F("2.2"), linear_limit=5, growth_rate=F(1, 10))
    tasks = TaskSet(delta=5, k=8, m=11, tasks=[Task(id=0, profile=profile)])
    assert classify(tasks, F(1), params5).a_h[3] == [0]
