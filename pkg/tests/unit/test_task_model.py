"""Tests for speedup profiles and canonical processor counts."""

from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic import ValidationError

from src.errors import DomainError
from src.models import PiecewiseProfile, TableProfile, Task, TaskSet
from src.scheduling.task_model import (
    canonical_processors,
    exec_time,
    fastest_time,
    profile_table,
    validate_profile,
    workload,
)


def piecewise(d1="10", limit=5, growth="1/10") -> PiecewiseProfile:
    return PiecewiseProfile(base_workload=F(d1), linear_limit=limit, growth_rate=F(growth))


def test_piecewise_workload_grows_linearly_past_limit():
    """Test that workload grows by D1*g per processor beyond the linear limit."""
    profile = piecewise()
    assert workload(profile, 5, 10) == 10
    assert workload(profile, 7, 10) == 12
    assert exec_time(profile, 10, 10) == F(3, 2)


def test_workload_rejects_out_of_range_processor_counts():
    """Test that p outside [1, k] is a domain error."""
    profile = TableProfile(workloads=[F(4)] * 3)
    with pytest.raises(DomainError):
        workload(profile, 0)
    with pytest.raises(DomainError):
        workload(profile, 4)
    with pytest.raises(DomainError):
        workload(piecewise(), 11, 10)


def test_canonical_processors_examples():
    """Test the smallest feasible processor count at d=1."""
    k = 5
    assert canonical_processors(TableProfile(workloads=[F("2.4")] * k), F(1), k) == 3
    assert canonical_processors(TableProfile(workloads=[F("0.6")] * k), F(1), k) == 1
    assert canonical_processors(TableProfile(workloads=[F(7)] * k), F(1), k) is None
    assert canonical_processors(TableProfile(workloads=[F(12)] * k), F(2), k) is None


def test_canonical_processors_rejects_non_positive_deadline():
    """Test that d <= 0 is a domain error."""
    with pytest.raises(DomainError):
        canonical_processors(TableProfile(workloads=[F(1)]), F(0), 1)


def test_canonical_processors_accepts_tasks():
    """Test that a Task is accepted where a profile is."""
    task = Task(id=0, profile=piecewise())
    assert canonical_processors(task, F(2), 10) == 5


def test_validate_profile_flags_decrease_after_delta():
    """Test that a workload drop beyond delta is reported at its position."""
    profile = TableProfile(workloads=[F(w) for w in (10, 10, 10, 12, 11)])
    report = validate_profile(profile, delta=3, k=5)
    assert not report.ok
    assert [v.position for v in report.violations] == [5]


def test_validate_profile_flags_growth_inside_constant_region():
    """Test that a workload change inside [1, delta] is reported."""
    profile = TableProfile(workloads=[F(w) for w in (10, 10, 11, 12, 13)])
    report = validate_profile(profile, delta=3, k=5)
    assert [v.position for v in report.violations] == [3]


def test_validate_profile_flags_wrong_length_and_non_positive():
    """Test that table length and positivity are checked."""
    assert not validate_profile(TableProfile(workloads=[F(1)] * 4), delta=2, k=5).ok
    assert not validate_profile(TableProfile(workloads=[F(0)] * 5), delta=5, k=5).ok


def test_validate_piecewise_profile():
    """Test piecewise limits against delta and k."""
    assert validate_profile(piecewise(limit=5), delta=5, k=10).ok
    assert not validate_profile(piecewise(limit=3), delta=5, k=10).ok
    assert not validate_profile(piecewise(limit=12), delta=5, k=10).ok
    assert validate_profile(piecewise(limit=3, growth="0"), delta=5, k=10).ok


def test_taskset_rejects_invalid_profiles_and_duplicate_ids():
    """Test that TaskSet validation catches bad profiles and repeated ids."""
    bad = Task(id=0, profile=TableProfile(workloads=[F(w) for w in (10, 10, 10, 12, 11)]))
    with pytest.raises(ValidationError):
        TaskSet(delta=3, k=5, m=4, tasks=[bad])
    good = Task(id=1, profile=TableProfile(workloads=[F(1)] * 5))
    with pytest.raises(ValidationError):
        TaskSet(delta=3, k=5, m=4, tasks=[good, good])
    with pytest.raises(ValidationError):
        TaskSet(delta=6, k=5, m=4, tasks=[])


def test_profile_table_matches_closed_form():
    """Test that materializing a piecewise profile keeps every workload."""
    profile = piecewise()
    table = profile_table(profile, 10)
    assert table.workloads == [workload(profile, p, 10) for p in range(1, 11)]
    assert fastest_time(profile, 10) == min(exec_time(profile, p, 10) for p in range(1, 11))


profiles = st.builds(
    lambda d1, limit_offset, growth: piecewise(d1, 5 + limit_offset, growth),
    st.fractions(min_value=F(1, 10), max_value=F(50), max_denominator=20),
    st.integers(min_value=0, max_value=3),
    st.fractions(min_value=F(0), max_value=F(1), max_denominator=20),
)
deadlines = st.fractions(min_value=F(1, 10), max_value=F(60), max_denominator=30)


@given(profile=profiles, d1=deadlines, d2=deadlines)
def test_canonical_processors_is_monotone_in_deadline(profile, d1, d2):
    """Test that a later deadline never needs more processors."""
    low, high = sorted((d1, d2))
    k = 8
    g_low = canonical_processors(profile, low, k)
    g_high = canonical_processors(profile, high, k)
    if g_low is not None:
        assert g_high is not None and g_high <= g_low
    if g_high is not None:
        assert exec_time(profile, g_high, k) <= high
        if g_high > 1:
            assert exec_time(profile, g_high - 1, k) > high


@given(profile=profiles)
def test_profiles_satisfy_monotonicity(profile):
    """Test that workloads never shrink and times never grow within the constant region."""
    k, delta = 8, 5
    for p in range(1, k):
        assert workload(profile, p, k) <= workload(profile, p + 1, k)
    for p in range(1, delta):
        assert exec_time(profile, p + 1, k) < exec_time(profile, p, k)


@given(profile=profiles, d=deadlines)
def test_canonical_time_lies_in_the_last_fraction_of_the_window(profile, d):
    """Test that d >= t_gamma > ((gamma - 1) / gamma) * d whenever gamma exists."""
    k = 8
    gamma = canonical_processors(profile, d, k)
    if gamma is None:
        assert fastest_time(profile, k) > d
        return
    t = exec_time(profile, gamma, k)
    assert t <= d
    assert t > F(gamma - 1, gamma) * d
