"""Tests for the greedy social-welfare maximizer."""

from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.errors import DomainError
from src.objectives.welfare_greedy import check_welfare, gen_greedy, knapsack_upper_bound, marginal_order
from src.scheduling.params import search_params
from src.verification.oracle import brute_welfare
from tests.fixtures import random_taskset


@pytest.fixture
def three_valued(make_taskset):
    """Three width-3 tasks at tau=1 on five processors, only one fits."""
    return make_taskset(["2.5", "2.5", "2.5"], m=5, values=[3, 2, 1])


def test_gen_greedy_stops_at_first_failing_prefix(three_valued, params5):
    """Test prefix acceptance, welfare and the knapsack bound."""
    result = gen_greedy(three_valued, F(1), params5)
    assert result.order == [0, 1, 2]
    assert result.accepted_prefix_len == 1
    assert result.welfare == 3
    assert result.first_rejected == 1
    assert result.unit_algo_calls == 2
    assert result.upper_bound == 5
    assert result.omega == F(1, 2)
    assert result.alpha == 1
    assert result.theta == F(1, 10)
    assert check_welfare(result, three_valued).ok
    assert brute_welfare(three_valued, F(1)) == 5


def test_marginal_order_drops_infeasible_tasks(make_taskset):
    """Test density ordering and the dropped ids."""
    tasks = make_taskset(["1", "7", "2"], m=5, values=[1, 100, 4])
    ordered, dropped = marginal_order(tasks, F(1))
    assert [t.id for t in ordered] == [2, 0]
    assert dropped == [1]


def test_marginal_order_breaks_ties_by_id(make_taskset):
    """Test that equal densities keep id order."""
    tasks = make_taskset(["2", "1", "1"], m=5, values=[2, 1, 1])
    ordered, _ = marginal_order(tasks, F(1))
    assert [t.id for t in ordered] == [0, 1, 2]


def test_knapsack_upper_bound_takes_a_fraction_of_the_last_task(make_taskset):
    """Test the fractional item at capacity m * tau."""
    tasks = make_taskset(["3", "3"], m=4, values=[3, "18/5"])
    assert knapsack_upper_bound(tasks, F(1)) == F(23, 5)


def test_missing_value_is_a_domain_error(make_taskset, params5):
    """Test that welfare needs a value on every task."""
    tasks = make_taskset(["1", "1"], m=5, values=[1, None])
    with pytest.raises(DomainError):
        gen_greedy(tasks, F(1), params5)
    with pytest.raises(DomainError):
        marginal_order(tasks.with_tasks(tasks.tasks[:1]), F(0))


def test_dense_cheap_task_can_block_a_valuable_one(make_taskset):
    """Test an instance where welfare falls below theta times the optimum.

    The cheap task is denser, so it is accepted first; the valuable task
    needs the whole machine and is rejected. The bound against the knapsack
    value still holds once the rejected value is added back.
    """
    tasks = make_taskset(["1/2", "8"], delta=5, k=8, m=8, values=[7, 100])
    params = search_params(5)
    result = gen_greedy(tasks, F(1), params)

    assert result.welfare == 7
    assert result.first_rejected == 1
    assert result.theta == F(3, 32)
    optimum = brute_welfare(tasks, F(1))
    assert optimum == 100
    assert result.welfare < result.theta * optimum
    assert result.upper_bound == F(403, 4)
    assert check_welfare(result, tasks).ok


@given(
    seed=st.integers(min_value=0, max_value=2**32),
    tau=st.fractions(min_value=F(1), max_value=F(20), max_denominator=8),
)
def test_greedy_results_pass_their_checks(seed, tau):
    """Test the welfare guarantees on seeded valued instances."""
    tasks = random_taskset(seed, delta=5, n=20, m=16, with_values=True)
    result = gen_greedy(tasks, tau, search_params(5))
    assert check_welfare(result, tasks).ok
    assert result.welfare <= result.upper_bound
