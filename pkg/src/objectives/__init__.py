"""Makespan and social-welfare objectives built on UnitAlgo."""

from .makespan_oms import makespan_lower_bound, oms
from .welfare_greedy import check_welfare, gen_greedy, knapsack_upper_bound, marginal_order

__all__ = [
    "check_welfare",
    "gen_greedy",
    "knapsack_upper_bound",
    "makespan_lower_bound",
    "marginal_order",
    "oms",
]
