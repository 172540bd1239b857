"""Brute-force oracles and seeded verification sweeps."""

from .oracle import brute_makespan, brute_welfare
from .verifier import verify, verify_seed

__all__ = ["brute_makespan", "brute_welfare", "verify", "verify_seed"]
