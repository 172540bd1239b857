"""Large seeded runs covering the guarantees end to end."""

import math
import random
from fractions import Fraction as F
from functools import lru_cache

from src.models import GeneratorSpec, OracleLimits
from src.scheduling.classifier import check_classification, classify, x_h_property_check
from src.scheduling.params import search_params, theta_bound
from src.scheduling.task_model import fastest_time, workload
from src.scheduling.unit_algo import CAPACITY_EXITS, min_workload_check, unit_algo, utilization, verify_schedule
from src.utils.file_utils import FileUtils
from src.utils.generator import generate
from src.verification.verifier import verify, verify_seed
from tests.fixtures import random_taskset

params_for = lru_cache(maxsize=None)(search_params)


def rejecting_instance(seed):
    """An instance whose minimal work exceeds m*d, so UnitAlgo must reject something."""
    rng = random.Random(seed)
    delta = rng.choice([5, 8, 10, 64])
    k = delta + rng.randint(0, 16)
    tasks = generate(GeneratorSpec(
        n=rng.randint(20, 200),
        delta=delta,
        k=k,
        m=k,
        workload_range=(F(1), F(100)),
        growth_range=(F(0), F(1, 4)),
        seed=seed,
    ))
    d = max(fastest_time(task, k) for task in tasks.tasks) * F(rng.randint(10, 40), 10)
    total = sum(workload(task, 1, k) for task in tasks.tasks)
    ceiling = min(1024, math.ceil(total / d) - 1)
    if ceiling < k:
        return None
    return tasks.model_copy(update={"m": rng.randint(k, ceiling)}), d


def test_rejecting_runs_meet_the_utilization_bound():
    """Test 1000 capacity-bound runs against theta."""
    checked = 0
    seed = 0
    while checked < 1000 and seed < 5000:
        drawn = rejecting_instance(seed)
        seed += 1
        if drawn is None:
            continue
        tasks, d = drawn
        params = params_for(tasks.delta)
        schedule = unit_algo(tasks, d, params)

        assert schedule.exit_reason in CAPACITY_EXITS, seed
        theta = theta_bound(params, tasks.k).theta(tasks.m)
        assert utilization(schedule) >= theta, seed
        assert verify_schedule(schedule, tasks, params).ok, seed
        assert min_workload_check(schedule, tasks).ok, seed
        checked += 1
    assert checked == 1000


def test_oracle_comparison_on_200_seeds():
    """Test OMS and the welfare greedy against brute force on tiny instances."""
    limits = OracleLimits()
    for seed in range(200):
        record = verify_seed(seed, limits)
        assert record["problems"] == [], (seed, record["problems"])
        if "ratio" in record:
            assert record["U"] >= record["optimum"]
            assert record["welfare"] <= record["welfare_optimum"] <= record["upper_bound"]


def test_classification_invariants_on_1000_instances():
    for seed in range(1000):
        rng = random.Random(seed)
        delta = rng.choice([2, 3, 4, 5, 8, 10, 16])
        tasks = random_taskset(seed, delta=delta, n=rng.randint(1, 30))
        params = params_for(delta)
        d = F(rng.randint(5, 200), 10)
        cls = classify(tasks, d, params)
        assert check_classification(cls, tasks, params).ok, seed
        assert x_h_property_check(cls, params, tasks, sample_limit=10, seed=seed).ok, seed


def test_outputs_are_byte_identical_across_runs():
    """Test that generation, scheduling and reports are reproducible."""
    file_utils = FileUtils()
    first = [file_utils.dumps(unit_algo(random_taskset(s), F(5), params_for(5))) for s in range(20)]
    second = [file_utils.dumps(unit_algo(random_taskset(s), F(5), params_for(5))) for s in range(20)]
    assert first == second


def test_parallel_verification_matches_serial():
    limits = OracleLimits(max_tasks=3, max_procs=6)
    serial = verify(range(6), limits, workers=1)
    parallel = verify(range(6), limits, workers=2)
    assert serial == parallel
    assert serial["failed"] == 0
