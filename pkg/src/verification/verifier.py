"""
Seeded comparison of the approximation algorithms against the oracle.

Every seed yields one tiny instance. On it the verifier runs the parameter
search, OMS and the welfare greedy, checks their outputs, and compares them
with brute-force optima.
"""

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional

from ..errors import InfeasibleInputError
from ..models import GeneratorSpec, OracleLimits
from ..objectives.makespan_oms import approximation_guarantee, oms
from ..objectives.welfare_greedy import check_welfare, gen_greedy
from ..scheduling.params import check_params, search_params, theta_bound
from ..scheduling.unit_algo import min_workload_check, verify_schedule
from ..utils.generator import generate
from .oracle import brute_makespan, brute_welfare

logger = logging.getLogger(__name__)

SeedRecord = Dict[str, Any]


def tiny_instance_spec(seed: int, limits: OracleLimits) -> GeneratorSpec:
    """Draw the shape of a tiny instance from a seed."""
    rng = random.Random(seed)
    delta = rng.choice([2, 3, 4, 5])
    delta = min(delta, limits.max_procs)
    params = search_params(delta)
    k = rng.randint(delta, delta + 2)
    m = rng.randint(max(params.delta_prime, 1), max(limits.max_procs, params.delta_prime))
    return GeneratorSpec(
        n=rng.randint(1, max(1, limits.max_tasks)),
        delta=delta,
        k=k,
        m=min(m, limits.max_procs),
        workload_range=(Fraction(1), Fraction(12)),
        growth_range=(Fraction(0), Fraction(1, 2)),
        value_range=(Fraction(1), Fraction(10)),
        seed=seed,
    )


def verify_seed(seed: int, limits: Optional[OracleLimits] = None, epsilon: Fraction = Fraction(1, 100)) -> SeedRecord:
    """Run every check on the instance drawn from one seed."""
    limits = limits or OracleLimits()
    spec = tiny_instance_spec(seed, limits)
    tasks = generate(spec)
    params = search_params(tasks.delta)
    bound = theta_bound(params, tasks.k)
    theta = bound.theta(tasks.m)
    problems: List[str] = []
    record: SeedRecord = {"seed": seed, "n": tasks.n, "delta": tasks.delta, "k": tasks.k, "m": tasks.m, "theta": theta}

    problems.extend(v.describe() for v in check_params(params).violations)

    try:
        result = oms(tasks, params, epsilon)
    except InfeasibleInputError as e:
        record["skipped"] = str(e)
        record["problems"] = problems
        return record

    optimum = brute_makespan(tasks, limits)
    record.update({"U": result.U, "optimum": optimum, "ratio": result.U / optimum})
    problems.extend(v.describe() for v in verify_schedule(result.schedule, tasks, params).violations)
    problems.extend(v.describe() for v in min_workload_check(result.schedule, tasks).violations)
    if result.U < optimum:
        problems.append(f"makespan {result.U} beats the optimum {optimum}")
    if not result.fast_exit:
        if result.U > result.L * (1 + epsilon):
            problems.append(f"bisection stopped with U={result.U}, L={result.L}")
        if 2 ** (result.iterations - 2) > result.initial_upper / (result.lower_bound * epsilon):
            problems.append(f"{result.iterations} iterations exceed log2(U0/(L0*epsilon)) + 2")
    record["fast_exit"] = result.fast_exit
    factor = approximation_guarantee(theta, epsilon)
    if factor is not None and result.U > factor * optimum:
        problems.append(f"makespan {result.U} exceeds {factor} * {optimum}")
    if result.monotonicity_violations:
        record["monotonicity_violations"] = len(result.monotonicity_violations)

    rng = random.Random(seed)
    tau = result.lower_bound * Fraction(rng.randint(4, 12), 8)
    welfare = gen_greedy(tasks, tau, params)
    best = brute_welfare(tasks, tau, limits)
    record.update({"tau": tau, "welfare": welfare.welfare, "welfare_optimum": best, "upper_bound": welfare.upper_bound})
    problems.extend(v.describe() for v in check_welfare(welfare, tasks).violations)
    if not (welfare.welfare <= best <= welfare.upper_bound):
        problems.append(f"welfare sandwich broken: {welfare.welfare} <= {best} <= {welfare.upper_bound}")
    if best > 0 and welfare.welfare < theta * best:
        # Known to happen on tiny instances; reported, not treated as a defect.
        record["welfare_shortfall"] = theta * best - welfare.welfare

    record["problems"] = problems
    return record


def verify(
    seeds: Iterable[int],
    limits: Optional[OracleLimits] = None,
    workers: int = 1,
    epsilon: Fraction = Fraction(1, 100),
) -> Dict[str, Any]:
    """Verify a range of seeds, optionally across worker processes.

    Records come back in seed order regardless of ``workers``.
    """
    limits = limits or OracleLimits()
    seeds = list(seeds)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(verify_seed, seeds, [limits] * len(seeds), [epsilon] * len(seeds)))
    else:
        records = [verify_seed(seed, limits, epsilon) for seed in seeds]

    failed = [r["seed"] for r in records if r["problems"]]
    for record in records:
        if record["problems"]:
            logger.warning("seed %d: %s", record["seed"], "; ".join(record["problems"]))
    ratios = [r["ratio"] for r in records if "ratio" in r]
    return {
        "seeds": len(records),
        "failed": len(failed),
        "failed_seeds": failed,
        "skipped": sum(1 for r in records if "skipped" in r),
        "worst_makespan_ratio": max(ratios) if ratios else None,
        "welfare_shortfalls": sum(1 for r in records if "welfare_shortfall" in r),
        "monotonicity_violations": sum(r.get("monotonicity_violations", 0) for r in records),
        "records": records,
    }
