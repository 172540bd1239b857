"""Workbench service that orchestrates the scheduling pipeline for the CLI and the API."""

import logging
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional

from ..config import get_settings
from ..errors import InvariantViolation
from ..models import GeneratorSpec, OracleLimits, ParamSet, Schedule, TaskSet, ValidationReport
from ..objectives.makespan_oms import approximation_guarantee, oms
from ..objectives.welfare_greedy import check_welfare, gen_greedy
from ..scheduling.classifier import check_classification, classify, x_h_property_check
from ..scheduling.params import check_params, search_params, theta_bound, verify_tables
from ..scheduling.unit_algo import min_workload_check, unit_algo, utilization, verify_schedule
from ..verification.verifier import verify
from .generator import generate

logger = logging.getLogger(__name__)

Report = Dict[str, Any]


class WorkbenchService:
    """Runs one operation end to end and returns a flat report.

    Every schedule an operation produces is re-checked before the report is
    returned; a failed check raises InvariantViolation.
    """

    def __init__(self, settings=None):
        """Initialize the workbench service.

        Args:
            settings: Optional settings; the global settings are used when omitted
        """
        self.settings = settings or get_settings()

    def _ensure(self, *reports: ValidationReport) -> None:
        problems = [f"{r.check}: {v.describe()}" for r in reports for v in r.violations]
        if problems:
            for problem in problems:
                logger.error(problem)
            raise InvariantViolation("; ".join(problems))

    def _params(self, tasks: TaskSet) -> ParamSet:
        params = search_params(tasks.delta)
        self._ensure(check_params(params))
        return params

    @staticmethod
    def _params_entries(params: ParamSet) -> Report:
        entries: Report = {
            "delta": params.delta,
            "H": params.H,
            "nu": params.nu,
            "delta_prime": params.delta_prime,
            "r": params.r,
        }
        for h in sorted(params.x):
            entries[f"x_{h}"] = params.x[h]
        return entries

    @staticmethod
    def _bound_entries(params: ParamSet, tasks: TaskSet) -> Report:
        bound = theta_bound(params, tasks.k)
        return {
            "k": tasks.k,
            "m": tasks.m,
            "mu": bound.mu,
            "beta1": bound.beta1,
            "beta2": bound.beta2,
            "theta": bound.theta(tasks.m),
        }

    @staticmethod
    def _placements(schedule: Schedule) -> List[Report]:
        return [
            {
                "task": p.task_id,
                "first_processor": p.first_processor,
                "width": p.width,
                "start": p.start,
                "end": p.end,
            }
            for p in schedule.placements
        ]

    def params_report(self, delta: int, k: Optional[int] = None, m: Optional[int] = None) -> Report:
        """Parameters for delta, plus the utilization bound when k (and m) are given."""
        params = search_params(delta)
        self._ensure(check_params(params))
        report = self._params_entries(params)
        if k is not None:
            bound = theta_bound(params, k)
            report.update({"k": k, "mu": bound.mu, "beta1": bound.beta1, "beta2": bound.beta2})
            if m is not None:
                report.update({"m": m, "theta": bound.theta(m)})
        return report

    def classify_report(self, tasks: TaskSet, d: Fraction) -> Report:
        params = self._params(tasks)
        cls = classify(tasks, d, params)
        self._ensure(check_classification(cls, tasks, params))
        x_check = x_h_property_check(cls, params, tasks, self.settings.x_h_sample_limit, self.settings.seed)
        self._ensure(x_check)

        rows = [{"task": task_id, "class": "A'", "gamma": gamma} for task_id, gamma in cls.a_prime]
        for h in sorted(cls.a_h, reverse=True):
            rows.extend({"task": task_id, "class": f"A_{h}", "gamma": cls.gammas[task_id]} for task_id in cls.a_h[h])
        rows.extend({"task": task_id, "class": "A''", "gamma": cls.gammas[task_id]} for task_id in cls.a_dprime)
        rows.extend({"task": task_id, "class": "infeasible", "gamma": None} for task_id in cls.infeasible)

        report = {"d": d, **self._params_entries(params)}
        report.update({
            "a_prime": len(cls.a_prime),
            "a_dprime": len(cls.a_dprime),
            "infeasible": len(cls.infeasible),
            "x_h_combinations_checked": x_check.checked,
            "classes": rows,
        })
        return report

    def schedule(self, tasks: TaskSet, d: Fraction, shuffle_seed: Optional[int] = None) -> Schedule:
        params = self._params(tasks)
        schedule = unit_algo(tasks, d, params, shuffle_seed)
        self._ensure(verify_schedule(schedule, tasks, params), min_workload_check(schedule, tasks))
        return schedule

    def schedule_report(self, tasks: TaskSet, schedule: Schedule) -> Report:
        params = search_params(tasks.delta)
        return {
            **self._params_entries(params),
            **self._bound_entries(params, tasks),
            "d": schedule.d,
            "exit_reason": schedule.exit_reason,
            "placed": len(schedule.placements),
            "rejected_count": len(schedule.rejected),
            "utilization": utilization(schedule),
            "groups": len(schedule.groups),
            "examinations": schedule.examinations,
            "rejected": schedule.rejected,
            "placements": self._placements(schedule),
        }

    def makespan(self, tasks: TaskSet, epsilon: Optional[Fraction] = None):
        params = self._params(tasks)
        result = oms(tasks, params, epsilon)
        self._ensure(verify_schedule(result.schedule, tasks, params), min_workload_check(result.schedule, tasks))
        return result

    def makespan_report(self, tasks: TaskSet, result) -> Report:
        params = search_params(tasks.delta)
        bound = self._bound_entries(params, tasks)
        return {
            **self._params_entries(params),
            **bound,
            "U": result.U,
            "L": result.L,
            "iterations": result.iterations,
            "epsilon": result.epsilon,
            "lower_bound": result.lower_bound,
            "initial_upper": result.initial_upper,
            "ratio_u_over_lb": result.U / result.lower_bound,
            "fast_exit": result.fast_exit,
            "guarantee": approximation_guarantee(bound["theta"], result.epsilon),
            "monotonicity_violations": len(result.monotonicity_violations),
            "placements": self._placements(result.schedule),
        }

    def welfare(self, tasks: TaskSet, tau: Fraction):
        params = self._params(tasks)
        result = gen_greedy(tasks, tau, params)
        accepted = set(result.order[:result.accepted_prefix_len])
        prefix = tasks.with_tasks([t for t in tasks.tasks if t.id in accepted])
        self._ensure(verify_schedule(result.schedule, prefix, params), check_welfare(result, tasks))
        return result

    def welfare_report(self, tasks: TaskSet, result) -> Report:
        params = search_params(tasks.delta)
        return {
            **self._params_entries(params),
            **self._bound_entries(params, tasks),
            "tau": result.tau,
            "welfare": result.welfare,
            "upper_bound": result.upper_bound,
            "welfare_ratio": result.welfare / result.upper_bound if result.upper_bound else None,
            "accepted_prefix_len": result.accepted_prefix_len,
            "omega": result.omega,
            "alpha": result.alpha,
            "first_rejected": result.first_rejected,
            "unit_algo_calls": result.unit_algo_calls,
            "order": result.order,
            "dropped_infeasible": result.dropped_infeasible,
            "placements": self._placements(result.schedule),
        }

    def tables_report(self, deltas: Optional[Iterable[int]] = None) -> Report:
        records = verify_tables(deltas)
        mismatches = [r["delta"] for r in records if r["match"] is False]
        return {
            "status": "ok" if not mismatches else "mismatch",
            "mismatches": mismatches,
            "improved": [r["delta"] for r in records if r["improved"]],
            "rows": records,
        }

    def generate(self, spec: GeneratorSpec, seed: Optional[int] = None) -> TaskSet:
        return generate(spec, seed)

    def verify_report(self, seeds: Iterable[int], limits: Optional[OracleLimits] = None, workers: Optional[int] = None) -> Report:
        limits = limits or OracleLimits(
            max_tasks=self.settings.oracle_max_tasks,
            max_procs=self.settings.oracle_max_procs,
        )
        workers = workers if workers is not None else self.settings.verify_workers
        summary = verify(seeds, limits, workers, self.settings.default_epsilon)
        summary["status"] = "ok" if summary["failed"] == 0 else "failed"
        return summary
