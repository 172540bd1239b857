"""Task profiles, parameter search, classification and UnitAlgo."""

from .classifier import check_classification, classify, x_h_property_check
from .params import TABLE_ROWS, check_params, search_params, theta_bound, verify_tables
from .task_model import canonical_processors, exec_time, validate_profile, workload
from .unit_algo import min_workload_check, unit_algo, utilization, verify_schedule

__all__ = [
    "TABLE_ROWS",
    "canonical_processors",
    "check_classification",
    "check_params",
    "classify",
    "exec_time",
    "min_workload_check",
    "search_params",
    "theta_bound",
    "unit_algo",
    "utilization",
    "validate_profile",
    "verify_schedule",
    "verify_tables",
    "workload",
    "x_h_property_check",
]
