"""Data models for the moldable task scheduling toolkit."""

from decimal import Decimal
from enum import Enum
from fractions import Fraction
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import (
    BaseModel,
    BeforeValidator,
    ConfigDict,
    Field,
    PlainSerializer,
    WithJsonSchema,
    field_validator,
    model_validator,
)


def parse_rational(value: Any) -> Fraction:
    """Convert an input value into an exact rational.

    Accepts fractions, integers, decimals and strings such as ``"11/15"`` or
    ``"2.4"``. Floats are refused because they cannot carry the exact
    threshold comparisons the classifier relies on.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Decimal):
        try:
            return Fraction(value)
        except (ValueError, OverflowError) as e:
            raise ValueError(f"not a finite rational: {value}") from e
    if isinstance(value, float):
        raise ValueError("floats are not accepted; write rationals as 'num/den' strings")
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"not a rational: {value!r}") from e
    raise ValueError(f"not a rational: {value!r}")


def format_rational(value: Fraction) -> str:
    """Canonical text form of a rational ("11/15", "4")."""
    return str(value)


Rational = Annotated[
    Fraction,
    BeforeValidator(parse_rational),
    PlainSerializer(format_rational, return_type=str, when_used="json"),
    WithJsonSchema({"type": "string", "examples": ["11/15", "3", "2.4"]}),
]


class FrozenModel(BaseModel):
    """Immutable base for every domain value."""

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        arbitrary_types_allowed=True,
        populate_by_name=True,
    )


class ExitReason(str, Enum):
    """Why UnitAlgo stopped."""
    ALL_PLACED = "all_placed"
    INSUFFICIENT_FOR_A_PRIME = "insufficient_for_a_prime"
    INSUFFICIENT_FOR_GROUP = "insufficient_for_group"
    INFEASIBLE_TASK = "infeasible_task"


class GeneratorModel(str, Enum):
    """Speedup models the instance generator can draw from."""
    PIECEWISE = "piecewise"
    UNIFIED = "unified"


# ---------------------------------------------------------------------------
# Tasks


class TableProfile(FrozenModel):
    """Workloads D_{j,1..k} listed explicitly."""
    type: Literal["table"] = "table"
    workloads: List[Rational] = Field(min_length=1)


class PiecewiseProfile(FrozenModel):
    """Constant workload up to ``linear_limit`` processors, linear growth above."""
    type: Literal["piecewise"] = "piecewise"
    base_workload: Rational = Field(alias="d1")
    linear_limit: int = Field(ge=1)
    growth_rate: Rational = Field(default=Fraction(0), alias="growth")


SpeedupProfile = Annotated[Union[TableProfile, PiecewiseProfile], Field(discriminator="type")]


class Task(FrozenModel):
    """A moldable task."""
    id: int = Field(ge=0)
    profile: SpeedupProfile
    value: Optional[Rational] = None

    @field_validator("value")
    @classmethod
    def _value_non_negative(cls, value: Optional[Fraction]) -> Optional[Fraction]:
        if value is not None and value < 0:
            raise ValueError("task value must be non-negative")
        return value


class TaskSet(FrozenModel):
    """A (delta, k)-monotonic task set on m identical processors."""
    delta: int = Field(ge=1)
    k: int = Field(ge=1)
    m: int = Field(ge=1)
    tasks: List[Task] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_tasks(self) -> "TaskSet":
        from .scheduling.task_model import validate_profile

        if self.k < self.delta:
            raise ValueError(f"k={self.k} must be at least delta={self.delta}")
        seen = set()
        for task in self.tasks:
            if task.id in seen:
                raise ValueError(f"duplicate task id {task.id}")
            seen.add(task.id)
            report = validate_profile(task.profile, self.delta, self.k)
            if not report.ok:
                details = "; ".join(v.describe() for v in report.violations)
                raise ValueError(f"task {task.id}: {details}")
        return self

    @property
    def n(self) -> int:
        return len(self.tasks)

    def task_map(self) -> Dict[int, Task]:
        return {task.id: task for task in self.tasks}

    def with_tasks(self, tasks: List[Task]) -> "TaskSet":
        """Same machine and monotonicity bounds, different (already valid) tasks."""
        return self.model_copy(update={"tasks": list(tasks)})


# ---------------------------------------------------------------------------
# Validation reports


class Violation(FrozenModel):
    """One failed check."""
    subject: str
    position: Optional[int] = None
    message: str

    def describe(self) -> str:
        where = f"{self.subject}[{self.position}]" if self.position is not None else self.subject
        return f"{where}: {self.message}"


class ValidationReport(FrozenModel):
    """Outcome of a report-style check; never raised."""
    check: str
    checked: int = 0
    violations: List[Violation] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


# ---------------------------------------------------------------------------
# Scheduling constants


class ParamSet(FrozenModel):
    """Constants H, nu, delta', r and x_h produced by the parameter search."""
    delta: int = Field(ge=1)
    H: int = Field(ge=2)
    nu: int = Field(ge=1)
    delta_prime: int = Field(ge=1)
    r: Rational
    x: Dict[int, int]

    @property
    def group_classes(self) -> List[int]:
        """Class indices in priority order: H-1, ..., nu, then nu-1 for A''."""
        return list(range(self.H - 1, self.nu - 2, -1))

    @property
    def a_dprime_index(self) -> int:
        return self.nu - 1


class ThetaBound(FrozenModel):
    """Worst-case utilization bound of UnitAlgo for a given (delta, k)."""
    delta: int
    k: int
    mu: Rational
    beta1: Rational
    beta2: Rational

    def theta(self, m: int) -> Fraction:
        """theta(delta) = mu - max{beta1 (k-1)/m, beta2/m}."""
        return self.mu - max(self.beta1 * (self.k - 1) / m, self.beta2 / m)


# ---------------------------------------------------------------------------
# Classification and schedules


class Classification(FrozenModel):
    """Partition of a task set into A', A_{H-1}..A_nu, A'' and infeasible tasks at deadline d."""
    d: Rational
    a_prime: List[Tuple[int, int]] = Field(default_factory=list)
    a_h: Dict[int, List[int]] = Field(default_factory=dict)
    a_dprime: List[int] = Field(default_factory=list)
    infeasible: List[int] = Field(default_factory=list)
    gammas: Dict[int, int] = Field(default_factory=dict)

    def all_ids(self) -> List[int]:
        ids = [task_id for task_id, _ in self.a_prime]
        for members in self.a_h.values():
            ids.extend(members)
        ids.extend(self.a_dprime)
        ids.extend(self.infeasible)
        return ids


class Placement(FrozenModel):
    """A task running on a contiguous processor block during [start, end)."""
    task_id: int = Field(alias="task", ge=0)
    first_processor: int = Field(ge=1)
    width: int = Field(ge=1)
    start: Rational
    end: Rational

    @property
    def last_processor(self) -> int:
        return self.first_processor + self.width - 1


class GroupRecord(FrozenModel):
    """Bookkeeping for one delta'-processor group opened by UnitAlgo."""
    first_processor: int
    classes: List[int] = Field(default_factory=list)
    closing_class: Optional[int] = None
    busy: Rational = Fraction(0)


class Schedule(FrozenModel):
    """Placements on m processors within [0, d] plus the rejected tasks."""
    d: Rational
    m: int = Field(ge=1)
    exit_reason: ExitReason
    placements: List[Placement] = Field(default_factory=list)
    rejected: List[int] = Field(default_factory=list)
    groups: List[GroupRecord] = Field(default_factory=list, exclude=True)
    examinations: int = Field(default=0, exclude=True)

    @property
    def all_placed(self) -> bool:
        return self.exit_reason == ExitReason.ALL_PLACED


class OmsResult(FrozenModel):
    """Outcome of the bisection makespan minimizer."""
    schedule: Schedule
    U: Rational
    L: Rational
    iterations: int
    epsilon: Rational
    lower_bound: Rational
    initial_upper: Rational
    fast_exit: bool = False
    probes: List[Tuple[Rational, bool]] = Field(default_factory=list)
    monotonicity_violations: List[Rational] = Field(default_factory=list)


class WelfareResult(FrozenModel):
    """Outcome of the greedy social-welfare maximizer."""
    tau: Rational
    accepted_prefix_len: int
    order: List[int] = Field(default_factory=list)
    schedule: Schedule
    welfare: Rational
    omega: Rational
    alpha: Rational
    upper_bound: Rational
    theta: Rational
    dropped_infeasible: List[int] = Field(default_factory=list)
    first_rejected: Optional[int] = None
    unit_algo_calls: int = 0


# ---------------------------------------------------------------------------
# Oracle and workbench


class OracleLimits(FrozenModel):
    """Size limits under which brute-force enumeration is attempted."""
    max_tasks: int = Field(default=4, ge=0)
    max_procs: int = Field(default=8, ge=1)
    max_width: Optional[int] = Field(default=None, ge=1)

    def width_cap(self, k: int, m: int) -> int:
        cap = self.max_width if self.max_width is not None else min(k, self.max_procs)
        return min(cap, k, m)


RationalRange = Tuple[Rational, Rational]


class GeneratorSpec(FrozenModel):
    """Parameters of a seeded random instance."""
    n: int = Field(ge=0)
    delta: int = Field(ge=1)
    k: int = Field(ge=1)
    m: int = Field(ge=1)
    workload_range: RationalRange
    growth_range: RationalRange = (Fraction(0), Fraction(0))
    value_range: Optional[RationalRange] = None
    seed: int = Field(default=0, ge=0, lt=2**64)
    model: GeneratorModel = GeneratorModel.PIECEWISE
    overhead_range: RationalRange = (Fraction(0), Fraction(0))

    @model_validator(mode="after")
    def _check_ranges(self) -> "GeneratorSpec":
        if self.delta > self.k:
            raise ValueError(f"delta={self.delta} exceeds k={self.k}")
        ranges = {
            "workload_range": self.workload_range,
            "growth_range": self.growth_range,
            "overhead_range": self.overhead_range,
        }
        if self.value_range is not None:
            ranges["value_range"] = self.value_range
        for name, (low, high) in ranges.items():
            if low > high:
                raise ValueError(f"{name} is empty: {low} > {high}")
            if low < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.workload_range[0] <= 0:
            raise ValueError("workload_range must be strictly positive")
        return self


class HealthCheck(BaseModel):
    """Health check response model."""
    status: str
    version: str
