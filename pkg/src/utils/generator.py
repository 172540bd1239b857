"""Seeded random instance generation."""

import logging
import random
from fractions import Fraction
from typing import Any, Mapping, Optional, Union

from pydantic import ValidationError

from ..errors import DomainError
from ..models import GeneratorModel, GeneratorSpec, PiecewiseProfile, TableProfile, Task, TaskSet

logger = logging.getLogger(__name__)

# Resolution of rational draws inside a range
DRAW_STEPS = 1000


class InstanceGenerator:
    """Draws task sets from a generator spec.

    Every random choice flows from ``random.Random(spec.seed)``, so equal
    specs produce identical task sets.
    """

    def __init__(self, spec: GeneratorSpec):
        """Initialize the generator.

        Args:
            spec: Validated generator spec
        """
        self.spec = spec
        self.rng = random.Random(spec.seed)

    def _draw(self, low: Fraction, high: Fraction) -> Fraction:
        return low + (high - low) * Fraction(self.rng.randint(0, DRAW_STEPS), DRAW_STEPS)

    def _piecewise(self, base: Fraction, limit: int) -> PiecewiseProfile:
        growth = self._draw(*self.spec.growth_range)
        return PiecewiseProfile(base_workload=base, linear_limit=limit, growth_rate=growth)

    def _unified(self, base: Fraction, limit: int) -> TableProfile:
        """Amdahl-style time D1/p plus a communication overhead c*(p-1), snapped to monotone."""
        overhead = self._draw(*self.spec.overhead_range)
        workloads = []
        for p in range(1, self.spec.k + 1):
            if p <= limit:
                workloads.append(base)
            else:
                workloads.append(max(workloads[-1], base + overhead * p * (p - 1)))
        return TableProfile(workloads=workloads)

    def generate(self) -> TaskSet:
        """Generate the task set described by the spec."""
        spec = self.spec
        tasks = []
        for task_id in range(spec.n):
            limit = self.rng.randint(spec.delta, spec.k)
            base = self._draw(*spec.workload_range)
            if spec.model == GeneratorModel.UNIFIED:
                profile = self._unified(base, limit)
            else:
                profile = self._piecewise(base, limit)
            value = self._draw(*spec.value_range) if spec.value_range is not None else None
            tasks.append(Task(id=task_id, profile=profile, value=value))

        logger.debug("generated %d task(s) from seed %d", spec.n, spec.seed)
        return TaskSet(delta=spec.delta, k=spec.k, m=spec.m, tasks=tasks)


def generate(spec: Union[GeneratorSpec, Mapping[str, Any]], seed: Optional[int] = None) -> TaskSet:
    """Generate a task set from a spec or a raw mapping.

    Args:
        spec: Generator spec or its document form
        seed: Overrides the spec's seed when given

    Raises:
        DomainError: If the spec is invalid
    """
    try:
        if not isinstance(spec, GeneratorSpec):
            spec = GeneratorSpec.model_validate(dict(spec))
        if seed is not None:
            spec = GeneratorSpec.model_validate({**spec.model_dump(), "seed": seed})
    except ValidationError as e:
        raise DomainError(f"invalid generator spec: {e}") from e
    return InstanceGenerator(spec).generate()
