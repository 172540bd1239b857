"""Exception hierarchy; each family maps onto one CLI exit code."""

from typing import Any, Dict, List, Optional


class MoldSchedError(Exception):
    """Base class for toolkit errors."""

    exit_code = 1


class DomainError(MoldSchedError, ValueError):
    """An operation was called outside its precondition."""

    exit_code = 2


class InfeasibleInputError(DomainError):
    """The input cannot be scheduled by any algorithm in this toolkit."""


class OracleLimitError(DomainError):
    """A brute-force oracle refused an instance beyond its limits."""


class SchemaError(MoldSchedError, ValueError):
    """A document is malformed or violates its schema."""

    exit_code = 3

    def __init__(self, message: str, errors: Optional[List[Dict[str, Any]]] = None):
        super().__init__(message)
        self.errors = errors or []


class InvariantViolation(MoldSchedError, RuntimeError):
    """A self-check on an algorithm's output failed."""

    exit_code = 4
