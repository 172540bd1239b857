"""
Parameter search for UnitAlgo.

Given delta, picks the largest class count H (so r = (H-1)/H is as large as
possible), then the largest group width delta', the class threshold nu and
the per-class task counts x_h. All comparisons are exact.
"""

import logging
from decimal import ROUND_HALF_UP, Decimal, localcontext
from fractions import Fraction
from math import ceil
from typing import Dict, Iterable, List, NamedTuple, Optional

from ..errors import DomainError, InvariantViolation
from ..models import ParamSet, ThetaBound, ValidationReport, Violation

logger = logging.getLogger(__name__)


class TableRow(NamedTuple):
    """Reference values for a range of delta."""
    low: int
    high: int
    mu: Fraction
    beta1: Fraction
    beta2: str  # as printed; the value at ``low``, rounded


TABLE_ROWS: List[TableRow] = [
    TableRow(5, 9, Fraction(3, 4), Fraction(3, 4), "3.25"),
    TableRow(10, 16, Fraction(4, 5), Fraction(4, 5), "7.6"),
    TableRow(17, 21, Fraction(5, 6), Fraction(5, 6), "13.83"),
    TableRow(22, 26, Fraction(6, 7), Fraction(6, 7), "19.43"),
    TableRow(27, 37, Fraction(7, 8), Fraction(7, 8), "25.75"),
    TableRow(38, 57, Fraction(8, 9), Fraction(8, 9), "36.22"),
    TableRow(58, 58, Fraction(9, 10), Fraction(9, 10), "53.2"),
    TableRow(59, 74, Fraction(10, 11), Fraction(10, 11), "58.55"),
    TableRow(75, 101, Fraction(11, 12), Fraction(11, 12), "74"),
]


def _smallest_x(h: int, H: int, delta_prime: int) -> Optional[int]:
    """Smallest x with max(1-r, (h-1)/delta')*x >= r, if it also keeps h*r*x/delta' <= 1."""
    r = Fraction(H - 1, H)
    floor_time = max(1 - r, Fraction(h - 1, delta_prime))
    x = max(1, ceil(r / floor_time))
    if Fraction(h, delta_prime) * r * x <= 1:
        return x
    return None


def _x_values(H: int, delta_prime: int, nu: int) -> Optional[Dict[int, int]]:
    x = {}
    for h in range(nu, H):
        value = _smallest_x(h, H, delta_prime)
        if value is None:
            return None
        x[h] = value
    return x


def search_params(delta: int, full_width: bool = False) -> ParamSet:
    """Find (H, nu, delta', r, x) for a given delta.

    H runs from delta+1 down to 2, delta' from delta down to H-1 and nu
    upward from 1; the first fully feasible assignment is returned. The
    search always terminates at H=2, delta'=1, nu=1, x_1=1.

    With ``full_width`` the group width is pinned to delta' = delta. That
    is the rule the reference table was built with; it can settle on a
    smaller H than the unrestricted search.

    Raises:
        DomainError: If delta < 1, or no assignment exists with delta' = delta
    """
    if delta < 1:
        raise DomainError(f"delta must be at least 1, got {delta}")

    for H in range(delta + 1, 1, -1):
        r = Fraction(H - 1, H)
        lowest_width = delta if full_width else H - 1
        for delta_prime in range(delta, lowest_width - 1, -1):
            for nu in range(1, H):
                # nu*r/delta' + r >= 1 and (nu-1)*r/delta' + r < 1, cross-multiplied
                if nu * (H - 1) < delta_prime or (nu - 1) * (H - 1) >= delta_prime:
                    continue
                x = _x_values(H, delta_prime, nu)
                if x is None:
                    continue
                params = ParamSet(delta=delta, H=H, nu=nu, delta_prime=delta_prime, r=r, x=x)
                logger.debug("delta=%d -> H=%d nu=%d delta'=%d x=%s", delta, H, nu, delta_prime, x)
                return params

    if full_width:
        raise DomainError(f"no parameter set with delta'=delta for delta={delta}")
    raise InvariantViolation(f"parameter search exhausted for delta={delta}")


def check_params(params: ParamSet) -> ValidationReport:
    """Re-check every search constraint on a parameter set."""
    violations = []
    H, nu, dp, r = params.H, params.nu, params.delta_prime, params.r

    if not (1 <= nu <= H - 1 <= dp <= params.delta):
        violations.append(Violation(
            subject="ranges",
            message=f"need 1 <= nu={nu} <= H-1={H - 1} <= delta'={dp} <= delta={params.delta}",
        ))
    if r != Fraction(H - 1, H):
        violations.append(Violation(subject="r", message=f"r={r} differs from (H-1)/H"))
    if Fraction(nu, dp) * r + r < 1:
        violations.append(Violation(subject="nu", message="nu*r/delta' + r < 1"))
    if Fraction(nu - 1, dp) * r + r >= 1:
        violations.append(Violation(subject="nu", message="(nu-1)*r/delta' + r >= 1"))

    for h in range(nu, H):
        x = params.x.get(h)
        if x is None:
            violations.append(Violation(subject="x", position=h, message="missing"))
            continue
        if Fraction(h, dp) * r * x > 1:
            violations.append(Violation(subject="x", position=h, message=f"h*r*x/delta' > 1 for x={x}"))
        if max(1 - r, Fraction(h - 1, dp)) * x < r:
            violations.append(Violation(subject="x", position=h, message=f"x={x} tasks cannot reach load r"))

    return ValidationReport(check="params", checked=max(H - nu, 0) + 3, violations=violations)


def theta_bound(params: ParamSet, k: int) -> ThetaBound:
    """Utilization bound constants mu, beta1, beta2 for (delta, k).

    Raises:
        DomainError: If k < delta
    """
    if k < params.delta:
        raise DomainError(f"k={k} must be at least delta={params.delta}")
    r, dp = params.r, params.delta_prime
    if params.nu == params.H - 1:
        beta2 = Fraction(0)
    else:
        beta2 = r * (dp - 1) + sum(
            (r + h * r / dp - 1) * dp for h in range(params.nu, params.H - 1)
        )
    return ThetaBound(delta=params.delta, k=k, mu=r, beta1=r, beta2=beta2)


def table_row(delta: int) -> Optional[TableRow]:
    for row in TABLE_ROWS:
        if row.low <= delta <= row.high:
            return row
    return None


def round_like(value: Fraction, printed: str) -> Decimal:
    """Round an exact value to the number of decimals shown in ``printed``."""
    exponent = Decimal(printed).as_tuple().exponent
    with localcontext() as ctx:
        ctx.prec = 50
        exact = Decimal(value.numerator) / Decimal(value.denominator)
        return exact.quantize(Decimal(1).scaleb(exponent), rounding=ROUND_HALF_UP)


def table_deltas() -> List[int]:
    """Both endpoints of every reference row."""
    deltas = []
    for row in TABLE_ROWS:
        deltas.extend(sorted({row.low, row.high}))
    return deltas


def verify_tables(deltas: Optional[Iterable[int]] = None) -> List[Dict[str, object]]:
    """Recompute the reference constants for each delta.

    The reference rows were derived with delta' pinned to delta, so that
    search is what gets compared. mu and beta1 are compared at every delta.
    The printed beta2 belongs to the lowest delta of each row, so beta2 is
    compared there and merely reported elsewhere. The unrestricted search
    is reported next to it; a larger H there is an improvement, not a
    mismatch.

    Returns:
        One record per delta with the derived values, ``search_H``,
        ``improved`` and a ``match`` flag
    """
    records = []
    for delta in (table_deltas() if deltas is None else deltas):
        row = table_row(delta)
        search = search_params(delta)
        try:
            params = search_params(delta, full_width=True)
        except DomainError:
            params = search
        bound = theta_bound(params, delta)
        record: Dict[str, object] = {
            "delta": delta,
            "H": params.H,
            "nu": params.nu,
            "delta_prime": params.delta_prime,
            "mu": bound.mu,
            "beta1": bound.beta1,
            "beta2": bound.beta2,
            "search_H": search.H,
            "search_delta_prime": search.delta_prime,
            "improved": search.H > params.H,
        }
        if search.H > params.H:
            logger.info("delta=%d: search reaches H=%d with delta'=%d, table rule gives H=%d",
                        delta, search.H, search.delta_prime, params.H)
        if row is None:
            record["match"] = None
        else:
            match = bound.mu == row.mu and bound.beta1 == row.beta1
            if delta == row.low:
                match = match and round_like(bound.beta2, row.beta2) == Decimal(row.beta2)
            record["expected_mu"] = row.mu
            record["expected_beta2"] = row.beta2 if delta == row.low else None
            record["match"] = match
            if not match:
                logger.warning("reference mismatch at delta=%d: %s", delta, record)
        records.append(record)
    return records
