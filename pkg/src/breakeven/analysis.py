"""Financial break-even quantity as a function of the discount rate.

The quantity that zeroes the NPV is ``Q_f(r) = a + b F(r)`` where ``F`` is
the capital recovery factor and ``a``, ``b`` depend only on the project.
``Q_f`` rises strictly and convexly from the accounting break-even ``Q_c``
at ``r = 0`` and approaches the line ``a + b r`` from above.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from breakeven.annuity import (
    annuity_reciprocal,
    annuity_reciprocal_derivative,
    reciprocal_excess,
)
from breakeven.errors import ConvergenceError, DomainError, InverseDomainError
from breakeven.project import ProjectParams, accounting_breakeven, coeff_a, coeff_b

MAX_BISECTION_STEPS = 200
_MAX_BRACKET_DOUBLINGS = 1100


@dataclass(frozen=True)
class BreakevenCurve:
    """Sampled break-even curve together with its asymptote ``a + b r``."""

    points: tuple[tuple[float, float], ...]
    intercept: float
    slope: float

    @property
    def rates(self) -> list[float]:
        return [r for r, _ in self.points]

    @property
    def quantities(self) -> list[float]:
        return [q for _, q in self.points]

    def asymptote_at(self, r: float) -> float:
        return self.intercept + self.slope * r


def _require_nonnegative(r: float) -> None:
    if not math.isfinite(r) or r < 0:
        raise DomainError(
            f"discount rate must be a finite value >= 0, got {r!r}; "
            "use the growth model for effective negative rates"
        )


def financial_breakeven(params: ProjectParams, r: float) -> float:
    """Yearly quantity at which the project NPV is zero at discount rate ``r``."""
    _require_nonnegative(r)
    return coeff_a(params) + coeff_b(params) * annuity_reciprocal(r, params.years)


def breakeven_derivative(params: ProjectParams, r: float) -> float:
    """``dQ_f/dr = b F'(r)``; at ``r = 0`` this is ``b (1 + 1/n) / 2``."""
    _require_nonnegative(r)
    return coeff_b(params) * annuity_reciprocal_derivative(r, params.years)


def asymptote(params: ProjectParams) -> tuple[float, float]:
    """Intercept and slope ``(a, b)`` of the large-rate asymptote."""
    return coeff_a(params), coeff_b(params)


def asymptote_gap(params: ProjectParams, r: float) -> float:
    """Height of the curve above its asymptote, ``Q_f(r) - (a + b r) = b (F(r) - r)``."""
    _require_nonnegative(r)
    return coeff_b(params) * reciprocal_excess(r, params.years)


def gap_to_accounting(params: ProjectParams, r: float) -> float:
    """``Q_f(r) - Q_c``, evaluated as ``b (F(r) - 1/n)`` to avoid subtracting two large numbers."""
    if not math.isfinite(r) or r <= 0:
        raise DomainError(f"discount rate must be > 0, got {r!r}")
    n = params.years
    return coeff_b(params) * (annuity_reciprocal(r, n) - 1.0 / n)


def first_order_gap(params: ProjectParams, r: float) -> float:
    """Linear small-rate approximation ``b (1 + 1/n) r / 2`` of the gap."""
    return 0.5 * coeff_b(params) * (1 + 1 / params.years) * r


def invert_breakeven(params: ProjectParams, quantity: float) -> float:
    """Discount rate at which ``quantity`` is exactly the break-even quantity.

    Defined for ``quantity > Q_c`` only.  The root is bracketed on
    ``[0, r_hi]`` with ``r_hi`` doubled from 1, then bisected until the
    bracket cannot shrink any further in floating point.
    """
    q_c = accounting_breakeven(params)
    if not math.isfinite(quantity) or quantity <= q_c:
        raise InverseDomainError(
            f"quantity below accounting break-even {q_c:.2f}: "
            "no positive discount rate attains this quantity"
        )

    lo, hi = 0.0, 1.0
    for _ in range(_MAX_BRACKET_DOUBLINGS):
        if financial_breakeven(params, hi) > quantity:
            break
        lo, hi = hi, 2.0 * hi
    else:
        raise ConvergenceError(f"could not bracket a rate for quantity {quantity!r}")

    for _ in range(MAX_BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            return mid
        value = financial_breakeven(params, mid)
        if value == quantity:
            return mid
        if value > quantity:
            hi = mid
        else:
            lo = mid
    raise ConvergenceError(
        f"bisection did not converge in {MAX_BISECTION_STEPS} steps for quantity {quantity!r}"
    )


def check_grid(r_grid: Iterable[float]) -> list[float]:
    """Return the grid as a list after checking it is strictly increasing and non-negative."""
    grid = [float(r) for r in r_grid]
    for r in grid:
        _require_nonnegative(r)
    for left, right in zip(grid, grid[1:]):
        if not right > left:
            raise DomainError(f"rate grid must be strictly increasing ({left!r} then {right!r})")
    return grid


def sweep(params: ProjectParams, r_grid: Sequence[float]) -> BreakevenCurve:
    grid = check_grid(r_grid)
    a, b = asymptote(params)
    points = tuple((r, financial_breakeven(params, r)) for r in grid)
    return BreakevenCurve(points, a, b)
