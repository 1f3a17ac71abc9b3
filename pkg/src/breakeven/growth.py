"""Break-even analysis when yearly output grows at a constant rate ``g``.

Year ``t`` sells ``Q (1 + g)**(t-1)`` units; fixed costs and amortization do
not grow.  The contribution margin is then discounted with::

    Phi(r, g) = (1 - ((1+g)/(1+r))**n) / (r - g) = f((r - g)/(1 + g)) / (1 + g)

The right-hand form goes through the annuity kernel, so ``r == g`` needs no
special branch (the kernel evaluates ``f(0) = n``).
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass

from breakeven.annuity import annuity_factor, annuity_reciprocal
from breakeven.errors import DomainError
from breakeven.valuation import npv_line
from breakeven.project import ProjectParams, accounting_breakeven, coeff_a, coeff_b


def _check_growth(g: float) -> None:
    if not math.isfinite(g) or g <= -1:
        raise DomainError(f"growth rate must exceed -1, got {g!r}")


def _check_rate(r: float) -> None:
    if not math.isfinite(r) or r <= -1:
        raise DomainError(f"discount rate must exceed -1, got {r!r}")


def effective_rate(r: float, g: float) -> float:
    """Growth-adjusted discount rate ``(r - g) / (1 + g)``."""
    return (r - g) / (1 + g)


def growth_discount_factor(r: float, g: float, n: int) -> float:
    """Present value of ``n`` payments growing at ``g``, first payment 1, discounted at ``r``."""
    _check_rate(r)
    _check_growth(g)
    return annuity_factor(effective_rate(r, g), n) / (1 + g)


def npv_growth(params: ProjectParams, quantity: float, r: float, g: float) -> float:
    """NPV with growing output: ``h(r) + (p - C_v)(1 - t_e) Phi(r, g) Q``."""
    _check_growth(g)
    line = npv_line(params, r)
    slope = params.margin * (1 - params.tax_rate) * growth_discount_factor(r, g, params.years)
    return line.intercept + slope * quantity


def financial_breakeven_growth(params: ProjectParams, r: float, g: float) -> float:
    """First-year quantity that zeroes the NPV under growth ``g``.

    ``Q_f(r, g) = (b + a f(r)) (1 + g) F((r - g)/(1 + g))``; reduces to
    ``a + b F(r)`` at ``g = 0``.
    """
    if not math.isfinite(r) or r < 0:
        raise DomainError(f"discount rate must be a finite value >= 0, got {r!r}")
    _check_growth(g)
    n = params.years
    a, b = coeff_a(params), coeff_b(params)
    return (b + a * annuity_factor(r, n)) * (1 + g) * annuity_reciprocal(effective_rate(r, g), n)


def growth_zero_limit(params: ProjectParams, g: float) -> float:
    """Break-even at vanishing discount rate, ``n g / ((1+g)**n - 1) Q_c``; below ``Q_c`` for ``g > 0``."""
    if not math.isfinite(g) or g <= 0:
        raise DomainError(f"growth rate must be > 0, got {g!r}; the g = 0 limit is Q_c itself")
    n = params.years
    return n * g / math.expm1(n * math.log1p(g)) * accounting_breakeven(params)


@dataclass(frozen=True)
class AsymptoteProbe:
    """Least-squares line through ``Q_f(r, g)`` sampled on a large-rate window.

    ``intercept_candidates`` holds the two competing predictions for the
    large-rate intercept: the zero-growth value ``a`` and the value ``a - b g``
    obtained by expanding the closed form in ``1/r``.
    """

    growth: float
    r_lo: float
    r_hi: float
    samples: int
    slope: float
    intercept: float
    slope_reference: float
    intercept_candidates: dict[str, float]

    @property
    def slope_error(self) -> float:
        return abs(self.slope - self.slope_reference) / self.slope_reference

    def intercept_offsets(self) -> dict[str, float]:
        return {k: self.intercept - v for k, v in self.intercept_candidates.items()}


def asymptote_probe(
    params: ProjectParams, g: float, r_lo: float, r_hi: float, samples: int = 101
) -> AsymptoteProbe:
    if not r_lo >= 10:
        raise DomainError(f"probe window must start at r >= 10, got {r_lo!r}")
    if not r_hi > r_lo:
        raise DomainError(f"probe window is empty: [{r_lo!r}, {r_hi!r}]")
    if samples < 2:
        raise DomainError(f"degenerate probe: need at least 2 samples, got {samples}")
    step = (r_hi - r_lo) / (samples - 1)
    rates = [r_lo + i * step for i in range(samples)]
    values = [financial_breakeven_growth(params, r, g) for r in rates]
    fit = statistics.linear_regression(rates, values)
    a, b = coeff_a(params), coeff_b(params)
    return AsymptoteProbe(
        growth=g,
        r_lo=r_lo,
        r_hi=r_hi,
        samples=samples,
        slope=fit.slope,
        intercept=fit.intercept,
        slope_reference=b,
        intercept_candidates={"a": a, "a_minus_bg": a - b * g},
    )
