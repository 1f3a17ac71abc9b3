"""Net present value of the project as a function of quantity and rate.

At a fixed discount rate the NPV is affine in the yearly quantity::

    NPV(Q, r) = h(r) + m(r) Q
    h(r) = -I + f(r) [t_e A - (1 - t_e) C_f]
    m(r) = f(r) (p - C_v) (1 - t_e)

with ``f`` the annuity factor.  Rates down to ``r = 0`` are handled by the
series branch of :func:`breakeven.annuity.annuity_factor`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from breakeven.annuity import annuity_derivative, annuity_factor
from breakeven.project import (
    ProjectParams,
    accounting_breakeven,
    coeff_a,
    tax_shield_net,
)

#: |NPV| at or below ``ZERO_TOLERANCE * max(1, I)`` classifies as zero.
ZERO_TOLERANCE = 1e-6

#: Relative width of the "constant intercept" band for the h' discriminant.
SIGN_TOLERANCE = 1e-12


@dataclass(frozen=True)
class NpvLine:
    """NPV as the line ``intercept + slope * Q`` at discount rate ``rate``."""

    intercept: float
    slope: float
    rate: float

    def __call__(self, quantity: float) -> float:
        return self.intercept + self.slope * quantity

    @property
    def breakeven(self) -> float:
        return -self.intercept / self.slope


class Sign(enum.Enum):
    POSITIVE = "positive"
    ZERO = "zero"
    NEGATIVE = "negative"


@dataclass(frozen=True)
class NpvSign:
    sign: Sign
    npv: float
    quantity: float
    breakeven: float


class Trend(enum.Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"
    CONSTANT = "constant"


def npv_line(params: ProjectParams, r: float) -> NpvLine:
    f = annuity_factor(r, params.years)
    intercept = -params.initial_outlay + f * tax_shield_net(params)
    slope = f * params.margin * (1 - params.tax_rate)
    return NpvLine(intercept, slope, r)


def npv(params: ProjectParams, quantity: float, r: float) -> float:
    """Closed-form NPV of producing ``quantity`` units per year for ``n`` years."""
    return npv_line(params, r)(quantity)


def zero_tolerance(params: ProjectParams) -> float:
    return ZERO_TOLERANCE * max(1.0, abs(params.initial_outlay))


def classify(params: ProjectParams, quantity: float, r: float) -> NpvSign:
    """Sign of the NPV, with values inside :func:`zero_tolerance` reported as zero."""
    line = npv_line(params, r)
    value = line(quantity)
    if abs(value) <= zero_tolerance(params):
        sign = Sign.ZERO
    elif value > 0:
        sign = Sign.POSITIVE
    else:
        sign = Sign.NEGATIVE
    return NpvSign(sign, value, quantity, line.breakeven)


def npv_partials(params: ProjectParams, quantity: float, r: float) -> tuple[float, float]:
    """Return ``(dNPV/dQ, dNPV/dr)``.

    The intercept ``h`` depends on ``r`` as well as the slope, so the rate
    partial is ``(p - C_v)(1 - t_e) f'(r) (Q - a)`` with ``a`` the asymptote
    intercept.  It is negative only for ``Q > a``.
    """
    n = params.years
    scale = params.margin * (1 - params.tax_rate)
    d_quantity = scale * annuity_factor(r, n)
    d_rate = scale * annuity_derivative(r, n) * (quantity - coeff_a(params))
    return d_quantity, d_rate


def h_discriminant(params: ProjectParams) -> float:
    """``C_f (1 - t_e) - A t_e``, whose sign fixes the trend of ``h(r)``."""
    return -tax_shield_net(params)


def h_derivative(params: ProjectParams, r: float) -> float:
    """``h'(r) = [C_f(1 - t_e) - A t_e] G(r) / (r**2 (1+r)**(n+1))``."""
    return tax_shield_net(params) * annuity_derivative(r, params.years)


def h_monotonicity(params: ProjectParams) -> Trend:
    d = h_discriminant(params)
    if abs(d) <= SIGN_TOLERANCE * (params.fixed_costs + params.amortization):
        return Trend.CONSTANT
    return Trend.INCREASING if d > 0 else Trend.DECREASING


def npv_zero_rate_limit(params: ProjectParams, quantity: float) -> float:
    """Undiscounted NPV, ``n (p - C_v)(1 - t_e)(Q - Q_c)``."""
    n = params.years
    return n * params.margin * (1 - params.tax_rate) * (quantity - accounting_breakeven(params))

