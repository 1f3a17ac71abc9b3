"""Financial break-even analysis of a simple investment project."""

from breakeven.analysis import (
    BreakevenCurve,
    asymptote,
    asymptote_gap,
    breakeven_derivative,
    financial_breakeven,
    gap_to_accounting,
    invert_breakeven,
    sweep,
)
from breakeven.annuity import (
    annuity_derivative,
    annuity_factor,
    annuity_reciprocal,
    annuity_second_derivative,
    poly_G,
    poly_H,
    reciprocal_excess,
)
from breakeven.errors import (
    BreakevenError,
    ConvergenceError,
    DomainError,
    InverseDomainError,
    ValidationError,
)
from breakeven.growth import (
    asymptote_probe,
    financial_breakeven_growth,
    growth_discount_factor,
    growth_zero_limit,
    npv_growth,
)
from breakeven.project import (
    ProjectParams,
    accounting_breakeven,
    coeff_a,
    coeff_b,
    ebt,
    net_cash_flow,
    validate,
)
from breakeven.reference import reference_params
from breakeven.sensitivity import elasticity, perturb_and_sweep, rate_scenarios
from breakeven.valuation import NpvLine, classify, h_monotonicity, npv, npv_line, npv_partials

__version__ = "0.1.0"
