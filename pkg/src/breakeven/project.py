"""Project parameters and the per-year accounting identities."""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from typing import Any, Mapping

from breakeven.errors import ValidationError

#: Field names accepted by :func:`validate`, in display order.
FIELDS = (
    "initial_outlay",
    "years",
    "price",
    "variable_cost",
    "fixed_costs",
    "tax_rate",
)


@dataclass(frozen=True)
class ProjectParams:
    """A single-product project with straight-line amortization.

    Invariants are checked in ``__post_init__``, so an invalid instance
    cannot exist.  :func:`validate` builds one from a loose mapping.
    """

    initial_outlay: float
    years: int
    price: float
    variable_cost: float
    fixed_costs: float
    tax_rate: float

    def __post_init__(self) -> None:
        issues = _issues(self.__dict__)
        if issues:
            raise ValidationError(issues)

    @property
    def amortization(self) -> float:
        """Annual straight-line amortization ``A = I / n``."""
        return self.initial_outlay / self.years

    @property
    def margin(self) -> float:
        """Contribution margin per unit, ``p - C_v``."""
        return self.price - self.variable_cost

    def replace(self, **changes: Any) -> "ProjectParams":
        values = {name: getattr(self, name) for name in FIELDS}
        values.update(changes)
        return ProjectParams(**values)


def _is_real(value: Any) -> bool:
    return (
        isinstance(value, numbers.Real)
        and not isinstance(value, bool)
        and math.isfinite(value)
    )


def _issues(raw: Mapping[str, Any]) -> dict[str, str]:
    issues: dict[str, str] = {}
    for name in FIELDS:
        if name not in raw:
            issues[name] = "missing"
        elif name == "years":
            v = raw[name]
            if isinstance(v, bool) or not isinstance(v, numbers.Integral):
                issues[name] = f"must be an integer, got {v!r}"
        elif not _is_real(raw[name]):
            issues[name] = f"must be a finite number, got {raw[name]!r}"
    # Range checks run on every field that parsed, so one pass reports everything.
    ok = {name: raw[name] for name in FIELDS if name in raw and name not in issues}

    def check(name, fails, message):
        if name in ok and fails(ok[name]):
            issues[name] = message

    check("initial_outlay", lambda v: v <= 0, "initial outlay must be > 0")
    check("years", lambda v: v < 2, "years must be >= 2")
    check("variable_cost", lambda v: v <= 0, "variable cost must be > 0")
    if "price" in ok and "variable_cost" in ok and ok["price"] <= ok["variable_cost"]:
        issues["price"] = "price must exceed variable cost"
    check("fixed_costs", lambda v: v < 0, "fixed costs must be >= 0")
    check("tax_rate", lambda v: not v < 1, "tax rate must be < 1")
    check("tax_rate", lambda v: not 0 <= v, "tax rate must be >= 0")
    return issues


def validate(raw: Mapping[str, Any]) -> ProjectParams:
    """Build :class:`ProjectParams` from a mapping, reporting every violation.

    Unknown keys are ignored here; the scenario loader checks them.
    """
    issues = _issues(raw)
    if issues:
        raise ValidationError(issues)
    values = {name: raw[name] for name in FIELDS}
    values["years"] = int(values["years"])
    for name in FIELDS:
        if name != "years":
            values[name] = float(values[name])
    return ProjectParams(**values)


def net_cash_flow(params: ProjectParams, quantity: float) -> float:
    """After-tax cash flow of one year: ``(1-t_e)[(p-C_v)Q - C_f] + t_e A``."""
    t = params.tax_rate
    return (1 - t) * (params.margin * quantity - params.fixed_costs) + t * params.amortization


def ebt(params: ProjectParams, quantity: float) -> float:
    """Earnings before taxes: ``(p - C_v) Q - C_f - A``."""
    return params.margin * quantity - params.fixed_costs - params.amortization


def accounting_breakeven(params: ProjectParams) -> float:
    """Quantity at which EBT vanishes, ``(C_f + A) / (p - C_v)``."""
    return (params.fixed_costs + params.amortization) / params.margin


def tax_shield_net(params: ProjectParams) -> float:
    """Per-year cash flow at zero output, ``t_e A - (1 - t_e) C_f``."""
    t = params.tax_rate
    return t * params.amortization - (1 - t) * params.fixed_costs


def coeff_a(params: ProjectParams) -> float:
    """Intercept of the large-rate asymptote of the break-even curve."""
    t = params.tax_rate
    return (params.fixed_costs - t * (params.fixed_costs + params.amortization)) / (
        params.margin * (1 - t)
    )


def coeff_b(params: ProjectParams) -> float:
    """Slope of the large-rate asymptote, ``I / ((p - C_v)(1 - t_e))``; always positive."""
    return params.initial_outlay / (params.margin * (1 - params.tax_rate))
