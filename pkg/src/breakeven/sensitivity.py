"""One-at-a-time sensitivity of the break-even quantity.

Each of price, variable cost and fixed costs is scaled by ``1 + delta`` while
everything else is held at the reference scenario.  A scaled scenario that
breaks ``p > C_v`` is reported as an infeasible cell instead of aborting the
sweep.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from breakeven.analysis import check_grid, financial_breakeven
from breakeven.errors import DomainError, ValidationError
from breakeven.project import ProjectParams

PARAMETERS = ("price", "variable_cost", "fixed_costs")

#: Relative step used by :func:`elasticity`.
ELASTICITY_STEP = 1e-5


@dataclass(frozen=True)
class SensitivityCell:
    delta: float
    r: float
    q_f_base: float
    q_f_perturbed: Optional[float]
    relative_change: Optional[float]
    reason: str = ""

    @property
    def feasible(self) -> bool:
        return self.q_f_perturbed is not None


@dataclass(frozen=True)
class SensitivityReport:
    parameter: str
    cells: tuple[SensitivityCell, ...]


@dataclass(frozen=True)
class RateScenario:
    delta: float
    r: float
    q_f: float


def _check_parameter(which: str) -> None:
    if which not in PARAMETERS:
        raise ValueError(f"unknown sensitivity parameter {which!r}; expected one of {PARAMETERS}")


def perturbed(params: ProjectParams, which: str, delta: float) -> ProjectParams:
    """Copy of ``params`` with ``which`` scaled by ``1 + delta``; raises ValidationError if infeasible."""
    _check_parameter(which)
    return params.replace(**{which: getattr(params, which) * (1 + delta)})


def perturb_and_sweep(
    params: ProjectParams, which: str, deltas: Sequence[float], r_grid: Sequence[float]
) -> SensitivityReport:
    grid = check_grid(r_grid)
    base = [financial_breakeven(params, r) for r in grid]
    cells = []
    for delta in deltas:
        try:
            scenario = perturbed(params, which, delta)
        except ValidationError as exc:
            reason = "; ".join(exc.issues.values())
            cells.extend(SensitivityCell(delta, r, q, None, None, reason) for r, q in zip(grid, base))
            continue
        for r, q in zip(grid, base):
            q_new = financial_breakeven(scenario, r)
            cells.append(SensitivityCell(delta, r, q, q_new, (q_new - q) / q))
    return SensitivityReport(which, tuple(cells))


def elasticity(params: ProjectParams, which: str, r: float, step: float = ELASTICITY_STEP) -> float:
    """Point elasticity ``(dQ_f/dtheta) (theta / Q_f)`` by central differences."""
    _check_parameter(which)
    if getattr(params, which) == 0:
        return 0.0
    up = financial_breakeven(perturbed(params, which, step), r)
    down = financial_breakeven(perturbed(params, which, -step), r)
    return (up - down) / (2 * step * financial_breakeven(params, r))


def rate_scenarios(params: ProjectParams, base_r: float, deltas: Sequence[float]) -> list[RateScenario]:
    """Break-even at ``base_r`` followed by each rate ``base_r * (1 + delta)``."""
    if not base_r > 0:
        raise DomainError(f"reference discount rate must be > 0, got {base_r!r}")
    out = [RateScenario(0.0, base_r, financial_breakeven(params, base_r))]
    for delta in deltas:
        r = base_r * (1 + delta)
        if not r > 0:
            raise DomainError(f"scaled discount rate {r!r} is not positive (delta={delta!r})")
        out.append(RateScenario(delta, r, financial_breakeven(params, r)))
    return out
