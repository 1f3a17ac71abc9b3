"""Reference scenario and its published break-even table.

The scenario is a 10-year project: I = 150000, p = 3.70, C_v = 3.00,
C_f = 30000, t_e = 0.35, evaluated at r = 0.10.
"""

from __future__ import annotations

from typing import Optional

from breakeven.project import ProjectParams

REFERENCE_SCENARIO = {
    "initial_outlay": 150000.0,
    "years": 10,
    "price": 3.70,
    "variable_cost": 3.00,
    "fixed_costs": 30000.0,
    "tax_rate": 0.35,
}
REFERENCE_RATE = 0.10

#: Absolute tolerance for matching computed values against the two-decimal table.
TABLE_TOLERANCE = 0.05

# (r, published Q_f) exactly as printed, two decimals.
PUBLISHED_TABLE: tuple[tuple[float, float], ...] = (
    (0.03, 69966.10),
    (0.04, 71964.05),
    (0.05, 74012.50),
    (0.06, 76110.32),
    (0.07, 78256.32),
    (0.08, 80449.28),
    (0.09, 82687.94),
    (0.10, 84971.01),
    (0.11, 87297.17),
    (0.12, 89665.11),
    (0.13, 92073.48),
    (0.14, 94520.95),
    (0.15, 97006.17),
    (0.16, 99527.83),
    (0.17, 10208.59),  # a digit is missing; the curve gives 102084.59
    (0.18, 104675.16),
    (0.19, 107298.23),
    (0.20, 109952.56),
    (0.25, 123650.30),
    (0.30, 137954.98),
    (0.35, 152742.30),
    (0.40, 167908.96),
    (0.45, 183371.28),
    (0.50, 199062.79),
    (0.60, 230936.39),
    (0.70, 263238.31),
    (0.80, 295795.68),
    (0.90, 328506.70),
    (1.00, 361311.27),
)

#: Rates whose published value is a known misprint.
MISPRINTED_RATES = frozenset({0.17})

TABLE_RATES = tuple(r for r, _ in PUBLISHED_TABLE)


def reference_params() -> ProjectParams:
    return ProjectParams(**REFERENCE_SCENARIO)


def published_value(r: float) -> Optional[float]:
    for rate, value in PUBLISHED_TABLE:
        if abs(rate - r) < 1e-12:
            return value
    return None


def table_note(params: ProjectParams, r: float, q_f: float) -> str:
    """Footnote for a computed point that disagrees with the published table, else ``""``."""
    if params != reference_params():
        return ""
    published = published_value(r)
    if published is None or abs(published - q_f) <= TABLE_TOLERANCE:
        return ""
    return f"published value {published:.2f} is a misprint"
