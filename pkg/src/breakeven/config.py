"""Scenario files: JSON objects with snake_case keys.

Required keys are the six project parameters.  Optional keys are
``discount_rate``, ``growth_rate``, ``quantity``, ``description`` and
``r_grid``, the last either an explicit list of rates or an object
``{"from": .., "to": .., "step": ..}`` (both ends inclusive).
"""

from __future__ import annotations

import json
import math
import numbers
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Optional

from breakeven.errors import ValidationError
from breakeven.project import FIELDS, ProjectParams, validate

OPTIONAL_KEYS = ("discount_rate", "growth_rate", "quantity", "r_grid", "description")


@dataclass(frozen=True)
class ScenarioConfig:
    params: ProjectParams
    discount_rate: Optional[float] = None
    growth_rate: Optional[float] = None
    quantity: Optional[float] = None
    r_grid: Optional[tuple[float, ...]] = None
    description: str = ""


def rate_range(start: float, stop: float, step: float) -> list[float]:
    """Inclusive arithmetic grid, rounded to 12 decimals so 0.1 + 0.01 lands on 0.11."""
    if not step > 0:
        raise ValueError(f"grid step must be > 0, got {step!r}")
    if stop < start:
        raise ValueError(f"grid end {stop!r} is below its start {start!r}")
    count = int(math.floor((stop - start) / step + 1e-9))
    return [round(start + i * step, 12) for i in range(count + 1)]


def _number(value: Any) -> bool:
    return isinstance(value, numbers.Real) and not isinstance(value, bool) and math.isfinite(value)


def _parse_grid(raw: Any) -> tuple[float, ...]:
    if isinstance(raw, dict):
        missing = [k for k in ("from", "to", "step") if k not in raw]
        if missing:
            raise ValueError(f"range needs keys from/to/step (missing {', '.join(missing)})")
        if not all(_number(raw[k]) for k in ("from", "to", "step")):
            raise ValueError("range bounds must be numbers")
        grid = rate_range(raw["from"], raw["to"], raw["step"])
    elif isinstance(raw, list):
        if not all(_number(v) for v in raw):
            raise ValueError("grid entries must be numbers")
        grid = [float(v) for v in raw]
    else:
        raise ValueError("must be a list of rates or a from/to/step object")
    for left, right in zip(grid, grid[1:]):
        if not right > left:
            raise ValueError(f"must be strictly increasing ({left!r} then {right!r})")
    return tuple(grid)


def parse_config(raw: Any) -> ScenarioConfig:
    """Validate a decoded JSON object; every problem is collected into one ValidationError."""
    if not isinstance(raw, dict):
        raise ValidationError({"<root>": "scenario must be a JSON object"})
    issues: dict[str, str] = {}
    for key in raw:
        if key not in FIELDS and key not in OPTIONAL_KEYS:
            issues[key] = "unknown key"

    params = None
    try:
        params = validate(raw)
    except ValidationError as exc:
        issues.update(exc.issues)

    optional: dict[str, Any] = {}
    for key in ("discount_rate", "growth_rate", "quantity"):
        if raw.get(key) is None:
            continue
        if not _number(raw[key]):
            issues[key] = f"must be a finite number, got {raw[key]!r}"
            continue
        optional[key] = float(raw[key])
    if "growth_rate" in optional and optional["growth_rate"] <= -1:
        issues["growth_rate"] = "growth rate must exceed -1"
    if "quantity" in optional and optional["quantity"] < 0:
        issues["quantity"] = "quantity must be >= 0"
    if raw.get("r_grid") is not None:
        try:
            optional["r_grid"] = _parse_grid(raw["r_grid"])
        except ValueError as exc:
            issues["r_grid"] = str(exc)
    description = raw.get("description", "")
    if not isinstance(description, str):
        issues["description"] = "must be a string"

    if issues:
        raise ValidationError(issues)
    return ScenarioConfig(params=params, description=description, **optional)


def load_config(path: Optional[str | Path] = None) -> ScenarioConfig:
    """Read a scenario file; ``None`` loads the bundled reference scenario."""
    if path is None:
        text = resources.files("breakeven").joinpath("data/default_scenario.json").read_text()
        source = "<default scenario>"
    else:
        source = str(path)
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ValidationError({"config": f"cannot read {source}: {exc.strerror}"}) from exc
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError({"config": f"{source} is not valid JSON: {exc}"}) from exc
    return parse_config(raw)
