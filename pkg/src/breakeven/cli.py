"""``breakeven`` command line interface.

Exit codes: 0 success, 2 invalid configuration or arguments, 3 numeric
domain error, 4 quantity outside the domain of the inverse problem,
1 I/O failure while writing output.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from breakeven import analysis, growth, sensitivity, valuation
from breakeven.config import ScenarioConfig, load_config, rate_range
from breakeven.errors import DomainError, InverseDomainError, ValidationError
from breakeven.project import accounting_breakeven
from breakeven.reference import TABLE_RATES, table_note
from breakeven.reports import Table, format_cell, render, to_csv

EXIT_OK = 0
EXIT_IO = 1
EXIT_CONFIG = 2
EXIT_DOMAIN = 3
EXIT_INVERSE = 4

PARAM_ALIASES = {
    "p": "price",
    "price": "price",
    "cv": "variable_cost",
    "variable_cost": "variable_cost",
    "cf": "fixed_costs",
    "fixed_costs": "fixed_costs",
}
DEFAULT_DELTAS = (-0.20, -0.10, 0.10, 0.20)
PROBE_WINDOW = (100.0, 200.0)


class UsageError(Exception):
    """Bad or missing command line value; reported with exit code 2."""


def _float_list(text: str) -> list[float]:
    if text.strip() == "":
        return []
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _param_list(text: str) -> list[str]:
    names = []
    for item in text.split(","):
        key = item.strip().lower()
        if key not in PARAM_ALIASES:
            raise argparse.ArgumentTypeError(f"unknown parameter {item!r}; use p, cv or cf")
        names.append(PARAM_ALIASES[key])
    return names


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="breakeven",
        description="Financial break-even analysis of a single-product investment project.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="scenario JSON file (default: bundled reference scenario)")
    common.add_argument(
        "--format",
        choices=("csv", "json", "text"),
        help="output format (default: text for npv/invert, csv otherwise)",
    )
    common.add_argument("--precision", type=int, default=2, help="decimals in displayed numbers")
    common.add_argument("--out", help="write output to this path instead of stdout")

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--r-from", type=float)
    grid.add_argument("--r-to", type=float)
    grid.add_argument("--r-step", type=float)
    grid.add_argument("--r-list", type=_float_list)

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("npv", parents=[common], help="NPV line and sign at one rate")
    p.add_argument("--q", type=float, help="yearly quantity")
    p.add_argument("--r", type=float, help="discount rate (default: scenario discount_rate)")

    p = sub.add_parser("sweep", parents=[common, grid], help="break-even quantity over a rate grid")

    p = sub.add_parser("invert", parents=[common], help="discount rate that makes Q the break-even")
    p.add_argument("--q", type=float)

    p = sub.add_parser("sensitivity", parents=[common, grid], help="one-at-a-time parameter sensitivity")
    p.add_argument("--param", type=_param_list, action="append")
    p.add_argument("--delta", type=_float_list)

    p = sub.add_parser("growth", parents=[common, grid], help="break-even with growing output")
    p.add_argument("--g", type=float, help="annual growth rate (default: scenario growth_rate)")

    p = sub.add_parser("plotdata", parents=[common, grid], help="plot-ready CSV: fig1 curve, fig2 with asymptote, fig3 sensitivity")
    p.add_argument("--which", choices=("fig1", "fig2", "fig3"), required=True)
    p.add_argument("--param", type=_param_list, action="append")
    p.add_argument("--delta", type=_float_list)
    return parser


def resolve_grid(args: argparse.Namespace, config: ScenarioConfig) -> list[float]:
    if args.r_list is not None:
        if any(v is not None for v in (args.r_from, args.r_to, args.r_step)):
            raise UsageError("use either --r-list or --r-from/--r-to/--r-step, not both")
        return analysis.check_grid(args.r_list)
    bounds = (args.r_from, args.r_to, args.r_step)
    if any(v is not None for v in bounds):
        if any(v is None for v in bounds):
            raise UsageError("--r-from, --r-to and --r-step must be given together")
        try:
            grid = rate_range(*bounds)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return analysis.check_grid(grid)
    if config.r_grid is not None:
        return analysis.check_grid(config.r_grid)
    return list(TABLE_RATES)


def _required(value, name: str, key: str):
    if value is None:
        raise UsageError(f"{name} is required (pass --{key} or set it in the scenario)")
    return value


def _parameters(args: argparse.Namespace) -> list[str]:
    if not args.param:
        return list(sensitivity.PARAMETERS)
    seen: list[str] = []
    for group in args.param:
        for name in group:
            if name not in seen:
                seen.append(name)
    return seen


def _deltas(args: argparse.Namespace) -> list[float]:
    return list(DEFAULT_DELTAS) if args.delta is None else args.delta


def cmd_npv(config: ScenarioConfig, quantity: Optional[float], r: float, precision: int) -> Table:
    params = config.params
    line = valuation.npv_line(params, r)
    table = Table([], precision=precision)
    meta = table.metadata
    meta["r"] = r
    meta["h"] = line.intercept
    meta["m"] = line.slope
    meta["q_f"] = analysis.financial_breakeven(params, r) if r >= 0 else line.breakeven
    meta["q_c"] = accounting_breakeven(params)
    if quantity is not None:
        result = valuation.classify(params, quantity, r)
        table.columns = ["q", "npv", "sign"]
        table.rows.append([quantity, result.npv, result.sign.value])
    else:
        table.columns = ["h", "m"]
        table.rows.append([line.intercept, line.slope])
    return table


def cmd_sweep(config: ScenarioConfig, r_grid: Sequence[float], precision: int) -> Table:
    params = config.params
    curve = analysis.sweep(params, r_grid)
    table = Table(["r", "q_f", "note"], precision=precision)
    table.metadata.update(a=curve.intercept, b=curve.slope, q_c=accounting_breakeven(params))
    for r, q in curve.points:
        table.rows.append([r, q, table_note(params, r, q)])
    return table


def cmd_invert(config: ScenarioConfig, quantity: float, precision: int) -> Table:
    params = config.params
    r = analysis.invert_breakeven(params, quantity)
    residual = abs(analysis.financial_breakeven(params, r) - quantity)
    table = Table(["q", "r", "residual"], precision=precision)
    table.metadata["q_c"] = accounting_breakeven(params)
    table.rows.append([quantity, r, residual])
    return table


def cmd_sensitivity(
    config: ScenarioConfig,
    parameters: Sequence[str],
    deltas: Sequence[float],
    r_grid: Sequence[float],
    precision: int,
) -> Table:
    params = config.params
    table = Table(["parameter", "delta", "r", "q_f", "relative_change", "note"], precision=precision)
    for r in r_grid:
        table.rows.append(["base", 0.0, r, analysis.financial_breakeven(params, r), 0.0, ""])
    for name in parameters:
        report = sensitivity.perturb_and_sweep(params, name, deltas, r_grid)
        for cell in report.cells:
            note = "" if cell.feasible else "infeasible"
            table.rows.append(
                [name, cell.delta, cell.r, cell.q_f_perturbed, cell.relative_change, note]
            )
    return table


def cmd_growth(config: ScenarioConfig, g: float, r_grid: Sequence[float], precision: int) -> Table:
    params = config.params
    grid = analysis.check_grid(r_grid)
    a, b = analysis.asymptote(params)
    table = Table(["r", "q_f_growth", "q_f_nogrowth", "asymptote"], precision=precision)
    meta = table.metadata
    meta.update(g=g, a=a, b=b, q_c=accounting_breakeven(params))
    if g > 0:
        meta["q_f_zero_rate_limit"] = growth.growth_zero_limit(params, g)
    probe = growth.asymptote_probe(params, g, *PROBE_WINDOW)
    meta["probe_window"] = f"{PROBE_WINDOW[0]:g}-{PROBE_WINDOW[1]:g}"
    meta["probe_slope"] = probe.slope
    meta["probe_intercept"] = probe.intercept
    for label, offset in probe.intercept_offsets().items():
        meta[f"probe_offset_from_{label}"] = offset
    for r in grid:
        table.rows.append(
            [
                r,
                growth.financial_breakeven_growth(params, r, g),
                analysis.financial_breakeven(params, r),
                a + b * r,
            ]
        )
    return table


def cmd_plotdata(
    config: ScenarioConfig,
    which: str,
    r_grid: Sequence[float],
    precision: int,
    parameters: Sequence[str] = sensitivity.PARAMETERS,
    deltas: Sequence[float] = DEFAULT_DELTAS,
) -> Table:
    if which == "fig3":
        return cmd_sensitivity(config, parameters, deltas, r_grid, precision)
    curve = analysis.sweep(config.params, r_grid)
    if which == "fig1":
        return Table(["r", "q_f"], [[r, q] for r, q in curve.points], precision=precision)
    if which == "fig2":
        rows = [[r, q, curve.asymptote_at(r)] for r, q in curve.points]
        return Table(["r", "q_f", "asymptote"], rows, precision=precision)
    raise ValueError(f"unknown figure {which!r}")


def render_text(table: Table) -> str:
    """``key: value`` lines: metadata first, then the cells of each row."""
    p = table.precision
    lines = [f"{key}: {format_cell(value, p)}" for key, value in table.metadata.items()]
    for row in table.rows:
        lines.extend(f"{col}: {format_cell(v, p)}" for col, v in zip(table.columns, row))
    return "\n".join(lines) + "\n"


def _output(table: Table, fmt: str) -> str:
    return render_text(table) if fmt == "text" else render(table, fmt)


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {out}: {exc.strerror}") from exc


def run(args: argparse.Namespace) -> str:
    single = args.command in ("npv", "invert")
    fmt = args.format or ("text" if single else "csv")
    if fmt == "text" and not single:
        raise UsageError("--format text is only available for npv and invert")
    prec = args.precision
    if prec < 0:
        raise UsageError("--precision must be >= 0")
    config = load_config(args.config)
    if args.command == "npv":
        r = _required(args.r if args.r is not None else config.discount_rate, "discount rate", "r")
        q = args.q if args.q is not None else config.quantity
        return _output(cmd_npv(config, q, r, prec), fmt)
    if args.command == "invert":
        q = _required(args.q if args.q is not None else config.quantity, "quantity", "q")
        return _output(cmd_invert(config, q, max(prec, 6)), fmt)
    grid = resolve_grid(args, config)
    if args.command == "sweep":
        return render(cmd_sweep(config, grid, prec), fmt)
    if args.command == "sensitivity":
        table = cmd_sensitivity(config, _parameters(args), _deltas(args), grid, prec)
        return render(table, fmt)
    if args.command == "growth":
        g = _required(args.g if args.g is not None else config.growth_rate, "growth rate", "g")
        return render(cmd_growth(config, g, grid, prec), fmt)
    if args.command == "plotdata":
        _required(args.out, "output path", "out")
        table = cmd_plotdata(config, args.which, grid, prec, _parameters(args), _deltas(args))
        return to_csv(table, metadata=False)
    raise UsageError(f"unknown command {args.command!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = run(args)
        _emit(text, args.out)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except InverseDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVERSE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
