"""Command-line front end.

Exit codes: 0 success, 1 validation error, 2 unroutable demand,
3 I/O or parse error. Diagnostics go to stderr as a single line.
"""

from __future__ import annotations

import argparse
import logging
import sys
from decimal import Decimal, InvalidOperation
from pathlib import Path

from . import costing
from .dataset import Dataset, ParseError, ValidationError, load_dataset
from .demographics import InvalidParams
from .loading import UnroutableDemandError
from .report import (
    ReportConfig,
    cost_rows,
    demand_rows,
    export_dot,
    load_rows,
    plan_document,
    render,
    render_json,
    route_rows,
    run_plan,
    sei_rows,
    size_rows,
)
from .routing import TopologyError

EXIT_OK, EXIT_INVALID, EXIT_UNROUTABLE, EXIT_IO = 0, 1, 2, 3

MODES = {
    "full": costing.DuplexMode.FULL_DUPLEX,
    "half": costing.DuplexMode.HALF_DUPLEX,
    "simplex": costing.DuplexMode.SIMPLEX,
}


class CliError(Exception):
    def __init__(self, message, code=EXIT_INVALID):
        super().__init__(message)
        self.code = code


def _money_arg(text: str) -> Decimal:
    try:
        value = Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if not value.is_finite() or value < 0:
        raise argparse.ArgumentTypeError(f"{text!r} must be a non-negative number")
    return value


def _add_report_options(p: argparse.ArgumentParser, *, demand=True, scope=True, cost=False):
    p.add_argument("--format", dest="output_format", choices=["table", "csv", "json"], default="table")
    p.add_argument("-o", "--output", dest="output_path", help="write the report to this file")
    if demand:
        p.add_argument("--demand-mode", choices=["directed", "symmetrized"], default="symmetrized")
    if scope:
        p.add_argument("--scope", dest="load_scope", choices=["all", "endpoint_only"], default="all")
    if cost:
        p.add_argument("--currency", choices=["mkd", "eur"], default="mkd")
        p.add_argument("--overlength", dest="overlength_policy", choices=["clamp", "error"], default="clamp")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wanplan", description="Size and price a WAN from demographic and topology data.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log warnings to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a dataset directory")
    p.add_argument("directory")

    p = sub.add_parser("sei", help="per-city households, SEI and Erlangs")
    p.add_argument("directory")
    _add_report_options(p, demand=False, scope=False)

    p = sub.add_parser("traffic", help="city-pair demand matrix")
    p.add_argument("directory")
    _add_report_options(p, scope=False)

    p = sub.add_parser("route", help="shortest routes from one city")
    p.add_argument("directory")
    p.add_argument("--from", dest="origin", required=True)
    p.add_argument("--to", dest="destination")
    p.add_argument("--algo", choices=["dijkstra", "fw"], default="dijkstra")
    _add_report_options(p, demand=False, scope=False)

    p = sub.add_parser("loads", help="Erlangs carried per link")
    p.add_argument("directory")
    _add_report_options(p)

    p = sub.add_parser("size", help="bandwidth and capacity tier per link")
    p.add_argument("directory")
    _add_report_options(p)

    p = sub.add_parser("cost", help="leased-line cost of the sized network")
    p.add_argument("directory")
    _add_report_options(p, cost=True)

    p = sub.add_parser("plan", help="every stage as one JSON document")
    p.add_argument("directory")
    p.add_argument("-o", "--output", dest="output_path")
    p.add_argument("--demand-mode", choices=["directed", "symmetrized"], default="symmetrized")
    p.add_argument("--scope", dest="load_scope", choices=["all", "endpoint_only"], default="all")
    p.add_argument("--currency", choices=["mkd", "eur"], default="mkd")
    p.add_argument("--overlength", dest="overlength_policy", choices=["clamp", "error"], default="clamp")

    calc = sub.add_parser("calc", help="standalone yearly cost calculators")
    kinds = calc.add_subparsers(dest="kind", required=True)
    p = kinds.add_parser("adsl")
    p.add_argument("--mode", choices=list(MODES), required=True)
    for flag in ("acc", "suba", "int", "subn"):
        p.add_argument(f"--{flag}", type=_money_arg, default=Decimal(0))
    p = kinds.add_parser("rented")
    p.add_argument("--mode", choices=list(MODES), required=True)
    for flag in ("int", "sub"):
        p.add_argument(f"--{flag}", type=_money_arg, default=Decimal(0))
    p = kinds.add_parser("atm")
    p.add_argument("--mode", choices=list(MODES), required=True)
    for flag in ("ins-a", "sub-a", "ins-b", "sub-b", "ins-pvc", "sub-pvc"):
        p.add_argument(f"--{flag}", type=_money_arg, default=Decimal(0))
    for p in (kinds.choices["adsl"], kinds.choices["rented"], kinds.choices["atm"]):
        p.add_argument("--format", dest="output_format", choices=["table", "json"], default="table")

    p = sub.add_parser("export-dot", help="topology annotated with km, Erlangs, Mbps and tier")
    p.add_argument("directory")
    p.add_argument("-o", "--output", dest="output_path", required=True)
    p.add_argument("--demand-mode", choices=["directed", "symmetrized"], default="symmetrized")
    p.add_argument("--scope", dest="load_scope", choices=["all", "endpoint_only"], default="all")
    p.add_argument("--topology-only", action="store_true", help="label edges with km only")
    return parser


def _config(args) -> ReportConfig:
    return ReportConfig(
        output_format=getattr(args, "output_format", "table"),
        currency=getattr(args, "currency", "mkd"),
        demand_mode=getattr(args, "demand_mode", "symmetrized"),
        load_scope=getattr(args, "load_scope", "all"),
        overlength_policy=getattr(args, "overlength_policy", "clamp"),
        output_path=getattr(args, "output_path", None),
    )


def _city_id(dataset: Dataset, key: str) -> str:
    try:
        return dataset.city(key).id
    except KeyError:
        raise CliError(f"unknown city {key!r}") from None


def _plain(value: Decimal) -> str:
    return format(value.normalize(), "f")


def _calc(args) -> str:
    mode = MODES[args.mode]
    if args.kind == "adsl":
        tariff = costing.AccessTariff(args.acc, args.suba, getattr(args, "int"), args.subn)
        result = {"annual_cost": costing.adsl_annual_cost(mode, tariff)}
    elif args.kind == "rented":
        result = {"annual_cost": costing.rented_line_annual_cost(mode, getattr(args, "int"), args.sub)}
    else:
        tariff = costing.AtmTariff(args.ins_a, args.sub_a, args.ins_b, args.sub_b, args.ins_pvc, args.sub_pvc)
        cost = costing.atm_annual_cost(mode, tariff)
        result = {"na_a": cost.access_a, "na_b": cost.access_b, "pvcc": cost.pvcc, "annual_cost": cost.total}
    if args.output_format == "json":
        return render_json({k: _plain(v) for k, v in result.items()})
    if len(result) == 1:
        return _plain(result["annual_cost"]) + "\n"
    labels = {"na_a": "NA(A)", "na_b": "NA(B)", "pvcc": "PVCC", "annual_cost": "TOTAL_COST"}
    return "".join(f"{labels[k]} {_plain(v)}\n" for k, v in result.items())


def execute(args) -> str:
    """Run one parsed command and return its report text."""
    if args.command == "calc":
        return _calc(args)

    dataset = load_dataset(args.directory)
    config = _config(args)

    if args.command == "validate":
        lines = [
            f"ok: {len(dataset.cities)} cities, {len(dataset.topology.edges)} edges, "
            f"total population {dataset.total_population:.0f}, "
            + ("connected" if dataset.topology.connected else f"{len(dataset.topology.components)} components")
        ]
        lines.extend(f"warning: {w}" for w in dataset.warnings)
        return "\n".join(lines) + "\n"
    if args.command == "sei":
        return render(sei_rows(dataset), config.output_format)
    if args.command == "route":
        origin = _city_id(dataset, args.origin)
        destination = _city_id(dataset, args.destination) if args.destination else None
        rows = route_rows(dataset, origin, destination, args.algo)
        if config.output_format == "table":
            return "".join(
                f"{r['route']} {r['distance_km']}\n" if r["route"] else f"{r['from']}-{r['to']} unreachable\n"
                for r in rows
            )
        return render(rows, config.output_format)

    plan = run_plan(dataset, config)
    if args.command == "traffic":
        return render(demand_rows(plan.demand), config.output_format)
    if args.command == "loads":
        return render(load_rows(dataset, plan.loads), config.output_format)
    if args.command == "size":
        return render(size_rows(dataset, plan.sizings), config.output_format)
    if args.command == "cost":
        return render(cost_rows(plan.quote, config.currency), config.output_format)
    if args.command == "plan":
        return render_json(plan_document(plan))
    if args.command == "export-dot":
        return export_dot(dataset, () if args.topology_only else plan.sizings, plan.traffic)
    raise CliError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.verbose else logging.ERROR, format="%(levelname)s: %(message)s")
    try:
        text = execute(args)
        output = getattr(args, "output_path", None)
        if output:
            Path(output).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValidationError, InvalidParams, TopologyError, costing.OverTierError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except UnroutableDemandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNROUTABLE
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
