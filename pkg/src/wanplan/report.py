"""The end-to-end planning pipeline and its tabular/JSON/DOT renderings.

Report rows are plain dicts with presentation rounding already applied
(Erlangs and Mbps to 2 decimals, bps as integers, money as whole MKD or
EUR to the cent), so every output format shows identical values.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Literal, Optional, Sequence

from .costing import CostQuote, OverlengthPolicy, network_cost
from .dataset import Dataset
from .demographics import CityTraffic, DemandMatrix, DemandMode, build_demand_matrix, city_traffic
from .loading import LinkLoad, LinkSizing, LoadScope, assign_loads, by_descending_load, size_links
from .routing import UNREACHABLE, DistanceMatrix, dijkstra, floyd_warshall, reconstruct_path

OutputFormat = Literal["table", "csv", "json"]
Currency = Literal["mkd", "eur"]


@dataclass(frozen=True)
class ReportConfig:
    output_format: OutputFormat = "table"
    currency: Currency = "mkd"
    demand_mode: DemandMode = "symmetrized"
    load_scope: LoadScope = "all"
    overlength_policy: OverlengthPolicy = "clamp"
    output_path: Optional[str] = None

    def __post_init__(self):
        choices = {
            "output_format": ("table", "csv", "json"),
            "currency": ("mkd", "eur"),
            "demand_mode": ("directed", "symmetrized"),
            "load_scope": ("all", "endpoint_only"),
            "overlength_policy": ("clamp", "error"),
        }
        for name, allowed in choices.items():
            if getattr(self, name) not in allowed:
                raise ValueError(f"{name} must be one of {', '.join(allowed)}")


@dataclass(frozen=True)
class Plan:
    dataset: Dataset
    config: ReportConfig
    traffic: tuple[CityTraffic, ...]
    demand: DemandMatrix
    paths: DistanceMatrix
    loads: tuple[LinkLoad, ...]
    sizings: tuple[LinkSizing, ...]
    quote: CostQuote


def compute_traffic(dataset: Dataset) -> list[CityTraffic]:
    return [city_traffic(c, dataset.params, dataset.weights) for c in dataset.cities]


def run_plan(dataset: Dataset, config: ReportConfig = ReportConfig()) -> Plan:
    traffic = compute_traffic(dataset)
    demand = build_demand_matrix(traffic, config.demand_mode)
    paths = floyd_warshall(dataset.topology)
    loads = assign_loads(demand.symmetrized(), paths, config.load_scope)
    sizings = size_links(loads, dataset.params.channel_kbps, dataset.schedule.capacity_tiers)
    quote = network_cost(sizings, dataset.schedule, config.overlength_policy, dataset.names)
    return Plan(dataset, config, tuple(traffic), demand, paths, tuple(loads), tuple(sizings), quote)


def r2(x: float) -> float:
    return round(x, 2)


def _whole(x):
    return int(x) if float(x).is_integer() else x


def money(cents: int, currency: Currency, quote_rate: int) -> object:
    if currency == "eur":
        eur = (Decimal(cents) / 100 / quote_rate).quantize(Decimal("0.01"), rounding=ROUND_HALF_EVEN)
        return float(eur)
    return int((Decimal(cents) / 100).to_integral_value(rounding=ROUND_HALF_EVEN))


def sei_rows(dataset: Dataset, traffic: Optional[Sequence[CityTraffic]] = None) -> list[dict]:
    traffic = traffic or compute_traffic(dataset)
    p = dataset.params
    rows = []
    for ct in traffic:
        rows.append(
            {
                "id": ct.city.id,
                "city": ct.city.name,
                "population": ct.city.population,
                "households": r2(ct.households),
                "commercial_households": r2(p.commercial_share * ct.households),
                "residential_households": r2(p.residential_share * ct.households),
                "offered_erlangs": r2(ct.offered_erlangs),
                "sei": round(ct.sei, 6),
                "carried_erlangs": r2(ct.carried_erlangs),
            }
        )
    return rows


def demand_rows(matrix: DemandMatrix) -> list[dict]:
    return [
        {"id": a, **{b: r2(matrix.entries[a][b]) for b in matrix.order}}
        for a in matrix.order
    ]


def route_rows(dataset: Dataset, origin: str, destination: Optional[str] = None, algo: str = "dijkstra") -> list[dict]:
    topology = dataset.topology
    if algo == "dijkstra":
        result = dijkstra(topology, origin)
        dist = result.dist
    elif algo == "fw":
        result = floyd_warshall(topology)
        dist = result.dist[origin]
    else:
        raise ValueError(f"unknown algorithm {algo!r}")
    names = dataset.names
    targets = [destination] if destination else [n for n in topology.nodes if n != origin]
    rows = []
    for target in targets:
        if dist[target] is UNREACHABLE:
            rows.append({"from": names[origin], "to": names[target], "distance_km": None, "route": None})
            continue
        path = reconstruct_path(result, origin, target)
        rows.append(
            {
                "from": names[origin],
                "to": names[target],
                "distance_km": dist[target],
                "route": "-".join(names[n] for n in path),
            }
        )
    if not destination:
        rows.sort(key=lambda r: (r["distance_km"] is None, r["distance_km"] or 0))
    return rows


def load_rows(dataset: Dataset, loads: Sequence[LinkLoad]) -> list[dict]:
    names = dataset.names
    return [
        {
            "link": load.edge.label(names),
            "a": load.edge.a,
            "b": load.edge.b,
            "length_km": load.edge.length_km,
            "erlangs": r2(load.erlangs),
            "pairs": load.contributors,
        }
        for load in by_descending_load(loads)
    ]


def size_rows(dataset: Dataset, sizings: Sequence[LinkSizing]) -> list[dict]:
    names = dataset.names
    return [
        {
            "link": s.edge.label(names),
            "erlangs": r2(s.erlangs),
            "bandwidth_bps": int(round(s.bandwidth_bps)),
            "mbps": r2(s.mbps),
            "tier": s.tier.label,
            "lines": s.line_count,
        }
        for s in by_descending_load(sizings)
    ]


def cost_rows(quote: CostQuote, currency: Currency = "mkd") -> list[dict]:
    unit = currency.upper()
    rows = [
        {
            "link": item.label,
            "length_km": item.length_km,
            "tier": item.tier.label,
            "lines": item.line_count,
            f"monthly_{currency}": money(item.monthly_cents, currency, quote.eur_rate),
            f"annual_{currency}": money(item.annual_cents, currency, quote.eur_rate),
            "note": "clamped to longest band" if item.clamped else "",
        }
        for item in quote.line_items
    ]
    rows.append(
        {
            "link": f"TOTAL ({unit})",
            "length_km": None,
            "tier": None,
            "lines": sum(item.line_count for item in quote.line_items),
            f"monthly_{currency}": money(quote.total_monthly_cents, currency, quote.eur_rate),
            f"annual_{currency}": money(quote.total_annual_cents, currency, quote.eur_rate),
            "note": "",
        }
    )
    return rows


def plan_document(plan: Plan) -> dict:
    ds, cfg = plan.dataset, plan.config
    names = ds.names
    routes = []
    for a, b in plan.demand.pairs():
        d = plan.paths.dist[a][b]
        if d is UNREACHABLE:
            routes.append({"a": a, "b": b, "distance_km": None, "route": None})
        else:
            path = reconstruct_path(plan.paths, a, b)
            routes.append({"a": a, "b": b, "distance_km": d, "route": "-".join(names[n] for n in path)})
    return {
        "config": {
            "currency": cfg.currency,
            "demand_mode": cfg.demand_mode,
            "load_scope": cfg.load_scope,
            "overlength_policy": cfg.overlength_policy,
        },
        "summary": {
            "cities": len(ds.cities),
            "edges": len(ds.topology.edges),
            "total_population": _whole(ds.total_population),
            "connected": ds.topology.connected,
            "channel_kbps": ds.params.channel_kbps,
        },
        "warnings": list(ds.warnings) + [w for w in plan.quote.warnings if w not in ds.warnings],
        "sei": sei_rows(ds, plan.traffic),
        "traffic": {"mode": plan.demand.mode, "order": list(plan.demand.order), "rows": demand_rows(plan.demand)},
        "routes": routes,
        "loads": load_rows(ds, plan.loads),
        "size": size_rows(ds, plan.sizings),
        "cost": cost_rows(plan.quote, cfg.currency),
    }


def render_table(rows: Sequence[dict]) -> str:
    if not rows:
        return ""
    headers = list(rows[0])
    cells = [[_table_value(r[h]) for h in headers] for r in rows]
    widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(headers)]
    numeric = [all(isinstance(r[h], (int, float)) or r[h] in ("", None) for r in rows) for h in headers]

    def line(values):
        return "  ".join(v.rjust(w) if num else v.ljust(w) for v, w, num in zip(values, widths, numeric)).rstrip()

    out = [line(headers), line(["-" * w for w in widths])]
    out.extend(line(c) for c in cells)
    return "\n".join(out) + "\n"


def _table_value(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        if value.is_integer() and abs(value) >= 1000:
            return str(int(value))
        return f"{value:.6f}".rstrip("0").rstrip(".") if abs(value) < 1 else f"{value:.2f}"
    return str(value)


def render_csv(rows: Sequence[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: "" if v is None else v for k, v in row.items()})
    return buf.getvalue()


def render_json(document) -> str:
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def render(rows: Sequence[dict], output_format: OutputFormat) -> str:
    if output_format == "json":
        return render_json(list(rows))
    if output_format == "csv":
        return render_csv(rows)
    return render_table(rows)


def _dot_id(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(dataset: Dataset, sizings: Sequence[LinkSizing] = (), traffic: Optional[Sequence[CityTraffic]] = None) -> str:
    """Undirected DOT graph of the topology.

    Nodes carry the city name and its carried Erlangs; edges carry
    "km / Erlangs / Mbps / tier" when sizings are given, otherwise just km.
    """
    carried = {ct.city.id: ct.carried_erlangs for ct in (traffic or compute_traffic(dataset))}
    by_edge = {s.edge.key: s for s in sizings}
    lines = ["graph wan {", "  node [shape=box];"]
    for city in dataset.cities:
        label = f"{city.name}\\n{carried[city.id]:.2f} E"
        lines.append(f"  {_dot_id(city.id)} [label={_dot_id(label)}];")
    for edge in dataset.topology.edges:
        km = f"{edge.length_km:g} km"
        s = by_edge.get(edge.key)
        if s is None:
            label = km
        else:
            tier = s.tier.label if s.line_count == 1 else f"{s.line_count} x {s.tier.label}"
            label = f"{km} / {s.erlangs:.2f} E / {s.mbps:.2f} Mbps / {tier}"
        lines.append(f"  {_dot_id(edge.a)} -- {_dot_id(edge.b)} [label={_dot_id(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
