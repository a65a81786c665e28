"""Print the case-study tables recomputed from the bundled Macedonia data.

    python3 scripts/reproduce_tables.py [--scope all|endpoint_only] [--top 10]
"""

import argparse
import logging

from wanplan.dataset import bundled_dataset
from wanplan.loading import by_descending_load
from wanplan.report import ReportConfig, render_table, run_plan, sei_rows
from wanplan.routing import dijkstra, floyd_warshall, reconstruct_path


def distance_rows(ds, source, result):
    names = ds.names
    dist = result.dist if isinstance(result.dist.get(source), int) else result.dist[source]
    rows = []
    for city in sorted(ds.topology.nodes, key=lambda c: (dist[c], ds.topology.index(c))):
        if city == source:
            continue
        path = reconstruct_path(result, source, city)
        rows.append({"to": names[city], "km": dist[city], "route": "-".join(names[n] for n in path)})
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--scope", default="endpoint_only", choices=("all", "endpoint_only"))
    parser.add_argument("--top", type=int, default=10)
    args = parser.parse_args()
    logging.basicConfig(level=logging.ERROR)

    ds = bundled_dataset()
    plan = run_plan(ds, ReportConfig(load_scope=args.scope))

    print("Per-city traffic")
    print(render_table(sei_rows(ds, plan.traffic)))

    print("\nShortest distances from Bitola (Dijkstra)")
    print(render_table(distance_rows(ds, "BT", dijkstra(ds.topology, "BT"))))

    print("\nShortest distances from Gevgelija (Floyd-Warshall)")
    fw = floyd_warshall(ds.topology)
    print(render_table(distance_rows(ds, "GE", fw)))

    print(f"\nBusiest links, scope={args.scope}")
    rows = [
        {
            "link": s.edge.label(ds.names),
            "km": s.edge.length_km,
            "erlangs": round(s.erlangs, 2),
            "mbps": round(s.mbps, 2),
            "tier": s.tier.label,
            "lines": s.line_count,
        }
        for s in by_descending_load(plan.sizings)[: args.top]
    ]
    print(render_table(rows))

    print(f"\nMonthly leased-line cost: {plan.quote.total_monthly} MKD")
    print(f"Annual leased-line cost:  {plan.quote.total_annual} MKD")


if __name__ == "__main__":
    main()
