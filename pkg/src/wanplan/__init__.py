"""WAN capacity planning: socioeconomic traffic estimation, shortest-path
routing, link sizing and leased-line costing."""

from .costing import (
    AccessTariff,
    AtmTariff,
    CostQuote,
    DuplexMode,
    PriceSchedule,
    adsl_annual_cost,
    atm_annual_cost,
    default_schedule,
    leased_price,
    network_cost,
    rented_line_annual_cost,
)
from .dataset import Dataset, bundled_dataset, load_dataset, write_dataset
from .demographics import (
    ActivityCounts,
    City,
    CityTraffic,
    DemandMatrix,
    TrafficParams,
    UsageWeights,
    activity_shares,
    build_demand_matrix,
    city_traffic,
    households,
    pair_demand,
    sei,
)
from .loading import (
    CapacityTier,
    LinkLoad,
    LinkSizing,
    assign_loads,
    bandwidth_of,
    classify_tier,
    size_links,
)
from .report import ReportConfig, export_dot, run_plan
from .routing import (
    UNREACHABLE,
    DistanceMatrix,
    Edge,
    ShortestPathResult,
    Topology,
    brute_force_distances,
    build_topology,
    dijkstra,
    floyd_warshall,
    reconstruct_path,
)

__version__ = "0.1.0"
