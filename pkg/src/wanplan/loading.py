"""Link loads, bandwidth and capacity tiers.

Every origin-destination pair's demand is placed on the edges of its
single shortest route; an edge's load is the sum of everything routed
across it.
"""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Literal, Sequence

from .demographics import DemandMatrix
from .routing import UNREACHABLE, DistanceMatrix, Edge, path_edges, reconstruct_path

log = logging.getLogger(__name__)

LoadScope = Literal["all", "endpoint_only"]


class UnroutableDemandError(RuntimeError):
    def __init__(self, pairs):
        self.pairs = list(pairs)
        shown = ", ".join(f"{a}-{b}" for a, b in self.pairs[:5])
        more = "" if len(self.pairs) <= 5 else f" (+{len(self.pairs) - 5} more)"
        super().__init__(f"no route for demand between {shown}{more}")


@dataclass(frozen=True)
class CapacityTier:
    label: str
    bps: int


# Leased-line capacities of the tariff schedule.
DEFAULT_TIERS = (
    CapacityTier("64 kbit/s", 64_000),
    CapacityTier("2 Mbit/s", 2_000_000),
    CapacityTier("34 Mbit/s", 34_000_000),
    CapacityTier("155 Mbit/s", 155_000_000),
)


@dataclass(frozen=True)
class LinkLoad:
    edge: Edge
    erlangs: float
    contributors: int


@dataclass(frozen=True)
class LinkSizing:
    edge: Edge
    erlangs: float
    bandwidth_bps: float
    tier: CapacityTier
    line_count: int

    @property
    def mbps(self) -> float:
        return self.bandwidth_bps / 1e6


def unroutable_pairs(matrix: DemandMatrix, paths: DistanceMatrix) -> list[tuple[str, str]]:
    return [
        (a, b)
        for a, b in matrix.pairs()
        if matrix.entries[a][b] > 0 and paths.dist[a][b] is UNREACHABLE
    ]


def assign_loads(
    matrix: DemandMatrix,
    paths: DistanceMatrix,
    scope: LoadScope = "all",
    allow_unroutable: bool = False,
) -> list[LinkLoad]:
    """Accumulate each unordered pair's demand on the edges of its route.

    ``scope="endpoint_only"`` counts a pair on an edge only when one of the
    pair's cities is an endpoint of that edge. Loads come back in the
    topology's edge order.
    """
    if scope not in ("all", "endpoint_only"):
        raise ValueError(f"unknown load scope {scope!r}")
    if set(matrix.order) != set(paths.order):
        raise ValueError("demand matrix and routes cover different cities")
    topology = paths.topology

    missing = unroutable_pairs(matrix, paths)
    if missing and not allow_unroutable:
        raise UnroutableDemandError(missing)
    for a, b in missing:
        log.warning("skipping unroutable demand %s-%s (%.4g Erlangs)", a, b, matrix.entries[a][b])
    skip = set(missing)

    contributions = defaultdict(list)
    for a, b in matrix.pairs():
        demand = matrix.entries[a][b]
        if demand <= 0 or (a, b) in skip:
            continue
        for edge in path_edges(topology, reconstruct_path(paths, a, b)):
            if scope == "endpoint_only" and not ({a, b} & {edge.a, edge.b}):
                continue
            contributions[edge.key].append(demand)

    return [
        LinkLoad(edge, math.fsum(contributions[edge.key]), len(contributions[edge.key]))
        for edge in topology.edges
    ]


def bandwidth_of(erlangs: float, channel_kbps: float = 64.0) -> float:
    """Bits per second needed to carry ``erlangs`` channels of ``channel_kbps``."""
    if erlangs < 0:
        raise ValueError("erlangs must be >= 0")
    return erlangs * channel_kbps * 1000


def classify_tier(bandwidth_bps: float, tiers: Sequence[CapacityTier] = DEFAULT_TIERS) -> tuple[CapacityTier, int]:
    if not tiers:
        raise ValueError("no capacity tiers")
    if any(x.bps >= y.bps for x, y in zip(tiers, tiers[1:])):
        raise ValueError("capacity tiers must be strictly ascending")
    for tier in tiers:
        if bandwidth_bps <= tier.bps:
            return tier, 1
    largest = tiers[-1]
    return largest, math.ceil(bandwidth_bps / largest.bps)


def size_links(
    loads: Sequence[LinkLoad],
    channel_kbps: float = 64.0,
    tiers: Sequence[CapacityTier] = DEFAULT_TIERS,
) -> list[LinkSizing]:
    sizings = []
    for load in loads:
        bps = bandwidth_of(load.erlangs, channel_kbps)
        tier, count = classify_tier(bps, tiers)
        sizings.append(LinkSizing(load.edge, load.erlangs, bps, tier, count))
    return sizings


def by_descending_load(items):
    """Sort loads or sizings heaviest first; edge order breaks ties."""
    return sorted(items, key=lambda x: -x.erlangs)
