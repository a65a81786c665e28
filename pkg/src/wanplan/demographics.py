"""Per-city Erlang traffic and the inter-city demand matrix.

A city's offered traffic comes from its household count split into
commercial and residential shares, each with a daily session profile.
The carried traffic scales that by a socioeconomic indicator (SEI), a
weighted sum of the city's labour/education population shares. Pair
demand distributes a city's carried traffic over the other cities in
proportion to their population.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, Optional, Sequence

HOURS_PER_DAY = 24.0

DemandMode = Literal["directed", "symmetrized"]


class InvalidParams(ValueError):
    """Raised when an input violates its documented domain."""


@dataclass(frozen=True)
class ActivityCounts:
    """Person counts by labour status: public sector, enterprises, pupils,
    students, unemployed and everybody else."""

    i1: float
    i2: float
    i3: float
    i4: float
    i5: float
    i6: float

    def __post_init__(self):
        for name, value in zip(("i1", "i2", "i3", "i4", "i5", "i6"), self.as_tuple()):
            if not value >= 0:
                raise InvalidParams(f"activity count {name} must be >= 0, got {value}")

    def as_tuple(self) -> tuple[float, ...]:
        return (self.i1, self.i2, self.i3, self.i4, self.i5, self.i6)

    @property
    def total(self) -> float:
        return math.fsum(self.as_tuple())


@dataclass(frozen=True)
class UsageWeights:
    w1: float
    w2: float
    w3: float
    w4: float
    w5: float
    w6: float

    def __post_init__(self):
        for name, value in zip(("w1", "w2", "w3", "w4", "w5", "w6"), self.as_tuple()):
            if not 0.0 <= value <= 1.0:
                raise InvalidParams(f"usage weight {name} must lie in [0, 1], got {value}")

    def as_tuple(self) -> tuple[float, ...]:
        return (self.w1, self.w2, self.w3, self.w4, self.w5, self.w6)


# ICT usage weights of the Macedonian case study (public, enterprise, pupils,
# students, unemployed, other).
CASE_STUDY_WEIGHTS = UsageWeights(0.720, 0.360, 0.964, 0.964, 0.25, 0.25)


@dataclass(frozen=True)
class TrafficParams:
    persons_per_household: float = 3.5
    commercial_share: float = 0.15
    residential_share: float = 0.85
    commercial_sessions_per_day: float = 4.0
    commercial_session_hours: float = 0.5
    residential_sessions_per_day: float = 1.0
    residential_session_hours: float = 0.5
    channel_kbps: float = 64.0

    def __post_init__(self):
        if not self.persons_per_household > 0:
            raise InvalidParams("persons_per_household must be > 0")
        for name in ("commercial_share", "residential_share"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise InvalidParams(f"{name} must lie in [0, 1]")
        if abs(self.commercial_share + self.residential_share - 1.0) > 1e-9:
            raise InvalidParams("commercial_share + residential_share must equal 1")
        for name in ("commercial_sessions_per_day", "residential_sessions_per_day"):
            if not getattr(self, name) >= 0:
                raise InvalidParams(f"{name} must be >= 0")
        for name in ("commercial_session_hours", "residential_session_hours"):
            if not 0.0 < getattr(self, name) <= HOURS_PER_DAY:
                raise InvalidParams(f"{name} must lie in (0, 24]")
        if not self.channel_kbps > 0:
            raise InvalidParams("channel_kbps must be > 0")


@dataclass(frozen=True)
class City:
    id: str
    name: str
    population: float
    activity: Optional[ActivityCounts] = None
    sei_override: Optional[float] = None

    def __post_init__(self):
        if not self.population >= 0:
            raise InvalidParams(f"city {self.id}: population must be >= 0")
        if self.activity is None and self.sei_override is None:
            raise InvalidParams(f"city {self.id}: needs activity counts or an SEI value")
        if self.sei_override is not None and not 0.0 <= self.sei_override <= 1.0:
            raise InvalidParams(f"city {self.id}: SEI must lie in [0, 1]")

    def warnings(self, tolerance: float = 0.02) -> list[str]:
        """Non-fatal data-quality findings (activity counts vs. population)."""
        if self.activity is None or self.population <= 0:
            return []
        mismatch = abs(self.activity.total - self.population) / self.population
        if mismatch > tolerance:
            return [
                f"city {self.id}: activity counts sum to {self.activity.total:g}, "
                f"population is {self.population:g} ({mismatch:.1%} off)"
            ]
        return []


@dataclass(frozen=True)
class CityTraffic:
    city: City
    households: float
    offered_erlangs: float
    sei: float
    carried_erlangs: float


def households(population: float, params: TrafficParams) -> float:
    if not population >= 0:
        raise InvalidParams("population must be >= 0")
    return population / params.persons_per_household


def activity_shares(counts: ActivityCounts, population: float) -> tuple[float, ...]:
    if population <= 0:
        raise ZeroDivisionError("activity shares are undefined for a zero population")
    return tuple(count / population for count in counts.as_tuple())


def sei(shares: Sequence[float], weights: UsageWeights) -> float:
    """Weighted sum of the six activity shares."""
    if len(shares) != 6:
        raise InvalidParams(f"expected 6 activity shares, got {len(shares)}")
    if any(not a >= 0 for a in shares):
        raise InvalidParams("activity shares must be >= 0")
    return math.fsum(w * a for w, a in zip(weights.as_tuple(), shares))


def city_sei(city: City, weights: UsageWeights) -> float:
    if city.sei_override is not None:
        return city.sei_override
    if city.activity is None:
        raise InvalidParams(f"city {city.id}: no SEI source")
    return sei(activity_shares(city.activity, city.population), weights)


def city_traffic(city: City, params: TrafficParams, weights: UsageWeights = CASE_STUDY_WEIGHTS) -> CityTraffic:
    total_households = households(city.population, params)
    commercial = params.commercial_share * total_households
    residential = params.residential_share * total_households
    commercial_erlangs = (
        commercial * params.commercial_sessions_per_day * params.commercial_session_hours / HOURS_PER_DAY
    )
    residential_erlangs = (
        residential * params.residential_sessions_per_day * params.residential_session_hours / HOURS_PER_DAY
    )
    offered = commercial_erlangs + residential_erlangs
    indicator = city_sei(city, weights)
    return CityTraffic(
        city=city,
        households=total_households,
        offered_erlangs=offered,
        sei=indicator,
        carried_erlangs=offered * indicator,
    )


def pair_demand(source_carried: float, dest_population: float, total_population: float) -> float:
    """Share of a city's carried traffic destined to one other city."""
    if total_population <= 0:
        raise ZeroDivisionError("total population must be > 0")
    if source_carried < 0 or dest_population < 0:
        raise InvalidParams("traffic and population must be >= 0")
    return source_carried * dest_population / total_population


@dataclass(frozen=True)
class DemandMatrix:
    order: tuple[str, ...]
    entries: dict[str, dict[str, float]] = field(repr=False)
    mode: DemandMode = "directed"

    def __getitem__(self, pair: tuple[str, str]) -> float:
        a, b = pair
        return self.entries[a][b]

    def row_sum(self, a: str) -> float:
        return math.fsum(self.entries[a].values())

    def total(self) -> float:
        return math.fsum(v for row in self.entries.values() for v in row.values())

    def pairs(self):
        """Unordered pairs (a, b) with a before b in ``order``."""
        for i, a in enumerate(self.order):
            for b in self.order[i + 1:]:
                yield a, b

    def symmetrized(self) -> "DemandMatrix":
        if self.mode == "symmetrized":
            return self
        entries = {
            a: {b: (self.entries[a][b] + self.entries[b][a]) / 2 for b in self.order}
            for a in self.order
        }
        return DemandMatrix(self.order, entries, "symmetrized")


def build_demand_matrix(cities: Sequence[CityTraffic], mode: DemandMode = "directed") -> DemandMatrix:
    if mode not in ("directed", "symmetrized"):
        raise InvalidParams(f"unknown demand mode {mode!r}")
    if len(cities) < 2:
        raise InvalidParams("a demand matrix needs at least two cities")
    order = tuple(ct.city.id for ct in cities)
    if len(set(order)) != len(order):
        dupes = sorted({cid for cid in order if order.count(cid) > 1})
        raise InvalidParams(f"duplicate city ids: {', '.join(dupes)}")
    total_population = math.fsum(ct.city.population for ct in cities)
    entries = {
        a.city.id: {
            b.city.id: 0.0 if a is b else pair_demand(a.carried_erlangs, b.city.population, total_population)
            for b in cities
        }
        for a in cities
    }
    matrix = DemandMatrix(order, entries, "directed")
    return matrix.symmetrized() if mode == "symmetrized" else matrix
