"""Leased-line tariff lookup, access-technology cost calculators and the
whole-network cost rollup.

Money inside quotes is held as integer MKD hundredths (``*_cents``), so
totals never drift. The standalone calculators are plain arithmetic and
stay exact for ``int``, ``Fraction`` or ``Decimal`` inputs.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
from typing import Literal, Optional, Sequence

from .loading import DEFAULT_TIERS, CapacityTier, LinkSizing

log = logging.getLogger(__name__)

MONTHS_PER_YEAR = 12
MKD_PER_EUR = 61

OverlengthPolicy = Literal["clamp", "error"]


class OverTierError(ValueError):
    pass


class DuplexMode(enum.Enum):
    FULL_DUPLEX = "full"
    HALF_DUPLEX = "half"
    SIMPLEX = "simplex"


def to_cents(mkd) -> int:
    value = Decimal(str(mkd)) * 100
    if value != value.to_integral_value():
        raise ValueError(f"{mkd} MKD is not a whole number of hundredths")
    return int(value)


def cents_to_mkd(cents: int) -> Decimal:
    return Decimal(cents) / 100


def cents_to_eur(cents: int, rate: int = MKD_PER_EUR) -> Decimal:
    return (Decimal(cents) / 100 / rate).quantize(Decimal("0.01"), rounding=ROUND_HALF_EVEN)


@dataclass(frozen=True)
class PriceSchedule:
    capacity_tiers: tuple[CapacityTier, ...]
    distance_tiers: tuple[float, ...]
    price_cents: dict[tuple[int, float], int] = field(repr=False)
    eur_rate: int = MKD_PER_EUR

    def __post_init__(self):
        if not self.capacity_tiers or not self.distance_tiers:
            raise ValueError("price schedule needs capacity and distance tiers")
        caps = [t.bps for t in self.capacity_tiers]
        if caps != sorted(set(caps)):
            raise ValueError("capacity tiers must be strictly ascending")
        if list(self.distance_tiers) != sorted(set(self.distance_tiers)):
            raise ValueError("distance tiers must be strictly ascending")
        for cap in caps:
            for km in self.distance_tiers:
                price = self.price_cents.get((cap, km))
                if price is None:
                    raise ValueError(f"price schedule lacks {cap} bps up to {km:g} km")
                if price <= 0:
                    raise ValueError(f"price for {cap} bps up to {km:g} km must be positive")
        for i, cap in enumerate(caps):
            for j, km in enumerate(self.distance_tiers):
                here = self.price_cents[(cap, km)]
                if i and self.price_cents[(caps[i - 1], km)] > here:
                    raise ValueError(f"prices must not fall with capacity (at {km:g} km)")
                if j and self.price_cents[(cap, self.distance_tiers[j - 1])] > here:
                    raise ValueError(f"prices must not fall with distance (at {cap} bps)")

    @property
    def max_km(self) -> float:
        return self.distance_tiers[-1]

    def tier(self, label_or_bps) -> CapacityTier:
        for t in self.capacity_tiers:
            if label_or_bps in (t.label, t.bps) or label_or_bps == t:
                return t
        raise KeyError(f"capacity {label_or_bps!r} not in schedule")

    def distance_tier(self, length_km: float, policy: OverlengthPolicy = "clamp") -> float:
        if not length_km > 0:
            raise ValueError("length must be > 0")
        for bound in self.distance_tiers:
            if length_km <= bound:
                return bound
        if policy == "error":
            raise OverTierError(f"{length_km:g} km exceeds the longest priced distance ({self.max_km:g} km)")
        if policy != "clamp":
            raise ValueError(f"unknown overlength policy {policy!r}")
        return self.max_km


# Monthly leased-line prices in MKD, by capacity and distance band.
TABLE_PRICES_MKD = {
    64_000: {2: 3733, 5: 4774, 15: 5018, 50: 6059},
    2_000_000: {2: 11383, 5: 15178, 15: 20380, 50: 32987},
    34_000_000: {2: 54590, 5: 58936, 15: 97736, 50: 155387},
    155_000_000: {2: 73807, 5: 81518, 15: 121849, 50: 253613},
}


def default_schedule() -> PriceSchedule:
    prices = {
        (cap, float(km)): mkd * 100
        for cap, row in TABLE_PRICES_MKD.items()
        for km, mkd in row.items()
    }
    return PriceSchedule(DEFAULT_TIERS, (2.0, 5.0, 15.0, 50.0), prices)


def leased_price_cents(
    schedule: PriceSchedule, tier, length_km: float, overlength_policy: OverlengthPolicy = "clamp"
) -> int:
    capacity = schedule.tier(tier)
    bound = schedule.distance_tier(length_km, overlength_policy)
    return schedule.price_cents[(capacity.bps, bound)]


def leased_price(
    schedule: PriceSchedule, tier, length_km: float, overlength_policy: OverlengthPolicy = "clamp"
) -> Decimal:
    """Monthly price in MKD of one leased line of ``tier`` over ``length_km``."""
    return cents_to_mkd(leased_price_cents(schedule, tier, length_km, overlength_policy))


@dataclass(frozen=True)
class AccessTariff:
    acc: object
    suba: object
    init: object
    subn: object

    def __post_init__(self):
        for name in ("acc", "suba", "init", "subn"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")


@dataclass(frozen=True)
class AtmTariff:
    ins_a: object
    sub_a: object
    ins_b: object
    sub_b: object
    ins_pvc: object
    sub_pvc: object

    def __post_init__(self):
        for name in ("ins_a", "sub_a", "ins_b", "sub_b", "ins_pvc", "sub_pvc"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")


def adsl_annual_cost(mode: DuplexMode, tariff: AccessTariff):
    t, m = tariff, MONTHS_PER_YEAR
    if mode is DuplexMode.FULL_DUPLEX:
        return 2 * t.acc + 2 * m * t.suba + 2 * t.init + 2 * m * t.subn
    if mode is DuplexMode.HALF_DUPLEX:
        return t.acc + 2 * m * t.suba + 2 * t.init + m * t.subn
    if mode is DuplexMode.SIMPLEX:
        return t.acc + m * t.suba + t.init + m * t.subn
    raise ValueError(f"unknown duplex mode {mode!r}")


def rented_line_annual_cost(mode: DuplexMode, init, sub):
    if init < 0 or sub < 0:
        raise ValueError("rented-line charges must be >= 0")
    one_way = init + MONTHS_PER_YEAR * sub
    if mode is DuplexMode.FULL_DUPLEX:
        return 2 * one_way
    if mode in (DuplexMode.HALF_DUPLEX, DuplexMode.SIMPLEX):
        return one_way
    raise ValueError(f"unknown duplex mode {mode!r}")


@dataclass(frozen=True)
class AtmCost:
    access_a: object
    access_b: object
    pvcc: object
    total: object


def atm_annual_cost(mode: DuplexMode, tariff: AtmTariff) -> AtmCost:
    """Yearly ATM cost split into the two access legs and the PVC core.

    Simplex traffic never leaves the core towards B, so that leg is
    reported but left out of the total.
    """
    m = MONTHS_PER_YEAR
    access_a = tariff.ins_a + tariff.sub_a * m
    access_b = tariff.ins_b + tariff.sub_b * m
    core = tariff.ins_pvc + tariff.sub_pvc * m
    if mode is DuplexMode.FULL_DUPLEX:
        pvcc = 2 * core
        return AtmCost(access_a, access_b, pvcc, access_a + access_b + pvcc)
    if mode is DuplexMode.HALF_DUPLEX:
        return AtmCost(access_a, access_b, core, access_a + access_b + core)
    if mode is DuplexMode.SIMPLEX:
        return AtmCost(access_a, access_b, core, access_a + core)
    raise ValueError(f"unknown duplex mode {mode!r}")


@dataclass(frozen=True)
class LineItem:
    label: str
    endpoints: tuple[str, str]
    length_km: float
    tier: CapacityTier
    line_count: int
    monthly_cents: int
    clamped: bool = False

    @property
    def annual_cents(self) -> int:
        return self.monthly_cents * MONTHS_PER_YEAR


@dataclass(frozen=True)
class CostQuote:
    line_items: tuple[LineItem, ...]
    eur_rate: int = MKD_PER_EUR
    warnings: tuple[str, ...] = ()

    @property
    def total_monthly_cents(self) -> int:
        return sum(item.monthly_cents for item in self.line_items)

    @property
    def total_annual_cents(self) -> int:
        return sum(item.annual_cents for item in self.line_items)

    @property
    def total_monthly(self) -> Decimal:
        return cents_to_mkd(self.total_monthly_cents)

    @property
    def total_annual(self) -> Decimal:
        return cents_to_mkd(self.total_annual_cents)

    def in_eur(self, cents: int) -> Decimal:
        return cents_to_eur(cents, self.eur_rate)


def network_cost(
    sizings: Sequence[LinkSizing],
    schedule: Optional[PriceSchedule] = None,
    overlength_policy: OverlengthPolicy = "clamp",
    names: Optional[dict[str, str]] = None,
) -> CostQuote:
    """Price every sized link as ``line_count`` leased lines of its tier."""
    schedule = schedule or default_schedule()
    items, warnings = [], []
    for sizing in sizings:
        edge = sizing.edge
        unit = leased_price_cents(schedule, sizing.tier, edge.length_km, overlength_policy)
        clamped = edge.length_km > schedule.max_km
        if clamped:
            msg = (
                f"link {edge.label(names)} is {edge.length_km:g} km, beyond the "
                f"{schedule.max_km:g} km band; priced at the {schedule.max_km:g} km rate"
            )
            log.warning(msg)
            warnings.append(msg)
        items.append(
            LineItem(
                label=edge.label(names),
                endpoints=(edge.a, edge.b),
                length_km=edge.length_km,
                tier=sizing.tier,
                line_count=sizing.line_count,
                monthly_cents=unit * sizing.line_count,
                clamped=clamped,
            )
        )
    return CostQuote(tuple(items), schedule.eur_rate, tuple(warnings))
