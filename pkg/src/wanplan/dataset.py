"""CSV input files and the bundled 21-city case study.

A dataset directory holds four UTF-8 CSV files, each with a header row:

    cities.csv   id,name,population,sei,i1,i2,i3,i4,i5,i6
    edges.csv    a,b,length_km
    params.csv   key,value
    tariffs.csv  capacity,distance_km_max,price_mkd   (optional)

In cities.csv a row needs either ``sei`` or all of ``i1..i6``.
"""

from __future__ import annotations

import csv
import logging
import math
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from .costing import PriceSchedule, default_schedule, to_cents
from .demographics import ActivityCounts, City, InvalidParams, TrafficParams, UsageWeights
from .loading import CapacityTier
from .routing import Edge, Topology, TopologyError, build_topology

log = logging.getLogger(__name__)

CITY_COLUMNS = ["id", "name", "population", "sei", "i1", "i2", "i3", "i4", "i5", "i6"]
EDGE_COLUMNS = ["a", "b", "length_km"]
PARAM_COLUMNS = ["key", "value"]
TARIFF_COLUMNS = ["capacity", "distance_km_max", "price_mkd"]

PARAM_KEYS = {
    "N": "persons_per_household",
    "commercial_share": "commercial_share",
    "residential_share": "residential_share",
    "cc": "commercial_sessions_per_day",
    "cl_hours": "commercial_session_hours",
    "cr": "residential_sessions_per_day",
    "rl_hours": "residential_session_hours",
    "channel_kbps": "channel_kbps",
}
WEIGHT_KEYS = ["w1", "w2", "w3", "w4", "w5", "w6"]



class DatasetError(Exception):
    def __init__(self, message: str, file: Optional[str] = None, row: Optional[int] = None):
        self.file, self.row = file, row
        where = file or ""
        if row is not None:
            where += f":{row}"
        super().__init__(f"{where}: {message}" if where else message)


class ParseError(DatasetError):
    """Missing or unreadable file, wrong header, malformed value."""


class ValidationError(DatasetError):
    """Well-formed input that breaks a dataset invariant."""


@dataclass(frozen=True)
class Dataset:
    cities: tuple[City, ...]
    params: TrafficParams
    weights: UsageWeights
    topology: Topology
    schedule: PriceSchedule
    warnings: tuple[str, ...] = field(default=(), compare=False)

    @property
    def total_population(self) -> float:
        return math.fsum(c.population for c in self.cities)

    @property
    def names(self) -> dict[str, str]:
        return {c.id: c.name for c in self.cities}

    def city(self, key: str) -> City:
        """Look a city up by id or (case-insensitive) name."""
        for c in self.cities:
            if c.id == key:
                return c
        for c in self.cities:
            if c.name.lower() == key.lower() or c.id.lower() == key.lower():
                return c
        raise KeyError(f"unknown city {key!r}")


def _number(text: str, file: str, row: int, column: str):
    text = text.strip()
    try:
        if re.fullmatch(r"[+-]?\d+", text):
            return int(text)
        value = float(text)
    except ValueError:
        raise ParseError(f"column {column!r}: {text!r} is not a number", file, row) from None
    if not math.isfinite(value):
        raise ParseError(f"column {column!r}: {text!r} is not finite", file, row)
    return value


def _read_rows(path: Path, columns: list[str], required: Optional[list[str]] = None):
    """Yield (row_number, row_dict); row 1 is the header."""
    name = path.name
    try:
        handle = path.open(newline="", encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot open: {exc.strerror}", name) from None
    with handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("file is empty (header row missing)", name) from None
        except (csv.Error, UnicodeDecodeError) as exc:
            raise ParseError(f"unreadable: {exc}", name) from None
        header = [h.strip() for h in header]
        required = columns if required is None else required
        if header[: len(required)] != required or any(h not in columns for h in header):
            raise ParseError(f"header must be {','.join(columns)}, got {','.join(header)}", name, 1)
        try:
            for lineno, values in enumerate(reader, start=2):
                if not values or all(not v.strip() for v in values):
                    continue
                if len(values) != len(header):
                    raise ParseError(f"expected {len(header)} fields, got {len(values)}", name, lineno)
                yield lineno, dict(zip(header, values))
        except (csv.Error, UnicodeDecodeError) as exc:
            raise ParseError(f"unreadable: {exc}", name) from None


def read_cities(path: Path) -> list[City]:
    name = path.name
    cities = []
    seen = {}
    for lineno, row in _read_rows(path, CITY_COLUMNS, required=CITY_COLUMNS[:4]):
        cid = row["id"].strip()
        if not cid:
            raise ParseError("empty city id", name, lineno)
        if cid in seen:
            raise ValidationError(f"duplicate city id {cid!r} (first on row {seen[cid]})", name, lineno)
        seen[cid] = lineno
        population = _number(row["population"], name, lineno, "population")
        sei_text = row["sei"].strip()
        sei = _number(sei_text, name, lineno, "sei") if sei_text else None
        raw = [row.get(k, "").strip() for k in ("i1", "i2", "i3", "i4", "i5", "i6")]
        activity = None
        if any(raw):
            if not all(raw):
                raise ParseError("i1..i6 must be given together", name, lineno)
            counts = [_number(v, name, lineno, f"i{k}") for k, v in enumerate(raw, start=1)]
            try:
                activity = ActivityCounts(*counts)
            except InvalidParams as exc:
                raise ValidationError(str(exc), name, lineno) from None
        try:
            cities.append(City(cid, row["name"].strip(), population, activity, sei))
        except InvalidParams as exc:
            raise ValidationError(str(exc), name, lineno) from None
    if not cities:
        raise ValidationError("no cities", name)
    return cities


def read_edges(path: Path, known: dict[str, int]) -> list[Edge]:
    name = path.name
    edges = []
    seen = {}
    for lineno, row in _read_rows(path, EDGE_COLUMNS):
        a, b = row["a"].strip(), row["b"].strip()
        for end in (a, b):
            if end not in known:
                raise ValidationError(f"edge {a}-{b}: unknown city id {end!r}", name, lineno)
        length = _number(row["length_km"], name, lineno, "length_km")
        try:
            edge = Edge(a, b, length)
        except TopologyError as exc:
            raise ValidationError(str(exc), name, lineno) from None
        if edge.key in seen:
            raise ValidationError(f"duplicate edge {a}-{b} (first on row {seen[edge.key]})", name, lineno)
        seen[edge.key] = lineno
        edges.append(edge)
    return edges


def read_params(path: Path) -> tuple[TrafficParams, UsageWeights]:
    name = path.name
    values = {}
    for lineno, row in _read_rows(path, PARAM_COLUMNS):
        key = row["key"].strip()
        if key not in PARAM_KEYS and key not in WEIGHT_KEYS:
            raise ParseError(f"unknown parameter {key!r}", name, lineno)
        if key in values:
            raise ValidationError(f"parameter {key!r} given twice", name, lineno)
        values[key] = _number(row["value"], name, lineno, "value")
    missing = [k for k in WEIGHT_KEYS if k not in values]
    if missing:
        raise ValidationError(f"missing usage weights: {', '.join(missing)}", name)
    kwargs = {PARAM_KEYS[k]: v for k, v in values.items() if k in PARAM_KEYS}
    try:
        return TrafficParams(**kwargs), UsageWeights(*(values[k] for k in WEIGHT_KEYS))
    except InvalidParams as exc:
        raise ValidationError(str(exc), name) from None


_CAPACITY_UNITS = {"bit/s": 1, "kbit/s": 1_000, "mbit/s": 1_000_000, "gbit/s": 1_000_000_000}


def parse_capacity(text: str) -> int:
    """'64 kbit/s', '2 Mbit/s' or a bare bits-per-second integer."""
    m = re.fullmatch(r"\s*(\d+(?:\.\d+)?)\s*([kKmMgG]?bit/s|[kKmMgG]?bps)?\s*", text)
    if not m:
        raise ValueError(f"unrecognised capacity {text!r}")
    unit = (m.group(2) or "bit/s").lower().replace("bps", "bit/s")
    bps = float(m.group(1)) * _CAPACITY_UNITS[unit]
    if not bps.is_integer() or bps <= 0:
        raise ValueError(f"capacity {text!r} is not a positive whole number of bit/s")
    return int(bps)


def format_capacity(bps: int) -> str:
    for unit, scale in (("Gbit/s", 10**9), ("Mbit/s", 10**6), ("kbit/s", 10**3)):
        if bps >= scale and bps % scale == 0:
            return f"{bps // scale} {unit}"
    return f"{bps} bit/s"


def read_tariffs(path: Path) -> PriceSchedule:
    name = path.name
    prices = {}
    for lineno, row in _read_rows(path, TARIFF_COLUMNS):
        try:
            bps = parse_capacity(row["capacity"])
            cents = to_cents(row["price_mkd"].strip())
        except (ValueError, ArithmeticError) as exc:
            raise ParseError(str(exc), name, lineno) from None
        km = float(_number(row["distance_km_max"], name, lineno, "distance_km_max"))
        if (bps, km) in prices:
            raise ValidationError(f"duplicate tariff cell {format_capacity(bps)} / {km:g} km", name, lineno)
        prices[(bps, km)] = cents
    if not prices:
        raise ValidationError("no tariff rows", name)
    tiers = tuple(CapacityTier(format_capacity(b), b) for b in sorted({b for b, _ in prices}))
    bands = tuple(sorted({km for _, km in prices}))
    try:
        return PriceSchedule(tiers, bands, prices)
    except ValueError as exc:
        raise ValidationError(str(exc), name) from None


def load_dataset(directory: Union[str, Path]) -> Dataset:
    directory = Path(directory)
    if not directory.is_dir():
        raise ParseError(f"not a directory: {directory}")
    cities = read_cities(directory / "cities.csv")
    known = {c.id: i for i, c in enumerate(cities)}
    edges = read_edges(directory / "edges.csv", known)
    params, weights = read_params(directory / "params.csv")
    tariffs = directory / "tariffs.csv"
    schedule = read_tariffs(tariffs) if tariffs.exists() else default_schedule()

    topology = build_topology([c.id for c in cities], edges)
    total = math.fsum(c.population for c in cities)
    if total <= 0:
        raise ValidationError("total population must be > 0", "cities.csv")

    warnings = []
    for city in cities:
        warnings.extend(city.warnings())
    if not topology.connected:
        parts = "; ".join(" ".join(comp) for comp in topology.components)
        warnings.append(f"topology is disconnected into {len(topology.components)} parts: {parts}")
    for edge in edges:
        if edge.length_km > schedule.max_km:
            warnings.append(
                f"edge {edge.a}-{edge.b} is {edge.length_km:g} km, longer than the "
                f"{schedule.max_km:g} km tariff band"
            )
    for w in warnings:
        log.warning(w)
    return Dataset(tuple(cities), params, weights, topology, schedule, tuple(warnings))


def bundled_path():
    return resources.files("wanplan") / "data" / "macedonia"


def bundled_dataset() -> Dataset:
    """The 21-city Macedonian case study."""
    with resources.as_file(bundled_path()) as path:
        return load_dataset(path)


def _fmt(value) -> str:
    if isinstance(value, int):
        return str(value)
    value = float(value)
    return str(int(value)) if value.is_integer() else repr(value)


def write_dataset(dataset: Dataset, directory: Union[str, Path]) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    with (directory / "cities.csv").open("w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(CITY_COLUMNS)
        for c in dataset.cities:
            counts = [_fmt(v) for v in c.activity.as_tuple()] if c.activity else [""] * 6
            sei = "" if c.sei_override is None else _fmt(c.sei_override)
            out.writerow([c.id, c.name, _fmt(c.population), sei, *counts])
    with (directory / "edges.csv").open("w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(EDGE_COLUMNS)
        for e in dataset.topology.edges:
            out.writerow([e.a, e.b, _fmt(e.length_km)])
    with (directory / "params.csv").open("w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(PARAM_COLUMNS)
        for key, attr in PARAM_KEYS.items():
            out.writerow([key, _fmt(getattr(dataset.params, attr))])
        for key, w in zip(WEIGHT_KEYS, dataset.weights.as_tuple()):
            out.writerow([key, _fmt(w)])
    with (directory / "tariffs.csv").open("w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(TARIFF_COLUMNS)
        schedule = dataset.schedule
        for km in schedule.distance_tiers:
            for tier in schedule.capacity_tiers:
                cents = schedule.price_cents[(tier.bps, km)]
                out.writerow([tier.label, _fmt(km), f"{cents // 100}.{cents % 100:02d}"])
