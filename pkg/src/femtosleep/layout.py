"""Macrocell geometry: named stations, femto-access-point discs, area accounting.

Stations are placed on four concentric placement rings at 1/5 .. 4/5 of the
macrocell radius (100, 200, 300, 400 m for the default 500 m cell).  Each ring
carries ``SLOTS_PER_RING`` evenly spaced angular slots.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .errors import InvalidParameterError, OutOfCoverageError

N_RINGS = 4
SLOTS_PER_RING = 12
DEFAULT_FAP_RADIUS = 15.0
DEFAULT_FREE_SPACE_FACTOR = 0.01


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidParameterError(f"non-finite point ({self.x}, {self.y})")

    def distance_to(self, other: Point) -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


ORIGIN = Point(0.0, 0.0)


@dataclass(frozen=True)
class Station:
    """A place that may host users, optionally equipped with FAPs.

    ``fap_count = 0`` marks a place with users but no femto coverage.  Several
    FAPs at one station share a single coverage disc.
    """

    name: str
    position: Point
    fap_count: int = 1
    fap_radius: float = DEFAULT_FAP_RADIUS
    factor: float = 0.7

    @property
    def has_fap(self) -> bool:
        return self.fap_count >= 1

    @property
    def area(self) -> float:
        return fap_area(self.fap_radius)


@dataclass(frozen=True)
class MacroCell:
    center: Point = ORIGIN
    radius: float = 500.0
    bs_height: float = 100.0
    bs_tx_power: float = 1500.0  # W
    bs_op_power: float = 2000.0  # W

    @property
    def area(self) -> float:
        return math.pi * self.radius**2


@dataclass(frozen=True)
class NetworkLayout:
    macro: MacroCell = field(default_factory=MacroCell)
    stations: tuple[Station, ...] = ()
    free_space_factor: float = DEFAULT_FREE_SPACE_FACTOR

    def __post_init__(self):
        object.__setattr__(self, "stations", tuple(self.stations))

    @property
    def total_fap_count(self) -> int:
        return sum(s.fap_count for s in self.stations)

    @property
    def free_space_area(self) -> float:
        return self.macro.area - sum(s.area for s in self.stations)

    def station(self, name: str) -> Station:
        for s in self.stations:
            if s.name == name:
                return s
        raise KeyError(name)

    def fap_stations(self) -> tuple[Station, ...]:
        return tuple(s for s in self.stations if s.has_fap)


def fap_area(radius: float) -> float:
    """Planar coverage area of one FAP disc, in square meters."""
    if not radius > 0:
        raise InvalidParameterError(f"FAP radius must be positive, got {radius}")
    return math.pi * radius**2


class CoverageClass(enum.Enum):
    INSIDE_FAP = "inside-fap"
    INSIDE_STATION_NO_FAP = "inside-station-no-fap"
    FREE_SPACE = "free-space"


class Location(NamedTuple):
    kind: CoverageClass
    station: str | None = None


def _in_macro(layout: NetworkLayout, p: Point) -> bool:
    return layout.macro.center.distance_to(p) <= layout.macro.radius


def locate(layout: NetworkLayout, p: Point) -> Location:
    """Classify a point inside the macrocell by the disc it falls in.

    Disc membership is closed: a point at exactly ``fap_radius`` is inside.
    """
    if not _in_macro(layout, p):
        raise OutOfCoverageError(f"{p} lies outside the macrocell")
    for s in layout.stations:
        if s.position.distance_to(p) <= s.fap_radius:
            kind = CoverageClass.INSIDE_FAP if s.has_fap else CoverageClass.INSIDE_STATION_NO_FAP
            return Location(kind, s.name)
    return Location(CoverageClass.FREE_SPACE)


def station_index(layout: NetworkLayout, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Vectorised ``locate``: index of the station each point falls in, -1 for free space.

    Points outside the macrocell are not checked here.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    out = np.full(xs.shape, -1, dtype=np.int64)
    # reversed so the first station in order wins where (invalid) discs overlap
    for i in reversed(range(len(layout.stations))):
        s = layout.stations[i]
        d2 = (xs - s.position.x) ** 2 + (ys - s.position.y) ** 2
        out[d2 <= s.fap_radius**2] = i
    return out


class Violation(NamedTuple):
    kind: str  # "parameter" | "factor-range" | "out-of-bounds" | "overlap"
    detail: str


def validate(layout: NetworkLayout) -> list[Violation]:
    """List every violated layout invariant; an empty list means the layout is valid."""
    report: list[Violation] = []
    m = layout.macro
    for name in ("radius", "bs_height", "bs_tx_power", "bs_op_power"):
        if not getattr(m, name) > 0:
            report.append(Violation("parameter", f"macro.{name} must be positive"))
    if not 0.0 <= layout.free_space_factor <= 1.0:
        report.append(Violation("factor-range", f"free_space_factor {layout.free_space_factor} not in [0, 1]"))

    seen: set[str] = set()
    for s in layout.stations:
        if s.name in seen:
            report.append(Violation("parameter", f"duplicate station name {s.name!r}"))
        seen.add(s.name)
        if not 0.0 <= s.factor <= 1.0:
            report.append(Violation("factor-range", f"{s.name}: factor {s.factor} not in [0, 1]"))
        if not s.fap_radius > 0:
            report.append(Violation("parameter", f"{s.name}: fap_radius must be positive"))
        if s.fap_count < 0 or int(s.fap_count) != s.fap_count:
            report.append(Violation("parameter", f"{s.name}: fap_count must be a non-negative integer"))
        if m.radius > 0 and m.center.distance_to(s.position) + s.fap_radius > m.radius:
            report.append(Violation("out-of-bounds", f"{s.name}: disc extends outside the macrocell"))

    stations = layout.stations
    for i in range(len(stations)):
        for j in range(i + 1, len(stations)):
            a, b = stations[i], stations[j]
            # tangent discs are allowed
            if a.position.distance_to(b.position) < a.fap_radius + b.fap_radius:
                report.append(Violation("overlap", f"{a.name} overlaps {b.name}"))
    return report


def check(layout: NetworkLayout) -> NetworkLayout:
    """Return ``layout`` unchanged, or raise with the full validation report."""
    report = validate(layout)
    if report:
        raise InvalidParameterError("invalid layout: " + "; ".join(v.detail for v in report))
    return layout


def ring_radius(macro: MacroCell, ring: int) -> float:
    if not 1 <= ring <= N_RINGS:
        raise InvalidParameterError(f"ring must be in 1..{N_RINGS}, got {ring}")
    return macro.radius * ring / (N_RINGS + 1)


def ring_position(macro: MacroCell, ring: int, angle_deg: float) -> Point:
    r = ring_radius(macro, ring)
    a = math.radians(angle_deg)
    return Point(macro.center.x + r * math.cos(a), macro.center.y + r * math.sin(a))


def free_ring_slots(layout: NetworkLayout, radius: float = DEFAULT_FAP_RADIUS) -> Iterator[tuple[int, float]]:
    """Yield ``(ring, angle_deg)`` slots where a new disc of ``radius`` fits.

    Slots are visited round-robin over rings (slot 0 on rings 1..4, then slot 1,
    ...).  Each yielded slot is treated as occupied for later yields.
    """
    occupied = [(s.position, s.fap_radius) for s in layout.stations]
    for k in range(SLOTS_PER_RING):
        angle = 360.0 * k / SLOTS_PER_RING
        for ring in range(1, N_RINGS + 1):
            p = ring_position(layout.macro, ring, angle)
            if layout.macro.center.distance_to(p) + radius > layout.macro.radius:
                continue
            if any(p.distance_to(q) < radius + rq for q, rq in occupied):
                continue
            occupied.append((p, radius))
            yield ring, angle


# name, FAP count, factor
REFERENCE_STATIONS: tuple[tuple[str, int, float], ...] = (
    ("Office", 3, 1.0),
    ("Super shop", 2, 0.8),
    ("Community center", 3, 0.8),
    ("Residence 1", 1, 0.7),
    ("Residence 2", 1, 0.7),
    ("Residence 3", 1, 0.7),
    ("Residence 4", 1, 0.7),
    ("Bank", 1, 1.0),
    ("Hotel", 1, 0.7),
    ("Shop 1", 1, 0.7),
    ("Shop 2", 0, 0.3),
)


def place_on_rings(
    specs: Sequence[tuple[str, int, float]],
    macro: MacroCell | None = None,
    fap_radius: float = DEFAULT_FAP_RADIUS,
) -> tuple[Station, ...]:
    """Assign stations to rings round-robin, evenly spaced in angle on each ring."""
    macro = macro or MacroCell()
    rings: dict[int, list[int]] = {}
    for i in range(len(specs)):
        rings.setdefault(i % N_RINGS + 1, []).append(i)
    stations: list[Station | None] = [None] * len(specs)
    for ring, members in rings.items():
        for q, i in enumerate(members):
            name, count, factor = specs[i]
            angle = 360.0 * q / len(members)
            stations[i] = Station(name, ring_position(macro, ring, angle), count, fap_radius, factor)
    return tuple(stations)  # type: ignore[arg-type]


def default_layout() -> NetworkLayout:
    """The reference 15-FAP, 500 m macrocell layout."""
    macro = MacroCell()
    return NetworkLayout(macro, place_on_rings(REFERENCE_STATIONS, macro), DEFAULT_FREE_SPACE_FACTOR)


def with_station(layout: NetworkLayout, station: Station) -> NetworkLayout:
    return replace(layout, stations=layout.stations + (station,))
