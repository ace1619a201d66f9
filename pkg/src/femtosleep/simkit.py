"""Seeded day-long scenarios: sample users, run the controller, tally energy and SNIR.

Every step draws from its own substream derived from ``(seed, step index)``, so
results do not depend on the order in which steps are evaluated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from . import layout as lay
from .controller import DEFAULT_MIN_SNIR_DB, DecisionSnapshot, Timeline, decide
from .coverage import region_masses
from .energy import EnergyReport, PowerModel, report_from_timeline
from .errors import DegenerateLayoutError, InvalidParameterError
from .layout import CoverageClass, NetworkLayout, Point
from .propagation import FemtoLossParams, MacroLossParams, snir_at_user

# mean active users per hour of day, low overnight
DEFAULT_HOURLY_MEAN_USERS: tuple[float, ...] = (
    0.3, 0.2, 0.1, 0.1, 0.1, 0.2, 0.5, 1.0, 2.0, 3.0, 3.0, 3.0,
    3.0, 3.0, 3.0, 3.0, 3.0, 3.0, 2.5, 2.0, 1.5, 1.0, 0.7, 0.5,
)  # fmt: skip


@dataclass(frozen=True)
class ScenarioConfig:
    seed: int = 0
    horizon_h: float = 24.0
    step_min: float = 10.0
    hourly_mean_users: tuple[float, ...] = DEFAULT_HOURLY_MEAN_USERS

    def __post_init__(self):
        object.__setattr__(self, "hourly_mean_users", tuple(float(m) for m in self.hourly_mean_users))
        if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise InvalidParameterError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if not (self.horizon_h > 0 and self.step_min > 0):
            raise InvalidParameterError("horizon and step must be positive")
        steps = self.horizon_h * 60.0 / self.step_min
        if abs(steps - round(steps)) > 1e-9:
            raise InvalidParameterError(f"step of {self.step_min} min does not divide {self.horizon_h} h")
        if len(self.hourly_mean_users) != 24:
            raise InvalidParameterError(f"need 24 hourly means, got {len(self.hourly_mean_users)}")
        if any(not (m >= 0 and math.isfinite(m)) for m in self.hourly_mean_users):
            raise InvalidParameterError("hourly means must be finite and non-negative")

    @property
    def n_steps(self) -> int:
        return int(round(self.horizon_h * 60.0 / self.step_min))

    @property
    def step_s(self) -> float:
        return self.step_min * 60.0


class SnirStats(NamedTuple):
    count: int
    min_db: float
    mean_db: float
    median_db: float


@dataclass(frozen=True)
class SimulationResult:
    timeline: Timeline
    bs_off_fraction: float
    energy: EnergyReport
    snir: SnirStats
    pm: PowerModel = field(repr=False, default_factory=PowerModel)


def step_rng(seed: int, step: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(step,)))


def _uniform_disc(rng: np.random.Generator, n: int, cx: float, cy: float, r: float) -> np.ndarray:
    rad = r * np.sqrt(rng.random(n))
    ang = 2.0 * np.pi * rng.random(n)
    return np.column_stack((cx + rad * np.cos(ang), cy + rad * np.sin(ang)))


def sample_user_xy(layout: NetworkLayout, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``n`` user positions as an ``(n, 2)`` array.

    A region (station disc or free space) is picked with probability proportional
    to its factor-weighted area, then the point is uniform inside it.  Free space
    is sampled by rejection from the macro disc.
    """
    if n < 0:
        raise InvalidParameterError(f"n must be non-negative, got {n}")
    station_mass, free_mass = region_masses(layout)
    masses = np.append(station_mass, free_mass)
    total = masses.sum()
    if not total > 0:
        raise DegenerateLayoutError("all factor-weighted masses are zero")
    out = np.empty((n, 2))
    if n == 0:
        return out
    region = rng.choice(len(masses), size=n, p=masses / total)
    for i, s in enumerate(layout.stations):
        sel = np.flatnonzero(region == i)
        if sel.size:
            out[sel] = _uniform_disc(rng, sel.size, s.position.x, s.position.y, s.fap_radius)
    sel = np.flatnonzero(region == len(layout.stations))
    if sel.size:
        out[sel] = _sample_free_space(layout, sel.size, rng)
    return out


def _sample_free_space(layout: NetworkLayout, n: int, rng: np.random.Generator) -> np.ndarray:
    m = layout.macro
    accept = max(layout.free_space_area / m.area, 1e-3)
    chunks, got = [], 0
    while got < n:
        batch = int((n - got) / accept * 1.1) + 16
        xy = _uniform_disc(rng, batch, m.center.x, m.center.y, m.radius)
        xy = xy[lay.station_index(layout, xy[:, 0], xy[:, 1]) == -1]
        chunks.append(xy)
        got += len(xy)
    return np.concatenate(chunks)[:n]


def sample_user_positions(layout: NetworkLayout, n: int, rng: np.random.Generator) -> list[Point]:
    return [Point(float(x), float(y)) for x, y in sample_user_xy(layout, n, rng)]


def _snir_stats(values: Sequence[float]) -> SnirStats:
    if not values:
        return SnirStats(0, math.nan, math.nan, math.nan)
    a = np.asarray(values)
    return SnirStats(len(a), float(a.min()), float(a.mean()), float(np.median(a)))


def run_simulation(
    cfg: ScenarioConfig,
    layout: NetworkLayout,
    macro_p: MacroLossParams | None = None,
    femto_p: FemtoLossParams | None = None,
    pm: PowerModel | None = None,
    threshold: float = DEFAULT_MIN_SNIR_DB,
) -> SimulationResult:
    """Run the controller every ``cfg.step_min`` minutes over ``cfg.horizon_h`` hours.

    Each step draws a Poisson user count from the hour's mean.  SNIR statistics
    cover every in-FAP user under the state the controller picked.
    """
    lay.check(layout)
    macro_p = macro_p or MacroLossParams()
    femto_p = femto_p or FemtoLossParams()
    if pm is None:
        pm = PowerModel(layout.macro.bs_op_power, fap_count=layout.total_fap_count)

    times, states, counts, snirs = [], [], [], []
    for i in range(cfg.n_steps):
        t = i * cfg.step_s
        rng = step_rng(cfg.seed, i)
        mean = cfg.hourly_mean_users[int(t // 3600) % 24]
        users = sample_user_positions(layout, int(rng.poisson(mean)), rng)
        state = decide(DecisionSnapshot(tuple(users), threshold, t), layout, macro_p, femto_p)
        for u in users:
            if lay.locate(layout, u).kind is CoverageClass.INSIDE_FAP:
                snirs.append(snir_at_user(layout, u, state.bs_on, macro_p, femto_p, clamp=True))
        times.append(t)
        states.append(state)
        counts.append(len(users))

    timeline = Timeline(tuple(times), tuple(states), tuple(counts), cfg.n_steps * cfg.step_s)
    return SimulationResult(timeline, timeline.bs_off_fraction, report_from_timeline(timeline, pm), _snir_stats(snirs), pm)
