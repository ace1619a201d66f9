"""Sleep decision for the macro BS from a snapshot of user positions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import layout as lay
from .errors import InvalidParameterError, InvalidScheduleError, OutOfCoverageError
from .layout import CoverageClass, NetworkLayout, Point
from .propagation import FemtoLossParams, MacroLossParams, snir_at_user

DEFAULT_MIN_SNIR_DB = 3.0


@dataclass(frozen=True)
class NetworkPowerState:
    bs_on: bool
    faps_on: bool


ALL_OFF = NetworkPowerState(False, False)
BS_ON = NetworkPowerState(True, True)
BS_SLEEP = NetworkPowerState(False, True)


@dataclass(frozen=True)
class DecisionSnapshot:
    users: tuple[Point, ...] = ()
    min_snir_db: float = DEFAULT_MIN_SNIR_DB
    t_s: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "users", tuple(self.users))
        if math.isnan(self.min_snir_db) or self.min_snir_db == math.inf:
            raise InvalidParameterError(f"SNIR threshold must be finite or -inf, got {self.min_snir_db}")


def decide(
    snapshot: DecisionSnapshot,
    layout: NetworkLayout,
    macro_p: MacroLossParams | None = None,
    femto_p: FemtoLossParams | None = None,
) -> NetworkPowerState:
    """Pick the BS/FAP power state for one snapshot.

    No users: everything off.  Any user outside FAP coverage: BS on.  Otherwise
    the BS sleeps only if every user keeps at least ``min_snir_db`` with the BS
    off.
    """
    macro_p = macro_p or MacroLossParams()
    femto_p = femto_p or FemtoLossParams()
    users = snapshot.users
    for u in users:
        if layout.macro.center.distance_to(u) > layout.macro.radius:
            raise OutOfCoverageError(f"user {u} lies outside the macrocell")
    if not users:
        return ALL_OFF
    if any(lay.locate(layout, u).kind is not CoverageClass.INSIDE_FAP for u in users):
        return BS_ON
    for u in users:
        if snir_at_user(layout, u, False, macro_p, femto_p, clamp=True) < snapshot.min_snir_db:
            return BS_ON
    return BS_SLEEP


@dataclass(frozen=True)
class Timeline:
    """Power states over time, each held until the next snapshot (last until ``t_end``)."""

    t_s: tuple[float, ...]
    states: tuple[NetworkPowerState, ...]
    n_users: tuple[int, ...]
    t_end: float
    durations: tuple[float, ...] = field(init=False)

    def __post_init__(self):
        edges = self.t_s[1:] + (self.t_end,)
        object.__setattr__(self, "durations", tuple(b - a for a, b in zip(self.t_s, edges)))

    @property
    def span(self) -> float:
        return self.t_end - self.t_s[0]

    def _fraction(self, pick) -> float:
        # same summation on both sides keeps the all-true case exactly 1.0
        on = math.fsum(d for d, s in zip(self.durations, self.states) if pick(s))
        return on / math.fsum(self.durations)

    @property
    def bs_off_fraction(self) -> float:
        return self._fraction(lambda s: not s.bs_on)

    @property
    def faps_on_fraction(self) -> float:
        return self._fraction(lambda s: s.faps_on)


def run_schedule(
    snapshots: Sequence[DecisionSnapshot],
    layout: NetworkLayout,
    macro_p: MacroLossParams | None = None,
    femto_p: FemtoLossParams | None = None,
    t_end: float | None = None,
) -> Timeline:
    """Apply :func:`decide` to every snapshot and hold each state until the next one.

    Without ``t_end`` the last state is held for the final snapshot spacing
    (one time unit if there is a single snapshot).
    """
    if not snapshots:
        raise InvalidScheduleError("schedule needs at least one snapshot")
    t = np.array([s.t_s for s in snapshots], dtype=float)
    if np.any(np.diff(t) <= 0):
        raise InvalidScheduleError("snapshot timestamps must be strictly increasing")
    if t_end is None:
        t_end = float(t[-1] + (t[-1] - t[-2] if len(t) > 1 else 1.0))
    elif t_end <= t[-1]:
        raise InvalidScheduleError("t_end must come after the last snapshot")
    states = tuple(decide(s, layout, macro_p, femto_p) for s in snapshots)
    return Timeline(tuple(float(x) for x in t), states, tuple(len(s.users) for s in snapshots), float(t_end))
