"""Probability that users sit inside femto coverage and that the macro BS may sleep.

A station's importance factor is read as a relative user-location density, so
the single-user probability is the factor-weighted FAP area over the
factor-weighted area of the whole cell.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, replace
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import layout as lay
from .errors import DegenerateLayoutError, InvalidParameterError
from .layout import NetworkLayout, Station

EXTRA_FAP_FACTOR = 0.7


@dataclass(frozen=True)
class CoverageSummary:
    p_single_user: float
    weighted_fap_mass: float
    weighted_total_mass: float


class SweepRow(NamedTuple):
    fap_count: int
    n_users: int
    p_off: float


class Estimate(NamedTuple):
    value: float
    stderr: float


def region_masses(layout: NetworkLayout) -> tuple[np.ndarray, float]:
    """Factor-weighted mass of each station disc, and of the remaining free space."""
    station_mass = np.array([s.factor * s.area for s in layout.stations], dtype=float)
    free_mass = layout.free_space_factor * layout.free_space_area
    return station_mass, free_mass


def user_in_fap_probability(layout: NetworkLayout) -> CoverageSummary:
    """Probability that one factor-weighted random user lands inside FAP coverage.

    Zero-FAP stations add to the denominator only.
    """
    lay.check(layout)
    station_mass, free_mass = region_masses(layout)
    has_fap = np.array([s.has_fap for s in layout.stations], dtype=bool)
    numerator = float(station_mass[has_fap].sum()) if len(has_fap) else 0.0
    denominator = float(station_mass.sum()) + free_mass
    if denominator <= 0.0:
        raise DegenerateLayoutError("all factor-weighted masses are zero")
    return CoverageSummary(numerator / denominator, numerator, denominator)


def _check_users(n_users: int) -> None:
    if n_users < 0 or int(n_users) != n_users:
        raise InvalidParameterError(f"n_users must be a non-negative integer, got {n_users}")


def bs_off_probability_exact(layout: NetworkLayout, n_users: int) -> float:
    """All of ``n_users`` independent users fall inside FAP coverage."""
    _check_users(n_users)
    if n_users == 0:
        return 1.0
    return user_in_fap_probability(layout).p_single_user ** n_users


def bs_off_probability_simplified(f_p: float, n_users: int) -> float:
    """Turn-off probability from a single averaged importance factor: ``f_p ** n_users``."""
    if not 0.0 <= f_p <= 1.0:
        raise InvalidParameterError(f"f_p must be in [0, 1], got {f_p}")
    _check_users(n_users)
    return f_p**n_users


def extension_order(base: NetworkLayout, max_faps: int) -> list[int]:
    """Station index for each FAP in deployment order, extended with extra stations.

    Indices ``>= len(base.stations)`` refer to the extra stations returned by
    :func:`extra_stations`.
    """
    order = [i for i, s in enumerate(base.stations) for _ in range(s.fap_count)]
    n_extra = max(0, max_faps - len(order))
    order += [len(base.stations) + j for j in range(n_extra)]
    return order[:max_faps]


def extra_stations(base: NetworkLayout, n: int) -> list[Station]:
    """``n`` single-FAP stations placed in free ring slots of ``base``."""
    out = []
    slots = lay.free_ring_slots(base, lay.DEFAULT_FAP_RADIUS)
    for j in range(n):
        try:
            ring, angle = next(slots)
        except StopIteration:
            raise InvalidParameterError(f"no free ring slot for extra FAP {j + 1}") from None
        out.append(
            Station(
                f"Extra FAP {j + 1}",
                lay.ring_position(base.macro, ring, angle),
                1,
                lay.DEFAULT_FAP_RADIUS,
                EXTRA_FAP_FACTOR,
            )
        )
    return out


def layout_with_first_faps(base: NetworkLayout, k: int, extras: Sequence[Station] | None = None) -> NetworkLayout:
    """Layout holding only the first ``k`` FAPs of the extension order.

    Base stations keep their place and factor with a reduced FAP count; extra
    stations appear only once they receive their FAP.
    """
    if k < 0:
        raise InvalidParameterError(f"FAP count must be non-negative, got {k}")
    order = extension_order(base, k)
    n_base = len(base.stations)
    if extras is None:
        extras = extra_stations(base, sum(i >= n_base for i in order))
    counts = Counter(order)
    stations = [replace(s, fap_count=counts.get(i, 0)) for i, s in enumerate(base.stations)]
    stations += [extras[i - n_base] for i in sorted(counts) if i >= n_base]
    return replace(base, stations=tuple(stations))


def sweep_fap_count(base: NetworkLayout, max_faps: int, users: Iterable[int]) -> list[SweepRow]:
    """Turn-off probability for FAP counts ``0..max_faps`` and each user count."""
    if max_faps < 0:
        raise InvalidParameterError(f"max_faps must be non-negative, got {max_faps}")
    users = sorted(set(int(n) for n in users))
    for n in users:
        _check_users(n)
    n_extra = max(0, max_faps - base.total_fap_count)
    extras = extra_stations(base, n_extra)
    rows = []
    for k in range(max_faps + 1):
        layout_k = layout_with_first_faps(base, k, extras)
        for n in users:
            rows.append(SweepRow(k, n, bs_off_probability_exact(layout_k, n)))
    return rows


def monte_carlo_user_in_fap(layout: NetworkLayout, trials: int, seed: int) -> Estimate:
    """Fraction of sampled users whose position falls inside FAP coverage.

    Positions come from :func:`femtosleep.simkit.sample_user_xy`; membership is
    decided geometrically.  Returns the estimate with its binomial standard error.
    """
    from .simkit import sample_user_xy

    if trials < 1:
        raise InvalidParameterError(f"trials must be >= 1, got {trials}")
    lay.check(layout)
    rng = np.random.default_rng(seed)
    xy = sample_user_xy(layout, trials, rng)
    idx = lay.station_index(layout, xy[:, 0], xy[:, 1])
    has_fap = np.array([s.has_fap for s in layout.stations] + [False], dtype=bool)
    hits = int(has_fap[idx].sum())  # idx == -1 picks the trailing False
    p = hits / trials
    return Estimate(p, math.sqrt(p * (1.0 - p) / trials))
