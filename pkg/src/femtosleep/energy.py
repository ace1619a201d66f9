"""Energy ledger for the always-on baseline and the sleeping-BS scheme.

Only operating power enters the ledger; transmit power is part of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .controller import Timeline
from .errors import InvalidParameterError


@dataclass(frozen=True)
class PowerModel:
    bs_op_w: float = 2000.0
    fap_op_w: float = 8.0
    fap_count: int = 15

    def __post_init__(self):
        if self.bs_op_w < 0 or self.fap_op_w < 0:
            raise InvalidParameterError("operating powers must be non-negative")
        if self.fap_count < 0 or int(self.fap_count) != self.fap_count:
            raise InvalidParameterError("fap_count must be a non-negative integer")

    @property
    def fap_total_w(self) -> float:
        return self.fap_count * self.fap_op_w


@dataclass(frozen=True)
class EnergyReport:
    traditional_kwh: float
    proposed_kwh: float
    saved_kwh: float
    saved_fraction: float

    @property
    def net_loss(self) -> bool:
        """FAP overhead exceeds what the sleeping BS saves."""
        return self.saved_kwh < 0


def _check_hours(hours: float) -> None:
    if not (hours >= 0 and math.isfinite(hours)):
        raise InvalidParameterError(f"duration must be a non-negative number of hours, got {hours}")


def _check_fraction(f: float) -> None:
    if not 0.0 <= f <= 1.0:
        raise InvalidParameterError(f"BS-off fraction must be in [0, 1], got {f}")


def energy_traditional(hours: float, pm: PowerModel) -> float:
    """kWh used by a BS that never sleeps and no FAPs."""
    _check_hours(hours)
    return pm.bs_op_w * hours / 1000.0


def energy_proposed(hours: float, bs_off_fraction: float, pm: PowerModel) -> float:
    """kWh with the BS asleep for ``bs_off_fraction`` of the time and FAPs always on."""
    _check_hours(hours)
    _check_fraction(bs_off_fraction)
    return (pm.bs_op_w * (1.0 - bs_off_fraction) + pm.fap_total_w) * hours / 1000.0


def _saved_fraction(saved: float, traditional: float) -> float:
    return saved / traditional if traditional > 0 else 0.0


def report(hours: float, bs_off_fraction: float, pm: PowerModel) -> EnergyReport:
    trad = energy_traditional(hours, pm)
    prop = energy_proposed(hours, bs_off_fraction, pm)
    # written as a difference of rates so its sign is exactly that of
    # bs_op_w * fraction - fap_count * fap_op_w
    saved = (pm.bs_op_w * bs_off_fraction - pm.fap_total_w) * hours / 1000.0
    return EnergyReport(trad, prop, saved, _saved_fraction(saved, trad))


def report_from_timeline(timeline: Timeline, pm: PowerModel) -> EnergyReport:
    """Energy for a controller timeline with times in seconds.

    The BS is charged while on; FAPs are charged except where the controller
    switched everything off.
    """
    hours = math.fsum(timeline.durations) / 3600.0
    bs_on_h = math.fsum(d for d, s in zip(timeline.durations, timeline.states) if s.bs_on) / 3600.0
    fap_on_h = math.fsum(d for d, s in zip(timeline.durations, timeline.states) if s.faps_on) / 3600.0
    trad = energy_traditional(hours, pm)
    prop = (pm.bs_op_w * bs_on_h + pm.fap_total_w * fap_on_h) / 1000.0
    saved = trad - prop
    return EnergyReport(trad, prop, saved, _saved_fraction(saved, trad))


def cumulative_series(hours: float, bs_off_fraction: float, pm: PowerModel) -> list[tuple[float, float, float]]:
    """Hourly ``(h, traditional_kwh, proposed_kwh)`` from 0 to ``hours`` inclusive."""
    _check_hours(hours)
    _check_fraction(bs_off_fraction)
    marks = [float(h) for h in range(int(math.floor(hours)) + 1)]
    if marks[-1] < hours:
        marks.append(float(hours))
    return [(h, energy_traditional(h, pm), energy_proposed(h, bs_off_fraction, pm)) for h in marks]
