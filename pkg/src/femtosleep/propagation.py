"""Path loss for macro and femto links, dB conversions, and SNIR.

Link budgets are worked in dB/dBm; the SNIR ratio itself is formed in linear mW.

The macro model has two variants.  ``"paper"`` keeps the constants 36.55 and
3.82, the mobile height in the distance slope, and the correction
``1.1 (log fc - 0.7) hm``.  ``"standard"`` is textbook Okumura-Hata (69.55,
13.82, BS height in the slope, ``(1.1 log fc - 0.7) hm``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, NamedTuple

from . import layout as lay
from .errors import InvalidParameterError, NoServiceError, OutOfModelRangeError
from .layout import CoverageClass, NetworkLayout, Point

MIN_MACRO_DISTANCE_KM = 0.01
MIN_FEMTO_DISTANCE_M = 1.0
NOISE_MW = 7e-7

HataVariant = Literal["paper", "standard"]


@dataclass(frozen=True)
class MacroLossParams:
    fc: float = 1800.0  # MHz
    hb: float = 100.0  # m
    hm: float = 1.5  # m
    lsh: float = 8.0  # dB, fixed shadowing margin
    variant: HataVariant = "paper"

    def __post_init__(self):
        for name in ("fc", "hb", "hm"):
            if not getattr(self, name) > 0:
                raise InvalidParameterError(f"{name} must be positive")
        if self.variant not in ("paper", "standard"):
            raise InvalidParameterError(f"unknown Hata variant {self.variant!r}")


@dataclass(frozen=True)
class FemtoLossParams:
    fc: float = 1800.0  # MHz
    decay_index: float = 30.0
    walls: int = 1
    lpen: float = 20.0  # dB, applied to the macro signal reaching indoor users
    tx_mw: float = 15.0

    def __post_init__(self):
        if not self.fc > 0:
            raise InvalidParameterError("fc must be positive")
        if not self.decay_index > 0:
            raise InvalidParameterError("decay_index must be positive")
        if self.walls < 0 or int(self.walls) != self.walls:
            raise InvalidParameterError("walls must be a non-negative integer")
        if not self.tx_mw > 0:
            raise InvalidParameterError("tx_mw must be positive")


@dataclass(frozen=True)
class SnirInputs:
    s0: float
    im: float = 0.0
    if_: float = 0.0
    noise: float = NOISE_MW

    def __post_init__(self):
        for name in ("s0", "im", "if_", "noise"):
            if getattr(self, name) < 0:
                raise InvalidParameterError(f"{name} must be non-negative")


class Snir(NamedTuple):
    linear: float
    db: float


def dbm_to_mw(x: float) -> float:
    return 10.0 ** (x / 10.0)


def mw_to_dbm(x: float) -> float:
    if not x > 0:
        raise InvalidParameterError(f"power must be positive to convert to dBm, got {x}")
    return 10.0 * math.log10(x)


def w_to_dbm(x: float) -> float:
    return mw_to_dbm(x * 1e3)


def mobile_antenna_correction(fc: float, hm: float, variant: HataVariant = "paper") -> float:
    """Mobile antenna height correction a(hm) in dB."""
    if not (fc > 0 and hm > 0):
        raise InvalidParameterError("fc and hm must be positive")
    lf = math.log10(fc)
    if variant == "paper":
        return 1.1 * (lf - 0.7) * hm - (1.56 * lf - 0.8)
    return (1.1 * lf - 0.7) * hm - (1.56 * lf - 0.8)


def macro_path_loss(p: MacroLossParams, d_km: float) -> float:
    """Macrocell path loss in dB at ``d_km`` kilometers."""
    if not d_km >= MIN_MACRO_DISTANCE_KM:
        raise OutOfModelRangeError(f"macro distance {d_km} km below {MIN_MACRO_DISTANCE_KM} km")
    lf = math.log10(p.fc)
    a = mobile_antenna_correction(p.fc, p.hm, p.variant)
    if p.variant == "paper":
        const, hb_coef, slope_h = 36.55, 3.82, p.hm
    else:
        const, hb_coef, slope_h = 69.55, 13.82, p.hb
    slope = 44.9 - 6.55 * math.log10(slope_h)
    return const + 26.16 * lf - hb_coef * math.log10(p.hb) - a + slope * math.log10(d_km) + p.lsh


def femto_path_loss(p: FemtoLossParams, d1_m: float) -> float:
    """Indoor femtocell path loss in dB at ``d1_m`` meters."""
    if not d1_m >= MIN_FEMTO_DISTANCE_M:
        raise OutOfModelRangeError(f"femto distance {d1_m} m below {MIN_FEMTO_DISTANCE_M} m")
    return 20.0 * math.log10(p.fc) + p.decay_index * math.log10(d1_m) + 4.0 * p.walls**2 - 28.0


def snir(inputs: SnirInputs) -> Snir:
    denom = inputs.im + inputs.if_ + inputs.noise
    if not denom > 0:
        raise InvalidParameterError("interference plus noise must be positive")
    linear = inputs.s0 / denom
    db = 10.0 * math.log10(linear) if linear > 0 else -math.inf
    return Snir(linear, db)


def macro_rx_dbm(
    layout: NetworkLayout, user: Point, macro_p: MacroLossParams, indoor_loss_db: float = 0.0, clamp: bool = False
) -> float:
    d_km = layout.macro.center.distance_to(user) / 1e3
    if clamp:
        d_km = max(d_km, MIN_MACRO_DISTANCE_KM)
    return w_to_dbm(layout.macro.bs_tx_power) - macro_path_loss(macro_p, d_km) - indoor_loss_db


def femto_rx_dbm(femto_p: FemtoLossParams, d1_m: float, clamp: bool = False) -> float:
    if clamp:
        d1_m = max(d1_m, MIN_FEMTO_DISTANCE_M)
    return mw_to_dbm(femto_p.tx_mw) - femto_path_loss(femto_p, d1_m)


def snir_inputs_at_user(
    layout: NetworkLayout,
    user: Point,
    bs_on: bool,
    macro_p: MacroLossParams,
    femto_p: FemtoLossParams,
    noise_mw: float = NOISE_MW,
    femto_interference: bool = True,
    clamp: bool = False,
) -> SnirInputs:
    """Desired signal, interference and noise seen by one user.

    A user inside FAP coverage is served by that station's FAP; anyone else is
    served by the macro BS, which needs ``bs_on``.  FAPs co-located at the
    serving station do not interfere with each other; every FAP at another
    station contributes to femto interference.  ``clamp`` lifts link distances
    to the model minimums instead of raising.
    """
    loc = lay.locate(layout, user)
    indoor = loc.kind is not CoverageClass.FREE_SPACE
    pen = femto_p.lpen if indoor else 0.0

    i_f = 0.0
    if femto_interference:
        for s in layout.stations:
            if s.has_fap and s.name != loc.station:
                d = s.position.distance_to(user)
                i_f += s.fap_count * dbm_to_mw(femto_rx_dbm(femto_p, d, clamp))

    if loc.kind is CoverageClass.INSIDE_FAP:
        serving = layout.station(loc.station)
        s0 = dbm_to_mw(femto_rx_dbm(femto_p, serving.position.distance_to(user), clamp))
        i_m = dbm_to_mw(macro_rx_dbm(layout, user, macro_p, pen, clamp)) if bs_on else 0.0
        return SnirInputs(s0, i_m, i_f, noise_mw)
    if not bs_on:
        raise NoServiceError(f"user at ({user.x:.1f}, {user.y:.1f}) has no FAP coverage and the BS is off")
    s0 = dbm_to_mw(macro_rx_dbm(layout, user, macro_p, pen, clamp))
    return SnirInputs(s0, 0.0, i_f, noise_mw)


def snir_at_user(
    layout: NetworkLayout,
    user: Point,
    bs_on: bool,
    macro_p: MacroLossParams | None = None,
    femto_p: FemtoLossParams | None = None,
    noise_mw: float = NOISE_MW,
    femto_interference: bool = True,
    clamp: bool = False,
) -> float:
    """SNIR in dB for one user under the given BS state."""
    inputs = snir_inputs_at_user(
        layout,
        user,
        bs_on,
        macro_p or MacroLossParams(),
        femto_p or FemtoLossParams(),
        noise_mw,
        femto_interference,
        clamp,
    )
    return snir(inputs).db
