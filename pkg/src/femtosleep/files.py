"""TOML inputs (layout, scenario, run config) and CSV / ``key=value`` outputs.

Layout file::

    free_space_factor = 0.01

    [macro]
    radius_m = 500
    bs_height_m = 100
    bs_tx_w = 1500
    bs_op_w = 2000

    [[station]]
    name = "Office"
    ring = 1            # or x_m = ..., y_m = ...
    angle_deg = 0
    fap_count = 3
    fap_radius_m = 15
    factor = 1.0

Scenario file keys: ``seed``, ``horizon_h``, ``step_min``, ``hourly_mean_users``.
All numbers written by this module use fixed 6-decimal formatting.
"""

from __future__ import annotations

import csv
import sys
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from . import layout as lay
from .coverage import SweepRow
from .controller import Timeline
from .errors import FemtoSleepError
from .layout import MacroCell, NetworkLayout, Point, Station
from .simkit import ScenarioConfig, SimulationResult

SWEEP_HEADER = ("fap_count", "n_users", "p_off")
SIMPLIFIED_HEADER = ("f_p", "n_users", "p_off")
SNIR_HEADER = ("distance_m", "snir_db_traditional", "snir_db_proposed")
ENERGY_HEADER = ("hours", "energy_kwh_traditional", "energy_kwh_proposed")
TIMELINE_HEADER = ("t_s", "bs_on", "faps_on", "n_users")
SUMMARY_KEYS = ("bs_off_fraction", "traditional_kwh", "proposed_kwh", "saved_fraction", "snir_min_db", "snir_mean_db")


class ConfigError(FemtoSleepError):
    """A configuration file is missing, malformed, or has bad values."""


def fmt(x: float) -> str:
    return f"{x:.6f}"


def read_toml(path: str | Path) -> dict[str, Any]:
    path = Path(path)
    try:
        with path.open("rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"{path}: no such file") from None
    except (tomllib.TOMLDecodeError, UnicodeDecodeError) as exc:
        raise ConfigError(f"{path}: {exc}") from None


def _take(table: Mapping[str, Any], allowed: Iterable[str], where: str) -> dict[str, Any]:
    if not isinstance(table, Mapping):
        raise ConfigError(f"{where}: expected a table")
    unknown = set(table) - set(allowed)
    if unknown:
        raise ConfigError(f"{where}: unknown keys {sorted(unknown)}")
    return dict(table)


def _num(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{where}: expected an integer, got {value!r}")
    return value


_MACRO_KEYS = {"radius_m": "radius", "bs_height_m": "bs_height", "bs_tx_w": "bs_tx_power", "bs_op_w": "bs_op_power"}
_STATION_KEYS = ("name", "ring", "angle_deg", "x_m", "y_m", "fap_count", "fap_radius_m", "factor")


def layout_from_dict(data: Mapping[str, Any], where: str = "layout") -> NetworkLayout:
    data = _take(data, ("macro", "free_space_factor", "station"), where)
    m = _take(data.get("macro", {}), _MACRO_KEYS, f"{where}.macro")
    macro = MacroCell(**{_MACRO_KEYS[k]: _num(v, f"{where}.macro.{k}") for k, v in m.items()})
    stations = []
    for i, raw in enumerate(data.get("station", [])):
        w = f"{where}.station[{i}]"
        st = _take(raw, _STATION_KEYS, w)
        if "name" not in st:
            raise ConfigError(f"{w}: missing name")
        if "ring" in st:
            if "x_m" in st or "y_m" in st:
                raise ConfigError(f"{w}: give either ring/angle_deg or x_m/y_m, not both")
            try:
                pos = lay.ring_position(macro, _int(st["ring"], f"{w}.ring"), _num(st.get("angle_deg", 0.0), w))
            except FemtoSleepError as exc:
                raise ConfigError(f"{w}: {exc}") from None
        elif "x_m" in st and "y_m" in st:
            pos = Point(_num(st["x_m"], f"{w}.x_m"), _num(st["y_m"], f"{w}.y_m"))
        else:
            raise ConfigError(f"{w}: needs ring or both x_m and y_m")
        stations.append(
            Station(
                str(st["name"]),
                pos,
                _int(st.get("fap_count", 1), f"{w}.fap_count"),
                _num(st.get("fap_radius_m", lay.DEFAULT_FAP_RADIUS), f"{w}.fap_radius_m"),
                _num(st.get("factor", 0.7), f"{w}.factor"),
            )
        )
    ff = _num(data.get("free_space_factor", lay.DEFAULT_FREE_SPACE_FACTOR), f"{where}.free_space_factor")
    return NetworkLayout(macro, tuple(stations), ff)


def load_layout(path: str | Path) -> NetworkLayout:
    return layout_from_dict(read_toml(path), str(path))


def dump_layout(layout: NetworkLayout) -> str:
    """Serialize a layout as TOML with explicit coordinates."""
    m = layout.macro
    lines = [
        f"free_space_factor = {layout.free_space_factor!r}",
        "",
        "[macro]",
        f"radius_m = {m.radius!r}",
        f"bs_height_m = {m.bs_height!r}",
        f"bs_tx_w = {m.bs_tx_power!r}",
        f"bs_op_w = {m.bs_op_power!r}",
    ]
    for s in layout.stations:
        lines += [
            "",
            "[[station]]",
            f"name = {_toml_str(s.name)}",
            f"x_m = {s.position.x!r}",
            f"y_m = {s.position.y!r}",
            f"fap_count = {s.fap_count}",
            f"fap_radius_m = {s.fap_radius!r}",
            f"factor = {s.factor!r}",
        ]
    return "\n".join(lines) + "\n"


def _toml_str(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def scenario_from_dict(data: Mapping[str, Any], where: str = "scenario") -> ScenarioConfig:
    data = _take(data, ("seed", "horizon_h", "step_min", "hourly_mean_users"), where)
    kw: dict[str, Any] = {}
    if "seed" in data:
        kw["seed"] = _int(data["seed"], f"{where}.seed")
    for key in ("horizon_h", "step_min"):
        if key in data:
            kw[key] = _num(data[key], f"{where}.{key}")
    if "hourly_mean_users" in data:
        profile = data["hourly_mean_users"]
        if not isinstance(profile, list):
            raise ConfigError(f"{where}.hourly_mean_users: expected a list")
        kw["hourly_mean_users"] = tuple(_num(v, f"{where}.hourly_mean_users") for v in profile)
    try:
        return ScenarioConfig(**kw)
    except FemtoSleepError as exc:
        raise ConfigError(f"{where}: {exc}") from None


def load_scenario(path: str | Path) -> ScenarioConfig:
    return scenario_from_dict(read_toml(path), str(path))


def _write_rows(path: Path, header: Sequence[str], rows: Iterable[Sequence[str]]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
    return path


def write_sweep_csv(path: Path, rows: Iterable[SweepRow]) -> Path:
    return _write_rows(path, SWEEP_HEADER, ((str(r.fap_count), str(r.n_users), fmt(r.p_off)) for r in rows))


def write_simplified_csv(path: Path, rows: Iterable[tuple[float, int, float]]) -> Path:
    return _write_rows(path, SIMPLIFIED_HEADER, ((fmt(f), str(n), fmt(p)) for f, n, p in rows))


def write_snir_csv(path: Path, rows: Iterable[tuple[float, float, float]]) -> Path:
    return _write_rows(path, SNIR_HEADER, ((fmt(d), fmt(a), fmt(b)) for d, a, b in rows))


def write_energy_csv(path: Path, rows: Iterable[tuple[float, float, float]]) -> Path:
    return _write_rows(path, ENERGY_HEADER, ((fmt(h), fmt(a), fmt(b)) for h, a, b in rows))


def write_timeline_csv(path: Path, timeline: Timeline) -> Path:
    rows = (
        (fmt(t), str(int(s.bs_on)), str(int(s.faps_on)), str(n))
        for t, s, n in zip(timeline.t_s, timeline.states, timeline.n_users)
    )
    return _write_rows(path, TIMELINE_HEADER, rows)


def summary_values(result: SimulationResult) -> dict[str, float]:
    e = result.energy
    return {
        "bs_off_fraction": result.bs_off_fraction,
        "traditional_kwh": e.traditional_kwh,
        "proposed_kwh": e.proposed_kwh,
        "saved_fraction": e.saved_fraction,
        "snir_min_db": result.snir.min_db,
        "snir_mean_db": result.snir.mean_db,
    }


def write_summary(path: Path, values: Mapping[str, float]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("".join(f"{k}={fmt(values[k])}\n" for k in SUMMARY_KEYS))
    return path


def read_summary(path: str | Path) -> dict[str, float]:
    path = Path(path)
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise ConfigError(f"{path}: no such file") from None
    out = {}
    for n, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        key, sep, value = line.partition("=")
        try:
            if not sep:
                raise ValueError
            out[key.strip()] = float(value)
        except ValueError:
            raise ConfigError(f"{path}:{n}: expected key=value") from None
    return out

