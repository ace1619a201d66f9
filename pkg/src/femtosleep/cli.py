"""Command-line front end.

Subcommands ``prob``, ``snir``, ``energy``, ``simulate`` and ``validate`` write
CSV / ``key=value`` files into ``--out``.  Exit codes: 0 success, 2 input or
validation error, 3 internal invariant failure, 4 usage error.

Run config (TOML, relative paths resolved against the config file)::

    layout = "layout.toml"
    scenario = "scenario.toml"
    out = "results"
    seed = 42
    min_snir_db = 3.0

    [macro_loss]   # fc, hb, hm, lsh, variant
    [femto_loss]   # fc, decay_index, walls, lpen, tx_mw
    [power]        # bs_op_w, fap_op_w, fap_count
    [prob]         # max_faps, users, f_p
    [snir]         # distances, station, femto_interference, noise_mw
    [energy]       # hours, off_fraction

Command-line flags override the file.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import coverage, energy, files
from . import layout as lay
from .errors import FemtoSleepError
from .files import ConfigError
from .layout import NetworkLayout, Point
from .propagation import NOISE_MW, FemtoLossParams, MacroLossParams, snir_at_user
from .simkit import ScenarioConfig, run_simulation

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL, EXIT_USAGE = 0, 2, 3, 4

DEFAULT_USERS = (1, 3, 5)
DEFAULT_MAX_FAPS = 25
DEFAULT_F_P = 0.7
DEFAULT_DISTANCES = tuple(np.arange(2, 31) / 2.0)  # 1..15 m in 0.5 m steps


class UsageError(Exception):
    pass


class InvariantError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _u64(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}") from None


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers: {text!r}") from None


# flag dest -> (config section or None for top level, key)
_OVERRIDES = {
    "layout": (None, "layout"),
    "scenario": (None, "scenario"),
    "out": (None, "out"),
    "seed": (None, "seed"),
    "threshold": (None, "min_snir_db"),
    "fc": ("macro_loss", "fc"),
    "hm": ("macro_loss", "hm"),
    "lsh": ("macro_loss", "lsh"),
    "hata_variant": ("macro_loss", "variant"),
    "decay_index": ("femto_loss", "decay_index"),
    "walls": ("femto_loss", "walls"),
    "lpen": ("femto_loss", "lpen"),
    "bs_op_w": ("power", "bs_op_w"),
    "fap_op_w": ("power", "fap_op_w"),
    "fap_count": ("power", "fap_count"),
    "max_faps": ("prob", "max_faps"),
    "users": ("prob", "users"),
    "fp": ("prob", "f_p"),
    "distances": ("snir", "distances"),
    "station": ("snir", "station"),
    "femto_interference": ("snir", "femto_interference"),
    "hours": ("energy", "hours"),
    "fraction": ("energy", "off_fraction"),
}
_SECTIONS = ("macro_loss", "femto_loss", "power", "prob", "snir", "energy")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("common")
    g.add_argument("--config", type=Path, help="run config (TOML)")
    g.add_argument("--out", type=Path, help="output directory (default: results)")
    g.add_argument("--seed", type=_u64, help="master random seed")
    g.add_argument("--layout", type=Path, help="layout file (TOML); default is the 15-FAP reference cell")
    g.add_argument("--threshold", type=float, help="minimum SNIR in dB for the BS to sleep")
    g.add_argument("--fc", type=float, help="carrier frequency, MHz")
    g.add_argument("--hm", type=float, help="mobile antenna height, m")
    g.add_argument("--lsh", type=float, help="shadowing margin, dB")
    g.add_argument("--hata-variant", choices=("paper", "standard"))
    g.add_argument("--decay-index", type=float, help="femto distance-power decay index")
    g.add_argument("--walls", type=int, help="walls between user and FAP")
    g.add_argument("--lpen", type=float, help="penetration loss for the macro signal indoors, dB")
    g.add_argument("--bs-op-w", type=float, help="BS operating power, W")
    g.add_argument("--fap-op-w", type=float, help="FAP operating power, W")
    g.add_argument("--fap-count", type=int, help="FAPs charged in the energy ledger")

    parser = _Parser(prog="femtosleep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("prob", parents=[common], help="turn-off probability sweeps")
    p.add_argument("--max-faps", type=int)
    p.add_argument("--users", type=_int_list, help="comma-separated user counts")
    p.add_argument("--fp", type=float, help="average importance factor for the simplified form")
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("snir", parents=[common], help="SNIR versus distance from the serving FAP")
    p.add_argument("--distances", type=_float_list, help="comma-separated distances in m")
    p.add_argument("--station", help="serving station (default: first station with a FAP)")
    p.add_argument(
        "--no-femto-interference", dest="femto_interference", action="store_const", const=False, default=None
    )
    p.set_defaults(func=cmd_snir)

    p = sub.add_parser("energy", parents=[common], help="cumulative energy, baseline vs sleeping BS")
    p.add_argument("--hours", type=float)
    p.add_argument("--fraction", type=float, help="BS-off fraction (default: from <out>/summary.txt)")
    p.add_argument("--summary", type=Path, help="summary file from a previous simulate run")
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("simulate", parents=[common], help="seeded end-to-end scenario")
    p.add_argument("--scenario", type=Path, help="scenario file (TOML)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("validate", parents=[common], help="check a layout file")
    p.add_argument("--dump", action="store_true", help="print the resolved layout as TOML")
    p.set_defaults(func=cmd_validate)
    return parser


@dataclass
class RunConfig:
    layout: NetworkLayout
    macro_p: MacroLossParams
    femto_p: FemtoLossParams
    pm: energy.PowerModel
    out: Path
    seed: int | None
    min_snir_db: float
    scenario_path: Path | None
    sections: dict[str, dict[str, Any]]


def _settings(args: argparse.Namespace) -> tuple[dict[str, Any], Path]:
    data: dict[str, Any] = {}
    base = Path.cwd()
    if args.config is not None:
        data = files.read_toml(args.config)
        base = args.config.parent
        allowed = {"layout", "scenario", "out", "seed", "min_snir_db", *_SECTIONS}
        unknown = set(data) - allowed
        if unknown:
            raise ConfigError(f"{args.config}: unknown keys {sorted(unknown)}")
        for key in ("layout", "scenario", "out"):
            if key in data:
                data[key] = base / str(data[key])
    for dest, (section, key) in _OVERRIDES.items():
        value = getattr(args, dest, None)
        if value is None:
            continue
        target = data if section is None else data.setdefault(section, {})
        target[key] = value
    return data, base


def _params(cls, table: dict[str, Any], where: str, **defaults):
    names = {f.name for f in fields(cls)}
    unknown = set(table) - names
    if unknown:
        raise ConfigError(f"[{where}]: unknown keys {sorted(unknown)}")
    try:
        return cls(**{**defaults, **table})
    except (FemtoSleepError, TypeError) as exc:
        raise ConfigError(f"[{where}]: {exc}") from None


def resolve(args: argparse.Namespace) -> RunConfig:
    data, _ = _settings(args)
    layout = files.load_layout(data["layout"]) if "layout" in data else lay.default_layout()
    sections = {s: dict(data.get(s, {})) for s in _SECTIONS}
    for s in _SECTIONS:
        if not isinstance(sections[s], dict):
            raise ConfigError(f"[{s}] must be a table")
    macro_p = _params(MacroLossParams, sections["macro_loss"], "macro_loss", hb=layout.macro.bs_height)
    femto_p = _params(FemtoLossParams, sections["femto_loss"], "femto_loss")
    pm = _params(
        energy.PowerModel,
        sections["power"],
        "power",
        bs_op_w=layout.macro.bs_op_power,
        fap_count=layout.total_fap_count,
    )
    seed = data.get("seed")
    if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < 2**64):
        raise ConfigError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    threshold = float(data.get("min_snir_db", 3.0))
    return RunConfig(
        layout,
        macro_p,
        femto_p,
        pm,
        Path(data.get("out", "results")),
        seed,
        threshold,
        Path(data["scenario"]) if "scenario" in data else None,
        sections,
    )


def _valid_layout(cfg: RunConfig) -> NetworkLayout:
    report = lay.validate(cfg.layout)
    if report:
        raise ConfigError("invalid layout:\n" + "\n".join(f"  {v.kind}: {v.detail}" for v in report))
    return cfg.layout


def cmd_prob(cfg: RunConfig, args: argparse.Namespace) -> int:
    layout = _valid_layout(cfg)
    sec = cfg.sections["prob"]
    max_faps = int(sec.get("max_faps", DEFAULT_MAX_FAPS))
    users = sorted(set(int(n) for n in sec.get("users", DEFAULT_USERS)))
    f_p = float(sec.get("f_p", DEFAULT_F_P))
    if not users:
        raise ConfigError("need at least one user count")
    rows = coverage.sweep_fap_count(layout, max_faps, users)
    simplified = [(f_p, n, coverage.bs_off_probability_simplified(f_p, n)) for n in range(max(users) + 1)]
    for path in (
        files.write_sweep_csv(cfg.out / "prob_sweep.csv", rows),
        files.write_simplified_csv(cfg.out / "prob_simplified.csv", simplified),
    ):
        print(path)
    return EXIT_OK


def _serving_station(layout: NetworkLayout, name: str | None) -> lay.Station:
    if name is not None:
        try:
            return layout.station(name)
        except KeyError:
            raise ConfigError(f"no station named {name!r}") from None
    for s in layout.stations:
        if s.has_fap:
            return s
    raise ConfigError("layout has no FAP-equipped station")


def snir_profile(
    layout: NetworkLayout,
    station: lay.Station,
    distances: Sequence[float],
    macro_p: MacroLossParams,
    femto_p: FemtoLossParams,
    noise_mw: float = NOISE_MW,
    femto_interference: bool = True,
) -> list[tuple[float, float, float]]:
    """``(d, SNIR with BS on, SNIR with BS off)`` for a user ``d`` m radially outward from ``station``."""
    c, p = layout.macro.center, station.position
    r = c.distance_to(p)
    ux, uy = ((p.x - c.x) / r, (p.y - c.y) / r) if r > 0 else (1.0, 0.0)
    rows = []
    for d in distances:
        user = Point(p.x + d * ux, p.y + d * uy)
        kw = dict(noise_mw=noise_mw, femto_interference=femto_interference)
        rows.append(
            (
                float(d),
                snir_at_user(layout, user, True, macro_p, femto_p, **kw),
                snir_at_user(layout, user, False, macro_p, femto_p, **kw),
            )
        )
    return rows


def cmd_snir(cfg: RunConfig, args: argparse.Namespace) -> int:
    layout = _valid_layout(cfg)
    sec = cfg.sections["snir"]
    distances = [float(d) for d in sec.get("distances", DEFAULT_DISTANCES)]
    station = _serving_station(layout, sec.get("station"))
    rows = snir_profile(
        layout,
        station,
        distances,
        cfg.macro_p,
        cfg.femto_p,
        float(sec.get("noise_mw", NOISE_MW)),
        bool(sec.get("femto_interference", True)),
    )
    print(files.write_snir_csv(cfg.out / "snir.csv", rows))
    return EXIT_OK


def cmd_energy(cfg: RunConfig, args: argparse.Namespace) -> int:
    sec = cfg.sections["energy"]
    hours = float(sec.get("hours", 24.0))
    fraction = sec.get("off_fraction")
    if fraction is None:
        summary = getattr(args, "summary", None) or cfg.out / "summary.txt"
        values = files.read_summary(summary)
        if "bs_off_fraction" not in values:
            raise ConfigError(f"{summary}: no bs_off_fraction")
        fraction = values["bs_off_fraction"]
    rows = energy.cumulative_series(hours, float(fraction), cfg.pm)
    print(files.write_energy_csv(cfg.out / "energy.csv", rows))
    return EXIT_OK


def cmd_simulate(cfg: RunConfig, args: argparse.Namespace) -> int:
    layout = _valid_layout(cfg)
    scenario = files.load_scenario(cfg.scenario_path) if cfg.scenario_path else ScenarioConfig()
    if cfg.seed is not None:
        scenario = replace(scenario, seed=cfg.seed)
    result = run_simulation(scenario, layout, cfg.macro_p, cfg.femto_p, cfg.pm, cfg.min_snir_db)

    recomputed = energy.report_from_timeline(result.timeline, cfg.pm)
    if not (
        0.0 <= result.bs_off_fraction <= 1.0
        and result.bs_off_fraction == result.timeline.bs_off_fraction
        and math.isclose(recomputed.proposed_kwh, result.energy.proposed_kwh, rel_tol=0, abs_tol=1e-9)
        and math.isclose(recomputed.traditional_kwh, result.energy.traditional_kwh, rel_tol=0, abs_tol=1e-9)
    ):
        raise InvariantError("simulation result is inconsistent with its timeline")

    files.write_timeline_csv(cfg.out / "timeline.csv", result.timeline)
    files.write_summary(cfg.out / "summary.txt", files.summary_values(result))
    print(f"saved_fraction={files.fmt(result.energy.saved_fraction)}")
    return EXIT_OK


def cmd_validate(cfg: RunConfig, args: argparse.Namespace) -> int:
    report = lay.validate(cfg.layout)
    if args.dump:
        print(files.dump_layout(cfg.layout), end="")
    if report:
        for v in report:
            print(f"{v.kind}: {v.detail}", file=sys.stderr)
        return EXIT_INPUT
    print(f"valid: {len(cfg.layout.stations)} stations, {cfg.layout.total_fap_count} FAPs", file=sys.stderr)
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    try:
        cfg = resolve(args)
        return args.func(cfg, args)
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
