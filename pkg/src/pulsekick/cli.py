"""Command-line front end.

Subcommands: simulate, sweep, compare-kick, calibrate. Run configurations
are flat ``key = value`` text with unit-suffixed keys (width_ps, omega0_ghz,
...) converted to SI at the boundary; unknown keys are rejected. Outputs are
a trajectory CSV and a summary JSON, written atomically.

Exit codes: 0 success, 1 I/O failure, 2 config error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, replace

import numpy as np

from . import experiments, observables
from ._backend import BACKEND
from .constants import HBAR
from .propagation import (
    NormDriftError,
    PulseSpec,
    QubitState,
    TimeGrid,
    Trajectory,
)
from .pulses import (
    DeviceGeometry,
    QubitParams,
    amplitude_for_area,
    effective_kick_area,
    field_to_voltage,
)

CSV_COLUMNS = ("t", "re_a0", "im_a0", "re_a1", "im_a1", "sx", "sy", "sz", "c_l1")

#: Auto-stride kicks in above this many samples and targets ~12k rows.
AUTO_STRIDE_ABOVE = 100_000
AUTO_STRIDE_ROWS = 12_000

PRESETS = {
    "fig1-pi": {"scenario": "adiabatic", "area_rad": math.pi},
    "fig1-pihalf": {"scenario": "adiabatic", "area_rad": math.pi / 2},
    "fig2-0.1ps": {"scenario": "kick", "width_ps": 0.1},
    "fig2-0.5ps": {"scenario": "kick", "width_ps": 0.5},
    "fig2-1ps": {"scenario": "kick", "width_ps": 1.0},
}


class ConfigError(ValueError):
    """Invalid run configuration; maps to exit code 2."""


def _parse_choice(*options):
    def parse(raw, key):
        if raw not in options:
            raise ConfigError(
                f"{key}: expected one of {', '.join(options)}; got {raw!r}"
            )
        return raw

    return parse


def _parse_float(raw, key):
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{key}: not a number: {raw!r}") from None


def _parse_int(raw, key):
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{key}: not an integer: {raw!r}") from None


SCHEMA = {
    "scenario": _parse_choice("adiabatic", "kick", "custom"),
    "omega0_ghz": _parse_float,  # transition frequency omega0 / 2 pi, GHz
    "dipole_cm": _parse_float,  # dipole moment, C*m
    "width_ps": _parse_float,  # pulse duration tau, ps
    "center_ps": _parse_float,  # pulse center t0, ps
    "area_rad": _parse_float,  # pulse area, rad (exclusive with amplitude)
    "amplitude_vpm": _parse_float,  # peak field A0, V/m
    "drive_ghz": _parse_float,  # carrier frequency omega_D / 2 pi, GHz
    "carrier": _parse_choice("on", "off"),
    "t_start_ps": _parse_float,
    "t_end_ps": _parse_float,
    "dt_ps": _parse_float,  # integration step; omit for the default
    "initial": _parse_choice("0", "1"),
    "method": _parse_choice("magnus2", "rk4"),
    "stride": _parse_int,  # CSV sample stride; 0 = automatic
    "frame": _parse_choice("lab", "rotating"),
}


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved run configuration (all lengths of time in ps)."""

    scenario: str
    omega0_ghz: float
    dipole_cm: float
    width_ps: float
    center_ps: float
    area_rad: float | None
    amplitude_vpm: float | None
    drive_ghz: float
    carrier: str
    t_start_ps: float
    t_end_ps: float
    dt_ps: float | None
    initial: str
    method: str
    stride: int
    frame: str


def parse_config_text(text: str) -> dict:
    """Parse flat ``key = value`` lines into typed overrides."""
    overrides = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value': {line!r}")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        raw = raw.strip()
        if key not in SCHEMA:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        overrides[key] = SCHEMA[key](raw, key)
    return overrides


def build_run_config(overrides: dict) -> RunConfig:
    """Merge scenario defaults with explicit keys."""
    scenario = overrides.get("scenario", "custom")
    defaults = {
        "scenario": scenario,
        "omega0_ghz": 4.5,
        "dipole_cm": 3e-25,
        "carrier": "on",
        "t_start_ps": 0.0,
        "dt_ps": None,
        "initial": "0",
        "method": "magnus2",
        "stride": 0,
        "frame": "lab",
        "amplitude_vpm": None,
        "area_rad": None,
    }
    if scenario == "adiabatic":
        defaults.update(width_ps=23e3, area_rad=math.pi)
    elif scenario == "kick":
        defaults.update(
            width_ps=0.1, center_ps=5.0, t_end_ps=10.0, area_rad=math.pi / 2
        )

    if "area_rad" in overrides and "amplitude_vpm" in overrides:
        raise ConfigError("area_rad and amplitude_vpm are mutually exclusive")
    if "amplitude_vpm" in overrides:
        defaults["area_rad"] = None

    merged = {**defaults, **overrides}
    merged.setdefault("drive_ghz", merged["omega0_ghz"])

    if "width_ps" not in merged:
        raise ConfigError("width_ps is required for a custom scenario")
    merged.setdefault("center_ps", 3 * merged["width_ps"])
    merged.setdefault("t_end_ps", 6 * merged["width_ps"])
    if merged["area_rad"] is None and merged["amplitude_vpm"] is None:
        raise ConfigError("one of area_rad or amplitude_vpm is required")
    return RunConfig(**merged)


def dump_config(cfg: RunConfig) -> str:
    """Flat text that re-parses to an identical RunConfig."""
    lines = []
    for key in SCHEMA:
        value = getattr(cfg, key.replace("-", "_"))
        if value is None:
            continue
        if isinstance(value, float):
            value = repr(value)
        lines.append(f"{key} = {value}")
    return "\n".join(lines) + "\n"


def to_scenario(cfg: RunConfig) -> experiments.ScenarioConfig:
    """Convert the plain-text configuration into SI-domain objects."""
    try:
        qubit = QubitParams(
            omega0=2 * math.pi * cfg.omega0_ghz * 1e9,
            dipole_moment=cfg.dipole_cm,
        )
    except ValueError as exc:
        raise ConfigError(f"omega0_ghz/dipole_cm: {exc}") from None
    width = cfg.width_ps * 1e-12
    if width <= 0:
        raise ConfigError(f"width_ps must be positive, got {cfg.width_ps}")
    if cfg.area_rad is not None:
        if cfg.area_rad < 0:
            raise ConfigError(f"area_rad must be >= 0, got {cfg.area_rad}")
        amplitude = (
            amplitude_for_area(cfg.area_rad, qubit, width)
            if cfg.area_rad > 0
            else 0.0
        )
    else:
        amplitude = cfg.amplitude_vpm
    try:
        pulse = PulseSpec(
            amplitude=amplitude,
            center=cfg.center_ps * 1e-12,
            width=width,
            carrier_frequency=2 * math.pi * cfg.drive_ghz * 1e9,
            carrier_enabled=cfg.carrier == "on",
        )
    except ValueError as exc:
        raise ConfigError(f"pulse: {exc}") from None
    dt = (
        cfg.dt_ps * 1e-12
        if cfg.dt_ps is not None
        else experiments.default_time_step(qubit, pulse)
    )
    try:
        grid = TimeGrid(cfg.t_start_ps * 1e-12, cfg.t_end_ps * 1e-12, dt)
    except ValueError as exc:
        raise ConfigError(f"t_start_ps/t_end_ps/dt_ps: {exc}") from None
    initial = QubitState.ket0() if cfg.initial == "0" else QubitState.ket1()
    return experiments.ScenarioConfig(
        qubit=qubit, pulse=pulse, grid=grid, initial=initial, method=cfg.method
    )


def _atomic_write(path: str, text: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _csv_rows(traj: Trajectory, cfg: RunConfig):
    n = len(traj)
    stride = cfg.stride
    if stride <= 0:
        stride = 1 if n <= AUTO_STRIDE_ABOVE else max(1, n // AUTO_STRIDE_ROWS)
    idx = list(range(0, n, stride))
    if idx[-1] != n - 1:
        idx.append(n - 1)
    amps = traj.amplitudes[idx]
    t = traj.times[idx]
    if cfg.frame == "rotating":
        w = 2 * math.pi * cfg.drive_ghz * 1e9
        amps = amps * np.column_stack(
            [np.exp(0.5j * w * t), np.exp(-0.5j * w * t)]
        )
    cross = np.conj(amps[:, 0]) * amps[:, 1]
    cols = [
        t,
        amps[:, 0].real,
        amps[:, 0].imag,
        amps[:, 1].real,
        amps[:, 1].imag,
        2 * cross.real,
        2 * cross.imag,
        np.abs(amps[:, 0]) ** 2 - np.abs(amps[:, 1]) ** 2,
        2 * np.abs(amps[:, 0]) * np.abs(amps[:, 1]),
    ]
    return zip(*cols)


def _write_trajectory_csv(path: str, traj: Trajectory, cfg: RunConfig) -> None:
    lines = [",".join(CSV_COLUMNS)]
    for row in _csv_rows(traj, cfg):
        lines.append(",".join(f"{v:.17g}" for v in row))
    _atomic_write(path, "\n".join(lines) + "\n")


def _summary_dict(cfg: RunConfig, scen, traj: Trajectory) -> dict:
    summary = observables.summarize(traj)
    out = {
        "final_fidelity": summary.final_fidelity,
        "final_sz": summary.final_bloch.z,
        "max_coherence": summary.max_coherence,
        "final_coherence": summary.final_coherence,
        "final_bloch": asdict(summary.final_bloch),
        "norm_drift": summary.norm_drift,
        "effective_kick_area_rad": effective_kick_area(scen.pulse, scen.qubit),
        "regime": experiments.classify_regime(scen.qubit, scen.pulse.width),
        "backend": BACKEND,
        "params": {
            "omega0_rad_per_s": scen.qubit.omega0,
            "dipole_c_m": scen.qubit.dipole_moment,
            "amplitude_v_per_m": scen.pulse.amplitude,
            "width_s": scen.pulse.width,
            "center_s": scen.pulse.center,
            "drive_rad_per_s": scen.pulse.carrier_frequency,
            "carrier": scen.pulse.carrier_enabled,
            "t_start_s": scen.grid.t_start,
            "t_end_s": scen.grid.t_end,
            "dt_s": scen.grid.step,
            "n_steps": scen.grid.n_steps,
            "method": scen.method,
            "initial": cfg.initial,
        },
    }
    if cfg.scenario == "kick" and scen.pulse.carrier_enabled:
        # The carrier-on/off distinction is physically ambiguous for kicks;
        # report the bare-envelope counterpart alongside.
        off = replace(scen, pulse=replace(scen.pulse, carrier_enabled=False))
        out["final_fidelity_carrier_off"] = observables.not_gate_fidelity(
            experiments.run(off)
        )
    return out


def _resolve_config(args) -> RunConfig:
    overrides = {}
    if args.preset:
        if args.preset not in PRESETS:
            raise ConfigError(
                f"unknown preset {args.preset!r}; expected one of "
                f"{', '.join(PRESETS)}"
            )
        overrides.update(PRESETS[args.preset])
    if args.config:
        try:
            with open(args.config) as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        overrides.update(parse_config_text(text))
    if getattr(args, "method", None):
        overrides["method"] = args.method
    if getattr(args, "carrier", None):
        overrides["carrier"] = args.carrier
    if not overrides:
        raise ConfigError("one of --config or --preset is required")
    return build_run_config(overrides)


def _parse_widths(raw: str) -> list[float]:
    items = [s for s in raw.split(",") if s.strip()]
    if not items:
        raise ConfigError("width list is empty")
    widths = []
    for s in items:
        w = _parse_float(s.strip(), "widths_ps")
        if w <= 0:
            raise ConfigError(f"widths_ps: widths must be positive, got {w}")
        widths.append(w * 1e-12)
    return widths


def cmd_simulate(args) -> int:
    cfg = _resolve_config(args)
    if args.dump_config:
        sys.stdout.write(dump_config(cfg))
        return 0
    scen = to_scenario(cfg)
    traj = experiments.run(scen)
    os.makedirs(args.out, exist_ok=True)
    _write_trajectory_csv(os.path.join(args.out, "trajectory.csv"), traj, cfg)
    _atomic_write(
        os.path.join(args.out, "summary.json"),
        json.dumps(_summary_dict(cfg, scen, traj), indent=2) + "\n",
    )
    return 0


def cmd_sweep(args) -> int:
    cfg = _resolve_config(args)
    if args.dump_config:
        sys.stdout.write(dump_config(cfg))
        return 0
    widths = _parse_widths(args.widths_ps)
    base = to_scenario(cfg)
    result = experiments.sweep_tau(base, widths)
    os.makedirs(args.out, exist_ok=True)
    lines = ["width_ps,fidelity,max_coherence,effective_area_rad,regime"]
    for row in result.rows:
        lines.append(
            f"{row.width * 1e12:.17g},{row.fidelity:.17g},"
            f"{row.max_coherence:.17g},{row.effective_area:.17g},{row.regime}"
        )
    _atomic_write(os.path.join(args.out, "sweep.csv"), "\n".join(lines) + "\n")
    return 0


def cmd_compare_kick(args) -> int:
    overrides = {"scenario": "kick"}
    if args.preset:
        if args.preset not in PRESETS:
            raise ConfigError(f"unknown preset {args.preset!r}")
        overrides.update(PRESETS[args.preset])
    if args.config:
        try:
            with open(args.config) as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from None
        overrides.update(parse_config_text(text))
    if args.carrier:
        overrides["carrier"] = args.carrier
    overrides.setdefault("carrier", "off")
    cfg = build_run_config(overrides)
    if args.dump_config:
        sys.stdout.write(dump_config(cfg))
        return 0
    if cfg.carrier != "off":
        raise ConfigError(
            "carrier: the kick comparison is defined for carrier = off"
        )
    widths = _parse_widths(args.widths_ps)
    area = cfg.area_rad
    if area is None:
        raise ConfigError("area_rad is required for compare-kick")
    scen = to_scenario(cfg)
    os.makedirs(args.out, exist_ok=True)
    lines = ["width_ps,omega0_tau,deviation"]
    for w in widths:
        dev = experiments.kick_vs_analytic(w, area, scen.qubit)
        lines.append(
            f"{w * 1e12:.17g},{scen.qubit.omega0 * w:.17g},{dev:.17g}"
        )
    _atomic_write(
        os.path.join(args.out, "kick_comparison.csv"), "\n".join(lines) + "\n"
    )
    return 0


def cmd_calibrate(args) -> int:
    try:
        qubit = QubitParams(
            omega0=2 * math.pi * args.omega0_ghz * 1e9,
            dipole_moment=args.dipole_cm,
        )
        geometry = DeviceGeometry(effective_length=args.leff_um * 1e-6)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    width = args.width_ps * 1e-12
    if width <= 0:
        raise ConfigError(f"width_ps must be positive, got {args.width_ps}")
    if args.area_rad < 0:
        raise ConfigError(f"area_rad must be >= 0, got {args.area_rad}")
    if args.area_rad > 0:
        a0 = amplitude_for_area(args.area_rad, qubit, width)
        pulse = PulseSpec.from_area(
            args.area_rad,
            qubit,
            center=0.0,
            width=width,
            carrier_frequency=qubit.omega0,
        )
        eff_area = effective_kick_area(pulse, qubit)
    else:
        a0 = 0.0
        eff_area = 0.0
    rabi_mhz = qubit.dipole_moment * a0 / HBAR / (2 * math.pi) / 1e6
    print(f"peak_field_v_per_m = {a0:.6g}")
    print(f"peak_rabi_mhz = {rabi_mhz:.6g}")
    print(f"peak_voltage_v = {field_to_voltage(a0, geometry):.6g}")
    print(f"effective_kick_area_rad = {eff_area:.6g}")
    print(f"regime = {experiments.classify_regime(qubit, width)}")
    return 0


def _add_common(sub):
    sub.add_argument("--config", help="flat key = value run configuration")
    sub.add_argument("--preset", help=f"one of: {', '.join(PRESETS)}")
    sub.add_argument("--out", default=".", help="output directory")
    sub.add_argument("--method", choices=["magnus2", "rk4"])
    sub.add_argument("--carrier", choices=["on", "off"])
    sub.add_argument(
        "--dump-config",
        action="store_true",
        help="print the resolved configuration and exit",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pulsekick",
        description="Pulse-level simulator of driven two-level qubit gates.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("simulate", help="run one scenario, export CSV + JSON")
    _add_common(p)
    p.set_defaults(fn=cmd_simulate)

    p = subs.add_parser("sweep", help="re-run a scenario over pulse widths")
    _add_common(p)
    p.add_argument("--widths-ps", required=True, help="comma-separated widths")
    p.set_defaults(fn=cmd_sweep)

    p = subs.add_parser(
        "compare-kick",
        help="numeric propagator vs the instantaneous-kick unitary",
    )
    _add_common(p)
    p.add_argument("--widths-ps", required=True, help="comma-separated widths")
    p.set_defaults(fn=cmd_compare_kick)

    p = subs.add_parser("calibrate", help="area/field/voltage conversion report")
    _add_common(p)
    p.add_argument("--omega0-ghz", type=float, default=4.5)
    p.add_argument("--dipole-cm", type=float, default=3e-25)
    p.add_argument("--width-ps", type=float, required=True)
    p.add_argument("--area-rad", type=float, default=math.pi)
    p.add_argument("--leff-um", type=float, default=20.0)
    p.set_defaults(fn=cmd_calibrate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except NormDriftError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
