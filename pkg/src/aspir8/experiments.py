"""Experiment assembly, snapshot serialization and run orchestration.

The three built-in experiments (insertion, suction, occlusion) reproduce the
published configurations; ``custom`` exposes every knob through the config
file.  Configs are flat key-value text (TOML subset, units in comments);
snapshots are CSV files with a fixed schema.
"""

from __future__ import annotations

import csv
import json
import logging
import math
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from . import kernels
from .boundary import (
    BoundarySpec,
    FixedVelocity,
    InletPressure,
    Neumann,
    Reflection,
)
from .physio import CatheterConfig, Side, VesselParams, pressure
from .scheme import Grid, RunResult, SimState, SnapshotObserver, run

log = logging.getLogger("aspir8")

EXPERIMENTS = ("insertion", "suction", "occlusion", "custom")

CSV_HEADER = "t,x,side,A,u,w,Q_net,Q_gross,p,A_gross"

# occlusion inlet pressure: systolic half sine over half a heart beat
INLET_PRESSURE_AMPLITUDE = 8e4


class ConfigError(Exception):
    """Invalid experiment configuration."""


def default_inlet_pressure(t: float) -> float:
    return INLET_PRESSURE_AMPLITUDE * math.sin(2.0 * math.pi * t)


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str = "insertion"
    N: int = 400
    R0: float = 0.5
    h0: float = 0.05
    E: float = 3e6
    rho: float = 1.0
    Rc: float = 0.1
    u_init: float = 254.65
    w_suction: float = 0.0
    R_T: float = 0.8
    t_end: float = 0.008
    snapshot_times: tuple[float, ...] = (0.002, 0.005, 0.008)
    output_path: str = "out"
    # custom experiment only
    left_bc: str = "neumann"
    right_bc: str = "neumann"
    device_bc: str = "neumann"

    def validate(self) -> None:
        errors = []
        if self.experiment not in EXPERIMENTS:
            errors.append(f"experiment must be one of {EXPERIMENTS}, "
                          f"got {self.experiment!r}")
        if self.N < 2:
            errors.append(f"N must be >= 2, got {self.N}")
        for name in ("R0", "h0", "E", "rho"):
            if not getattr(self, name) > 0.0:
                errors.append(f"{name} must be positive, got {getattr(self, name)}")
        if self.Rc < 0.0:
            errors.append(f"Rc must be non-negative, got {self.Rc}")
        if self.Rc >= self.R0:
            errors.append(f"Rc={self.Rc} must be smaller than R0={self.R0}")
        if not 0.0 <= self.R_T <= 1.0:
            errors.append(f"R_T must lie in [0, 1], got {self.R_T}")
        if not self.t_end > 0.0:
            errors.append(f"t_end must be positive, got {self.t_end}")
        if self.left_bc not in ("neumann", "inlet_pressure"):
            errors.append(f"left_bc must be neumann or inlet_pressure, "
                          f"got {self.left_bc!r}")
        if self.right_bc not in ("neumann", "reflection"):
            errors.append(f"right_bc must be neumann or reflection, "
                          f"got {self.right_bc!r}")
        if self.device_bc not in ("neumann", "fixed"):
            errors.append(f"device_bc must be neumann or fixed, "
                          f"got {self.device_bc!r}")
        if errors:
            raise ConfigError("; ".join(errors))


def default_config(experiment: str) -> ExperimentConfig:
    """Published parameter sets for the built-in experiments."""
    base = ExperimentConfig()
    if experiment == "insertion":
        return base
    if experiment == "suction":
        return replace(base, experiment="suction", w_suction=-5000.0,
                       t_end=0.010, snapshot_times=(0.005, 0.010))
    if experiment == "occlusion":
        times = tuple(round(i * 0.005, 10) for i in range(101))
        return replace(base, experiment="occlusion", w_suction=-1000.0,
                       t_end=0.5, snapshot_times=times,
                       left_bc="inlet_pressure", right_bc="reflection")
    if experiment == "custom":
        return replace(base, experiment="custom")
    raise ConfigError(f"unknown experiment {experiment!r}")


_CONFIG_UNITS = {
    "N": "cells per segment",
    "R0": "vessel radius (cm)",
    "h0": "wall thickness (cm)",
    "E": "Young modulus (dyne/cm^2)",
    "rho": "blood density (g/cm^3)",
    "Rc": "catheter radius (cm)",
    "u_init": "initial flow velocity (cm/s)",
    "w_suction": "device velocity (cm/s, <= 0 for aspiration)",
    "R_T": "terminal reflection coefficient (dimensionless)",
    "t_end": "final time (s)",
    "snapshot_times": "snapshot times (s)",
}


def config_to_text(config: ExperimentConfig) -> str:
    """Flat key-value serialization with units in comments."""
    lines = ["# aspir8 experiment configuration (CGS units)"]
    for key, value in asdict(config).items():
        if isinstance(value, str):
            rendered = f'"{value}"'
        elif isinstance(value, tuple):
            rendered = "[" + ", ".join(format(v, ".17g") for v in value) + "]"
        elif isinstance(value, bool):
            rendered = "true" if value else "false"
        elif isinstance(value, int):
            rendered = str(value)
        else:
            rendered = format(value, ".17g")
        comment = _CONFIG_UNITS.get(key)
        suffix = f"  # {comment}" if comment else ""
        lines.append(f"{key} = {rendered}{suffix}")
    return "\n".join(lines) + "\n"


def parse_config(text: str) -> ExperimentConfig:
    """Parse a config file; unset keys fall back to the experiment's defaults."""
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config: {exc}") from exc
    experiment = raw.get("experiment", "insertion")
    if not isinstance(experiment, str) or experiment not in EXPERIMENTS:
        raise ConfigError(f"experiment must be one of {EXPERIMENTS}, "
                          f"got {experiment!r}")
    config = default_config(experiment)
    known = set(asdict(config))
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    updates = {}
    for key, value in raw.items():
        if key == "snapshot_times":
            if not isinstance(value, list):
                raise ConfigError("snapshot_times must be a list of seconds")
            updates[key] = tuple(float(v) for v in value)
        elif key == "N":
            if not isinstance(value, int):
                raise ConfigError(f"N must be an integer, got {value!r}")
            updates[key] = value
        elif key in ("experiment", "output_path", "left_bc", "right_bc",
                     "device_bc"):
            updates[key] = value
        else:
            updates[key] = float(value)
    config = replace(config, **updates)
    config.validate()
    return config


def load_config(path: str | Path) -> ExperimentConfig:
    return parse_config(Path(path).read_text())


def build_experiment(config: ExperimentConfig) -> tuple[
        SimState, BoundarySpec, VesselParams, CatheterConfig]:
    """Initial state, boundary conditions and parameters for a config."""
    config.validate()
    A0 = math.pi * config.R0**2
    params = VesselParams.from_elasticity(A0=A0, E=config.E, h0=config.h0,
                                          rho=config.rho)
    cath = CatheterConfig(A_c=math.pi * config.Rc**2,
                          suction_velocity=config.w_suction)
    cath.check_fits(params)
    grid = Grid(config.N)
    # standard configuration: the gross lumen equals A0 everywhere, so the
    # device footprint is subtracted from the net area behind the tip and
    # the wall starts unstressed (zero gauge pressure) on both segments
    state = SimState(
        grid, 0.0,
        np.full(config.N, A0 - cath.A_c),
        np.full(config.N, config.u_init),
        np.full(config.N, config.w_suction),
        np.full(config.N, A0),
        np.full(config.N, config.u_init),
    )

    if config.experiment == "occlusion" or config.left_bc == "inlet_pressure":
        left = InletPressure(default_inlet_pressure)
    else:
        left = Neumann()
    if config.experiment == "occlusion" or config.right_bc == "reflection":
        right = Reflection(config.R_T)
    else:
        right = Neumann()
    if config.device_bc == "fixed":
        device = FixedVelocity(config.w_suction)
    else:
        device = Neumann()
    bc = BoundarySpec(left=left, right=right, device_left=device)
    return state, bc, params, cath


@dataclass
class Snapshot:
    """Serializable record of one time instance over the whole vessel.

    ``w`` is NaN on the free segment (no device there); gross quantities add
    the device footprint on the catheterized segment.
    """

    t: float
    x: np.ndarray
    side: list[str]
    A: np.ndarray
    u: np.ndarray
    w: np.ndarray
    Q_net: np.ndarray
    Q_gross: np.ndarray
    p: np.ndarray
    A_gross: np.ndarray

    @classmethod
    def from_state(cls, t: float, state: SimState, params: VesselParams,
                   cath: CatheterConfig) -> "Snapshot":
        grid = state.grid
        N = grid.N
        x = grid.x
        side = ["catheterized"] * N + ["free"] * N
        A = state.A
        u = state.u
        w = np.concatenate([state.w, np.full(N, np.nan)])
        Q_net = A * u
        Q_gross = Q_net.copy()
        Q_gross[:N] += cath.A_c * state.w
        p = np.concatenate([
            pressure(state.A_left, Side.CATHETERIZED, params, cath),
            pressure(state.A_right, Side.FREE, params, cath),
        ])
        A_gross = A.copy()
        A_gross[:N] += cath.A_c
        return cls(t=t, x=x, side=side, A=A, u=u, w=w, Q_net=Q_net,
                   Q_gross=Q_gross, p=p, A_gross=A_gross)

    def to_csv(self, path: str | Path) -> None:
        fmt = lambda v: format(v, ".17g")
        lines = [CSV_HEADER]
        for i in range(self.x.size):
            w = "" if math.isnan(self.w[i]) else fmt(self.w[i])
            lines.append(",".join([
                fmt(self.t), fmt(self.x[i]), self.side[i], fmt(self.A[i]),
                fmt(self.u[i]), w, fmt(self.Q_net[i]), fmt(self.Q_gross[i]),
                fmt(self.p[i]), fmt(self.A_gross[i]),
            ]))
        Path(path).write_text("\n".join(lines) + "\n")

    @classmethod
    def from_csv(cls, path: str | Path) -> "Snapshot":
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            if ",".join(header) != CSV_HEADER:
                raise ValueError(
                    f"{path}: unexpected CSV header {','.join(header)!r}")
            rows = list(reader)
        t = float(rows[0][0])
        x, side, A, u, w = [], [], [], [], []
        Q_net, Q_gross, p, A_gross = [], [], [], []
        for row in rows:
            x.append(float(row[1]))
            side.append(row[2])
            A.append(float(row[3]))
            u.append(float(row[4]))
            w.append(float(row[5]) if row[5] else math.nan)
            Q_net.append(float(row[6]))
            Q_gross.append(float(row[7]))
            p.append(float(row[8]))
            A_gross.append(float(row[9]))
        return cls(t=t, x=np.array(x), side=side, A=np.array(A),
                   u=np.array(u), w=np.array(w), Q_net=np.array(Q_net),
                   Q_gross=np.array(Q_gross), p=np.array(p),
                   A_gross=np.array(A_gross))


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    run_result: RunResult
    snapshot_files: list[Path] = field(default_factory=list)
    manifest_file: Path | None = None


def run_experiment(config: ExperimentConfig,
                   out_dir: str | Path | None = None) -> ExperimentResult:
    """Execute a configured experiment and persist snapshots plus manifest."""
    config.validate()
    out = Path(out_dir if out_dir is not None else config.output_path)
    out.mkdir(parents=True, exist_ok=True)
    state, bc, params, cath = build_experiment(config)

    files: list[Path] = []
    recorded: list[tuple[float, Path]] = []

    def record(t_target: float, snap_state: SimState) -> None:
        snap = Snapshot.from_state(snap_state.t, snap_state, params, cath)
        path = out / f"snapshot_{len(files):03d}.csv"
        snap.to_csv(path)
        files.append(path)
        recorded.append((t_target, path))
        log.info("wrote %s (t=%g s)", path, snap_state.t)

    observer = SnapshotObserver(config.snapshot_times, record)
    t_end = max(config.t_end, max(config.snapshot_times, default=0.0))
    log.info("running %s experiment: N=%d, t_end=%g s, backend=%s",
             config.experiment, config.N, t_end, kernels.BACKEND)
    result = run(state, bc, params, cath, t_end, observers=[observer])

    manifest = {
        "config": asdict(config),
        "grid": {"N": config.N, "dx": state.grid.dx,
                 "half_length": state.grid.half_length},
        "derived": {"A0": params.A0, "beta": params.beta, "A_c": cath.A_c},
        "backend": kernels.BACKEND,
        "n_steps": result.n_steps,
        "final_time": result.state.t,
        "lambda_history": result.lambdas,
        "dt_history": result.dts,
        "snapshots": [{"t": t, "file": p.name} for t, p in recorded],
    }
    manifest_file = out / "manifest.json"
    manifest_file.write_text(json.dumps(manifest, indent=1))
    log.info("finished after %d steps, wrote %s", result.n_steps, manifest_file)
    return ExperimentResult(config=config, run_result=result,
                            snapshot_files=files, manifest_file=manifest_file)
