"""One-variable parameter sweeps over the closed-form quantities.

A sweep walks one parameter over a linear or logarithmic grid, holds the rest
fixed, and tabulates every derived quantity that the supplied parameters
determine: noise sigma, cycle energies, instantaneous error probability,
dissipation floors, required swing, tank efficiency, and switch break-even.
Cells whose inputs are missing stay empty rather than guessed.

Output is RFC-4180 CSV (CRLF line endings, numbers as %.8e) plus a JSON run
manifest with the inputs, seed, and tool version — and deliberately no
timestamps, so identical configs produce byte-identical files.
"""

from __future__ import annotations

import csv
import json
import math
import operator
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .circuit import RcStage
from .floors import (
    ErrorSpec,
    floor_long,
    floor_short,
    multi_sample_error,
    observation_count,
    required_swing,
    tail_probability,
)
from .quantities import ROOM_TEMPERATURE, PhysicalEnvironment
from .tank import symmetric_tank_efficiency

# Sweepable physical parameters, in canonical column order.
PARAMETERS = ("U1", "C", "T", "epsilon", "t_o", "tau", "q", "e_switch")

# Fixed-only knobs (not sweepable, but allowed in "fixed").
_EXTRA_FIXED = ("n_switches",)

COLUMNS = PARAMETERS + (
    "thermal_energy_J",
    "sigma_V",
    "e1_J",
    "e1_kT",
    "cycle_J",
    "cycle_kT",
    "epsilon_inst",
    "multi_sample_epsilon",
    "floor_short_kT",
    "floor_short_J",
    "floor_long_kT",
    "floor_long_J",
    "required_U1_V",
    "required_E1_kT",
    "tank_efficiency",
    "break_even_kT",
    "break_even_J",
)

DEFAULT_SEED = 12345


class SweepConfigError(ValueError):
    """A sweep config that names what is wrong and where."""


@dataclass(frozen=True)
class SweepSpec:
    """Validated description of one sweep.

    ``variable`` is one of PARAMETERS; ``fixed`` maps other parameter names
    (plus optionally ``n_switches``) to values.  ``e_switch`` is denominated
    in kT — it is a technology figure, not a bath-dependent joule count.
    """

    variable: str
    scale: str
    start: float
    stop: float
    points: int
    output_path: str
    fixed: dict = field(default_factory=dict)
    seed: int = DEFAULT_SEED

    def __post_init__(self) -> None:
        if self.variable not in PARAMETERS:
            raise SweepConfigError(
                f"field 'variable': unknown parameter {self.variable!r}; "
                f"choose one of {', '.join(PARAMETERS)}"
            )
        if self.scale not in ("linear", "log"):
            raise SweepConfigError(
                f"field 'scale': must be 'linear' or 'log', got {self.scale!r}"
            )
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise SweepConfigError("fields 'start'/'stop': must be finite numbers")
        if not self.start < self.stop:
            raise SweepConfigError(
                f"field 'start': must be < 'stop', got {self.start!r} >= {self.stop!r}"
            )
        if self.scale == "log" and not self.start > 0.0:
            raise SweepConfigError(
                f"field 'start': log scale needs positive endpoints, got {self.start!r}"
            )
        if self.points < 2:
            raise SweepConfigError(
                f"field 'points': need at least 2 grid points, got {self.points!r}"
            )
        if not isinstance(self.fixed, dict):
            raise SweepConfigError("field 'fixed': must be an object")
        allowed = set(PARAMETERS) | set(_EXTRA_FIXED)
        for key in self.fixed:
            if key not in allowed:
                raise SweepConfigError(
                    f"field 'fixed': unknown parameter {key!r}; "
                    f"allowed: {', '.join(sorted(allowed))}"
                )
            if key == self.variable:
                raise SweepConfigError(
                    f"field 'fixed': {key!r} is the sweep variable and cannot "
                    "also be fixed"
                )
        if not self.output_path:
            raise SweepConfigError("field 'output': must be a non-empty path")

    @classmethod
    def from_config(cls, config: dict) -> "SweepSpec":
        """Build a spec from a parsed JSON config object."""
        if not isinstance(config, dict):
            raise SweepConfigError("config root must be a JSON object")
        required = ("variable", "scale", "start", "stop", "points", "output")
        for name in required:
            if name not in config:
                raise SweepConfigError(f"field {name!r}: missing")
        known = set(required) | {"fixed", "seed"}
        for name in config:
            if name not in known:
                raise SweepConfigError(f"field {name!r}: unexpected")
        try:
            points = operator.index(config["points"])
        except TypeError:
            raise SweepConfigError(
                f"field 'points': must be an integer, got {config['points']!r}"
            ) from None
        try:
            seed = operator.index(config.get("seed", DEFAULT_SEED))
        except TypeError:
            raise SweepConfigError(
                f"field 'seed': must be an integer, got {config['seed']!r}"
            ) from None
        for name in ("start", "stop"):
            if not isinstance(config[name], (int, float)) or isinstance(
                config[name], bool
            ):
                raise SweepConfigError(
                    f"field {name!r}: must be a number, got {config[name]!r}"
                )
        if not isinstance(config["variable"], str):
            raise SweepConfigError("field 'variable': must be a string")
        if not isinstance(config["scale"], str):
            raise SweepConfigError("field 'scale': must be a string")
        if not isinstance(config["output"], str):
            raise SweepConfigError("field 'output': must be a string")
        fixed = config.get("fixed", {})
        if not isinstance(fixed, dict):
            raise SweepConfigError(f"field 'fixed': must be an object, got {fixed!r}")
        return cls(
            variable=config["variable"],
            scale=config["scale"],
            start=float(config["start"]),
            stop=float(config["stop"]),
            points=points,
            output_path=config["output"],
            fixed=dict(fixed),
            seed=seed,
        )

    def grid(self) -> np.ndarray:
        """The swept values, ascending, endpoints exact."""
        if self.scale == "linear":
            return np.linspace(self.start, self.stop, self.points)
        return np.geomspace(self.start, self.stop, self.points)


def load_config(path) -> SweepSpec:
    """Read and validate a sweep config JSON file."""
    text = Path(path).read_text()
    config = json.loads(text)  # JSONDecodeError carries line/column
    return SweepSpec.from_config(config)


def _derived_row(params: dict) -> dict:
    """All derived quantities that the given parameters determine."""
    out: dict[str, float] = {}
    temperature = params.get("T", ROOM_TEMPERATURE)
    env = PhysicalEnvironment(temperature=temperature)
    kt = env.thermal_energy()
    out["thermal_energy_J"] = kt

    cap = params.get("C")
    swing = params.get("U1")
    sigma = None
    if cap is not None:
        if not cap > 0.0:
            raise ValueError(f"swept/fixed C must be > 0 F, got {cap!r}")
        sigma = math.sqrt(kt / cap)
        out["sigma_V"] = sigma

    if cap is not None and swing is not None:
        if not swing >= 0.0:
            raise ValueError(f"swept/fixed U1 must be >= 0 V, got {swing!r}")
        e1 = 0.5 * cap * swing**2
        out["e1_J"] = e1
        out["e1_kT"] = env.joules_to_kt(e1)
        out["cycle_J"] = e1 + e1
        out["cycle_kT"] = env.joules_to_kt(e1 + e1)
        out["epsilon_inst"] = float(tail_probability((0.5 * swing) / sigma))

    epsilon = params.get("epsilon")
    t_obs = params.get("t_o")
    tau = params.get("tau")
    if epsilon is not None:
        spec = ErrorSpec(
            epsilon=epsilon,
            observation_time=t_obs if t_obs is not None else 0.0,
            correlation_time=tau,
        )
        short = floor_short(spec, env)
        out["floor_short_kT"] = short.floor_kt
        out["floor_short_J"] = short.floor_joule
        if t_obs is not None and tau is not None:
            long_floor = floor_long(spec, env)
            out["floor_long_kT"] = long_floor.floor_kt
            out["floor_long_J"] = long_floor.floor_joule
            out["multi_sample_epsilon"] = multi_sample_error(
                epsilon, observation_count(t_obs, tau)
            )
        if cap is not None:
            stage = RcStage(
                capacitance=cap, resistance=1.0, swing_voltage=0.0, env=env
            )
            need = required_swing(epsilon, stage)
            out["required_U1_V"] = need.swing_voltage
            out["required_E1_kT"] = need.energy_kt

    quality = params.get("q")
    if quality is not None:
        eta = symmetric_tank_efficiency(quality)
        out["tank_efficiency"] = eta
        e_switch_kt = params.get("e_switch")
        if e_switch_kt is not None:
            if not e_switch_kt >= 0.0:
                raise ValueError(
                    f"swept/fixed e_switch must be >= 0 kT, got {e_switch_kt!r}"
                )
            n_switches = int(params.get("n_switches", 2))
            if n_switches < 2:
                raise ValueError(
                    f"fixed n_switches must be >= 2, got {n_switches!r}"
                )
            break_even_kt = n_switches * e_switch_kt / eta
            out["break_even_kT"] = break_even_kt
            out["break_even_J"] = env.kt_to_joules(break_even_kt)
    return out


def compute_rows(spec: SweepSpec) -> list[dict]:
    """Evaluate the whole grid; raises before anything is written.

    Every row carries the full COLUMNS schema; quantities the given
    parameters do not determine are None.
    """
    rows = []
    for value in spec.grid():
        params = dict(spec.fixed)
        params[spec.variable] = float(value)
        row = dict.fromkeys(COLUMNS)
        row.update((name, params.get(name)) for name in PARAMETERS)
        row.update(_derived_row(params))
        rows.append(row)
    return rows


def run_sweep(spec: SweepSpec) -> tuple[Path, Path]:
    """Execute the sweep; returns (csv_path, manifest_path).

    The CSV has one row per grid point, ordered by the swept value ascending;
    the manifest echoes the configuration and tool version.  Reruns of the
    same spec produce byte-identical files.
    """
    rows = compute_rows(spec)
    csv_path = Path(spec.output_path)
    manifest_path = csv_path.with_suffix(".manifest.json")

    with open(csv_path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\r\n")
        writer.writerow(COLUMNS)
        for row in rows:
            writer.writerow(
                "" if row.get(name) is None else "%.8e" % row[name]
                for name in COLUMNS
            )

    manifest = {
        "tool": "ktfloor",
        "version": __version__,
        "command": "sweep",
        "variable": spec.variable,
        "scale": spec.scale,
        "start": spec.start,
        "stop": spec.stop,
        "points": spec.points,
        "fixed": dict(sorted(spec.fixed.items())),
        "seed": spec.seed,
        "rows": len(rows),
        "columns": list(COLUMNS),
        "output_csv": csv_path.name,
    }
    with open(manifest_path, "w", newline="") as fh:
        fh.write(json.dumps(manifest, indent=2, sort_keys=True))
        fh.write("\n")
    return csv_path, manifest_path
