"""Run configuration: one flat JSON object, built-in presets and ``key=value`` overrides."""

from __future__ import annotations

import dataclasses
import json
import math
import types
import typing
from dataclasses import dataclass, fields
from pathlib import Path

from .model import BeliefState, DomainError, RaceParameters
from .simulator import SimConfig

FORMATS = ("csv", "json", "svg")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    # race parameters
    r: float = 0.05
    delta: float = 0.02
    sigma: float = 0.3
    gamma: float = 0.0
    v_ref: float = 1.0
    invest_cost: float = 1.0
    d_social: float = 10.0
    d_private: float = 0.0
    share: float = 0.0
    lambda_rate: float = 0.5
    # beliefs: an explicit pair wins over tau, tau wins over pi
    pi: float = 0.5
    pi_self: float | None = None
    pi_rival: float | None = None
    tau: float | None = None
    # point evaluation and mechanisms
    v: float = 3.0
    include_private: bool = True
    survival_mode: str = "excludes-private"
    d_after: float | None = None
    # simulation
    v0: float = 1.0
    horizon: float = 20.0
    dt: float = 1.0 / 252.0
    n_paths: int = 10_000
    seed: int = 0
    barrier_kind: str = "preemption"
    barrier_level: float | None = None
    discounting: bool = False
    bridge_correction: bool = False
    lag: float = 0.0
    epsilon: float = 0.0
    # sweep
    x_axis: str = "d_social"
    x_min: float = 0.0
    x_max: float = 20.0
    x_steps: int = 41
    y_axis: str = "v"
    y_min: float = 0.0
    y_max: float = 25.0
    y_steps: int = 51
    annotate_x: float | None = None
    annotate_y: float | None = None
    # output
    out_dir: str = "."
    formats: list[str] = dataclasses.field(default_factory=lambda: list(FORMATS))

    def race_parameters(self) -> RaceParameters:
        names = [f.name for f in fields(RaceParameters)]
        return RaceParameters(**{n: getattr(self, n) for n in names})

    def beliefs(self) -> BeliefState:
        if self.pi_self is not None or self.pi_rival is not None:
            if self.pi_self is None or self.pi_rival is None:
                raise ConfigError("pi_self and pi_rival must be given together")
            return BeliefState(self.pi_self, self.pi_rival)
        if self.tau is not None:
            return BeliefState.learned(self.lambda_rate, self.tau)
        return BeliefState.symmetric(self.pi)

    def sim_config(self) -> SimConfig:
        return SimConfig(v0=self.v0, horizon=self.horizon, dt=self.dt, n_paths=self.n_paths,
                         seed=self.seed, barrier_kind=self.barrier_kind, barrier_level=self.barrier_level,
                         discounting=self.discounting, bridge_correction=self.bridge_correction)

    def validate(self) -> "RunConfig":
        try:
            self.race_parameters()
            self.beliefs()
            self.sim_config()
        except DomainError as exc:
            raise ConfigError(str(exc)) from exc
        for axis in ("x", "y"):
            lo, hi, steps = (getattr(self, f"{axis}_{k}") for k in ("min", "max", "steps"))
            if steps < 2 or not lo < hi:
                raise ConfigError(f"{axis} axis needs steps >= 2 and min < max")
        bad = [f for f in self.formats if f not in FORMATS]
        if bad:
            raise ConfigError(f"unknown output formats {bad}; choose from {FORMATS}")
        return self

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), indent=2, sort_keys=True) + "\n"


_HINTS = typing.get_type_hints(RunConfig)
FIELD_NAMES = tuple(f.name for f in fields(RunConfig))

PRESETS: dict[str, dict] = {
    "baseline": {"invest_cost": 1.0, "pi": 0.5, "share": 0.0, "d_social": 10.0},
    # illustrative ranges; the original figure carries no axis numbers
    "figure1": {"invest_cost": 1.0, "pi": 0.5, "share": 0.0, "d_social": 10.0,
                "x_axis": "d_social", "x_min": 0.0, "x_max": 20.0, "x_steps": 41,
                "y_axis": "v", "y_min": 0.0, "y_max": 25.0, "y_steps": 51,
                "annotate_x": 8.0, "annotate_y": 5.0},
    "liability-demo": {"invest_cost": 1.0, "pi": 0.5, "share": 0.25, "d_social": 10.0},
    "warning-shot": {"invest_cost": 1.0, "pi": 0.5, "share": 0.0, "d_social": 5.0, "d_after": 50.0},
    # catastrophe probability of about 20% quoted by lab leaders
    "expert-survey": {"invest_cost": 1.0, "pi": 0.8, "share": 0.0, "d_social": 10.0},
}

# alignment probabilities equivalent to published catastrophe estimates
EXPERT_SURVEY_PI = {
    "lab-leaders": 0.8,
    "researcher-range-high-risk": 0.8,
    "researcher-range-low-risk": 0.9,
    "survey-median": 0.95,
}


def _coerce(name: str, raw):
    hint = _HINTS[name]
    optional = typing.get_origin(hint) in (typing.Union, types.UnionType) and type(None) in typing.get_args(hint)
    base = next(a for a in typing.get_args(hint) if a is not type(None)) if optional else hint
    if isinstance(raw, str):
        text = raw.strip()
        if optional and text.lower() in ("none", "null", ""):
            return None
        if base is bool:
            if text.lower() in ("1", "true", "yes", "on"):
                return True
            if text.lower() in ("0", "false", "no", "off"):
                return False
            raise ConfigError(f"{name}: expected a boolean, got {raw!r}")
        if base is int:
            try:
                return int(text)
            except ValueError:
                pass
            try:
                value = float(text)
            except ValueError:
                value = math.nan
            if not value.is_integer():
                raise ConfigError(f"{name}: expected an integer, got {raw!r}")
            return int(value)
        if base is float:
            try:
                return float(text)
            except ValueError:
                raise ConfigError(f"{name}: expected a number, got {raw!r}") from None
        if typing.get_origin(base) is list:
            return [p.strip() for p in text.split(",") if p.strip()]
        return text
    if raw is None:
        if optional:
            return None
        raise ConfigError(f"{name}: may not be null")
    if base is bool:
        if not isinstance(raw, bool):
            raise ConfigError(f"{name}: expected a boolean, got {raw!r}")
        return raw
    if base is int:
        if isinstance(raw, bool) or not isinstance(raw, (int, float)) or not float(raw).is_integer():
            raise ConfigError(f"{name}: expected an integer, got {raw!r}")
        return int(raw)
    if base is float:
        if isinstance(raw, bool) or not isinstance(raw, (int, float)):
            raise ConfigError(f"{name}: expected a number, got {raw!r}")
        return float(raw)
    if typing.get_origin(base) is list:
        if not isinstance(raw, list) or not all(isinstance(x, str) for x in raw):
            raise ConfigError(f"{name}: expected a list of strings, got {raw!r}")
        return list(raw)
    if not isinstance(raw, str):
        raise ConfigError(f"{name}: expected a string, got {raw!r}")
    return raw


def apply_overrides(cfg: RunConfig, values: dict, origin: str = "") -> RunConfig:
    where = f" ({origin})" if origin else ""
    changes = {}
    for key, raw in values.items():
        name = key.replace("-", "_")
        if name not in FIELD_NAMES:
            raise ConfigError(f"unknown field {key!r}{where}")
        changes[name] = _coerce(name, raw)
    return dataclasses.replace(cfg, **changes)


def parse_assignment(text: str) -> tuple[str, str]:
    if "=" not in text:
        raise ConfigError(f"--set expects key=value, got {text!r}")
    key, value = text.split("=", 1)
    return key.strip(), value


def load_config_file(path: str | Path, base: RunConfig | None = None) -> RunConfig:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")
    return apply_overrides(base or RunConfig(), data, origin=str(path))


def from_json(text: str) -> RunConfig:
    data = json.loads(text)
    return apply_overrides(RunConfig(), data)


def preset(name: str) -> RunConfig:
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; available: {sorted(PRESETS)}")
    return apply_overrides(RunConfig(), PRESETS[name], origin=f"preset {name}")


def fmt(x) -> str:
    """Nine significant digits; infinities spelled ``inf``."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.9g}"


def jsonable(obj):
    """Round floats to nine significant digits and spell non-finite values as strings."""
    if dataclasses.is_dataclass(obj):
        obj = dataclasses.asdict(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if hasattr(obj, "item"):
        return jsonable(obj.item())
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return fmt(obj)
        return float(f"{obj:.9g}")
    return str(obj)


def dump_json(obj) -> str:
    return json.dumps(jsonable(obj), indent=2, sort_keys=True) + "\n"
