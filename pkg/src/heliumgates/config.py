"""Run configuration: ``key = value`` files overridden by command-line flags."""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, fields

from .errors import ConfigError
from .helium import DEFAULT_KAPPA0, REFERENCE_FIELD
from .pulses import DEFAULT_DURATION


@dataclass
class RunConfig:
    e_perp: float = REFERENCE_FIELD
    pulse_duration: float = DEFAULT_DURATION
    sigma: float | None = None
    theta: float = math.pi / 2
    phi: float = 0.0
    lag: float = 0.0
    step: float | None = None
    stride: int = 50
    kappa_scale: float = 1.0
    kappa0: float = DEFAULT_KAPPA0
    delta13: float | None = None
    delta23: float | None = None
    delta12: float | None = None
    crosstalk: bool = False
    rabi: float = 2.0 * math.pi * 0.04
    duration: float | None = None
    e_min: float = 100.0
    e_max: float = 1000.0
    n_points: int = 10
    wavefunctions: bool = False
    format: str = "csv"
    out: str | None = None
    jobs: int = 1

    def validate(self) -> "RunConfig":
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.format!r}")
        if self.pulse_duration <= 0:
            raise ConfigError("pulse_duration must be positive")
        if self.sigma is not None and self.sigma <= 0:
            raise ConfigError("sigma must be positive")
        if self.step is not None and self.step <= 0:
            raise ConfigError("step must be positive")
        if self.kappa_scale < 0:
            raise ConfigError("kappa_scale must be nonnegative")
        if not 0.0 <= self.theta <= math.pi:
            raise ConfigError("theta must lie in [0, pi]")
        if not 0.0 <= self.lag <= self.pulse_duration:
            raise ConfigError("lag must lie in [0, pulse_duration]")
        if self.n_points < 1 or self.jobs < 1 or self.stride < 1:
            raise ConfigError("n_points, jobs and stride must be positive")
        if self.e_perp < 0 or self.e_min < 0 or self.e_max < self.e_min:
            raise ConfigError("fields must be nonnegative with e_min <= e_max")
        return self

    def dump(self) -> str:
        lines = []
        for f in fields(self):
            v = getattr(self, f.name)
            lines.append(f"{f.name} = {'none' if v is None else _fmt(v)}")
        return "\n".join(lines) + "\n"


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _convert(key: str, raw: str):
    kind = _TYPES[key]
    raw = raw.strip()
    if "None" in kind and raw.lower() in ("none", ""):
        return None
    if kind.startswith("bool"):
        low = raw.lower()
        if low in ("1", "true", "yes", "on"):
            return True
        if low in ("0", "false", "no", "off"):
            return False
        raise ValueError(f"not a boolean: {raw!r}")
    if kind.startswith("int"):
        return int(raw)
    if kind.startswith("float"):
        return float(raw)
    return raw


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {line!r}")
        key, raw = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _TYPES:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _convert(key, raw)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key}: {exc}") from None
    return values


def load_config(path: str | None = None, overrides: dict | None = None) -> RunConfig:
    values = {}
    if path is not None:
        try:
            with open(path) as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        values.update(parse_config_text(text, path))
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    return dataclasses.replace(RunConfig(), **values).validate()
