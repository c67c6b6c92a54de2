"""Run configuration: a flat key=value text format and its parser.

Unknown keys are rejected with the offending line number so that manifests
written by the runner parse back to the exact effective configuration.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError
from .problems import problem_ids

__all__ = ["RunConfig", "parse_config", "format_config"]

_BOOL = {"on": True, "true": True, "1": True, "off": False, "false": False, "0": False}


@dataclass(frozen=True)
class RunConfig:
    problem: str
    k: int
    cells: tuple
    cfl: float = 0.1
    tvb_m: float = 10.0
    tvb_limiter: bool = True
    bounds_limiter: bool = True
    flux: str = "lf"
    out: str = "out"
    snapshots: tuple = ()

    def validate(self) -> "RunConfig":
        if self.problem not in problem_ids():
            raise ConfigError(f"unknown problem {self.problem!r}; valid ids: {', '.join(problem_ids())}")
        if self.k < 1:
            raise ConfigError("k must be >= 1")
        if self.cfl <= 0.0:
            raise ConfigError("cfl must be positive")
        if self.tvb_m < 0.0:
            raise ConfigError("tvb_m must be nonnegative")
        if self.flux not in ("lf", "ec"):
            raise ConfigError(f"flux must be 'lf' or 'ec', got {self.flux!r}")
        if len(self.cells) not in (1, 2) or any(c < 1 for c in self.cells):
            raise ConfigError(f"bad cell count {self.cells}")
        return self


def _parse_cells(value: str) -> tuple:
    parts = value.lower().split("x")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise ConfigError(f"cells must be N or NxM, got {value!r}") from None


def parse_config(text: str) -> RunConfig:
    """Parse key=value lines (comments with #, blank lines ignored)."""
    fields: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        try:
            if key == "problem":
                fields["problem"] = value
            elif key == "k":
                fields["k"] = int(value)
            elif key == "cells":
                fields["cells"] = _parse_cells(value)
            elif key == "cfl":
                fields["cfl"] = float(value)
            elif key == "tvb_m":
                fields["tvb_m"] = float(value)
            elif key == "tvb_limiter":
                fields["tvb_limiter"] = _BOOL[value.lower()]
            elif key == "bounds_limiter":
                fields["bounds_limiter"] = _BOOL[value.lower()]
            elif key == "flux":
                fields["flux"] = value
            elif key == "out":
                fields["out"] = value
            elif key == "snapshots":
                fields["snapshots"] = tuple(float(v) for v in value.split(",") if v.strip())
            else:
                raise ConfigError(f"line {lineno}: unknown key {key!r}")
        except ConfigError:
            raise
        except (ValueError, KeyError) as exc:
            raise ConfigError(f"line {lineno}: bad value for {key!r}: {exc}") from None
    missing = [k for k in ("problem", "k", "cells") if k not in fields]
    if missing:
        raise ConfigError(f"missing required keys: {', '.join(missing)}")
    return RunConfig(**fields).validate()


def format_config(config: RunConfig) -> str:
    """Inverse of parse_config for the effective configuration."""
    lines = [
        f"problem={config.problem}",
        f"k={config.k}",
        "cells=" + "x".join(str(c) for c in config.cells),
        f"cfl={config.cfl!r}",
        f"tvb_m={config.tvb_m!r}",
        f"tvb_limiter={'on' if config.tvb_limiter else 'off'}",
        f"bounds_limiter={'on' if config.bounds_limiter else 'off'}",
        f"flux={config.flux}",
        f"out={config.out}",
        "snapshots=" + ",".join(repr(t) for t in config.snapshots),
    ]
    return "\n".join(lines) + "\n"
