"""Run configuration for the command-line driver."""

from __future__ import annotations

import json
from dataclasses import dataclass, fields, replace
from pathlib import Path

from .examples import DEFAULT_CUTOFF, EXAMPLES

CHECK_GROUPS = ("axioms", "star", "lambda", "kernel", "simplicity")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    example: str = "a1"
    cutoff: int | None = None  # half-units; None means the example default
    checks: tuple = ("all",)
    out: str | None = None
    jobs: int = 1
    seed: int = 0

    def validated(self) -> "RunConfig":
        if self.example not in EXAMPLES:
            raise ConfigError(f"unknown example {self.example!r}; choose from {', '.join(sorted(EXAMPLES))}")
        cutoff = DEFAULT_CUTOFF[self.example] if self.cutoff is None else self.cutoff
        if not isinstance(cutoff, int) or isinstance(cutoff, bool) or cutoff < 2:
            raise ConfigError("cutoff must be an integer >= 2 (half-units)")
        checks = tuple(self.checks)
        unknown = set(checks) - set(CHECK_GROUPS) - {"all"}
        if unknown or not checks:
            raise ConfigError(f"checks must be a nonempty subset of {CHECK_GROUPS + ('all',)}")
        if "all" in checks:
            checks = CHECK_GROUPS
        checks = tuple(c for c in CHECK_GROUPS if c in checks)
        if not isinstance(self.jobs, int) or self.jobs < 1:
            raise ConfigError("jobs must be a positive integer")
        return replace(self, cutoff=cutoff, checks=checks)


def load_config_file(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    allowed = {f.name for f in fields(RunConfig)}
    unknown = set(data) - allowed
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "checks" in data:
        checks = data["checks"]
        data["checks"] = tuple(checks.split(",") if isinstance(checks, str) else checks)
    return data
