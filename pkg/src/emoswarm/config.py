"""Experiment configuration: defaults, the flat key=value file format,
and validation.

Unset keys take the baseline defaults (20x20 grid, r0 = sigma0 = 0.02,
all sensitivities 0.5, contagion rates 0.1, emotion sd 0.05, 200 runs of
at most 500 steps). Unknown keys and out-of-range values are rejected
with distinct error types so the CLI can map them to exit codes.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

from .model import GridDims, ModelParams
from .scenarios import (
    Condition,
    DEFAULT_LEVELS,
    GroupEmotionSpec,
    ScenarioDefaults,
    scenario1_conditions,
    scenario2_conditions,
    scenario3_condition,
)


class ConfigError(Exception):
    """Base class for configuration problems."""


class ConfigFileNotFoundError(ConfigError):
    pass


class ConfigSyntaxError(ConfigError):
    pass


class UnknownConfigKeyError(ConfigError):
    pass


class ConfigValueError(ConfigError):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    grid_width: int = 20
    grid_height: int = 20
    scenario: int = 3
    levels_a: tuple[float, ...] = DEFAULT_LEVELS
    levels_v: tuple[float, ...] = DEFAULT_LEVELS
    frac_a: float = 0.1
    frac_b: float = 0.1
    baseline_v_b: float = 0.5
    baseline_a_b: float = 0.5
    r0: float = 0.02
    sigma0: float = 0.02
    alpha_v: float = 0.5
    alpha_a: float = 0.5
    beta_v: float = 0.5
    beta_a: float = 0.5
    gamma_v: float = 0.1
    gamma_a: float = 0.1
    emotion_sd: float = 0.05
    n_runs: int = 200
    max_steps: int = 500
    base_seed: int = 0
    out_dir: str = "results"
    emit_timeseries: bool = False

    def model_params(self) -> ModelParams:
        return ModelParams(
            r0=self.r0,
            sigma0=self.sigma0,
            alpha_v=self.alpha_v,
            alpha_a=self.alpha_a,
            beta_v=self.beta_v,
            beta_a=self.beta_a,
            gamma_v=self.gamma_v,
            gamma_a=self.gamma_a,
        )

    def grid_dims(self) -> GridDims:
        return GridDims(self.grid_width, self.grid_height)

    def scenario_defaults(self) -> ScenarioDefaults:
        return ScenarioDefaults(
            dims=self.grid_dims(),
            params=self.model_params(),
            frac_a=self.frac_a,
            frac_b=self.frac_b,
            emotion_sd=self.emotion_sd,
            n_runs=self.n_runs,
            max_steps=self.max_steps,
        )

    def baseline_b_spec(self) -> GroupEmotionSpec:
        return GroupEmotionSpec(
            mean_v=self.baseline_v_b, mean_a=self.baseline_a_b, sd=self.emotion_sd
        )

    def conditions(self, scenario: int | None = None) -> list[Condition]:
        """All conditions of the requested scenario (default: the
        configured one)."""
        which = self.scenario if scenario is None else scenario
        defaults = self.scenario_defaults()
        if which == 1:
            return scenario1_conditions(
                self.levels_a, self.levels_v, self.baseline_b_spec(), defaults
            )
        if which == 2:
            return scenario2_conditions(
                self.levels_a, self.levels_v, self.baseline_a_b, defaults
            )
        if which == 3:
            return [
                scenario3_condition(defaults, mean_v=self.baseline_v_b, mean_a=self.baseline_a_b)
            ]
        raise ConfigValueError(f"scenario must be 1, 2 or 3, got {which}")


def _parse_bool(raw: str) -> bool:
    lowered = raw.lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ValueError(raw)


def _parse_levels(raw: str) -> tuple[float, ...]:
    parts = [p.strip() for p in raw.split(",") if p.strip()]
    if not parts:
        raise ValueError(raw)
    return tuple(float(p) for p in parts)


# key -> parser; anything not listed here is rejected.
_PARSERS = {
    "grid_width": int,
    "grid_height": int,
    "scenario": int,
    "levels_a": _parse_levels,
    "levels_v": _parse_levels,
    "frac_a": float,
    "frac_b": float,
    "baseline_v_b": float,
    "baseline_a_b": float,
    "r0": float,
    "sigma0": float,
    "alpha_v": float,
    "alpha_a": float,
    "beta_v": float,
    "beta_a": float,
    "gamma_v": float,
    "gamma_a": float,
    "emotion_sd": float,
    "n_runs": int,
    "max_steps": int,
    "base_seed": int,
    "out_dir": str,
    "emit_timeseries": _parse_bool,
}


def _in_range(key: str, value, lo=None, hi=None) -> None:
    if lo is not None and value < lo:
        raise ConfigValueError(f"{key} = {value} is below the minimum {lo}")
    if hi is not None and value > hi:
        raise ConfigValueError(f"{key} = {value} is above the maximum {hi}")


def validate_config(cfg: ExperimentConfig) -> ExperimentConfig:
    """Range-check every field; returns the config unchanged on success."""
    _in_range("grid_width", cfg.grid_width, lo=3)
    _in_range("grid_height", cfg.grid_height, lo=3)
    if cfg.scenario not in (1, 2, 3):
        raise ConfigValueError(f"scenario = {cfg.scenario} must be 1, 2 or 3")
    for name, levels, lo, hi in (
        ("levels_a", cfg.levels_a, 0.0, 1.0),
        ("levels_v", cfg.levels_v, -1.0, 1.0),
    ):
        if not levels:
            raise ConfigValueError(f"{name} must list at least one level")
        for x in levels:
            _in_range(name, x, lo=lo, hi=hi)
    _in_range("frac_a", cfg.frac_a, lo=0.0, hi=1.0)
    _in_range("frac_b", cfg.frac_b, lo=0.0, hi=1.0)
    if cfg.frac_a + cfg.frac_b > 1.0:
        raise ConfigValueError(
            f"frac_a + frac_b = {cfg.frac_a + cfg.frac_b} exceeds 1"
        )
    _in_range("baseline_v_b", cfg.baseline_v_b, lo=-1.0, hi=1.0)
    _in_range("baseline_a_b", cfg.baseline_a_b, lo=0.0, hi=1.0)
    _in_range("r0", cfg.r0, lo=0.0)
    _in_range("sigma0", cfg.sigma0, lo=0.0)
    _in_range("gamma_v", cfg.gamma_v, lo=0.0, hi=1.0)
    _in_range("gamma_a", cfg.gamma_a, lo=0.0, hi=1.0)
    _in_range("emotion_sd", cfg.emotion_sd, lo=0.0)
    _in_range("n_runs", cfg.n_runs, lo=1)
    _in_range("max_steps", cfg.max_steps, lo=1)
    return cfg


def load_config(path: str | Path) -> ExperimentConfig:
    """Parse a flat `key = value` configuration file.

    Blank lines and lines starting with '#' are ignored. Every other line
    must be `key = value` with a known key; unset keys keep their
    defaults. Raises ConfigFileNotFoundError, ConfigSyntaxError,
    UnknownConfigKeyError, or ConfigValueError.
    """
    path = Path(path)
    if not path.is_file():
        raise ConfigFileNotFoundError(f"config file not found: {path}")
    values = {}
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigSyntaxError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        raw = raw.strip()
        if key not in _PARSERS:
            raise UnknownConfigKeyError(f"{path}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigSyntaxError(f"{path}:{lineno}: duplicate key {key!r}")
        try:
            values[key] = _PARSERS[key](raw)
        except ValueError:
            raise ConfigValueError(
                f"{path}:{lineno}: invalid value {raw!r} for key {key!r}"
            ) from None
    return validate_config(replace(ExperimentConfig(), **values))
