"""Initial-condition builders for the three experiments.

Scenario 1 sweeps the A group's initial (arousal, valence) over a grid
against a fixed B baseline; scenario 2 does the same but pins both groups
to identical valence so only arousal differs; scenario 3 is the fully
symmetric tie used to study spontaneous symmetry breaking.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

from .model import GridDims, GroupEmotionSpec, InitSpec, ModelParams

# Default sweep levels for both the arousal and valence axes (16 cells).
DEFAULT_LEVELS: tuple[float, ...] = (0.2, 0.5, 0.8, 1.0)

DEFAULT_BASELINE_B = GroupEmotionSpec(mean_v=0.5, mean_a=0.5, sd=0.05)


@dataclass(frozen=True)
class ScenarioDefaults:
    """Shared knobs for condition building. The committed fractions are a
    configurable choice (the initial split is not pinned by the model)."""

    dims: GridDims = GridDims(20, 20)
    params: ModelParams = ModelParams()
    frac_a: float = 0.1
    frac_b: float = 0.1
    emotion_sd: float = 0.05
    n_runs: int = 200
    max_steps: int = 500


@dataclass(frozen=True)
class Condition:
    """One experimental condition: an initial spec plus everything needed
    to replicate it."""

    id: str
    dims: GridDims
    init: InitSpec
    params: ModelParams
    n_runs: int
    max_steps: int


def _check_levels(levels_a: Sequence[float], levels_v: Sequence[float]) -> None:
    if not levels_a or not levels_v:
        raise ValueError("level lists must be non-empty")
    for a in levels_a:
        if not 0.0 <= a <= 1.0:
            raise ValueError(f"arousal level {a} outside [0, 1]")
    for v in levels_v:
        if not -1.0 <= v <= 1.0:
            raise ValueError(f"valence level {v} outside [-1, 1]")


def scenario1_conditions(
    levels_a: Sequence[float] = DEFAULT_LEVELS,
    levels_v: Sequence[float] = DEFAULT_LEVELS,
    baseline_b: GroupEmotionSpec = DEFAULT_BASELINE_B,
    defaults: ScenarioDefaults = ScenarioDefaults(),
) -> list[Condition]:
    """Joint valence-arousal sweep: the A group takes every (a, v) pair in
    row order (arousal outer, valence inner), B stays at `baseline_b`."""
    _check_levels(levels_a, levels_v)
    conditions = []
    for a in levels_a:
        for v in levels_v:
            init = InitSpec(
                frac_a=defaults.frac_a,
                frac_b=defaults.frac_b,
                emotion_a=GroupEmotionSpec(mean_v=v, mean_a=a, sd=defaults.emotion_sd),
                emotion_b=baseline_b,
            )
            conditions.append(
                Condition(
                    id=f"s1_a{a:g}_v{v:g}",
                    dims=defaults.dims,
                    init=init,
                    params=defaults.params,
                    n_runs=defaults.n_runs,
                    max_steps=defaults.max_steps,
                )
            )
    return conditions


def scenario2_conditions(
    levels_a: Sequence[float] = DEFAULT_LEVELS,
    levels_v: Sequence[float] = DEFAULT_LEVELS,
    baseline_a_b: float = 0.5,
    defaults: ScenarioDefaults = ScenarioDefaults(),
) -> list[Condition]:
    """Arousal tie-break sweep: for each (a, v) cell both groups share the
    valence v, so arousal is the only initial difference (B at
    `baseline_a_b`)."""
    _check_levels(levels_a, levels_v)
    if not 0.0 <= baseline_a_b <= 1.0:
        raise ValueError(f"baseline arousal {baseline_a_b} outside [0, 1]")
    conditions = []
    for a in levels_a:
        for v in levels_v:
            init = InitSpec(
                frac_a=defaults.frac_a,
                frac_b=defaults.frac_b,
                emotion_a=GroupEmotionSpec(mean_v=v, mean_a=a, sd=defaults.emotion_sd),
                emotion_b=GroupEmotionSpec(mean_v=v, mean_a=baseline_a_b, sd=defaults.emotion_sd),
            )
            conditions.append(
                Condition(
                    id=f"s2_a{a:g}_v{v:g}",
                    dims=defaults.dims,
                    init=init,
                    params=defaults.params,
                    n_runs=defaults.n_runs,
                    max_steps=defaults.max_steps,
                )
            )
    return conditions


def scenario3_condition(
    defaults: ScenarioDefaults = ScenarioDefaults(),
    mean_v: float = 0.5,
    mean_a: float = 0.5,
) -> Condition:
    """The perfectly balanced tie: equal fractions and identical emotion
    distributions for both options, so the produced spec is invariant
    under exchanging the two labels."""
    emotion = GroupEmotionSpec(mean_v=mean_v, mean_a=mean_a, sd=defaults.emotion_sd)
    init = InitSpec(
        frac_a=defaults.frac_a,
        frac_b=defaults.frac_a,  # symmetric by construction
        emotion_a=emotion,
        emotion_b=emotion,
    )
    return Condition(
        id="s3_snowball",
        dims=defaults.dims,
        init=init,
        params=defaults.params,
        n_runs=defaults.n_runs,
        max_steps=defaults.max_steps,
    )


def relabeled_init(init: InitSpec) -> InitSpec:
    """The same initial condition with options A and B exchanged."""
    return replace(
        init,
        frac_a=init.frac_b,
        frac_b=init.frac_a,
        emotion_a=init.emotion_b,
        emotion_b=init.emotion_a,
    )
