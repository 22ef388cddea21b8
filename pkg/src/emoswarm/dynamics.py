"""Emotion-modulated recruitment/inhibition rates, contagion, and the
asynchronous step engine.

Update semantics per step: agents that were committed when the step began
act once each, in a uniformly random order. An acting agent engages one
uniformly chosen Moore neighbor; an uncommitted neighbor may be recruited,
an opposite-committed neighbor may be inhibited back to uncommitted, and
emotional contagion from actor to neighbor happens in every engagement
regardless of outcome. State changes are visible immediately to agents
acting later in the same step, but agents recruited mid-step do not gain
initiative until the next step (otherwise a single recruitment could
cascade arbitrarily within one step).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .metrics import Trajectory
from .model import (
    OPTION_A,
    OPTION_B,
    UNCOMMITTED,
    EmotionState,
    GridDims,
    InitSpec,
    ModelParams,
    Population,
    init_population,
    neighbor_table,
)


@dataclass
class StepEvents:
    """Telemetry for one step: how many decision changes and contagion
    applications occurred."""

    recruitments_a: int
    recruitments_b: int
    inhibitions_to_u: int
    contagion_applications: int


@dataclass
class SimResult:
    """One finished replication: its seed, recorded trajectory, and the
    final population state."""

    seed: int
    trajectory: Trajectory
    population: Population


def _clamp01(x: float) -> float:
    return min(max(x, 0.0), 1.0)


def recruitment_rate(params: ModelParams, recruiter_emotion: EmotionState) -> float:
    """Probability that a committed agent recruits an uncommitted neighbor:
    r0 * (1 + alpha_v * v + alpha_a * a) of the recruiter, clamped to [0, 1]."""
    v = recruiter_emotion.valence
    a = recruiter_emotion.arousal
    return _clamp01(params.r0 * (1.0 + params.alpha_v * v + params.alpha_a * a))


def inhibition_rate(params: ModelParams, target_valence: float, inhibitor_arousal: float) -> float:
    """Probability that an inhibition attempt reverts the target to
    uncommitted: sigma0 * (1 - beta_v * v_target + beta_a * a_inhibitor),
    clamped to [0, 1].

    Note the asymmetric roles: the target's positive valence protects it,
    the inhibitor's arousal makes the attempt more effective.
    """
    return _clamp01(
        params.sigma0 * (1.0 - params.beta_v * target_valence + params.beta_a * inhibitor_arousal)
    )


def apply_contagion(
    influencer: EmotionState, target: EmotionState, gamma_v: float, gamma_a: float
) -> EmotionState:
    """Pull the target's emotion linearly toward the influencer's.

    One-directional: the influencer is unchanged. With gammas in [0, 1]
    this is a convex combination, so the result stays in range (a clamp
    guards the last-ulp rounding cases).
    """
    if not 0.0 <= gamma_v <= 1.0 or not 0.0 <= gamma_a <= 1.0:
        raise ValueError("contagion rates must be in [0, 1]")
    v = target.valence + gamma_v * (influencer.valence - target.valence)
    a = target.arousal + gamma_a * (influencer.arousal - target.arousal)
    return EmotionState(min(max(v, -1.0), 1.0), min(max(a, 0.0), 1.0))


@njit(cache=True, nogil=True)
def _step_kernel(
    decisions, valence, arousal, nbr, order, nbr_pick, action_u,
    r0, sigma0, alpha_v, alpha_a, beta_v, beta_a, gamma_v, gamma_a,
):  # pragma: no cover - exercised through step()
    n = decisions.shape[0]
    rec_a = 0
    rec_b = 0
    inh_a = 0
    inh_b = 0
    contagions = 0
    initiative = decisions.copy()  # committed at step start
    for t in range(n):
        i = order[t]
        if initiative[i] == UNCOMMITTED or decisions[i] == UNCOMMITTED:
            continue
        j = nbr[i, nbr_pick[i]]
        d_i = decisions[i]
        d_j = decisions[j]
        if d_j == UNCOMMITTED:
            p = r0 * (1.0 + alpha_v * valence[i] + alpha_a * arousal[i])
            if p > 1.0:
                p = 1.0
            elif p < 0.0:
                p = 0.0
            if action_u[i] < p:
                decisions[j] = d_i
                if d_i == OPTION_A:
                    rec_a += 1
                else:
                    rec_b += 1
        elif d_j != d_i:
            p = sigma0 * (1.0 - beta_v * valence[j] + beta_a * arousal[i])
            if p > 1.0:
                p = 1.0
            elif p < 0.0:
                p = 0.0
            if action_u[i] < p:
                decisions[j] = UNCOMMITTED
                if d_j == OPTION_A:
                    inh_a += 1
                else:
                    inh_b += 1
        v = valence[j] + gamma_v * (valence[i] - valence[j])
        if v > 1.0:
            v = 1.0
        elif v < -1.0:
            v = -1.0
        a = arousal[j] + gamma_a * (arousal[i] - arousal[j])
        if a > 1.0:
            a = 1.0
        elif a < 0.0:
            a = 0.0
        valence[j] = v
        arousal[j] = a
        contagions += 1
    return rec_a, rec_b, inh_a, inh_b, contagions


@njit(cache=True, nogil=True)
def _subgroup_stats(decisions, valence, arousal):  # pragma: no cover
    n_a = 0
    n_b = 0
    sv_a = 0.0
    sa_a = 0.0
    sv_b = 0.0
    sa_b = 0.0
    sv_u = 0.0
    sa_u = 0.0
    for i in range(decisions.shape[0]):
        d = decisions[i]
        if d == OPTION_A:
            n_a += 1
            sv_a += valence[i]
            sa_a += arousal[i]
        elif d == OPTION_B:
            n_b += 1
            sv_b += valence[i]
            sa_b += arousal[i]
        else:
            sv_u += valence[i]
            sa_u += arousal[i]
    return n_a, n_b, sv_a, sa_a, sv_b, sa_b, sv_u, sa_u


def step(pop: Population, params: ModelParams, rng: np.random.Generator) -> StepEvents:
    """Advance the population by one time step in place.

    Draws one agent ordering plus per-agent neighbor picks and action
    uniforms (indexed by agent, so random-stream consumption does not
    depend on the population state), then runs the compiled update loop.
    The cached commitment counts are kept current.
    """
    n = pop.n
    order = rng.permutation(n)
    nbr_pick = rng.integers(0, 8, size=n)
    action_u = rng.random(n)
    rec_a, rec_b, inh_a, inh_b, contagions = _step_kernel(
        pop.decisions,
        pop.valence,
        pop.arousal,
        neighbor_table(pop.dims),
        order,
        nbr_pick,
        action_u,
        params.r0,
        params.sigma0,
        params.alpha_v,
        params.alpha_a,
        params.beta_v,
        params.beta_a,
        params.gamma_v,
        params.gamma_a,
    )
    pop.n_a += rec_a - inh_a
    pop.n_b += rec_b - inh_b
    return StepEvents(
        recruitments_a=rec_a,
        recruitments_b=rec_b,
        inhibitions_to_u=inh_a + inh_b,
        contagion_applications=contagions,
    )


def _record(traj_arrays, t, pop: Population) -> None:
    counts_a, counts_b, means = traj_arrays
    n_a, n_b, sv_a, sa_a, sv_b, sa_b, sv_u, sa_u = _subgroup_stats(
        pop.decisions, pop.valence, pop.arousal
    )
    n_u = pop.n - n_a - n_b
    counts_a[t] = n_a
    counts_b[t] = n_b
    means[0][t] = sv_a / n_a if n_a else np.nan
    means[1][t] = sa_a / n_a if n_a else np.nan
    means[2][t] = sv_b / n_b if n_b else np.nan
    means[3][t] = sa_b / n_b if n_b else np.nan
    means[4][t] = sv_u / n_u if n_u else np.nan
    means[5][t] = sa_u / n_u if n_u else np.nan


def run_sim(
    dims: GridDims,
    spec: InitSpec,
    params: ModelParams,
    max_steps: int,
    seed: int,
    *,
    swap_labels: bool = False,
) -> SimResult:
    """Run one replication: initialize from `seed`, iterate steps until
    consensus or `max_steps`, recording the trajectory at every step
    (step 0 is the initial state). Deterministic in all arguments.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    rng = np.random.default_rng(seed)
    pop = init_population(dims, spec, rng, swap_labels=swap_labels)

    size = max_steps + 1
    counts_a = np.zeros(size, dtype=np.int64)
    counts_b = np.zeros(size, dtype=np.int64)
    means = [np.full(size, np.nan) for _ in range(6)]
    arrays = (counts_a, counts_b, means)

    _record(arrays, 0, pop)
    t = 0
    while t < max_steps and pop.n_a != pop.n and pop.n_b != pop.n:
        step(pop, params, rng)
        t += 1
        _record(arrays, t, pop)

    end = t + 1
    traj = Trajectory(
        n=pop.n,
        counts_a=counts_a[:end],
        counts_b=counts_b[:end],
        mean_v_a=means[0][:end],
        mean_a_a=means[1][:end],
        mean_v_b=means[2][:end],
        mean_a_b=means[3][:end],
        mean_v_u=means[4][:end],
        mean_a_u=means[5][:end],
    )
    return SimResult(seed=seed, trajectory=traj, population=pop)
