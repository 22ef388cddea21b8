"""Per-run and per-condition statistics over simulation trajectories."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# 95% two-sided normal quantile for the confidence band.
Z_95 = 1.96


@dataclass
class Trajectory:
    """Per-step record of one run: commitment counts plus subgroup mean
    emotions. Step t is row t; mean-emotion entries are NaN whenever the
    subgroup is empty at that step."""

    n: int
    counts_a: np.ndarray
    counts_b: np.ndarray
    mean_v_a: np.ndarray
    mean_a_a: np.ndarray
    mean_v_b: np.ndarray
    mean_a_b: np.ndarray
    mean_v_u: np.ndarray
    mean_a_u: np.ndarray

    def __len__(self) -> int:
        return len(self.counts_a)

    @property
    def counts_u(self) -> np.ndarray:
        return self.n - self.counts_a - self.counts_b

    @property
    def phi_a(self) -> np.ndarray:
        return self.counts_a / self.n

    @property
    def phi_b(self) -> np.ndarray:
        return self.counts_b / self.n

    @property
    def u(self) -> np.ndarray:
        # complement form keeps phi_a + phi_b + u == 1 exact per step
        return 1.0 - (self.phi_a + self.phi_b)

    def relabeled(self) -> "Trajectory":
        """The same trajectory with options A and B exchanged."""
        return Trajectory(
            n=self.n,
            counts_a=self.counts_b,
            counts_b=self.counts_a,
            mean_v_a=self.mean_v_b,
            mean_a_a=self.mean_a_b,
            mean_v_b=self.mean_v_a,
            mean_a_b=self.mean_a_a,
            mean_v_u=self.mean_v_u,
            mean_a_u=self.mean_a_u,
        )


@dataclass
class RunSummary:
    """Outcome metrics of a single replication."""

    seed: int
    winner: str  # "A", "B", or "none"
    consensus_time: int | None
    half_life: int | None
    auc_diff: float
    final_phi_a: float
    final_phi_b: float


@dataclass
class ConditionSummary:
    """Aggregates over all replications of one experimental condition."""

    condition_id: str
    n_runs: int
    win_rate_a: float
    mean_consensus_time: float | None
    mean_auc_diff: float
    max_commit_mean: np.ndarray
    max_commit_ci_lo: np.ndarray
    max_commit_ci_hi: np.ndarray


def consensus_time(traj: Trajectory) -> int | None:
    """First step at which every agent holds the same option, if any."""
    if len(traj) == 0:
        raise ValueError("trajectory is empty")
    full = (traj.counts_a == traj.n) | (traj.counts_b == traj.n)
    hits = np.flatnonzero(full)
    return int(hits[0]) if len(hits) else None


def winner(traj: Trajectory) -> str:
    """'A' or 'B' on consensus; otherwise the larger final share, with an
    exact final tie giving 'none'."""
    t = consensus_time(traj)
    if t is not None:
        return "A" if traj.counts_a[t] == traj.n else "B"
    last_a = int(traj.counts_a[-1])
    last_b = int(traj.counts_b[-1])
    if last_a > last_b:
        return "A"
    if last_b > last_a:
        return "B"
    return "none"


def half_life(traj: Trajectory, winning: str) -> int | None:
    """First step at which the winning option holds at least half the
    population, or None if never reached."""
    if winning == "A":
        counts = traj.counts_a
    elif winning == "B":
        counts = traj.counts_b
    else:
        raise ValueError(f"winner must be 'A' or 'B', got {winning!r}")
    hits = np.flatnonzero(2 * counts >= traj.n)
    return int(hits[0]) if len(hits) else None


def auc_difference(traj: Trajectory) -> float:
    """Time-normalized area between the two commitment curves.

    Mean over recorded steps of (phi_A - phi_B); bounded in [-1, 1] and
    exactly antisymmetric under label exchange (the sums are integers).
    """
    if len(traj) == 0:
        raise ValueError("trajectory is empty")
    diff_sum = int(traj.counts_a.sum()) - int(traj.counts_b.sum())
    return diff_sum / (len(traj) * traj.n)


def emotional_trajectory(traj: Trajectory) -> list[tuple[str, int, float, float]]:
    """Subgroup mean emotions in long format: (group, step, mean_v, mean_a).

    Steps where a subgroup is empty are omitted.
    """
    out: list[tuple[str, int, float, float]] = []
    for group, vs, As in (
        ("A", traj.mean_v_a, traj.mean_a_a),
        ("B", traj.mean_v_b, traj.mean_a_b),
        ("U", traj.mean_v_u, traj.mean_a_u),
    ):
        for step in range(len(traj)):
            v = vs[step]
            if math.isnan(v):
                continue
            out.append((group, step, float(v), float(As[step])))
    return out


def summarize_run(traj: Trajectory, seed: int) -> RunSummary:
    """All per-run metrics for one trajectory."""
    win = winner(traj)
    t_cons = consensus_time(traj)
    t_half = half_life(traj, win) if win in ("A", "B") else None
    n = traj.n
    return RunSummary(
        seed=seed,
        winner=win,
        consensus_time=t_cons,
        half_life=t_half,
        auc_diff=auc_difference(traj),
        final_phi_a=int(traj.counts_a[-1]) / n,
        final_phi_b=int(traj.counts_b[-1]) / n,
    )


def max_commitment_matrix(trajs: list[Trajectory]) -> np.ndarray:
    """(n_runs, T) matrix of max(phi_A, phi_B) per step, shorter runs
    padded by holding their final value (consensus is absorbing, so the
    held value is the true continuation)."""
    t_max = max(len(t) for t in trajs)
    mat = np.empty((len(trajs), t_max), dtype=np.float64)
    for i, traj in enumerate(trajs):
        curve = np.maximum(traj.phi_a, traj.phi_b)
        mat[i, : len(curve)] = curve
        mat[i, len(curve) :] = curve[-1]
    return mat


def aggregate(
    runs: list[RunSummary], trajs: list[Trajectory], condition_id: str = ""
) -> ConditionSummary:
    """Condition-level aggregates: A win rate, mean consensus time over the
    converged runs, mean AUC difference, and the mean max-commitment curve
    with a 95% normal-approximation confidence band."""
    if not runs:
        raise ValueError("cannot aggregate an empty run list")
    if len(runs) != len(trajs):
        raise ValueError("runs and trajectories must align")
    n = len(runs)
    win_rate_a = sum(1 for r in runs if r.winner == "A") / n
    converged = [r.consensus_time for r in runs if r.consensus_time is not None]
    mean_t_cons = sum(converged) / len(converged) if converged else None
    mean_auc = sum(r.auc_diff for r in runs) / n

    mat = max_commitment_matrix(trajs)
    mean_curve = mat.mean(axis=0)
    if n > 1:
        half_width = Z_95 * mat.std(axis=0, ddof=1) / math.sqrt(n)
    else:
        half_width = np.zeros_like(mean_curve)
    return ConditionSummary(
        condition_id=condition_id,
        n_runs=n,
        win_rate_a=win_rate_a,
        mean_consensus_time=mean_t_cons,
        mean_auc_diff=mean_auc,
        max_commit_mean=mean_curve,
        max_commit_ci_lo=mean_curve - half_width,
        max_commit_ci_hi=mean_curve + half_width,
    )
