"""Replication runner and result persistence.

Replications are independent: run k uses its own generator seeded with
base_seed + k, so results are identical for any worker count and are
always merged in replication order. CSV output uses UTF-8, a header row,
'.' as the decimal separator, and blank fields for missing values.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .dynamics import SimResult, run_sim
from .metrics import (
    ConditionSummary,
    RunSummary,
    Trajectory,
    aggregate,
    summarize_run,
)
from .scenarios import Condition

RUNS_HEADER = "run_id,seed,winner,consensus_time,half_life,auc_diff,final_phi_A,final_phi_B"
TIMESERIES_HEADER = (
    "run_id,step,phi_A,phi_B,u,mean_v_A,mean_a_A,mean_v_B,mean_a_B,mean_v_U,mean_a_U"
)
SUMMARY_HEADER = "a_A,v_A,win_A,mean_t_cons,mean_auc_diff"
CURVE_HEADER = "step,mean_max_phi,ci_lo,ci_hi"


def run_replications(
    cond: Condition, base_seed: int, parallelism: int = 1
) -> tuple[list[RunSummary], list[Trajectory]]:
    """Run all replications of `cond` with seeds base_seed + k.

    Output order is by replication index regardless of scheduling; any
    parallelism level produces identical results.
    """
    seeds = [base_seed + k for k in range(cond.n_runs)]

    def one(seed: int) -> SimResult:
        return run_sim(cond.dims, cond.init, cond.params, cond.max_steps, seed)

    if parallelism <= 1:
        results = [one(s) for s in seeds]
    else:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(one, seeds))
    summaries = [summarize_run(res.trajectory, res.seed) for res in results]
    return summaries, [res.trajectory for res in results]


def _fmt(value) -> str:
    """One CSV field; blank for missing (None or NaN)."""
    if value is None:
        return ""
    if isinstance(value, float) and math.isnan(value):
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path: Path, header: str, rows) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(header + "\n")
            for row in rows:
                fh.write(",".join(_fmt(v) for v in row) + "\n")
    except OSError as exc:
        raise OSError(f"failed to write {path}: {exc}") from exc


def summary_row(cond: Condition, agg: ConditionSummary) -> tuple:
    """One condition-summary CSV row (sweep-table shaped)."""
    return (
        cond.init.emotion_a.mean_a,
        cond.init.emotion_a.mean_v,
        agg.win_rate_a,
        agg.mean_consensus_time,
        agg.mean_auc_diff,
    )


def write_summary_table(rows: list[tuple[Condition, ConditionSummary]], path: Path) -> None:
    write_csv(path, SUMMARY_HEADER, [summary_row(c, a) for c, a in rows])


def write_outputs(
    cond: Condition,
    summaries: list[RunSummary],
    trajectories: list[Trajectory],
    agg: ConditionSummary,
    outdir: str | Path,
    *,
    emit_timeseries: bool = False,
) -> list[Path]:
    """Persist one condition's results into `outdir`.

    Writes runs.csv, condition_summary.csv (a single row for this
    condition), max_commit_curve.csv, and optionally timeseries.csv.
    Returns the written paths.
    """
    outdir = Path(outdir)
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {outdir}: {exc}") from exc

    written = []

    runs_path = outdir / "runs.csv"
    write_csv(
        runs_path,
        RUNS_HEADER,
        (
            (
                k,
                s.seed,
                s.winner,
                s.consensus_time,
                s.half_life,
                s.auc_diff,
                s.final_phi_a,
                s.final_phi_b,
            )
            for k, s in enumerate(summaries)
        ),
    )
    written.append(runs_path)

    if emit_timeseries and trajectories:
        ts_path = outdir / "timeseries.csv"
        write_csv(ts_path, TIMESERIES_HEADER, _timeseries_rows(trajectories))
        written.append(ts_path)

    summary_path = outdir / "condition_summary.csv"
    write_summary_table([(cond, agg)], summary_path)
    written.append(summary_path)

    curve_path = outdir / "max_commit_curve.csv"
    write_csv(
        curve_path,
        CURVE_HEADER,
        (
            (t, float(agg.max_commit_mean[t]), float(agg.max_commit_ci_lo[t]), float(agg.max_commit_ci_hi[t]))
            for t in range(len(agg.max_commit_mean))
        ),
    )
    written.append(curve_path)
    return written


def _timeseries_rows(trajectories: list[Trajectory]):
    for run_id, traj in enumerate(trajectories):
        phi_a = traj.phi_a
        phi_b = traj.phi_b
        u = traj.u
        for t in range(len(traj)):
            yield (
                run_id,
                t,
                float(phi_a[t]),
                float(phi_b[t]),
                float(u[t]),
                float(traj.mean_v_a[t]),
                float(traj.mean_a_a[t]),
                float(traj.mean_v_b[t]),
                float(traj.mean_a_b[t]),
                float(traj.mean_v_u[t]),
                float(traj.mean_a_u[t]),
            )


def run_condition(
    cond: Condition,
    base_seed: int,
    outdir: str | Path,
    *,
    parallelism: int = 1,
    emit_timeseries: bool = False,
) -> tuple[ConditionSummary, list[Path]]:
    """Run one condition end to end and persist its outputs."""
    summaries, trajectories = run_replications(cond, base_seed, parallelism)
    agg = aggregate(summaries, trajectories, condition_id=cond.id)
    paths = write_outputs(
        cond, summaries, trajectories, agg, outdir, emit_timeseries=emit_timeseries
    )
    return agg, paths
