#!/usr/bin/env python3
"""Run the symmetric tie condition and write the averaged max-commitment
curve (with its 95% band) alongside the per-run summaries. Optionally
also integrate the mean-field reference for the same rates."""

import argparse
from pathlib import Path

from emoswarm.config import ExperimentConfig
from emoswarm.harness import write_csv, run_condition
from emoswarm.meanfield import MeanFieldParams, MeanFieldState, integrate, trajectory_rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results/snowball")
    ap.add_argument("--runs", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--emit-timeseries", action="store_true")
    ap.add_argument("--meanfield", action="store_true", help="also write the ODE reference")
    args = ap.parse_args()

    cfg = ExperimentConfig(n_runs=args.runs, base_seed=args.seed)
    cond = cfg.conditions(scenario=3)[0]
    outdir = Path(args.out)
    agg, paths = run_condition(
        cond, cfg.base_seed, outdir, emit_timeseries=args.emit_timeseries
    )
    n_total = agg.n_runs
    print(f"{cond.id}: {n_total} runs, win_A={agg.win_rate_a:.3f}")
    print(f"max-commitment curve: {agg.max_commit_mean[0]:.3f} -> {agg.max_commit_mean[-1]:.3f}")
    for p in paths:
        print(f"wrote {p}")

    if args.meanfield:
        params = MeanFieldParams(r=cfg.r0, sigma=cfg.sigma0)
        states = integrate(MeanFieldState(cfg.frac_a, cfg.frac_b), params, dt=0.1, n_steps=5000)
        path = outdir / "meanfield.csv"
        write_csv(path, "t,phi_A,phi_B,u", trajectory_rows(states, 0.1))
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
