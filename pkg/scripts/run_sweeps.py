#!/usr/bin/env python3
"""Run the scenario 1 and scenario 2 sweeps (16 conditions each) and
write the per-condition outputs plus one summary table per scenario.

Full-size sweeps (200 runs x 16 conditions each) take on the order of
half an hour on a laptop core; use --runs for a quicker look.
"""

import argparse
import time
from pathlib import Path

from emoswarm.config import ExperimentConfig
from emoswarm.harness import run_condition, write_summary_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results", help="output root (default: results)")
    ap.add_argument("--runs", type=int, default=200, help="replications per condition")
    ap.add_argument("--seed", type=int, default=0, help="base seed")
    ap.add_argument("--scenarios", type=int, nargs="+", default=[1, 2], choices=[1, 2])
    args = ap.parse_args()

    cfg = ExperimentConfig(n_runs=args.runs, base_seed=args.seed)
    for scenario in args.scenarios:
        outdir = Path(args.out) / f"scenario{scenario}"
        rows = []
        t0 = time.time()
        for cond in cfg.conditions(scenario=scenario):
            agg, _ = run_condition(cond, cfg.base_seed, outdir / cond.id)
            rows.append((cond, agg))
            t_cons = agg.mean_consensus_time
            print(
                f"{cond.id}: win_A={agg.win_rate_a:.3f} "
                f"mean_t_cons={t_cons if t_cons is not None else 'n/a'} "
                f"auc_diff={agg.mean_auc_diff:+.3f}"
            )
        write_summary_table(rows, outdir / "condition_summary.csv")
        print(f"scenario {scenario} done in {time.time() - t0:.1f}s -> {outdir}")


if __name__ == "__main__":
    main()
