"""Command-line interface.

Subcommands:
    run        a single condition (the first one of the configured scenario)
    sweep      the full 16-condition grid of scenario 1 or 2
    snowball   the symmetric tie condition (scenario 3)
    meanfield  integrate the reduced rate equations and emit the trajectory
    validate   run the built-in invariant self-checks

Exit codes: 0 success, 1 usage error, 2 configuration error, 3 IO error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import dynamics, meanfield, model
from .config import ConfigError, ExperimentConfig, load_config, validate_config
from .harness import run_condition, write_summary_table, write_csv
from .metrics import auc_difference, winner

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONFIG = 2
EXIT_IO = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse parser that reports usage problems via exception so the
    caller controls the exit code."""

    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="configuration file (key = value lines)")
    common.add_argument("--seed", type=int, metavar="N", help="base seed override")
    common.add_argument("--runs", type=int, metavar="N", help="replication count override")
    common.add_argument("--out", metavar="DIR", help="output directory override")
    common.add_argument(
        "--emit-timeseries", action="store_true", help="also write per-step timeseries.csv"
    )
    common.add_argument(
        "--workers", type=int, default=1, metavar="N", help="parallel replication workers"
    )

    parser = _Parser(prog="emoswarm", description="emotion-modulated collective decision simulator")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    sub.add_parser("run", parents=[common], help="run a single condition")
    p_sweep = sub.add_parser("sweep", parents=[common], help="run a scenario sweep")
    p_sweep.add_argument("--scenario", type=int, choices=(1, 2), required=True)
    sub.add_parser("snowball", parents=[common], help="run the symmetric tie condition")
    p_mf = sub.add_parser("meanfield", parents=[common], help="integrate the rate equations")
    p_mf.add_argument("--dt", type=float, default=0.1, help="integration step (default 0.1)")
    p_mf.add_argument("--steps", type=int, default=500, help="number of steps (default 500)")
    sub.add_parser("validate", parents=[common], help="run invariant self-checks")
    return parser


def _load(args) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    overrides = {}
    if args.seed is not None:
        overrides["base_seed"] = args.seed
    if args.runs is not None:
        overrides["n_runs"] = args.runs
    if args.out is not None:
        overrides["out_dir"] = args.out
    if args.emit_timeseries:
        overrides["emit_timeseries"] = True
    if overrides:
        cfg = validate_config(replace(cfg, **overrides))
    return cfg


def _run_conditions(cfg: ExperimentConfig, conditions, outdir: Path, workers: int) -> None:
    rows = []
    for cond in conditions:
        cond_dir = outdir if len(conditions) == 1 else outdir / cond.id
        agg, _ = run_condition(
            cond,
            cfg.base_seed,
            cond_dir,
            parallelism=workers,
            emit_timeseries=cfg.emit_timeseries,
        )
        rows.append((cond, agg))
        print(f"{cond.id}: win_A={agg.win_rate_a:.3f} runs={agg.n_runs}")
    if len(conditions) > 1:
        write_summary_table(rows, outdir / "condition_summary.csv")


def _cmd_run(cfg: ExperimentConfig, args) -> int:
    cond = cfg.conditions()[0]
    _run_conditions(cfg, [cond], Path(cfg.out_dir), args.workers)
    return EXIT_OK


def _cmd_sweep(cfg: ExperimentConfig, args) -> int:
    conditions = cfg.conditions(scenario=args.scenario)
    _run_conditions(cfg, conditions, Path(cfg.out_dir), args.workers)
    return EXIT_OK


def _cmd_snowball(cfg: ExperimentConfig, args) -> int:
    conditions = cfg.conditions(scenario=3)
    _run_conditions(cfg, conditions, Path(cfg.out_dir), args.workers)
    return EXIT_OK


def _cmd_meanfield(cfg: ExperimentConfig, args) -> int:
    params = meanfield.MeanFieldParams(r=cfg.r0, sigma=cfg.sigma0)
    initial = meanfield.MeanFieldState(cfg.frac_a, cfg.frac_b)
    states = meanfield.integrate(initial, params, dt=args.dt, n_steps=args.steps)
    outdir = Path(cfg.out_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / "meanfield.csv"
    write_csv(path, "t,phi_A,phi_B,u", meanfield.trajectory_rows(states, args.dt))
    print(f"wrote {path}")
    return EXIT_OK


def _cmd_validate(cfg: ExperimentConfig, args) -> int:
    failures = 0
    for name, check in _SELF_CHECKS:
        try:
            check()
        except AssertionError as exc:
            failures += 1
            print(f"FAIL {name}: {exc}")
        else:
            print(f"ok   {name}")
    if failures:
        print(f"{failures} check(s) failed", file=sys.stderr)
        return 1
    return EXIT_OK


def _check_rates() -> None:
    p = model.ModelParams(r0=0.02)
    assert dynamics.recruitment_rate(p, model.EmotionState(0.0, 0.0)) == 0.02
    assert dynamics.recruitment_rate(p, model.EmotionState(1.0, 1.0)) == 0.04
    assert dynamics.inhibition_rate(p, 1.0, 0.0) == 0.01
    high = model.ModelParams(r0=0.9)
    assert dynamics.recruitment_rate(high, model.EmotionState(1.0, 1.0)) == 1.0


def _check_contagion() -> None:
    rng = np.random.default_rng(7)
    for _ in range(200):
        src = model.EmotionState(rng.uniform(-1, 1), rng.uniform(0, 1))
        dst = model.EmotionState(rng.uniform(-1, 1), rng.uniform(0, 1))
        out = dynamics.apply_contagion(src, dst, 0.1, 0.1)
        want = 0.9 * abs(src.valence - dst.valence)
        assert abs(abs(src.valence - out.valence) - want) < 1e-12


def _check_neighbors() -> None:
    for dims in (model.GridDims(3, 3), model.GridDims(5, 7), model.GridDims(20, 20)):
        for cell in ((0, 0), (dims.height - 1, dims.width - 1)):
            nbrs = model.neighbors(dims, cell)
            assert len(set(nbrs)) == 8
            for other in nbrs:
                assert cell in model.neighbors(dims, other)


def _check_conservation() -> None:
    spec = model.InitSpec(0.1, 0.1, model.GroupEmotionSpec(0.5, 0.5), model.GroupEmotionSpec(0.5, 0.5))
    res = dynamics.run_sim(model.GridDims(10, 10), spec, model.ModelParams(), 100, seed=5)
    traj = res.trajectory
    assert (traj.counts_a + traj.counts_b + traj.counts_u == traj.n).all()


def _check_determinism() -> None:
    spec = model.InitSpec(0.1, 0.1, model.GroupEmotionSpec(0.5, 0.5), model.GroupEmotionSpec(0.5, 0.5))
    a = dynamics.run_sim(model.GridDims(8, 8), spec, model.ModelParams(), 50, seed=11)
    b = dynamics.run_sim(model.GridDims(8, 8), spec, model.ModelParams(), 50, seed=11)
    assert (a.trajectory.counts_a == b.trajectory.counts_a).all()
    assert (a.population.valence == b.population.valence).all()


def _check_label_swap() -> None:
    spec = model.InitSpec(0.1, 0.1, model.GroupEmotionSpec(0.8, 0.7), model.GroupEmotionSpec(0.2, 0.3))
    fwd = dynamics.run_sim(model.GridDims(8, 8), spec, model.ModelParams(), 80, seed=3)
    rev = dynamics.run_sim(model.GridDims(8, 8), spec, model.ModelParams(), 80, seed=3, swap_labels=True)
    assert (fwd.trajectory.counts_a == rev.trajectory.counts_b).all()
    assert auc_difference(fwd.trajectory) == -auc_difference(rev.trajectory)
    w_f, w_r = winner(fwd.trajectory), winner(rev.trajectory)
    assert {w_f, w_r} in ({"A", "B"}, {"none"})


def _check_meanfield() -> None:
    params = meanfield.MeanFieldParams(0.02, 0.02)
    da, db = meanfield.bee_rhs(meanfield.MeanFieldState(0.1, 0.1), params)
    assert abs(da - 0.0014) < 1e-15 and abs(db - 0.0014) < 1e-15
    eq = meanfield.symmetric_equilibrium(params)
    assert abs(eq.phi_a - 1.0 / 3.0) < 1e-15
    states = meanfield.integrate(meanfield.MeanFieldState(0.1, 0.1), params, 0.1, 2000)
    assert all(s.phi_a == s.phi_b for s in states)


_SELF_CHECKS = (
    ("rate arithmetic", _check_rates),
    ("contagion contraction", _check_contagion),
    ("neighborhood symmetry", _check_neighbors),
    ("count conservation", _check_conservation),
    ("run determinism", _check_determinism),
    ("label-swap mirror", _check_label_swap),
    ("mean-field reference", _check_meanfield),
)

_COMMANDS = {
    "run": _cmd_run,
    "sweep": _cmd_sweep,
    "snowball": _cmd_snowball,
    "meanfield": _cmd_meanfield,
    "validate": _cmd_validate,
}


def cli_main(argv: list[str] | None = None) -> int:
    """Parse arguments and execute one subcommand; returns the exit status."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        cfg = _load(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return _COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
