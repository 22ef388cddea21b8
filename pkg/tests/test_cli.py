import pytest

from emoswarm.cli import cli_main

FAST_CFG = """
grid_width = 8
grid_height = 8
n_runs = 4
max_steps = 40
levels_a = 0.2, 1.0
levels_v = 0.5
"""


@pytest.fixture
def fast_config(tmp_path):
    path = tmp_path / "fast.cfg"
    path.write_text(FAST_CFG)
    return path


def test_snowball_writes_run_and_curve_files(tmp_path, fast_config):
    out = tmp_path / "snow"
    rc = cli_main(
        ["snowball", "--config", str(fast_config), "--seed", "42", "--runs", "3", "--out", str(out)]
    )
    assert rc == 0
    assert (out / "runs.csv").exists()
    assert (out / "max_commit_curve.csv").exists()
    assert (out / "condition_summary.csv").exists()
    assert len((out / "runs.csv").read_text().splitlines()) == 4


def test_sweep_emits_full_condition_summary(tmp_path, fast_config):
    out = tmp_path / "sweep"
    rc = cli_main(
        ["sweep", "--scenario", "1", "--config", str(fast_config), "--runs", "2", "--out", str(out)]
    )
    assert rc == 0
    lines = (out / "condition_summary.csv").read_text().splitlines()
    assert len(lines) == 3  # header + 2x1 level grid
    assert (out / "s1_a0.2_v0.5" / "runs.csv").exists()
    assert (out / "s1_a1_v0.5" / "runs.csv").exists()


def test_sweep_with_default_levels_has_16_rows(tmp_path):
    cfg = tmp_path / "tiny.cfg"
    cfg.write_text("grid_width = 8\ngrid_height = 8\nn_runs = 1\nmax_steps = 5\n")
    out = tmp_path / "sweep16"
    rc = cli_main(["sweep", "--scenario", "2", "--config", str(cfg), "--out", str(out)])
    assert rc == 0
    lines = (out / "condition_summary.csv").read_text().splitlines()
    assert len(lines) == 17


def test_run_executes_single_condition(tmp_path, fast_config):
    out = tmp_path / "single"
    rc = cli_main(["run", "--config", str(fast_config), "--out", str(out)])
    assert rc == 0
    assert (out / "runs.csv").exists()
    assert (out / "condition_summary.csv").exists()


def test_meanfield_symmetric_columns_match(tmp_path):
    out = tmp_path / "mf"
    rc = cli_main(["meanfield", "--out", str(out), "--steps", "200"])
    assert rc == 0
    lines = (out / "meanfield.csv").read_text().splitlines()
    assert lines[0] == "t,phi_A,phi_B,u"
    assert len(lines) == 202
    for line in lines[1:]:
        _, pa, pb, _ = line.split(",")
        assert pa == pb


def test_validate_passes(capsys):
    assert cli_main(["validate"]) == 0
    out = capsys.readouterr().out
    assert "ok" in out and "FAIL" not in out


def test_usage_errors_exit_1():
    assert cli_main(["bogus-command"]) == 1
    assert cli_main([]) == 1
    assert cli_main(["sweep"]) == 1  # --scenario is required
    assert cli_main(["snowball", "--runs", "NaNify"]) == 1


def test_config_errors_exit_2(tmp_path):
    missing = tmp_path / "missing.cfg"
    assert cli_main(["snowball", "--config", str(missing)]) == 2
    bad = tmp_path / "bad.cfg"
    bad.write_text("gamma_v = 3.0\n")
    assert cli_main(["snowball", "--config", str(bad)]) == 2
    unknown = tmp_path / "unknown.cfg"
    unknown.write_text("recruitment = 0.1\n")
    assert cli_main(["run", "--config", str(unknown)]) == 2


def test_io_errors_exit_3(tmp_path, fast_config):
    blocker = tmp_path / "file"
    blocker.write_text("")
    rc = cli_main(
        ["snowball", "--config", str(fast_config), "--runs", "1", "--out", str(blocker / "sub")]
    )
    assert rc == 3


def test_help_exits_zero():
    assert cli_main(["--help"]) == 0
