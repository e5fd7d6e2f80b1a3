import json

import numpy as np
import pytest

import relwigner as rw
from relwigner import cli

MINIMAL = """
title = "mini"
a_ref = 1.0

[trajectory]
kind = "constant"
a0 = 1.0

[state]
kind = "vacuum"

[grid]
tau = [-0.25, 0.25]
n_tau = 16
omega = [-3.0, 3.0]
n_omega = 33
upsilon_max = 30.0
n_upsilon = 2048

[[outputs]]
kind = "grid"
path = "mini_grid.csv"

[[outputs]]
kind = "marginal"
path = "mini_marginal.csv"

[[outputs]]
kind = "compare"
against = "thermal"
tolerance = 1e-3
"""


class TestParsing:
    def test_minimal_roundtrip(self):
        cfg = cli.parse_scenario(MINIMAL)
        assert cfg.title == "mini"
        assert isinstance(cfg.profile, rw.ConstantProfile)
        assert cfg.n_tau == 16 and cfg.n_omega == 33
        assert [o.kind for o in cfg.outputs] == ["grid", "marginal", "compare"]

    def test_counts_validated(self):
        bad = MINIMAL.replace("n_tau = 16", "n_tau = 8")
        with pytest.raises(cli.ConfigError, match="n_tau"):
            cli.parse_scenario(bad)

    def test_unknown_kind(self):
        bad = MINIMAL.replace('kind = "constant"', 'kind = "warp"')
        with pytest.raises(cli.ConfigError, match="warp"):
            cli.parse_scenario(bad)

    def test_missing_key(self):
        bad = MINIMAL.replace("omega = [-3.0, 3.0]\n", "")
        with pytest.raises(cli.ConfigError, match="omega"):
            cli.parse_scenario(bad)

    def test_toml_error(self):
        with pytest.raises(cli.ConfigError, match="TOML"):
            cli.parse_scenario("title = [unterminated")

    def test_a_ref_rescaling(self):
        doubled = MINIMAL.replace('a_ref = 1.0', 'a_ref = 2.0')
        cfg = cli.parse_scenario(doubled)
        assert cfg.profile.a0 == pytest.approx(2.0)
        assert cfg.omega_range[1] == pytest.approx(6.0)
        assert cfg.tau_range[1] == pytest.approx(0.125)


class TestRun:
    def test_run_writes_products_and_report(self, tmp_path, capsys):
        code = cli.main(["run", "--config", _write(tmp_path, MINIMAL),
                         "--out-dir", str(tmp_path / "out")])
        out = capsys.readouterr().out
        report = json.loads(out)
        assert code == 0
        assert report["status"] == "ok"
        assert (tmp_path / "out" / "mini_grid.csv").exists()
        assert (tmp_path / "out" / "mini_grid.csv.json").exists()
        assert (tmp_path / "out" / "mini_marginal.csv").exists()
        compare = [p for p in report["products"] if p["kind"] == "compare"][0]
        assert compare["normalized_difference"] < 1e-3

    def test_empty_outputs(self, tmp_path, capsys):
        text = MINIMAL.split("[[outputs]]")[0]
        code = cli.main(["run", "--config", _write(tmp_path, text),
                         "--out-dir", str(tmp_path)])
        report = json.loads(capsys.readouterr().out)
        assert code == 0
        assert report["products"] == []

    def test_config_error_exit_code(self, tmp_path, capsys):
        bad = MINIMAL.replace("n_tau = 16", "n_tau = 2")
        code = cli.main(["run", "--config", _write(tmp_path, bad),
                         "--out-dir", str(tmp_path)])
        assert code == 2
        assert json.loads(capsys.readouterr().out)["status"] == "config-error"

    def test_missing_config_exit_code(self, tmp_path, capsys):
        code = cli.main(["run", "--config", str(tmp_path / "nope.cfg"),
                         "--out-dir", str(tmp_path)])
        assert code == 2
        capsys.readouterr()

    def test_accuracy_failure_exit_code(self, tmp_path, capsys):
        strict = MINIMAL.replace("tolerance = 1e-3", "tolerance = 1e-16")
        code = cli.main(["run", "--config", _write(tmp_path, strict),
                         "--out-dir", str(tmp_path)])
        assert code == 3
        assert json.loads(capsys.readouterr().out)["status"] == "accuracy-failure"

    def test_deterministic_outputs(self, tmp_path, capsys):
        cfg = _write(tmp_path, MINIMAL)
        cli.main(["run", "--config", cfg, "--out-dir", str(tmp_path / "a")])
        cli.main(["run", "--config", cfg, "--out-dir", str(tmp_path / "b"),
                  "--threads", "2"])
        capsys.readouterr()
        for name in ("mini_grid.csv", "mini_grid.csv.json", "mini_marginal.csv"):
            assert (tmp_path / "a" / name).read_bytes() == \
                (tmp_path / "b" / name).read_bytes()


def test_doubled_upsilon_convergence(tmp_path, capsys):
    text = MINIMAL.replace('against = "thermal"', 'against = "doubled-upsilon"') \
                  .replace("tolerance = 1e-3", "tolerance = 1e-4")
    code = cli.main(["run", "--config", _write(tmp_path, text),
                     "--out-dir", str(tmp_path)])
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    compare = [p for p in report["products"] if p["kind"] == "compare"][0]
    assert compare["normalized_difference"] < 1e-4


class TestCompare:
    def test_identical_files(self, tmp_path, capsys):
        grid = rw.TimeFrequencyGrid(np.linspace(0, 1, 4), np.linspace(0, 1, 5),
                                    np.ones((4, 5)))
        rw.write_grid_csv(grid, tmp_path / "g.csv")
        code = cli.main(["compare", str(tmp_path / "g.csv"), str(tmp_path / "g.csv")])
        report = json.loads(capsys.readouterr().out)
        assert code == 0
        assert report["normalized_difference"] == 0.0

    def test_axis_mismatch(self, tmp_path, capsys):
        g1 = rw.TimeFrequencyGrid(np.linspace(0, 1, 4), np.linspace(0, 1, 5),
                                  np.ones((4, 5)))
        g2 = rw.TimeFrequencyGrid(np.linspace(0, 2, 4), np.linspace(0, 1, 5),
                                  np.ones((4, 5)))
        rw.write_grid_csv(g1, tmp_path / "a.csv")
        rw.write_grid_csv(g2, tmp_path / "b.csv")
        code = cli.main(["compare", str(tmp_path / "a.csv"), str(tmp_path / "b.csv")])
        assert code == 2
        capsys.readouterr()

    def test_l2_norm(self, tmp_path, capsys):
        g1 = rw.TimeFrequencyGrid(np.linspace(0, 1, 4), np.linspace(0, 1, 5),
                                  np.ones((4, 5)))
        g2 = rw.TimeFrequencyGrid(np.linspace(0, 1, 4), np.linspace(0, 1, 5),
                                  1.1 * np.ones((4, 5)))
        rw.write_grid_csv(g1, tmp_path / "a.csv")
        rw.write_grid_csv(g2, tmp_path / "b.csv")
        cli.main(["compare", str(tmp_path / "a.csv"), str(tmp_path / "b.csv"),
                  "--norm", "l2"])
        report = json.loads(capsys.readouterr().out)
        assert report["normalized_difference"] == pytest.approx(0.1, rel=1e-9)


def test_list_scenarios(capsys):
    code = cli.main(["list-scenarios"])
    names = json.loads(capsys.readouterr().out)["scenarios"]
    assert code == 0
    assert "fig_thermal.cfg" in names
    assert "fig_twins_gaussian.cfg" in names


def test_selftest(capsys):
    code = cli.main(["selftest"])
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    assert all(c["ok"] for c in report["checks"])


def test_bundled_scenarios_parse():
    from importlib import resources
    base = resources.files("relwigner") / "scenarios"
    for entry in base.iterdir():
        if entry.name.endswith(".cfg"):
            cfg = cli.parse_scenario(entry.read_text())
            assert cfg.n_tau >= 16 and cfg.n_omega >= 16


def test_bundled_thermal_scenario_runs(tmp_path, capsys):
    from importlib import resources
    code = cli.main(["run", "--config", "fig_thermal.cfg",
                     "--out-dir", str(tmp_path)])
    report = json.loads(capsys.readouterr().out)
    assert code == 0
    compare = [p for p in report["products"] if p["kind"] == "compare"][0]
    assert compare["normalized_difference"] < 1e-3


def _write(tmp_path, text):
    path = tmp_path / "scenario.cfg"
    path.write_text(text)
    return str(path)
