import json
import math
import os

import numpy as np
import pytest

from cavitysim import cli
from cavitysim.model import InitialStateParams, SystemParams
from cavitysim.runner import (ConfigError, ScenarioConfig, TimeSeriesRecord,
                              config_from_dict, load_config, preset,
                              preset_variants, run_scenario, time_grid,
                              write_csv)


def small_config(**overrides):
    base = dict(
        system=SystemParams(n_atoms=2, n_cutoff=2, chi=1.0, kappa=1.0, gamma=0.05),
        initial=InitialStateParams(p=0.5, theta=math.pi / 4),
        t_max=0.5, dt=0.1, observables=("gqd", "qfi", "purity", "atomic_entropy"),
    )
    base.update(overrides)
    return ScenarioConfig(**base)


def parse_csv(path):
    meta, header, rows = {}, None, []
    with open(path) as f:
        for line in f:
            line = line.rstrip("\n")
            if line.startswith("# "):
                k, _, v = line[2:].partition("=")
                meta[k] = v
            elif header is None:
                header = line.split(",")
            elif line:
                rows.append([float(x) for x in line.split(",")])
    return meta, header, rows


class TestGrid:
    def test_grid_arithmetic(self):
        assert len(time_grid(200.0, 0.05)) == 4001

    def test_grid_inclusive(self):
        grid = time_grid(1.0, 0.25)
        assert grid == [0.0, 0.25, 0.5, 0.75, 1.0]


class TestRunScenario:
    def test_records_shape(self):
        cfg = small_config()
        records = run_scenario(cfg)
        assert len(records) == 6
        ts = [r.t for r in records]
        assert all(b > a for a, b in zip(ts, ts[1:]))
        for r in records:
            assert set(r.values) == set(cfg.observables)
            for v in r.values.values():
                assert math.isfinite(v)
        assert all(r.values["gqd"] >= 0 and r.values["qfi"] >= 0 for r in records)

    def test_trivial_hamiltonian_constant(self):
        cfg = small_config(
            system=SystemParams(n_atoms=2, n_cutoff=2, g=0.0, chi=0.0, kappa=0.0, gamma=0.0),
            t_max=0.4, dt=0.1)
        records = run_scenario(cfg)
        for obs in cfg.observables:
            vals = [r.values[obs] for r in records]
            assert max(vals) - min(vals) <= 1e-8, obs

    def test_config_validation(self):
        with pytest.raises(ConfigError, match="dt"):
            small_config(dt=-1.0)
        with pytest.raises(ConfigError, match="observables"):
            small_config(observables=("bogus",))
        with pytest.raises(ConfigError, match="observables"):
            small_config(observables=())


class TestPresets:
    def test_fig1_first_variant(self):
        cfg = preset("fig1", 0)
        s = cfg.system
        assert (s.n_atoms, s.n_cutoff, s.chi, s.kappa, s.gamma) == (2, 2, 1.0, 1.0, 0.05)
        assert (cfg.initial.p, cfg.initial.theta) == (0.5, math.pi / 4)
        assert cfg.observables == ("gqd",)
        assert cfg.t_max == 200.0 and cfg.dt == 0.05

    def test_fig1_cutoff_sweep(self):
        assert [preset("fig1", v).system.n_cutoff for v in range(4)] == [2, 3, 4, 5]

    def test_fig5_weak_pump(self):
        cfg = preset("fig5", 0)
        assert cfg.system.chi == 3.0 and cfg.system.kappa == 0.3

    def test_fig4_variants(self):
        assert [preset("fig4", v).system.kappa for v in range(2)] == [0.3, 3.0]
        assert preset("fig4", 0).system.chi == 0.3

    def test_fig3_three_atoms(self):
        cfg = preset("fig3", 0)
        assert cfg.system.n_atoms == 3 and cfg.system.n_cutoff == 2

    def test_unknown(self):
        with pytest.raises(ConfigError):
            preset("fig9", 0)
        with pytest.raises(ConfigError):
            preset("fig1", 7)
        assert preset_variants("fig2") == 4


class TestWriteCsv:
    def test_empty_records(self, tmp_path):
        cfg = small_config()
        path = tmp_path / "empty.csv"
        write_csv([], cfg, str(path))
        meta, header, rows = parse_csv(str(path))
        assert rows == []
        assert header == ["t", "gqd", "qfi", "purity", "atomic_entropy"]
        assert meta["system.n_atoms"] == "2"
        assert "artifact_version" in meta and "seed" in meta

    def test_single_record_format(self, tmp_path):
        cfg = small_config(observables=("gqd",))
        path = tmp_path / "one.csv"
        write_csv([TimeSeriesRecord(t=0.0, values={"gqd": 1.0})], cfg, str(path))
        data_line = [l for l in open(path) if not l.startswith("#")][1]
        assert data_line.strip() == "0.000000,1.000000"

    def test_round_trip(self, tmp_path):
        cfg = small_config()
        records = run_scenario(cfg)
        path = tmp_path / "rt.csv"
        write_csv(records, cfg, str(path))
        _, header, rows = parse_csv(str(path))
        assert len(rows) == len(records)
        for rec, row in zip(records, rows):
            assert row[0] == pytest.approx(rec.t, abs=1e-6)
            for name, val in zip(header[1:], row[1:]):
                assert val == pytest.approx(rec.values[name], abs=1e-6)

    def test_io_error(self):
        cfg = small_config()
        with pytest.raises(IOError):
            write_csv([], cfg, "/nonexistent-dir/x.csv")


class TestConfigIO:
    def test_from_dict(self):
        cfg = config_from_dict({
            "system": {"n_atoms": 2, "n_cutoff": 3, "chi": 1.0, "kappa": 0.5, "gamma": 0.05},
            "initial": {"p": 0.25, "theta": 0.5},
            "t_max": 1.0, "dt": 0.5, "observables": ["purity"], "label": "x",
        })
        assert cfg.system.n_cutoff == 3
        assert cfg.observables == ("purity",)

    def test_missing_field(self):
        with pytest.raises(ConfigError, match="system"):
            config_from_dict({"initial": {"p": 0.5, "theta": 0.5}})

    def test_load_config(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({
            "system": {"n_atoms": 1, "n_cutoff": 2},
            "initial": {"p": 0.0, "theta": 0.1},
            "t_max": 1.0, "dt": 0.5,
        }))
        cfg = load_config(str(path))
        assert cfg.system.n_atoms == 1


class TestCli:
    def test_simulate_flags(self, tmp_path):
        out = tmp_path / "sim.csv"
        rc = cli.main(["simulate", "--n-atoms", "2", "--n-cutoff", "2", "--chi", "1",
                       "--kappa", "1", "--gamma", "0.05", "--p", "0.5",
                       "--theta", str(math.pi / 4), "--t-max", "0.2", "--dt", "0.1",
                       "--observables", "purity,qfi", "--out", str(out)])
        assert rc == 0
        meta, header, rows = parse_csv(str(out))
        assert header == ["t", "purity", "qfi"]
        assert len(rows) == 3

    def test_flags_override_config_file(self, tmp_path):
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps({
            "system": {"n_atoms": 2, "n_cutoff": 2},
            "initial": {"p": 0.5, "theta": 0.5},
            "t_max": 0.2, "dt": 0.1, "observables": ["purity"],
        }))
        out = tmp_path / "sim.csv"
        rc = cli.main(["simulate", "--config", str(cfg_path), "--n-cutoff", "3",
                       "--out", str(out)])
        assert rc == 0
        meta, _, _ = parse_csv(str(out))
        assert meta["system.n_cutoff"] == "3"

    def test_reproduce_small(self, tmp_path):
        rc = cli.main(["reproduce", "--figure", "fig4", "--outdir", str(tmp_path),
                       "--t-max", "0.2", "--dt", "0.1"])
        assert rc == 0
        for v in range(2):
            assert os.path.exists(tmp_path / f"fig4_{v}.csv")

    def test_invalid_config_exits_nonzero(self, tmp_path):
        rc = cli.main(["simulate", "--n-atoms", "9", "--out", str(tmp_path / "x.csv")])
        assert rc == 2

    def test_selftest(self, capsys):
        rc = cli.main(["selftest"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "PASS" in out and "FAIL" not in out
