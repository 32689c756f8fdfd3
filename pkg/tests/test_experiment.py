import numpy as np
import pytest

from robustsub import ConfigError
from robustsub.cli import main
from robustsub.experiment import (CSV_FIELDS, ExperimentConfig, emit_bound_report, emit_csv,
                                  load_config, parse_config_text, read_csv, records_to_csv,
                                  run_experiment)
from robustsub.data_io import write_edge_list
from robustsub.objectives import random_graph


def by_alg(records):
    return {r.algorithm: r for r in records}


class TestConfig:
    def test_parse(self):
        items = parse_config_text("# sweep\nk = 2, 5\n\ntau=1\nalgorithms = pro osu\n")
        cfg = ExperimentConfig.from_mapping(items)
        assert cfg.k_values == [2, 5] and cfg.tau_values == [1] and cfg.algorithms == ["pro", "osu"]

    @pytest.mark.parametrize("text", [
        "k = two", "bogus = 1", "adversary = psychic", "algorithms = saturate",
        "subroutine = thresholding", "dataset_kind = edge_list", "objective = exemplar",
        "eta = 0", "no equals sign"])
    def test_rejects(self, text):
        with pytest.raises(ConfigError):
            ExperimentConfig.from_mapping(parse_config_text(text))

    def test_osu_bucket_size(self):
        assert ExperimentConfig.from_mapping({"osu_bucket_size": "tau"}).osu_bucket_size is None
        assert ExperimentConfig.from_mapping({"osu_bucket_size": "3"}).osu_bucket_size == 3


class TestRun:
    def test_counterexample_sweep(self):
        cfg = ExperimentConfig(k_values=[2], tau_values=[1], subroutine="greedy", timing=False)
        recs = by_alg(run_experiment(cfg))
        assert recs["greedy"].robust_value == 0.5
        assert recs["pro"].robust_value == 9
        assert recs["osu"].robust_value == 9
        assert all(r.status == "ok" for r in recs.values())

    def test_osu_skipped_when_too_small(self):
        cfg = ExperimentConfig(dataset_kind="random_graph", graph_nodes=80, graph_edge_prob=0.05,
                               k_values=[50], tau_values=[8], algorithms=["osu", "pro"], adversary="greedy")
        recs = by_alg(run_experiment(cfg))
        assert recs["osu"].status == "skipped_infeasible"
        assert recs["pro"].status == "ok"

    def test_tau_zero(self):
        cfg = ExperimentConfig(dataset_kind="random_graph", graph_nodes=40, k_values=[5], tau_values=[0])
        for r in run_experiment(cfg):
            assert r.robust_value == r.raw_value

    def test_greedy_adversary_never_below_optimal(self):
        base = dict(dataset_kind="random_graph", graph_nodes=60, graph_edge_prob=0.06,
                    k_values=[8, 12], tau_values=[1, 2, 3], timing=False)
        opt = run_experiment(ExperimentConfig(adversary="optimal", **base))
        gre = run_experiment(ExperimentConfig(adversary="greedy", **base))
        for a, b in zip(opt, gre):
            assert (a.algorithm, a.k, a.tau) == (b.algorithm, b.k, b.tau)
            assert a.raw_value == b.raw_value
            if a.status == "ok":
                assert b.robust_value >= a.robust_value

    def test_budget_exceeded_is_a_status(self):
        cfg = ExperimentConfig(dataset_kind="random_graph", graph_nodes=60, k_values=[12],
                               tau_values=[3], algorithms=["greedy"], node_budget=5)
        (rec,) = run_experiment(cfg)
        assert rec.status == "adversary_budget_exceeded" and rec.raw_value is not None

    def test_exemplar_pipeline(self, tmp_path):
        X = np.random.default_rng(0).normal(size=(40, 5))
        path = tmp_path / "v.csv"
        np.savetxt(path, X, delimiter=",")
        cfg = ExperimentConfig(dataset_kind="vectors", dataset=str(path), preprocessing="mean_shift",
                               subsample_size=25, k_values=[6], tau_values=[1, 2], timing=False)
        recs = run_experiment(cfg)
        assert all(r.status == "ok" and r.robust_value <= r.raw_value for r in recs)
        assert records_to_csv(recs) == records_to_csv(run_experiment(cfg))

    def test_stochastic_subroutine_deterministic(self):
        cfg = ExperimentConfig(dataset_kind="random_graph", graph_nodes=80, k_values=[15],
                               tau_values=[2], subroutine="stochastic", subroutine_epsilon=0.1,
                               adversary="greedy", timing=False)
        assert records_to_csv(run_experiment(cfg)) == records_to_csv(run_experiment(cfg))


class TestCsv:
    def test_header_only(self, tmp_path):
        emit_csv([], tmp_path / "out.csv")
        assert (tmp_path / "out.csv").read_text() == ",".join(CSV_FIELDS) + "\n"

    def test_one_record(self, tmp_path):
        cfg = ExperimentConfig(k_values=[2], tau_values=[1], algorithms=["pro"], timing=False)
        emit_csv(run_experiment(cfg), tmp_path / "out.csv")
        lines = (tmp_path / "out.csv").read_text().splitlines()
        assert len(lines) == 2
        (row,) = read_csv(tmp_path / "out.csv")
        assert row["algorithm"] == "pro" and float(row["robust_value"]) == 9.0
        assert row["wall_time_ms"] == ""

    def test_row_order(self):
        cfg = ExperimentConfig(k_values=[2, 1], tau_values=[1, 0], algorithms=["pro", "greedy", "osu"])
        keys = [(r.algorithm, r.k, r.tau) for r in run_experiment(cfg)]
        assert keys == sorted(keys)

    def test_timing_column(self):
        cfg = ExperimentConfig(k_values=[2], tau_values=[1], algorithms=["greedy"])
        (rec,) = run_experiment(cfg)
        assert rec.wall_time_ms is not None and rec.wall_time_ms >= 0


class TestBoundReport:
    def test_lines(self):
        cfg = ExperimentConfig(k_values=[1000, 2], tau_values=[2, 1], eta=40, algorithms=["pro"])
        text = emit_bound_report(cfg)
        assert "k=1000 tau=2: |S0|=160 factor=" in text
        assert "tau_condition=" in text and "eta_condition=" in text
        assert "requires 2 <= tau" in text
        assert "k=2 tau=2:" in text and "pro infeasible" in text

    def test_k_not_above_tau(self):
        cfg = ExperimentConfig(k_values=[1], tau_values=[1], eta=1)
        assert "error: certificate needs k > tau" in emit_bound_report(cfg)

    def test_stochastic_has_no_certificate(self):
        cfg = ExperimentConfig(k_values=[100], tau_values=[2], subroutine="stochastic", subroutine_epsilon=0.1)
        assert "no certificate" in emit_bound_report(cfg)


class TestCli:
    def write_cfg(self, tmp_path, text):
        p = tmp_path / "sweep.cfg"
        p.write_text(text)
        return p

    def test_full_run(self, tmp_path, capsys):
        cfg = self.write_cfg(tmp_path, "dataset_kind = table2\nsubroutine = greedy\ntiming = off\n")
        out = tmp_path / "res.csv"
        assert main(["--config", str(cfg), "--k", "2", "--tau", "1", "--output", str(out)]) == 0
        rows = read_csv(out)
        assert {r["algorithm"]: float(r["robust_value"]) for r in rows} == {"greedy": 0.5, "osu": 9.0, "pro": 9.0}

    def test_skipped_cells_still_exit_zero(self, tmp_path):
        cfg = self.write_cfg(tmp_path, "dataset_kind = random_graph\ngraph_nodes = 60\nadversary = greedy\n")
        out = tmp_path / "res.csv"
        assert main(["--config", str(cfg), "--k", "20", "--tau", "5", "--output", str(out)]) == 0
        statuses = {r["algorithm"]: r["status"] for r in read_csv(out)}
        assert statuses["osu"] == "skipped_infeasible"

    def test_config_error(self, tmp_path):
        cfg = self.write_cfg(tmp_path, "k = nope\n")
        assert main(["--config", str(cfg)]) == 1

    def test_bad_flag_is_config_error(self, tmp_path):
        cfg = self.write_cfg(tmp_path, "k = 2\n")
        with pytest.raises(SystemExit) as info:
            main(["--config", str(cfg), "--adversary", "psychic"])
        assert info.value.code == 1

    def test_io_errors(self, tmp_path):
        assert main(["--config", str(tmp_path / "missing.cfg")]) == 2
        cfg = self.write_cfg(tmp_path, f"dataset_kind = edge_list\ndataset = {tmp_path / 'nope.txt'}\n")
        assert main(["--config", str(cfg)]) == 2
        cfg = self.write_cfg(tmp_path, "k = 2\n")
        assert main(["--config", str(cfg), "--output", str(tmp_path / "no" / "dir" / "x.csv")]) == 2

    def test_edge_list_dataset(self, tmp_path):
        g = random_graph(50, 0.08, np.random.default_rng(3))
        write_edge_list(g, tmp_path / "g.txt")
        cfg = self.write_cfg(tmp_path, f"dataset_kind = edge_list\ndataset = {tmp_path / 'g.txt'}\n")
        out = tmp_path / "r.csv"
        assert main(["--config", str(cfg), "--k", "8", "--tau", "2", "--output", str(out)]) == 0
        assert all(r["status"] == "ok" for r in read_csv(out))

    def test_bounds_flag(self, tmp_path, capsys):
        cfg = self.write_cfg(tmp_path, "k = 1000\ntau = 2\neta = 40\n")
        assert main(["--config", str(cfg), "--bounds"]) == 0
        assert "factor=" in capsys.readouterr().out

    def test_load_config_overrides(self, tmp_path):
        cfg = self.write_cfg(tmp_path, "k = 2\nseed = 1\n")
        assert load_config(cfg, {"seed": "5"}).seed == 5
