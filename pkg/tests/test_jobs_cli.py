"""Config validation, job drivers, report formats, and the CLI surface."""
import json
import math
import subprocess
import sys

import jsonschema
import numpy as np
import pytest

import statrob as sr
from statrob.cli import main
from statrob.jobs import export_schemas, load_job_config, run_job


def write_config(tmp_path, doc, name="job.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


def amls_doc(**extra):
    doc = {
        "format_version": 1,
        "job": "amls",
        "seed": 3,
        "model": {"kind": "uniform-box", "lower": [0.0], "upper": [1.0]},
        "property": {"kind": "linear-threshold", "a": [1.0], "b": 0.7},
        "amls": {"n_chains": 500, "mh_steps": 10, "quantile": 0.1,
                 "log_p_min": -60.0},
    }
    doc.update(extra)
    return doc


class TestValidation:
    def test_missing_field_is_named(self, tmp_path):
        doc = amls_doc()
        del doc["model"]["lower"]
        with pytest.raises(sr.ConfigError, match="model.lower"):
            load_job_config(write_config(tmp_path, doc))

    def test_unknown_job_kind(self, tmp_path):
        with pytest.raises(sr.ConfigError, match="'job'"):
            load_job_config(write_config(tmp_path, amls_doc(job="guess")))

    def test_wrong_format_version(self, tmp_path):
        with pytest.raises(sr.ConfigError, match="format_version"):
            load_job_config(write_config(tmp_path, amls_doc(format_version=9)))

    def test_bad_amls_parameter_is_named(self, tmp_path):
        doc = amls_doc()
        doc["amls"]["quantile"] = 2.0
        with pytest.raises(sr.ConfigError, match="amls"):
            load_job_config(write_config(tmp_path, doc))

    def test_unknown_amls_key_is_named(self, tmp_path):
        doc = amls_doc()
        doc["amls"]["n_walkers"] = 5
        with pytest.raises(sr.ConfigError, match="amls.n_walkers"):
            load_job_config(write_config(tmp_path, doc))

    def test_missing_network_file_is_reported(self, tmp_path):
        doc = amls_doc()
        doc["property"] = {
            "kind": "adversarial-margin",
            "network": "missing.json",
            "reference_input": [0.0],
        }
        doc["model"] = {"kind": "uniform-linf-ball", "center": "reference", "radius": 0.1}
        with pytest.raises(sr.ConfigError, match="property.network"):
            load_job_config(write_config(tmp_path, doc))

    def test_problem_and_model_are_exclusive(self, tmp_path):
        doc = amls_doc(problem="interval-half")
        with pytest.raises(sr.ConfigError, match="problem"):
            load_job_config(write_config(tmp_path, doc))

    def test_dimension_mismatch_is_caught(self, tmp_path):
        doc = amls_doc()
        doc["property"]["a"] = [1.0, 1.0]
        with pytest.raises(sr.ConfigError, match="dimension"):
            load_job_config(write_config(tmp_path, doc))

    def test_radius_sweep_needs_a_ball(self, tmp_path):
        doc = amls_doc(job="sweep")
        doc["sweep"] = {"radius": [0.1, 0.2], "repeats": 1}
        with pytest.raises(sr.ConfigError, match="sweep.radius"):
            load_job_config(write_config(tmp_path, doc))

    def test_fixture_configs_validate_against_the_exported_schema(self, tmp_path):
        schema = export_schemas()["job_config"]
        jsonschema.validate(amls_doc(), schema)
        sweep = amls_doc(job="sweep")
        sweep["sweep"] = {"quantile": [0.1, 0.5], "repeats": 2}
        jsonschema.validate(sweep, schema)
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(amls_doc(format_version=2), schema)

    def test_weight_schema_accepts_saved_networks(self, tmp_path):
        net = sr.random_network([3, 4, 2], seed=1)
        path = tmp_path / "net.json"
        sr.save_network(net, path)
        jsonschema.validate(json.loads(path.read_text()),
                            export_schemas()["network_weights"])


class TestAmlsJob:
    def test_writes_report_and_counterexamples(self, tmp_path):
        config = write_config(tmp_path, amls_doc())
        assert run_job(config, out_dir=tmp_path / "out", quiet=True) == 0
        report = json.loads((tmp_path / "out" / "report.json").read_text())
        assert report["job"] == "amls"
        assert "log_estimate" in report and "log10_estimate" in report
        assert "unsat_below_threshold" not in report
        assert report["counterexample_file"] == "counterexamples.txt"
        assert report["config"]["amls"]["accept_target"] == 0.234  # resolved defaults
        rows = (tmp_path / "out" / "counterexamples.txt").read_text().splitlines()
        assert len(rows) == 500
        assert all(float(r.split()[-1]) >= 0.0 for r in rows)

    def test_counterexamples_reload_and_reevaluate(self, tmp_path):
        config = write_config(tmp_path, amls_doc())
        run_job(config, out_dir=tmp_path / "out", quiet=True)
        data = np.loadtxt(tmp_path / "out" / "counterexamples.txt")
        points, stored = data[:, :-1], data[:, -1]
        prop = sr.LinearThreshold([1.0], 0.7)
        again = prop.evaluate(points)
        assert np.abs(again - stored).max() < 1e-12

    def test_unsat_job_writes_marker_and_no_counterexamples(self, tmp_path):
        doc = {
            "format_version": 1,
            "job": "amls",
            "problem": "impossible",
            "amls": {"n_chains": 400, "mh_steps": 10, "quantile": 0.1,
                     "log_p_min": math.log(1e-20)},
        }
        config = write_config(tmp_path, doc)
        assert run_job(config, out_dir=tmp_path / "out", quiet=True) == 0
        report = json.loads((tmp_path / "out" / "report.json").read_text())
        assert report["unsat_below_threshold"] is True
        assert report["true_unsat"] is True
        assert "log_estimate" not in report
        assert report["counterexample_file"] is None
        assert not (tmp_path / "out" / "counterexamples.txt").exists()

    def test_reports_are_byte_identical_apart_from_wall_time(self, tmp_path):
        config = write_config(tmp_path, amls_doc())
        run_job(config, out_dir=tmp_path / "a", quiet=True)
        run_job(config, out_dir=tmp_path / "b", quiet=True)

        def strip(path):
            doc = json.loads(path.read_text())
            doc.pop("wall_time_s")
            dir_key = doc["config"].pop("output_dir")
            return json.dumps(doc, sort_keys=True), dir_key

        a, dir_a = strip(tmp_path / "a" / "report.json")
        b, dir_b = strip(tmp_path / "b" / "report.json")
        assert a == b
        assert dir_a != dir_b  # only the requested output location differs

    def test_seed_override_changes_the_run(self, tmp_path):
        config = write_config(tmp_path, amls_doc())
        run_job(config, seed=101, out_dir=tmp_path / "a", quiet=True)
        report = json.loads((tmp_path / "a" / "report.json").read_text())
        assert report["seed"] == 101

    def test_diverged_run_writes_partial_trace(self, tmp_path):
        doc = amls_doc()
        doc["property"] = {"kind": "analytic-builtin", "name": "neg-linf-gap",
                           "params": {"center": [0.5]}}
        doc["amls"]["max_levels"] = 4
        doc["amls"]["log_p_min"] = -200.0
        doc["amls"]["mh_steps"] = 1  # freeze chains so duplicate values stall a level
        doc["amls"]["proposal_width_init"] = 1e12
        config = write_config(tmp_path, doc)
        with pytest.raises(sr.DivergedRunError):
            run_job(config, out_dir=tmp_path / "out", quiet=True)
        trace = json.loads((tmp_path / "out" / "diverged.json").read_text())
        assert len(trace["levels"]) == 4


class TestNaiveJob:
    def test_report_contents(self, tmp_path):
        doc = amls_doc(job="naive-mc")
        del doc["amls"]
        doc["naive_mc"] = {"n_samples": 20_000, "batch_size": 5_000}
        config = write_config(tmp_path, doc)
        assert run_job(config, out_dir=tmp_path / "out", quiet=True) == 0
        report = json.loads((tmp_path / "out" / "report.json").read_text())
        assert report["n_samples"] == 20_000
        assert abs(math.exp(report["log_estimate"]) - 0.3) < 0.02


class TestSweepJob:
    def test_table_and_cell_reports(self, tmp_path):
        doc = amls_doc(job="sweep", problem="irwin-hall-common")
        del doc["model"]
        del doc["property"]
        doc["amls"] = {"n_chains": 400, "mh_steps": 10, "quantile": 0.1,
                       "log_p_min": -60.0}
        doc["sweep"] = {"quantile": [0.1, 0.5], "mh_steps": [10, 20], "repeats": 3}
        config = write_config(tmp_path, doc)
        assert run_job(config, out_dir=tmp_path / "out", quiet=True) == 0
        lines = (tmp_path / "out" / "sweep_table.csv").read_text().splitlines()
        assert lines[0] == "rho,mh_steps,n_chains,radius,repeat,log10_estimate,n_levels,evaluations"
        assert len(lines) == 1 + 2 * 2 * 3
        cells = sorted(p.name for p in (tmp_path / "out").glob("cell_*.json"))
        assert cells == ["cell_000.json", "cell_001.json", "cell_002.json", "cell_003.json"]
        cell = json.loads((tmp_path / "out" / "cell_000.json").read_text())
        assert cell["repeats"] == 3
        assert len(cell["log10_estimates"]) == 3
        assert "log10_true" in cell

    def test_radius_cells_rebuild_the_ball(self, tmp_path):
        net = sr.random_network([2, 4, 2], seed=6)
        net_path = tmp_path / "net.json"
        sr.save_network(net, net_path)
        doc = {
            "format_version": 1,
            "job": "sweep",
            "seed": 1,
            "model": {"kind": "uniform-linf-ball", "center": "reference",
                      "radius": 0.5},
            "property": {"kind": "adversarial-margin", "network": "net.json",
                         "reference_input": [0.2, 0.8]},
            "amls": {"n_chains": 300, "mh_steps": 10, "quantile": 0.1,
                     "log_p_min": -60.0},
            "sweep": {"radius": [0.3, 0.6], "repeats": 2},
        }
        config = write_config(tmp_path, doc)
        assert run_job(config, out_dir=tmp_path / "out", quiet=True) == 0
        lines = (tmp_path / "out" / "sweep_table.csv").read_text().splitlines()
        radii = {line.split(",")[3] for line in lines[1:]}
        assert radii == {"0.29999999999999999", "0.59999999999999998"}


class TestSelftestJob:
    def test_all_oracles_pass(self, tmp_path, capsys):
        doc = {"format_version": 1, "job": "oracle-selftest", "seed": 0}
        config = write_config(tmp_path, doc)
        assert run_job(config, out_dir=tmp_path / "out") == 0
        out = capsys.readouterr().out
        for name in sr.named_oracles():
            assert f"PASS {name}" in out
        report = json.loads((tmp_path / "out" / "selftest.json").read_text())
        assert report["all_pass"] is True

    def test_subset_selection(self, tmp_path):
        doc = {"format_version": 1, "job": "oracle-selftest", "seed": 0,
               "oracles": ["interval-half"]}
        config = write_config(tmp_path, doc)
        assert run_job(config, out_dir=tmp_path / "out", quiet=True) == 0
        report = json.loads((tmp_path / "out" / "selftest.json").read_text())
        assert [r["oracle"] for r in report["results"]] == ["interval-half"]


class TestCli:
    def test_run_subcommand(self, tmp_path):
        config = write_config(tmp_path, amls_doc())
        code = main(["run", str(config), "--out", str(tmp_path / "out"), "--quiet"])
        assert code == 0
        assert (tmp_path / "out" / "report.json").exists()

    def test_validation_failure_exits_2(self, tmp_path):
        config = write_config(tmp_path, amls_doc(format_version=3))
        assert main(["run", str(config), "--quiet"]) == 2

    def test_sweep_subcommand_rejects_non_sweep_jobs(self, tmp_path):
        config = write_config(tmp_path, amls_doc())
        assert main(["sweep", str(config), "--quiet"]) == 2

    def test_diverged_run_exits_3(self, tmp_path):
        doc = amls_doc()
        doc["property"] = {"kind": "analytic-builtin", "name": "neg-linf-gap",
                           "params": {"center": [0.5]}}
        doc["amls"].update({"max_levels": 3, "log_p_min": -200.0,
                            "mh_steps": 1, "proposal_width_init": 1e12})
        config = write_config(tmp_path, doc)
        code = main(["run", str(config), "--out", str(tmp_path / "out"), "--quiet"])
        assert code == 3
        assert (tmp_path / "out" / "diverged.json").exists()

    def test_export_schema_prints_both_schemas(self, capsys):
        assert main(["export-schema"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert set(doc) == {"job_config", "network_weights"}

    def test_entry_point_runs_as_a_process(self, tmp_path):
        config = write_config(tmp_path, amls_doc())
        proc = subprocess.run(
            [sys.executable, "-m", "statrob.cli", "run", str(config),
             "--out", str(tmp_path / "out"), "--quiet"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0, proc.stderr
