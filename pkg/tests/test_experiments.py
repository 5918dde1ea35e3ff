import json
from fractions import Fraction
from pathlib import Path

import pytest
from pydantic import ValidationError
from typer.testing import CliRunner

from app import __version__
from app.core import config
from app.core.errors import ConfigError
from app.features.circuit_model.builders import FixtureKind, build_brickwork, build_empty, build_fixture
from app.features.experiments.plotting import PlotKind, emit_plot
from app.features.experiments.runners import (
    DECAY_FIT,
    VARIANCE_SUMMARY_HEADER,
    _decay_exponent,
    identity_exact,
    run_exact_minima,
    run_fixtures,
    run_lemma_checks,
    run_random_observable_identity,
    run_variance_scan,
)
from app.features.experiments.schemas import CsvTable, Experiment, IdentityMode, RunManifest
from app.features.experiments.utils import engine_caps, load_run_config, read_csv, render_csv, sha256_hex
from app.features.pauli_core.families import FamilyKind
from app.main import app

CONFIGS = Path(__file__).resolve().parents[1] / "configs"

runner = CliRunner()


def _write(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8")
    return path


def _manifest(out: Path) -> RunManifest:
    return RunManifest.model_validate_json((out / "manifest.json").read_text())


class TestRunConfig:
    @pytest.mark.parametrize(
        "name, experiment",
        [
            ("variance_scan.toml", Experiment.variance_scan),
            ("exact_minima.toml", Experiment.exact_minima),
            ("random_obs.toml", Experiment.random_observable_identity),
            ("random_obs_sampled.toml", Experiment.random_observable_identity),
            ("lemma_checks.toml", Experiment.lemma_checks),
            ("fixtures.toml", Experiment.fixtures),
        ],
    )
    def test_shipped_configs_load(self, name, experiment):
        run = load_run_config(CONFIGS / name, experiment)
        assert run.experiment is experiment
        assert run.seed >= 0

    def test_overrides_win(self, tmp_path):
        path = _write(tmp_path / "run.toml", '[run]\nseed = 1\nthreads = 2\n[grid]\nn = [2]\n')
        run = load_run_config(path, Experiment.fixtures, seed=9, threads=None)
        assert run.seed == 9 and run.threads == 2

    def test_missing_seed(self, tmp_path):
        path = _write(tmp_path / "run.toml", "[grid]\nn = [2]\n")
        with pytest.raises(ConfigError, match="seed"):
            load_run_config(path, Experiment.fixtures)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            load_run_config(tmp_path / "absent.toml", Experiment.fixtures)

    @pytest.mark.parametrize(
        "text",
        [
            "[run\nseed = 1\n",
            "[output]\nseed = 1\n",
            "[run]\nseed = 1\n[grid.inner]\nn = 2\n",
            "[run]\nseed = 1\n[grid]\nseed = 2\n",
            '[run]\nexperiment = "fixtures"\nseed = 1\n[grid]\nn = [2]\n',
        ],
        ids=["bad_toml", "unknown_section", "nested_table", "duplicate_key", "wrong_experiment"],
    )
    def test_rejected_files(self, tmp_path, text):
        path = _write(tmp_path / "run.toml", text)
        with pytest.raises(ConfigError):
            load_run_config(path, Experiment.variance_scan)

    def test_invalid_values(self):
        with pytest.raises(ValidationError):
            load_run_config(None, Experiment.variance_scan, seed=1, n=[0])
        with pytest.raises(ValidationError):
            load_run_config(None, Experiment.variance_scan, seed=-1, n=[2])

    def test_engine_caps_are_restored(self):
        before = config.HESSIAN_CAP
        run = load_run_config(None, Experiment.fixtures, seed=1, n=[2], hessian_cap=3)
        with engine_caps(run):
            assert config.HESSIAN_CAP == 3
        assert config.HESSIAN_CAP == before


class TestCsv:
    def test_schema_line_and_cells(self):
        table = CsvTable(name="t.csv", schema_name="demo", header=["a", "b", "c"],
                         rows=[[1, None, 0.1], ["x", IdentityMode.exact, float("nan")]])
        text = render_csv(table)
        assert text.splitlines() == ["# schema: demo/1", "a,b,c", "1,,0.1", "x,exact,"]

    def test_read_back(self, tmp_path):
        table = CsvTable(name="t.csv", schema_name="demo", header=["a", "b"], rows=[[1, 2.5]])
        path = _write(tmp_path / "t.csv", render_csv(table))
        assert read_csv(path, "demo") == [{"a": "1", "b": "2.5"}]

    def test_schema_mismatch(self, tmp_path):
        path = _write(tmp_path / "t.csv", render_csv(CsvTable(name="t.csv", schema_name="demo", header=["a"])))
        with pytest.raises(ConfigError, match="schema"):
            read_csv(path, "other")
        bare = _write(tmp_path / "bare.csv", "a,b\n1,2\n")
        with pytest.raises(ConfigError, match="schema line"):
            read_csv(bare, "demo")


class TestRandomObservableIdentity:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_exact_identity(self, n):
        circuits = [build_empty(n), build_fixture(FixtureKind.product_rx, n)[0]]
        if n >= 2:
            circuits.append(build_brickwork(n, 1))
        for circuit in circuits:
            assert identity_exact(circuit) == Fraction(1, 2**n)

    def test_exact_run(self, tmp_path):
        run = load_run_config(None, Experiment.random_observable_identity, seed=3, n=[1, 2, 3], out_dir=str(tmp_path))
        run_random_observable_identity(run)
        rows = read_csv(tmp_path / "random_observable.csv", "random_observable")
        assert len(rows) == 8
        assert {row["status"] for row in rows} == {"pass"}

    def test_sampled_run(self, tmp_path):
        run = load_run_config(
            None, Experiment.random_observable_identity, seed=3, n=[2, 3], layers=[2],
            identity_mode="sampled", identity_pairs=2000, out_dir=str(tmp_path),
        )
        run_random_observable_identity(run)
        rows = read_csv(tmp_path / "random_observable.csv", "random_observable")
        assert [row["mode"] for row in rows] == ["sampled", "sampled"]
        for row in rows:
            # 4 standard errors keeps the fixed seed far from the edge
            assert float(row["error"]) <= 4 * float(row["stderr"])


class TestRunners:
    def test_lemma_checks_pass(self, tmp_path):
        run = load_run_config(None, Experiment.lemma_checks, seed=11, n=[2, 3], random_circuits=6,
                              samples=20, out_dir=str(tmp_path))
        manifest = run_lemma_checks(run)
        rows = read_csv(tmp_path / "lemma_checks.csv", "lemma_checks")
        assert len(rows) == 6 * 4 + 2
        assert {row["status"] for row in rows} == {"pass"}
        assert manifest.derived["failed"] == 0

    def test_fixtures(self, tmp_path):
        run = load_run_config(None, Experiment.fixtures, seed=2, n=[1, 3], samples=20, out_dir=str(tmp_path))
        run_fixtures(run)
        rows = read_csv(tmp_path / "fixtures.csv", "fixtures")
        assert all(row["status"] != "fail" for row in rows)
        levels = [row for row in rows if row["fixture"] == "product_rx" and row["quantity"] == "fourier_levels"]
        assert [row["value"] for row in levels] == ["1:1", "3:1"]

    def test_manifest_digests(self, tmp_path):
        run = load_run_config(None, Experiment.variance_scan, seed=5, n=[2], layers=[1], samples=8,
                              out_dir=str(tmp_path))
        returned = run_variance_scan(run)
        manifest = _manifest(tmp_path)
        assert manifest == returned
        assert manifest.version == __version__ and manifest.config["seed"] == 5
        assert set(manifest.files) == {"variance.csv", "variance_summary.csv"}
        for name, digest in manifest.files.items():
            assert sha256_hex((tmp_path / name).read_bytes()) == digest
        assert not list(tmp_path.glob("*.partial"))

    def test_variance_scan_tables(self, tmp_path):
        run = load_run_config(None, Experiment.variance_scan, seed=5, n=[2, 3], layers=[1, 2], samples=8,
                              out_dir=str(tmp_path))
        run_variance_scan(run)
        rows = read_csv(tmp_path / "variance.csv", "variance")
        # 9 (n - 1) members, three modes, two depths
        assert len(rows) == 3 * 2 * (9 + 18)
        summary = read_csv(tmp_path / "variance_summary.csv", "variance_summary")
        assert list(summary[0]) == VARIANCE_SUMMARY_HEADER
        assert len(summary) == 3 * 2 * 2

    @pytest.mark.parametrize(
        "experiment, runner_fn, names, grid",
        [
            (Experiment.variance_scan, run_variance_scan, ["variance.csv", "variance_summary.csv"],
             {"n": [2, 3], "layers": [1, 2], "samples": 10}),
            (Experiment.exact_minima, run_exact_minima, ["exact_minima.csv", "trials.jsonl"],
             {"n": [3], "layers": [2], "trials": 3}),
        ],
        ids=["variance_scan", "exact_minima"],
    )
    def test_outputs_do_not_depend_on_threads(self, tmp_path, experiment, runner_fn, names, grid):
        outputs = []
        for threads in (1, 4, 8):
            out = tmp_path / f"threads{threads}"
            run_fn_config = load_run_config(None, experiment, seed=7, threads=threads, out_dir=str(out), **grid)
            runner_fn(run_fn_config)
            outputs.append({name: (out / name).read_bytes() for name in names})
        assert outputs[0] == outputs[1] == outputs[2]

    def test_exact_minima_records(self, tmp_path):
        run = load_run_config(None, Experiment.exact_minima, seed=7, n=[3], layers=[2], trials=2,
                              family=FamilyKind.weight2_all, out_dir=str(tmp_path))
        manifest = run_exact_minima(run)
        records = [json.loads(line) for line in (tmp_path / "trials.jsonl").read_text().splitlines()]
        assert [r["trial"] for r in records] == [0, 1]
        for record in records:
            # floor(30 * 2^3 / 27)
            assert record["samples_per_stage"] == 8
            assert record["status"] in ("ok", "no_pauli")
            assert sorted(record["fixed_indices"] + record["free_indices"]) == list(range(record["m"]))
        assert "circuit_n3_l2.txt" in manifest.files
        assert manifest.derived["samples_per_stage"] == {"3": 8}
        assert manifest.derived["decay_fit"] == DECAY_FIT
        assert manifest.derived["gradient_decay_exponent"] is None

    def test_exact_minima_defaults_to_all_pairs(self):
        assert load_run_config(None, Experiment.exact_minima, seed=1, n=[3]).family is FamilyKind.weight2_all
        assert load_run_config(None, Experiment.variance_scan, seed=1, n=[3]).family is FamilyKind.weight2_nn
        assert load_run_config(CONFIGS / "exact_minima.toml", Experiment.exact_minima).family is FamilyKind.weight2_all


class TestDecayExponent:
    def test_power_law_in_the_non_vanishing_probability(self):
        points = [(n, 1.0 - 3.0 * n**-2.0) for n in (4, 6, 8)]
        assert _decay_exponent(points) == pytest.approx(2.0)

    def test_fractions_near_one_give_a_steep_decay(self):
        # mean gradient vanish fractions of a 50-layer brickwork run
        exponent = _decay_exponent([(4, 0.943), (6, 0.967), (8, 0.990)])
        assert 1.2 <= exponent <= 2.8

    def test_needs_two_sizes_below_one(self):
        assert _decay_exponent([(4, 1.0), (6, 1.0), (8, 0.9)]) is None
        assert _decay_exponent([(4, None), (6, 0.5)]) is None



class TestPlot:
    @pytest.fixture
    def summary_csv(self, tmp_path) -> Path:
        run = load_run_config(None, Experiment.variance_scan, seed=5, n=[2, 3], layers=[1, 2], samples=8,
                              out_dir=str(tmp_path / "run"))
        run_variance_scan(run)
        return tmp_path / "run" / "variance_summary.csv"

    def test_identical_bytes(self, summary_csv, tmp_path):
        first = emit_plot(summary_csv, PlotKind.variance, tmp_path / "a.svg")
        second = emit_plot(summary_csv, PlotKind.variance, tmp_path / "b.svg")
        assert first.read_bytes() == second.read_bytes()
        assert b"<svg" in first.read_bytes()

    def test_empty_csv(self, tmp_path):
        table = CsvTable(name="e.csv", schema_name="variance_summary", header=VARIANCE_SUMMARY_HEADER)
        path = _write(tmp_path / "e.csv", render_csv(table))
        assert emit_plot(path, PlotKind.variance, tmp_path / "e.svg").exists()

    def test_wrong_kind(self, summary_csv, tmp_path):
        with pytest.raises(ConfigError):
            emit_plot(summary_csv, PlotKind.minima, tmp_path / "m.svg")


class TestCli:
    def test_version(self):
        result = runner.invoke(app, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.stdout

    def test_missing_seed_is_a_config_error(self, tmp_path):
        path = _write(tmp_path / "run.toml", "[grid]\nn = [2]\n")
        result = runner.invoke(app, ["fixtures", "--config", str(path), "--out", str(tmp_path / "out")])
        assert result.exit_code == 2

    def test_invalid_value_is_a_config_error(self, tmp_path):
        path = _write(tmp_path / "run.toml", "[run]\nseed = 1\n[grid]\nn = [0]\n")
        result = runner.invoke(app, ["fixtures", "--config", str(path)])
        assert result.exit_code == 2

    def test_successful_run(self, tmp_path):
        path = _write(tmp_path / "run.toml", "[grid]\nn = [2]\n[sampling]\nsamples = 10\n")
        out = tmp_path / "out"
        result = runner.invoke(app, ["fixtures", "--config", str(path), "--seed", "4", "--out", str(out)])
        assert result.exit_code == 0
        manifest = _manifest(out)
        assert manifest.run_id in result.stdout
        assert manifest.config["seed"] == 4

    def test_cap_exceeded(self, tmp_path):
        path = _write(tmp_path / "run.toml", "[grid]\nn = [3]\n[engine]\nclifford_enumeration_max_params = 2\n")
        result = runner.invoke(app, ["random-obs", "--config", str(path), "--seed", "1", "--out", str(tmp_path / "o")])
        assert result.exit_code == 3

    def test_plot_command(self, tmp_path):
        run = load_run_config(None, Experiment.exact_minima, seed=7, n=[3], layers=[1], trials=1,
                              out_dir=str(tmp_path))
        run_exact_minima(run)
        result = runner.invoke(app, ["plot", str(tmp_path / "exact_minima.csv"), "--kind", "minima"])
        assert result.exit_code == 0
        assert (tmp_path / "exact_minima.svg").exists()


@pytest.mark.slow
def test_variance_scales_as_two_to_minus_n(tmp_path):
    run = load_run_config(None, Experiment.variance_scan, seed=20240611, n=[2, 4, 6, 8], layers=[30, 50],
                          samples=50, threads=4, out_dir=str(tmp_path))
    run_variance_scan(run)
    summary = read_csv(tmp_path / "variance_summary.csv", "variance_summary")
    checked = [row for row in summary if row["mode"] in ("uniform", "clifford")]
    assert len(checked) == 2 * 4 * 2
    assert all(row["within_tolerance"] == "True" for row in checked)


@pytest.mark.slow
def test_siloed_minima_scaling(tmp_path):
    run = load_run_config(CONFIGS / "exact_minima.toml", Experiment.exact_minima, trials=5, out_dir=str(tmp_path))
    manifest = run_exact_minima(run)
    means = [row for row in read_csv(tmp_path / "exact_minima.csv", "exact_minima") if row["kind"] == "mean"]
    assert [int(row["n"]) for row in means] == [4, 6, 8]
    for row in means:
        assert 0.3 <= float(row["median_stage_ratio"]) <= 0.7
        assert abs(float(row["optimized"]) - float(row["log2_m"])) <= 3
        assert float(row["value_vanish_fraction"]) >= 0.9
    assert 1.2 <= manifest.derived["gradient_decay_exponent"] <= 2.8

