"""
CLI commands for the experiments.

Each command loads the run file, applies flag overrides and hands the
validated RunConfig to its runner. Registered on the application in app.main.
"""
from pathlib import Path
from typing import Annotated

import typer

from app.features.experiments.plotting import PlotKind, emit_plot
from app.features.experiments.runners import RUNNERS
from app.features.experiments.schemas import Experiment
from app.features.experiments.utils import load_run_config
from app.utils import get_logger

logger = get_logger(__name__)

ConfigOption = Annotated[Path | None, typer.Option("--config", help="TOML run file")]
SeedOption = Annotated[int | None, typer.Option("--seed", min=0, help="Master seed (u64); overrides [run] seed")]
OutOption = Annotated[Path | None, typer.Option("--out", help="Output directory; overrides [run] out_dir")]
ThreadsOption = Annotated[int | None, typer.Option("--threads", min=1, help="Worker threads; overrides [run] threads")]


def _run(experiment: Experiment, config: Path | None, seed: int | None, out: Path | None, threads: int | None):
    run = load_run_config(config, experiment, seed=seed, out_dir=None if out is None else str(out), threads=threads)
    logger.info("running %s with seed %d into %s", experiment.value, run.seed, run.out_dir)
    manifest = RUNNERS[experiment](run)
    typer.echo(f"{manifest.run_id} {run.out_dir}")


def variance_scan(config: ConfigOption = None, seed: SeedOption = None, out: OutOption = None, threads: ThreadsOption = None):
    """Sample variances of single-Pauli losses in uniform, Clifford and conditioned modes."""
    _run(Experiment.variance_scan, config, seed, out, threads)


def exact_minima(config: ConfigOption = None, seed: SeedOption = None, out: OutOption = None, threads: ThreadsOption = None):
    """Greedy siloed minima and vanishing checks on the independent remainder."""
    _run(Experiment.exact_minima, config, seed, out, threads)


def random_obs(config: ConfigOption = None, seed: SeedOption = None, out: OutOption = None, threads: ThreadsOption = None):
    """Random-observable identity: the average of L_P^2 over Paulis equals 2^-n."""
    _run(Experiment.random_observable_identity, config, seed, out, threads)


def lemma_checks(config: ConfigOption = None, seed: SeedOption = None, out: OutOption = None, threads: ThreadsOption = None):
    """Clifford-average equality, single-angle fits and zero-mean checks on small random circuits."""
    _run(Experiment.lemma_checks, config, seed, out, threads)


def fixtures(config: ConfigOption = None, seed: SeedOption = None, out: OutOption = None, threads: ThreadsOption = None):
    """Demonstrations on the product-RX and global-rotation fixtures."""
    _run(Experiment.fixtures, config, seed, out, threads)


def plot(
    csv_path: Annotated[Path, typer.Argument(help="Summary CSV written by variance-scan or exact-minima")],
    kind: Annotated[PlotKind, typer.Option("--kind", help="Which summary the CSV holds")] = PlotKind.variance,
    out: Annotated[Path | None, typer.Option("--out", help="SVG path; defaults next to the CSV")] = None,
):
    """Render a summary CSV as a log2 scatter plot."""
    target = emit_plot(csv_path, kind, out if out is not None else csv_path.with_suffix(".svg"))
    typer.echo(str(target))
