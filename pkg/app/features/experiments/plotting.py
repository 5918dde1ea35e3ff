"""
Deterministic SVG scatter plots of experiment summaries on a log2 axis.
"""
import math
from enum import Enum
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from app.core.errors import ConfigError  # noqa: E402
from app.features.experiments.utils import read_csv  # noqa: E402
from app.utils import get_logger  # noqa: E402

logger = get_logger(__name__)

MODE_MARKERS = {"uniform": "o", "clifford": "s", "clifford_conditioned": "^"}
KIND_MARKERS = {"trial": "o", "mean": "s"}


class PlotKind(str, Enum):
    variance = "variance"
    minima = "minima"


SCHEMAS = {PlotKind.variance: "variance_summary", PlotKind.minima: "exact_minima"}


def _float(text: str) -> float | None:
    try:
        return float(text) if text else None
    except ValueError:
        raise ConfigError(f"expected a number, got {text!r}")


def _plot_variance(ax, rows: list[dict[str, str]]):
    ns = sorted({int(r["n"]) for r in rows})
    colors = {n: plt.get_cmap("viridis")(i / max(len(ns) - 1, 1)) for i, n in enumerate(ns)}
    for n in ns:
        ax.axhline(-n, color=colors[n], linestyle="--", linewidth=0.8)
        for mode, marker in MODE_MARKERS.items():
            points = [
                (int(r["layers"]), _float(r["log2_mean_variance"]))
                for r in rows
                if int(r["n"]) == n and r["mode"] == mode and r["log2_mean_variance"]
            ]
            if points:
                xs, ys = zip(*points)
                ax.scatter(xs, ys, marker=marker, color=colors[n], label=f"n={n} {mode}")
    ax.set_xlabel("layers")
    ax.set_ylabel("log2 mean variance")


def _plot_minima(ax, rows: list[dict[str, str]]):
    # log-log axes: a power-law decay of 1 - p in n is a straight line
    for column, color in (("value_vanish_fraction", "tab:blue"), ("gradient_vanish_fraction", "tab:orange")):
        for kind, marker in KIND_MARKERS.items():
            points = [
                (int(r["n"]), 1.0 - v)
                for r in rows
                if r["kind"] == kind and (v := _float(r[column])) is not None and v < 1.0
            ]
            if points:
                xs, ys = zip(*points)
                ax.scatter(
                    [math.log2(x) for x in xs], [math.log2(y) for y in ys],
                    marker=marker, color=color, label=f"1 - {column} ({kind})",
                )
    ax.set_xlabel("log2 n")
    ax.set_ylabel("log2 non-vanishing probability")


def emit_plot(csv_path: str | Path, kind: PlotKind, out_path: str | Path) -> Path:
    """
    Render a summary CSV to SVG.

    Bytes depend only on the CSV: the SVG id salt is fixed and no date is
    embedded. A CSV without rows gives empty axes.
    """
    kind = PlotKind(kind)
    rows = read_csv(csv_path, SCHEMAS[kind])
    out = Path(out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with plt.rc_context({"svg.hashsalt": "clifford-landscape", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(6, 4))
        if kind is PlotKind.variance:
            _plot_variance(ax, rows)
        else:
            _plot_minima(ax, rows)
        if rows and ax.collections:
            ax.legend(fontsize="x-small")
        fig.tight_layout()
        fig.savefig(out, format="svg", metadata={"Date": None})
        plt.close(fig)
    logger.info("plotted %d rows of %s to %s", len(rows), csv_path, out)
    return out
