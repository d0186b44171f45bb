"""Kink-count heatmaps with a discrete integer color scale."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import BoundaryNorm

from .readers import read_map_file


@dataclass(frozen=True)
class MapPlotResult:
    path: Path
    n_cells: int
    n_unconverged: int
    count_range: tuple


def _log_edges(values):
    logv = np.log10(values)
    if values.size == 1:
        pad = 0.1
        inner = np.array([])
    else:
        inner = 0.5 * (logv[:-1] + logv[1:])
        pad = 0.5 * (logv[1] - logv[0])
    edges = np.concatenate([[logv[0] - pad], inner, [logv[-1] + pad]])
    return 10.0**edges


def _linear_edges(values):
    if values.size == 1:
        return np.array([values[0] - 0.5, values[0] + 0.5])
    inner = 0.5 * (values[:-1] + values[1:])
    first = values[0] - (values[1] - values[0]) / 2
    last = values[-1] + (values[-1] - values[-2]) / 2
    return np.concatenate([[first], inner, [last]])


def plot_map(in_path, out_path, colormap="viridis", dpi=150) -> MapPlotResult:
    """Render a sweep map CSV as a heatmap PNG.

    Amplitude runs on a logarithmic y axis, the normalized wavenumber on a
    linear x axis; the color scale is one discrete band per integer count.
    Non-converged cells are marked, never interpolated.
    """
    data = read_map_file(in_path)
    counts = np.ma.masked_where(~data.converged, data.counts)
    cmin = int(counts.min()) if counts.count() else 0
    cmax = int(counts.max()) if counts.count() else 1
    levels = np.arange(cmin - 0.5, cmax + 1.5)
    cmap = plt.get_cmap(colormap, max(cmax - cmin + 1, 1))
    norm = BoundaryNorm(levels, cmap.N)

    fig, ax = plt.subplots(figsize=(6.0, 4.5))
    x_edges = _linear_edges(data.multiples)
    y_edges = _log_edges(data.amplitudes)
    mesh = ax.pcolormesh(x_edges, y_edges, counts, cmap=cmap, norm=norm)
    ax.set_yscale("log")
    ax.set_xlabel(r"$\alpha/\alpha_0$")
    ax.set_ylabel("A")
    g = data.g
    ax.set_title("kink count" + (f" (g = {g:g})" if g is not None else ""))
    cbar = fig.colorbar(mesh, ax=ax, ticks=np.arange(cmin, cmax + 1))
    cbar.set_label("kinks")

    bad = ~data.converged
    n_bad = int(bad.sum())
    if n_bad:
        yy, xx = np.nonzero(bad)
        ax.plot(
            data.multiples[xx], data.amplitudes[yy], "x", color="red", markersize=8,
            markeredgewidth=2,
        )

    fig.tight_layout()
    out_path = Path(out_path)
    fig.savefig(out_path, dpi=dpi)
    plt.close(fig)
    return MapPlotResult(
        path=out_path,
        n_cells=int(data.counts.size),
        n_unconverged=n_bad,
        count_range=(cmin, cmax),
    )
