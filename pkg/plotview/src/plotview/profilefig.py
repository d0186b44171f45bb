"""Multi-panel ground-state profile figures.

Each panel overlays the majority component (green), the sign-changing
component (red) and the coupling modulation (blue); panels are arranged in
a grid ordered by (g, A) so that a 15-file input reproduces the canonical
5-row, 3-column layout.
"""

from __future__ import annotations

import glob as globmod
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .readers import read_profile_file

PHI1_COLOR = "green"
PHI2_COLOR = "red"
COUPLING_COLOR = "blue"


@dataclass(frozen=True)
class ProfileGridResult:
    path: Path
    n_panels: int
    n_rows: int
    n_cols: int


def expand_inputs(patterns) -> list[Path]:
    paths: list[Path] = []
    for pattern in patterns:
        hits = sorted(globmod.glob(str(pattern)))
        if hits:
            paths.extend(Path(h) for h in hits)
        else:
            paths.append(Path(pattern))
    return paths


def plot_profiles(in_patterns, out_path, cols=3, dpi=150) -> ProfileGridResult:
    """Render one or more profile CSVs into a panel grid PNG."""
    if isinstance(in_patterns, (str, Path)):
        in_patterns = [in_patterns]
    paths = expand_inputs(in_patterns)
    if not paths:
        raise ValueError("no input profiles given")
    profiles = [read_profile_file(p) for p in paths]

    def order_key(item):
        prof = item[1]
        g = prof.g
        amp = prof.coupling_amplitude
        return (g is None, g, amp is None, amp)

    ordered = sorted(zip(paths, profiles), key=order_key)
    n = len(ordered)
    cols = max(1, min(cols, n))
    rows = (n + cols - 1) // cols

    fig, axes = plt.subplots(
        rows, cols, figsize=(3.2 * cols, 2.2 * rows), squeeze=False,
        sharex=True,
    )
    for ax in axes.flat[n:]:
        ax.set_axis_off()
    for (path, prof), ax in zip(ordered, axes.flat):
        ax.plot(prof.x, prof.phi1, color=PHI1_COLOR, lw=1.5)
        ax.plot(prof.x, prof.phi2, color=PHI2_COLOR, lw=1.5)
        ax.plot(prof.x, prof.omega, color=COUPLING_COLOR, lw=1.0)
        ax.axhline(0.0, color="0.7", lw=0.5, zorder=0)
        bits = []
        if prof.g is not None:
            bits.append(f"g={prof.g:g}")
        if prof.coupling_amplitude is not None:
            bits.append(f"A={prof.coupling_amplitude:g}")
        ax.set_title(", ".join(bits) if bits else path.stem, fontsize=9)
    for ax in axes[-1, :]:
        ax.set_xlabel("x")
    fig.tight_layout()
    out_path = Path(out_path)
    fig.savefig(out_path, dpi=dpi)
    plt.close(fig)
    return ProfileGridResult(path=out_path, n_panels=n, n_rows=rows, n_cols=cols)
