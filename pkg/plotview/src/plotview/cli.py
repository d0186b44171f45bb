"""Command-line entry points for the batch renderers."""

from __future__ import annotations

import argparse
import sys

from .mapfig import plot_map
from .profilefig import plot_profiles
from .readers import InputFormatError


def plot_map_entry(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot-map", description="Render a bico sweep map CSV as a heatmap PNG."
    )
    parser.add_argument("--in", dest="in_path", required=True, help="map CSV file")
    parser.add_argument("--out", required=True, help="output PNG path")
    parser.add_argument("--colormap", default="viridis")
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    try:
        result = plot_map(args.in_path, args.out, colormap=args.colormap, dpi=args.dpi)
    except (InputFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(
        f"wrote {result.path} ({result.n_cells} cells, counts {result.count_range[0]}"
        f"..{result.count_range[1]}, {result.n_unconverged} unconverged marked)"
    )
    return 0


def plot_profiles_entry(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot-profiles",
        description="Render bico profile CSVs as a multi-panel figure.",
    )
    parser.add_argument(
        "--in", dest="in_patterns", required=True, nargs="+",
        help="profile CSV files or glob patterns (quote the glob)",
    )
    parser.add_argument("--cols", type=int, default=3)
    parser.add_argument("--out", required=True, help="output PNG path")
    parser.add_argument("--dpi", type=int, default=150)
    args = parser.parse_args(argv)
    try:
        result = plot_profiles(args.in_patterns, args.out, cols=args.cols, dpi=args.dpi)
    except (InputFormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {result.path} ({result.n_panels} panels as {result.n_rows}x{result.n_cols})")
    return 0


if __name__ == "__main__":
    raise SystemExit(plot_map_entry())
