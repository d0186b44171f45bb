"""Parsers for the bico profile and map file formats.

Independent of the compute package on purpose: the CSV/JSON layout is the
interface.  Map CSV columns: A, alpha, alpha_over_alpha0, kink_count,
converged, energy, mu.  Profile CSV columns: x, phi1, phi2, omega.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class InputFormatError(ValueError):
    """Malformed input file; message carries file and line."""


def _sidecar(path: Path) -> dict | None:
    side = path.with_suffix(".json") if path.suffix else Path(str(path) + ".json")
    if side.exists():
        return json.loads(side.read_text())
    return None


def _parse_columns(path: Path, required: tuple[str, ...]) -> dict[str, list[str]]:
    lines = path.read_text().splitlines()
    if not lines:
        raise InputFormatError(f"{path}: empty file")
    header = [c.strip() for c in lines[0].split(",")]
    missing = [c for c in required if c not in header]
    if missing:
        raise InputFormatError(f"{path}: line 1: missing column(s) {', '.join(missing)}")
    idx = {c: header.index(c) for c in required}
    out: dict[str, list[str]] = {c: [] for c in required}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != len(header):
            raise InputFormatError(
                f"{path}: line {lineno}: expected {len(header)} fields, got {len(parts)}"
            )
        for c in required:
            out[c].append(parts[idx[c]])
    return out


@dataclass(frozen=True)
class MapData:
    amplitudes: np.ndarray  # sorted unique A
    multiples: np.ndarray  # sorted unique alpha/alpha0
    counts: np.ndarray  # (n_A, n_mult) kink counts
    converged: np.ndarray  # (n_A, n_mult) bool
    meta: dict | None

    @property
    def g(self):
        if self.meta and "spec" in self.meta:
            return self.meta["spec"].get("g")
        return None


def read_map_file(path) -> MapData:
    path = Path(path)
    cols = _parse_columns(path, ("A", "alpha_over_alpha0", "kink_count", "converged"))
    try:
        a = np.array([float(v) for v in cols["A"]])
        m = np.array([float(v) for v in cols["alpha_over_alpha0"]])
        counts = np.array([int(v) for v in cols["kink_count"]])
        conv = np.array([v.strip().lower() == "true" for v in cols["converged"]])
    except ValueError as exc:
        raise InputFormatError(f"{path}: {exc}") from None
    amplitudes = np.unique(a)
    multiples = np.unique(m)
    grid_counts = np.full((amplitudes.size, multiples.size), -1, dtype=int)
    grid_conv = np.zeros((amplitudes.size, multiples.size), dtype=bool)
    ai = np.searchsorted(amplitudes, a)
    mi = np.searchsorted(multiples, m)
    grid_counts[ai, mi] = counts
    grid_conv[ai, mi] = conv
    if np.any(grid_counts == -1) and not np.any(counts == -1):
        raise InputFormatError(f"{path}: map rows do not fill the (A, alpha) grid")
    return MapData(
        amplitudes=amplitudes,
        multiples=multiples,
        counts=grid_counts,
        converged=grid_conv,
        meta=_sidecar(path),
    )


@dataclass(frozen=True)
class ProfileData:
    x: np.ndarray
    phi1: np.ndarray
    phi2: np.ndarray
    omega: np.ndarray  # coupling Omega(x)
    meta: dict | None

    @property
    def coupling_amplitude(self):
        if self.meta and "coupling" in self.meta:
            return self.meta["coupling"].get("amplitude")
        return None

    @property
    def g(self):
        if self.meta and "system" in self.meta:
            return self.meta["system"].get("g")
        return None


def read_profile_file(path) -> ProfileData:
    path = Path(path)
    cols = _parse_columns(path, ("x", "phi1", "phi2", "omega"))
    try:
        arrays = {c: np.array([float(v) for v in cols[c]]) for c in cols}
    except ValueError as exc:
        raise InputFormatError(f"{path}: {exc}") from None
    return ProfileData(
        x=arrays["x"],
        phi1=arrays["phi1"],
        phi2=arrays["phi2"],
        omega=arrays["omega"],
        meta=_sidecar(path),
    )
