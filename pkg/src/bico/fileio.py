"""Profile and sweep-map file formats.

A profile is a CSV (columns x, phi1, phi2, omega, where omega holds the
coupling Omega(x)) plus a JSON sidecar carrying every parameter and the
convergence record.  Floats are serialized with 17 significant digits, so a
write/read round trip reproduces the numeric payload bitwise.  A sweep map
is a CSV of one row per (A, alpha) point plus a JSON sidecar holding the
sweep specification.
"""

from __future__ import annotations

import datetime as _dt
import io
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .model import (
    CouplingProfile,
    FieldPair,
    GroundStateResult,
    Parity,
    SystemParams,
    coupling_at,
    grid_from_nodes,
)

PROFILE_COLUMNS = ("x", "phi1", "phi2", "omega")
MAP_COLUMNS = ("A", "alpha", "alpha_over_alpha0", "kink_count", "converged", "energy", "mu")


class ProfileFormatError(ValueError):
    """Malformed profile or map file; message carries the offending line."""


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def sidecar_path(path) -> Path:
    path = Path(path)
    return path.with_suffix(".json") if path.suffix else Path(str(path) + ".json")


def profile_sidecar(result: GroundStateResult, profile: CouplingProfile) -> dict:
    cfg = result.config
    sidecar = {
        "format": "bico-profile",
        "system": {
            "g": result.params.g,
            "omega": result.params.omega,
            "total_norm": result.params.total_norm,
        },
        "coupling": {
            "amplitude": profile.amplitude,
            "wavenumber": profile.wavenumber,
            "parity": profile.parity.value,
        },
        "grid": {"x_max": result.fields.grid.x_max, "n_points": result.fields.grid.n_points},
        "solver": None
        if cfg is None
        else {
            "dtau": cfg.dtau,
            "tau_max": cfg.tau_max,
            "energy_tol": cfg.energy_tol,
            "residual_tol": cfg.residual_tol,
            "seed_kind": cfg.seed_kind.value,
            "rng_seed": result.rng_seed,
        },
        "result": {
            "mu": result.mu,
            "energy": result.energy,
            "iterations": result.iterations,
            "converged": result.converged,
            "final_residual": result.final_residual,
        },
        "energy_trace": [[t, e] for t, e in result.energy_trace],
    }
    return sidecar


def render_profile_csv(fields: FieldPair, profile: CouplingProfile) -> str:
    om = coupling_at(profile, fields.grid.nodes)
    om = np.broadcast_to(om, fields.grid.nodes.shape)
    buf = io.StringIO()
    buf.write(",".join(PROFILE_COLUMNS) + "\n")
    for x, p1, p2, o in zip(fields.grid.nodes, fields.phi1, fields.phi2, om):
        buf.write(f"{_fmt(x)},{_fmt(p1)},{_fmt(p2)},{_fmt(o)}\n")
    return buf.getvalue()


def write_profile(result: GroundStateResult, profile: CouplingProfile, path) -> Path:
    """Write the profile CSV and its JSON sidecar next to it."""
    path = Path(path)
    path.write_text(render_profile_csv(result.fields, profile))
    sidecar_path(path).write_text(json.dumps(profile_sidecar(result, profile), indent=2) + "\n")
    return path


@dataclass(frozen=True)
class ProfileRecord:
    fields: FieldPair
    omega_values: np.ndarray
    meta: dict | None

    def coupling_profile(self) -> CouplingProfile | None:
        if not self.meta or "coupling" not in self.meta:
            return None
        c = self.meta["coupling"]
        return CouplingProfile(
            amplitude=c["amplitude"],
            wavenumber=c["wavenumber"],
            parity=Parity.from_name(c["parity"]),
        )

    def system_params(self) -> SystemParams | None:
        if not self.meta or "system" not in self.meta:
            return None
        s = self.meta["system"]
        return SystemParams(g=s["g"], omega=s["omega"], total_norm=s["total_norm"])


def parse_profile_csv(text: str) -> tuple[FieldPair, np.ndarray]:
    lines = text.splitlines()
    if not lines:
        raise ProfileFormatError("empty profile file")
    header = [c.strip() for c in lines[0].split(",")]
    missing = [c for c in PROFILE_COLUMNS if c not in header]
    if missing:
        raise ProfileFormatError(f"line 1: missing column(s) {', '.join(missing)}")
    idx = {c: header.index(c) for c in PROFILE_COLUMNS}
    cols = {c: [] for c in PROFILE_COLUMNS}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != len(header):
            raise ProfileFormatError(
                f"line {lineno}: expected {len(header)} fields, got {len(parts)}"
            )
        try:
            for c in PROFILE_COLUMNS:
                cols[c].append(float(parts[idx[c]]))
        except ValueError as exc:
            raise ProfileFormatError(f"line {lineno}: {exc}") from None
    grid = grid_from_nodes(np.array(cols["x"]))
    fields = FieldPair(grid=grid, phi1=np.array(cols["phi1"]), phi2=np.array(cols["phi2"]))
    return fields, np.array(cols["omega"])


def read_profile(path) -> ProfileRecord:
    """Inverse of write_profile for the numeric payload; sidecar optional."""
    path = Path(path)
    fields, om = parse_profile_csv(path.read_text())
    meta = None
    sp = sidecar_path(path)
    if sp.exists():
        meta = json.loads(sp.read_text())
    return ProfileRecord(fields=fields, omega_values=om, meta=meta)


def render_map_csv(table) -> str:
    from .sweep import ALPHA0

    buf = io.StringIO()
    buf.write(",".join(MAP_COLUMNS) + "\n")
    for row in table.rows:
        buf.write(
            f"{_fmt(row.amplitude)},{_fmt(row.wavenumber)},{_fmt(row.wavenumber / ALPHA0)},"
            f"{row.kink_count},{str(row.converged).lower()},{_fmt(row.energy)},{_fmt(row.mu)}\n"
        )
    return buf.getvalue()


def map_sidecar(table) -> dict:
    return {
        "format": "bico-map",
        "spec": table.spec.to_dict(),
        "rng_seed": table.rng_seed,
        "code_version": table.code_version,
        "created_at": table.created_at,
    }


def write_map(table, path) -> Path:
    """Write the sweep map CSV and its JSON sidecar next to it."""
    path = Path(path)
    path.write_text(render_map_csv(table))
    sidecar_path(path).write_text(json.dumps(map_sidecar(table), indent=2) + "\n")
    return path


def parse_map_csv(text: str) -> list[dict]:
    lines = text.splitlines()
    if not lines:
        raise ProfileFormatError("empty map file")
    header = [c.strip() for c in lines[0].split(",")]
    missing = [c for c in MAP_COLUMNS if c not in header]
    if missing:
        raise ProfileFormatError(f"line 1: missing column(s) {', '.join(missing)}")
    idx = {c: header.index(c) for c in MAP_COLUMNS}
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != len(header):
            raise ProfileFormatError(
                f"line {lineno}: expected {len(header)} fields, got {len(parts)}"
            )
        try:
            rows.append(
                {
                    "A": float(parts[idx["A"]]),
                    "alpha": float(parts[idx["alpha"]]),
                    "alpha_over_alpha0": float(parts[idx["alpha_over_alpha0"]]),
                    "kink_count": int(parts[idx["kink_count"]]),
                    "converged": parts[idx["converged"]].strip().lower() == "true",
                    "energy": float(parts[idx["energy"]]),
                    "mu": float(parts[idx["mu"]]),
                }
            )
        except ValueError as exc:
            raise ProfileFormatError(f"line {lineno}: {exc}") from None
    return rows


def utc_now_iso() -> str:
    return _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
