"""Parameter-sweep harness producing kink-count maps over (A, alpha).

Wavenumbers are specified as multiples of the reference ALPHA0; points are
independent and may run on a process pool.  Per-point RNG seeds derive
deterministically from (A, alpha, global seed), so the resulting table is
identical for any worker count.
"""

from __future__ import annotations

import hashlib
import logging
import math
import multiprocessing
import struct
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .fileio import utc_now_iso
from .kinks import KinkThresholdConfig, ThresholdReference, count_kinks
from .model import CouplingProfile, Parity, SystemParams, make_grid
from .solver import SeedKind, SolverConfig, SolverError, solve_ground_state

log = logging.getLogger(__name__)

ALPHA0 = 0.09248  # reference modulation wavenumber for map axes


def default_amplitudes(n: int = 25) -> tuple[float, ...]:
    return tuple(np.logspace(math.log10(0.01), math.log10(1.0), n))


def default_wavenumbers(n: int = 25) -> tuple[float, ...]:
    return tuple(np.linspace(1.0, 10.0, n))


@dataclass(frozen=True)
class GridSpec:
    x_max: float = 25.0
    n_points: int = 1024


@dataclass(frozen=True)
class SweepSpec:
    """Axes and shared configuration of a kink-count map.

    ``wavenumbers`` are multiples of ALPHA0, matching the map axes; the
    physical wavenumber of a point is ``w * ALPHA0``.
    """

    g: float
    parity: Parity = Parity.ODD
    amplitudes: tuple = field(default_factory=default_amplitudes)
    wavenumbers: tuple = field(default_factory=default_wavenumbers)
    omega: float = 0.05
    total_norm: float = 2.41
    grid: GridSpec = field(default_factory=GridSpec)
    solver: SolverConfig = field(default_factory=SolverConfig)
    threshold: KinkThresholdConfig = field(default_factory=KinkThresholdConfig)

    def __post_init__(self):
        if len(self.amplitudes) == 0 or len(self.wavenumbers) == 0:
            raise ValueError("sweep axes must be non-empty")
        if any(a <= 0 for a in self.amplitudes):
            raise ValueError("all amplitudes must be positive")
        if any(w <= 0 for w in self.wavenumbers):
            raise ValueError("all wavenumbers must be positive")

    def system_params(self) -> SystemParams:
        return SystemParams(g=self.g, omega=self.omega, total_norm=self.total_norm)

    def to_dict(self) -> dict:
        return {
            "g": self.g,
            "parity": self.parity.value,
            "amplitudes": list(self.amplitudes),
            "wavenumbers": list(self.wavenumbers),
            "omega": self.omega,
            "total_norm": self.total_norm,
            "grid": {"x_max": self.grid.x_max, "n_points": self.grid.n_points},
            "solver": {
                "dtau": self.solver.dtau,
                "tau_max": self.solver.tau_max,
                "energy_tol": self.solver.energy_tol,
                "residual_tol": self.solver.residual_tol,
                "seed_kind": self.solver.seed_kind.value,
            },
            "threshold": {
                "relative_threshold": self.threshold.relative_threshold,
                "reference": self.threshold.reference.value,
                "absolute_value": self.threshold.absolute_value,
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SweepSpec":
        known = {
            "g", "parity", "amplitudes", "wavenumbers", "omega", "total_norm",
            "grid", "solver", "threshold",
        }
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown sweep config key(s): {', '.join(sorted(unknown))}")
        if "g" not in data:
            raise ValueError("sweep config requires 'g'")
        kwargs: dict = {"g": float(data["g"])}
        if "parity" in data:
            kwargs["parity"] = Parity.from_name(data["parity"])
        for key in ("amplitudes", "wavenumbers"):
            if key in data:
                kwargs[key] = tuple(float(v) for v in data[key])
        for key in ("omega", "total_norm"):
            if key in data:
                kwargs[key] = float(data[key])
        if "grid" in data:
            kwargs["grid"] = GridSpec(**data["grid"])
        if "solver" in data:
            s = dict(data["solver"])
            if "seed_kind" in s:
                s["seed_kind"] = SeedKind.from_name(s["seed_kind"])
            kwargs["solver"] = SolverConfig(**s)
        if "threshold" in data:
            t = dict(data["threshold"])
            if "reference" in t:
                t["reference"] = ThresholdReference(t["reference"])
            kwargs["threshold"] = KinkThresholdConfig(**t)
        return cls(**kwargs)


@dataclass(frozen=True)
class MapRow:
    amplitude: float
    wavenumber: float  # physical alpha
    kink_count: int
    converged: bool
    energy: float
    mu: float


@dataclass(frozen=True)
class MapTable:
    rows: tuple
    spec: SweepSpec
    rng_seed: int
    code_version: str
    created_at: str


def point_seed(global_seed: int, amplitude: float, wavenumber: float) -> int:
    """Deterministic per-point RNG seed; stable across platforms and pools."""
    payload = struct.pack("<Qdd", global_seed & 0xFFFFFFFFFFFFFFFF, amplitude, wavenumber)
    digest = hashlib.blake2b(payload, digest_size=8).digest()
    return int.from_bytes(digest, "little")


def solve_point(spec_dict: dict, amplitude: float, multiple: float, global_seed: int) -> MapRow:
    """Solve one sweep point; exceptions become a non-converged row."""
    spec = SweepSpec.from_dict(spec_dict)
    alpha = multiple * ALPHA0
    profile = CouplingProfile(amplitude=amplitude, wavenumber=alpha, parity=spec.parity)
    grid = make_grid(spec.grid.x_max, spec.grid.n_points)
    seed = point_seed(global_seed, amplitude, alpha)
    try:
        result = solve_ground_state(
            spec.system_params(), profile, grid, spec.solver, rng_seed=seed
        )
        report = count_kinks(result.fields, spec.threshold, profile)
        return MapRow(
            amplitude=amplitude,
            wavenumber=alpha,
            kink_count=report.count,
            converged=result.converged,
            energy=result.energy,
            mu=result.mu,
        )
    except SolverError as exc:
        log.error("point A=%g alpha=%g failed: %s", amplitude, alpha, exc)
        return MapRow(
            amplitude=amplitude,
            wavenumber=alpha,
            kink_count=-1,
            converged=False,
            energy=math.nan,
            mu=math.nan,
        )


def run_sweep(
    spec: SweepSpec,
    workers: int = 1,
    rng_seed: int = 0,
    progress=None,
) -> MapTable:
    """Solve every (A, alpha) point and return the sorted map table.

    ``progress``, when given, is called as progress(done, total) from the
    coordinating thread.  Individual point failures are recorded per row and
    never abort the sweep.
    """
    spec_dict = spec.to_dict()
    points = [(a, w) for a in spec.amplitudes for w in spec.wavenumbers]
    total = len(points)
    rows: list[MapRow] = []
    if workers <= 1:
        for i, (a, w) in enumerate(points, start=1):
            rows.append(solve_point(spec_dict, a, w, rng_seed))
            if progress:
                progress(i, total)
    else:
        ctx = multiprocessing.get_context("spawn")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            futures = [pool.submit(solve_point, spec_dict, a, w, rng_seed) for a, w in points]
            for i, fut in enumerate(as_completed(futures), start=1):
                rows.append(fut.result())
                if progress:
                    progress(i, total)
    rows.sort(key=lambda r: (r.amplitude, r.wavenumber))
    return MapTable(
        rows=tuple(rows),
        spec=spec,
        rng_seed=rng_seed,
        code_version=__version__,
        created_at=utc_now_iso(),
    )
