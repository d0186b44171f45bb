"""Norm-projected imaginary-time relaxation to the coupled ground state.

Explicit-Euler gradient flow

    d phi_n / d tau = -[-1/2 d^2/dx^2 + V + phi_n^2 + g phi_{3-n}^2] phi_n
                      - 1/2 Omega(x) phi_{3-n}

followed after every step by a joint renormalization of both components to
the prescribed total norm.  The renormalization must be joint: the linear
coupling exchanges norm between the components and the stationary state has
a single chemical potential.  Eigenstates of the discrete operator are exact
fixed points of this scheme, so the stationary residual of a converged run
is limited only by the convergence tolerance, not by the step size.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

import numpy as np

from .model import (
    CouplingProfile,
    FieldPair,
    Grid1D,
    GroundStateResult,
    SystemParams,
    chemical_potential,
    coupling_at,
    energy,
    stationary_residual,
    trap_at,
)
from .thomas_fermi import tf_mu_from_norm, tf_profile

log = logging.getLogger(__name__)


class SolverError(RuntimeError):
    """Relaxation failed in a way that invalidates the run (instability)."""


class SeedKind(enum.Enum):
    TF = "tf"
    RANDOM = "random"
    CONSTANT = "constant"

    @classmethod
    def from_name(cls, name: str) -> "SeedKind":
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"seed kind must be one of tf|random|constant, got {name!r}") from None


@dataclass(frozen=True)
class SolverConfig:
    dtau: float = 1e-3
    tau_max: float = 500.0
    energy_tol: float = 1e-10  # relative energy change per unit tau
    residual_tol: float = 1e-6
    seed_kind: SeedKind = SeedKind.TF

    def __post_init__(self):
        if not self.dtau > 0:
            raise ValueError(f"dtau must be positive, got {self.dtau}")
        if not self.tau_max > 0:
            raise ValueError(f"tau_max must be positive, got {self.tau_max}")
        if not (self.energy_tol > 0 and self.residual_tol > 0):
            raise ValueError("tolerances must be positive")


def max_stable_dtau(grid: Grid1D, params: SystemParams) -> float:
    """Largest step the explicit scheme tolerates on this grid.

    The stiffest mode of the central-difference Laplacian has eigenvalue
    about 2/h^2; the trap and the nonlinearity add a small shift.
    """
    h2 = grid.spacing**2
    v_max = trap_at(params, grid.x_max)
    nl = 3.0 * (1.0 + abs(params.g)) * max(tf_mu_from_norm(params.total_norm, params.omega), 0.1) if params.omega > 0 else 1.0
    return 1.8 / (2.0 / h2 + v_max + nl)


class _Stepper:
    """Precomputed single-step advance; owns no field state."""

    def __init__(self, grid, params, profile, dtau, boundary="dirichlet"):
        if boundary not in ("dirichlet", "periodic"):
            raise ValueError(f"boundary must be 'dirichlet' or 'periodic', got {boundary!r}")
        self.grid = grid
        self.params = params
        self.boundary = boundary
        self.dtau = dtau
        self.h = grid.spacing
        self.inv_h2 = 1.0 / self.h**2
        self.v = trap_at(params, grid.nodes)
        self.om = coupling_at(profile, grid.nodes)

    def advance(self, phi: np.ndarray) -> np.ndarray:
        """One explicit step plus joint renormalization; phi has shape (2, n)."""
        g = self.params.g
        dtau = self.dtau
        a, b = phi[0], phi[1]
        if self.boundary == "dirichlet":
            lap = np.zeros_like(phi)
            lap[:, 1:-1] = (phi[:, 2:] - 2.0 * phi[:, 1:-1] + phi[:, :-2]) * self.inv_h2
        else:
            lap = (np.roll(phi, -1, axis=1) - 2.0 * phi + np.roll(phi, 1, axis=1)) * self.inv_h2
        rhs1 = 0.5 * lap[0] - (self.v + a * a + g * b * b) * a - 0.5 * self.om * b
        rhs2 = 0.5 * lap[1] - (self.v + b * b + g * a * a) * b - 0.5 * self.om * a
        out = phi + dtau * np.array([rhs1, rhs2])
        if self.boundary == "dirichlet":
            out[:, 0] = 0.0
            out[:, -1] = 0.0
        return self.renormalize(out)

    def renormalize(self, phi: np.ndarray) -> np.ndarray:
        dens = phi[0] ** 2 + phi[1] ** 2
        current = self.h * (dens.sum() - 0.5 * (dens[0] + dens[-1]))
        if not np.isfinite(current):
            raise SolverError(
                "non-finite norm after a step (step-size instability; "
                f"stability limit ~{max_stable_dtau(self.grid, self.params):.2e})"
            )
        if current <= 0:
            raise SolverError("cannot renormalize zero-norm fields")
        phi *= np.sqrt(self.params.total_norm / current)
        return phi


def imaginary_time_step(
    fields: FieldPair,
    params: SystemParams,
    profile: CouplingProfile,
    dtau: float,
    boundary: str = "dirichlet",
) -> FieldPair:
    """Advance the pair one step of the projected flow.

    The periodic boundary option treats the node set as a ring and exists
    for uniform-system checks; ground-state solves always use Dirichlet.
    """
    stepper = _Stepper(fields.grid, params, profile, dtau, boundary=boundary)
    out = stepper.advance(fields.stacked())
    if not np.all(np.isfinite(out)):
        raise SolverError(
            f"non-finite values after one step (dtau={dtau}; stability limit "
            f"~{max_stable_dtau(fields.grid, params):.2e})"
        )
    return FieldPair(grid=fields.grid, phi1=out[0], phi2=out[1])


def _smooth_noise(grid: Grid1D, rng: np.random.Generator, scale: float, modes: int = 8) -> np.ndarray:
    """Low-order random sine series vanishing at the endpoints."""
    coeffs = rng.standard_normal(modes) * scale
    x01 = (grid.nodes + grid.x_max) / (2.0 * grid.x_max)
    out = np.zeros(grid.n_points)
    for k, c in enumerate(coeffs, start=1):
        out += c * np.sin(k * np.pi * x01)
    return out


def build_seed(
    kind: SeedKind,
    grid: Grid1D,
    params: SystemParams,
    rng_seed: int = 0,
) -> FieldPair:
    """Initial condition for the relaxation; always renormalized by the first step."""
    mu_tf = tf_mu_from_norm(params.total_norm, params.omega) if params.omega > 0 else 1.0
    if kind is SeedKind.TF:
        phi1 = tf_profile(params, mu_tf, grid) if params.omega > 0 else np.ones(grid.n_points)
        phi2 = np.zeros(grid.n_points)
    elif kind is SeedKind.CONSTANT:
        phi1 = np.ones(grid.n_points)
        phi2 = np.ones(grid.n_points)
    else:
        rng = np.random.default_rng(rng_seed)
        envelope = tf_profile(params, mu_tf, grid) if params.omega > 0 else np.ones(grid.n_points)
        amp = 0.05 * np.sqrt(mu_tf)
        phi1 = envelope + _smooth_noise(grid, rng, amp)
        phi2 = _smooth_noise(grid, rng, amp)
    phi1 = phi1.copy()
    phi2 = phi2.copy()
    phi1[0] = phi1[-1] = 0.0
    phi2[0] = phi2[-1] = 0.0
    scale = np.sqrt(params.total_norm / max(FieldPair(grid, phi1, phi2).norm(), 1e-300))
    return FieldPair(grid=grid, phi1=phi1 * scale, phi2=phi2 * scale)


def solve_ground_state(
    params: SystemParams,
    profile: CouplingProfile,
    grid: Grid1D,
    config: SolverConfig = SolverConfig(),
    rng_seed: int = 0,
    seed_fields: FieldPair | None = None,
) -> GroundStateResult:
    """Relax to the ground state; returns certificates alongside the fields.

    Convergence requires both the per-unit-tau relative energy change to
    drop below ``energy_tol`` (measured over a trailing window of one tau
    unit) and the stationary residual to drop below ``residual_tol``.
    Hitting ``tau_max`` first returns converged=False rather than raising.
    """
    limit = max_stable_dtau(grid, params)
    if config.dtau > limit:
        raise SolverError(
            f"dtau={config.dtau} exceeds the explicit-scheme stability limit "
            f"~{limit:.3e} for n_points={grid.n_points}; reduce dtau or n_points"
        )
    stepper = _Stepper(grid, params, profile, config.dtau)
    if seed_fields is not None:
        phi = seed_fields.stacked().copy()
        phi[:, 0] = 0.0
        phi[:, -1] = 0.0
        phi = stepper.renormalize(phi)
    else:
        phi = build_seed(config.seed_kind, grid, params, rng_seed).stacked().copy()

    def wrap(p):
        return FieldPair(grid=grid, phi1=p[0], phi2=p[1])

    sample_every = max(1, round(0.1 / config.dtau))
    window = 10  # samples; about one tau unit at the default cadence
    n_steps = max(1, int(round(config.tau_max / config.dtau)))
    e_now = energy(wrap(phi), params, profile)
    trace = [(0.0, e_now)]
    converged = False
    residual = np.inf
    it = 0
    for it in range(1, n_steps + 1):
        phi = stepper.advance(phi)
        if it % sample_every == 0:
            if not np.all(np.isfinite(phi)):
                raise SolverError(
                    f"relaxation became non-finite at tau={it * config.dtau:.3f} "
                    f"(dtau={config.dtau}, stability limit ~{limit:.3e})"
                )
            tau = it * config.dtau
            fields = wrap(phi)
            e_now = energy(fields, params, profile)
            trace.append((tau, e_now))
            if len(trace) > window:
                tau_prev, e_prev = trace[-1 - window]
                rate = abs(e_now - e_prev) / (max(abs(e_now), 1e-300) * (tau - tau_prev))
                if rate < config.energy_tol:
                    mu = chemical_potential(fields, params, profile)
                    residual = stationary_residual(fields, mu, params, profile)
                    if residual < config.residual_tol:
                        converged = True
                        break
                    log.debug(
                        "tau=%.1f energy settled (rate=%.2e) but residual=%.2e still above %g",
                        tau, rate, residual, config.residual_tol,
                    )
    if not np.all(np.isfinite(phi)):
        raise SolverError("relaxation became non-finite")
    fields = wrap(phi)
    mu = chemical_potential(fields, params, profile)
    residual = stationary_residual(fields, mu, params, profile)
    e_now = energy(fields, params, profile)
    if not converged:
        log.warning(
            "no convergence by tau_max=%.1f (residual=%.2e, tol=%g)",
            config.tau_max, residual, config.residual_tol,
        )
    return GroundStateResult(
        fields=fields,
        mu=mu,
        energy=e_now,
        iterations=it,
        energy_trace=tuple(trace),
        converged=converged,
        final_residual=residual,
        params=params,
        profile=profile,
        config=config,
        rng_seed=rng_seed,
        seed_kind=config.seed_kind.value,
    )
