"""Core domain types and the discretized energy machinery.

The stationary system solved throughout the package is, for n = 1, 2 and
real fields phi_n(x),

    mu phi_n = [-1/2 d^2/dx^2 + omega^2 x^2 / 2 + phi_n^2 + g phi_{3-n}^2] phi_n
               + 1/2 Omega(x) phi_{3-n},

with the linear-coupling strength Omega(x) = A sin(alpha x) (odd) or
A cos(alpha x) (even).  Discretization: second-order central differences for
the Laplacian, trapezoidal quadrature for integrals, and cell-midpoint first
differences for the kinetic energy density so that the discrete energy
gradient reproduces the central-difference stationary operator exactly.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np


class Parity(enum.Enum):
    """Spatial symmetry of the coupling modulation: sin (odd) or cos (even)."""

    ODD = "odd"
    EVEN = "even"

    @classmethod
    def from_name(cls, name: str) -> "Parity":
        try:
            return cls(name.lower())
        except ValueError:
            raise ValueError(f"parity must be 'odd' or 'even', got {name!r}") from None


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Grid1D:
    """Uniform symmetric grid on [-x_max, +x_max], endpoints included."""

    x_max: float
    n_points: int
    spacing: float
    nodes: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "nodes", _readonly(self.nodes))

    @property
    def interior(self) -> slice:
        return slice(1, self.n_points - 1)


def make_grid(x_max: float, n_points: int) -> Grid1D:
    """Build a uniform grid symmetric about 0 with exact +/-x_max endpoints.

    Nodes are mirrored pairwise so that nodes[i] == -nodes[n-1-i] bitwise.
    """
    if not x_max > 0:
        raise ValueError(f"x_max must be positive, got {x_max}")
    if n_points < 16:
        raise ValueError(f"n_points must be at least 16, got {n_points}")
    h = 2.0 * x_max / (n_points - 1)
    half = n_points // 2
    right = (x_max - h * np.arange(half))[::-1]
    parts = [-right[::-1], right] if n_points % 2 == 0 else [-right[::-1], [0.0], right]
    nodes = np.concatenate(parts)
    if not np.all(np.diff(nodes) > 0):
        raise ValueError("grid nodes are not strictly increasing (x_max/n_points ill-conditioned)")
    return Grid1D(x_max=float(x_max), n_points=int(n_points), spacing=h, nodes=nodes)


def grid_from_nodes(nodes: np.ndarray) -> Grid1D:
    """Rebuild a Grid1D from stored node positions (profile-file round trips)."""
    nodes = np.asarray(nodes, dtype=float)
    n = nodes.size
    if n < 16:
        raise ValueError(f"grid needs at least 16 nodes, got {n}")
    if not np.all(np.diff(nodes) > 0):
        raise ValueError("grid nodes must be strictly increasing")
    x_max = float(nodes[-1])
    if not math.isclose(-nodes[0], x_max, rel_tol=1e-12):
        raise ValueError("grid nodes must be symmetric about 0")
    return Grid1D(x_max=x_max, n_points=n, spacing=2.0 * x_max / (n - 1), nodes=nodes)


@dataclass(frozen=True)
class SystemParams:
    """Physical constants: XPM coefficient g, trap frequency, total norm."""

    g: float
    omega: float = 0.05
    total_norm: float = 2.41

    def __post_init__(self):
        if self.omega < 0:
            raise ValueError(f"omega must be non-negative, got {self.omega}")
        if not self.total_norm > 0:
            raise ValueError(f"total_norm must be positive, got {self.total_norm}")


@dataclass(frozen=True)
class CouplingProfile:
    """Sign-modulated linear coupling Omega(x) = amplitude * {sin|cos}(wavenumber * x).

    A negative amplitude is normalized away: it equals a half-period shift,
    so only |A| and the sign locking it induces are physical.
    """

    amplitude: float
    wavenumber: float
    parity: Parity

    def __post_init__(self):
        if self.amplitude < 0:
            raise ValueError("amplitude must be non-negative (negative A is a phase shift; normalize first)")
        if self.wavenumber < 0:
            raise ValueError(f"wavenumber must be non-negative, got {self.wavenumber}")


def coupling_at(profile: CouplingProfile, x):
    """Evaluate Omega(x); accepts scalars or arrays."""
    x = np.asarray(x, dtype=float)
    phase = profile.wavenumber * x
    osc = np.sin(phase) if profile.parity is Parity.ODD else np.cos(phase)
    out = profile.amplitude * osc
    return float(out) if out.ndim == 0 else out


def trap_at(params: SystemParams, x):
    """Harmonic trap omega^2 x^2 / 2; accepts scalars or arrays."""
    x = np.asarray(x, dtype=float)
    out = 0.5 * params.omega**2 * x**2
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class FieldPair:
    """Real stationary wave functions sampled on a grid.

    Construction checks lengths and finiteness only; solver entry points
    additionally require homogeneous Dirichlet values at the endpoints.
    """

    grid: Grid1D
    phi1: np.ndarray
    phi2: np.ndarray

    def __post_init__(self):
        p1 = _readonly(self.phi1)
        p2 = _readonly(self.phi2)
        n = self.grid.n_points
        if p1.shape != (n,) or p2.shape != (n,):
            raise ValueError(
                f"field arrays must have shape ({n},), got {p1.shape} and {p2.shape}"
            )
        if not (np.all(np.isfinite(p1)) and np.all(np.isfinite(p2))):
            raise ValueError("field arrays must be finite")
        object.__setattr__(self, "phi1", p1)
        object.__setattr__(self, "phi2", p2)

    def stacked(self) -> np.ndarray:
        return np.array([self.phi1, self.phi2])

    def norm(self) -> float:
        h = self.grid.spacing
        return _trapz(self.phi1**2 + self.phi2**2, h)


def _trapz(y: np.ndarray, h: float) -> float:
    return float(h * (y.sum() - 0.5 * (y[0] + y[-1])))


def _check_same_grid(fields: FieldPair, *arrays):
    n = fields.grid.n_points
    for a in arrays:
        if a.shape != (n,):
            raise ValueError(f"array length {a.shape} does not match grid size {n}")


def energy(fields: FieldPair, params: SystemParams, profile: CouplingProfile) -> float:
    """Total energy functional of the pair.

    E = int [ (phi1'^2 + phi2'^2)/2 + V (phi1^2 + phi2^2)
              + (phi1^4 + phi2^4)/2 + g phi1^2 phi2^2 + Omega phi1 phi2 ] dx

    For constant fields with omega = 0 and a constant coupling this reduces
    per unit length to the uniform Hamiltonian density used in
    :mod:`bico.uniform`.
    """
    grid = fields.grid
    h = grid.spacing
    p1, p2 = fields.phi1, fields.phi2
    v = trap_at(params, grid.nodes)
    om = coupling_at(profile, grid.nodes)
    kinetic = 0.5 * (np.sum(np.diff(p1) ** 2) + np.sum(np.diff(p2) ** 2)) / h
    dens = (
        v * (p1**2 + p2**2)
        + 0.5 * (p1**4 + p2**4)
        + params.g * p1**2 * p2**2
        + om * p1 * p2
    )
    return kinetic + _trapz(dens, h)


def chemical_potential(fields: FieldPair, params: SystemParams, profile: CouplingProfile) -> float:
    """Chemical potential of the pair, identical for both components.

    mu = N^-1 int [ (phi1'^2 + phi2'^2)/2 + V (phi1^2 + phi2^2)
                    + (phi1^4 + phi2^4) + 2 g phi1^2 phi2^2
                    + Omega phi1 phi2 ] dx
    """
    grid = fields.grid
    h = grid.spacing
    p1, p2 = fields.phi1, fields.phi2
    norm = fields.norm()
    if norm <= 0:
        raise ValueError("chemical potential undefined for zero-norm fields")
    v = trap_at(params, grid.nodes)
    om = coupling_at(profile, grid.nodes)
    kinetic = 0.5 * (np.sum(np.diff(p1) ** 2) + np.sum(np.diff(p2) ** 2)) / h
    dens = (
        v * (p1**2 + p2**2)
        + (p1**4 + p2**4)
        + 2.0 * params.g * p1**2 * p2**2
        + om * p1 * p2
    )
    return (kinetic + _trapz(dens, h)) / norm


def residual_fields(
    fields: FieldPair, mu: float, params: SystemParams, profile: CouplingProfile
) -> tuple[np.ndarray, np.ndarray]:
    """Pointwise stationary-equation defect on interior nodes, per component."""
    grid = fields.grid
    h2 = grid.spacing**2
    v = trap_at(params, grid.nodes)
    om = coupling_at(profile, grid.nodes)
    out = []
    for a, b in ((fields.phi1, fields.phi2), (fields.phi2, fields.phi1)):
        lap = (a[2:] - 2.0 * a[1:-1] + a[:-2]) / h2
        r = (
            -0.5 * lap
            + (v[1:-1] + a[1:-1] ** 2 + params.g * b[1:-1] ** 2 - mu) * a[1:-1]
            + 0.5 * om[1:-1] * b[1:-1]
        )
        out.append(r)
    return out[0], out[1]


def stationary_residual(
    fields: FieldPair, mu: float, params: SystemParams, profile: CouplingProfile
) -> float:
    """Max-norm of the stationary-equation defect over interior nodes, both components."""
    r1, r2 = residual_fields(fields, mu, params, profile)
    return float(max(np.max(np.abs(r1)), np.max(np.abs(r2))))


@dataclass(frozen=True)
class GroundStateResult:
    """Converged fields plus certificates and provenance of one relaxation run."""

    fields: FieldPair
    mu: float
    energy: float
    iterations: int
    energy_trace: tuple
    converged: bool
    final_residual: float
    params: SystemParams
    profile: CouplingProfile
    config: object | None = None  # SolverConfig; untyped to avoid an import cycle
    rng_seed: int | None = None
    seed_kind: str | None = None
