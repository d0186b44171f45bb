import numpy as np
import pytest

from bico import (
    CouplingProfile,
    FieldPair,
    Parity,
    SolverConfig,
    SystemParams,
    make_grid,
)


@pytest.fixture
def small_grid():
    return make_grid(10.0, 64)


@pytest.fixture
def quick_solver_config():
    """Coarse-grid-friendly settings for fast unit-test solves."""
    return SolverConfig(dtau=5e-3, tau_max=200.0, energy_tol=1e-10, residual_tol=1e-6)


def smooth_pair(grid, amp1=0.4, amp2=0.2, seed=1):
    """Deterministic smooth fields vanishing at the endpoints."""
    rng = np.random.default_rng(seed)
    x01 = (grid.nodes + grid.x_max) / (2 * grid.x_max)
    def series(amp):
        out = np.zeros(grid.n_points)
        for k, c in enumerate(rng.standard_normal(6), start=1):
            out += c * np.sin(k * np.pi * x01)
        return amp * out / max(np.max(np.abs(out)), 1e-12)
    return FieldPair(grid=grid, phi1=series(amp1), phi2=series(amp2))


@pytest.fixture
def odd_profile():
    return CouplingProfile(amplitude=0.1, wavenumber=0.4624, parity=Parity.ODD)


@pytest.fixture
def default_params():
    return SystemParams(g=0.0, omega=0.05, total_norm=2.41)
