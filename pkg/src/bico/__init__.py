"""Ground states of a trapped binary condensate whose two components are
linearly interconverted with a spatially sign-modulated strength.

The package computes ground states by norm-projected imaginary-time
relaxation, provides closed-form uniform-system analytics with a brute-force
oracle, a Thomas-Fermi perturbative ansatz for the strongly asymmetric
regime, kink (dark-soliton) counting, and a parameter-sweep harness.  A
FastAPI service wraps the library; the ``bico`` CLI is a thin client of that
service.
"""

__version__ = "0.1.0"

from .model import (
    CouplingProfile,
    FieldPair,
    Grid1D,
    GroundStateResult,
    Parity,
    SystemParams,
    chemical_potential,
    coupling_at,
    energy,
    make_grid,
    stationary_residual,
    trap_at,
)
from .uniform import (
    UniformLabel,
    UniformState,
    uniform_asymmetric,
    uniform_brute_force,
    uniform_ground_state,
    uniform_symmetric,
)
from .thomas_fermi import TFApprox, effective_mu, tf_mu_from_norm, tf_pair
from .solver import SeedKind, SolverConfig, imaginary_time_step, solve_ground_state
from .kinks import KinkReport, KinkThresholdConfig, ThresholdReference, count_kinks, parity_of
from .sweep import ALPHA0, MapRow, MapTable, SweepSpec, run_sweep

__all__ = [
    "ALPHA0",
    "CouplingProfile",
    "FieldPair",
    "Grid1D",
    "GroundStateResult",
    "KinkReport",
    "KinkThresholdConfig",
    "MapRow",
    "MapTable",
    "Parity",
    "SeedKind",
    "SolverConfig",
    "SweepSpec",
    "SystemParams",
    "TFApprox",
    "ThresholdReference",
    "UniformLabel",
    "UniformState",
    "chemical_potential",
    "count_kinks",
    "coupling_at",
    "effective_mu",
    "energy",
    "imaginary_time_step",
    "make_grid",
    "parity_of",
    "run_sweep",
    "solve_ground_state",
    "stationary_residual",
    "tf_mu_from_norm",
    "tf_pair",
    "trap_at",
    "uniform_asymmetric",
    "uniform_brute_force",
    "uniform_ground_state",
    "uniform_symmetric",
]
