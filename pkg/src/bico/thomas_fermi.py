"""Thomas-Fermi perturbative ansatz for the strongly asymmetric regime.

For small coupling amplitude the minority component rides on top of the
Thomas-Fermi majority profile.  With the effective chemical potential

    mu_eff = mu + A^2 / (4 alpha^2)

and T(x) = mu_eff - omega^2 x^2 / 2 the sampled pair inside the support
T(x) > 0 is

    phi2 = -(A/2) sqrt(T) / [(g-1) T + alpha^2/2] * {sin|cos}(alpha x)
    phi1 = sqrt(T) * (1 -/+ (A^2/16) cos(2 alpha x)
                      / [(alpha^2 + T) ((g-1) T + alpha^2/2)])

with the upper sign for odd modulation, the lower for even; both fields
vanish outside the support.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import CouplingProfile, FieldPair, Grid1D, Parity, SystemParams


class TFDenominatorError(ValueError):
    """The phi2 denominator changes sign inside the support (possible for g < 1).

    Carries the grid locations where the denominator crosses zero instead of
    silently producing near-infinities.
    """

    def __init__(self, locations):
        self.locations = tuple(float(x) for x in locations)
        super().__init__(
            "perturbative denominator (g-1)*(mu_eff - V) + alpha^2/2 vanishes "
            f"inside the support near x = {self.locations}"
        )


@dataclass(frozen=True)
class TFApprox:
    mu_eff: float
    support_radius: float
    fields: FieldPair


def effective_mu(mu: float, A: float, alpha: float) -> float:
    """mu + A^2/(4 alpha^2); the shift removes a secular term at second order."""
    if alpha <= 0:
        raise ValueError(f"alpha must be positive (formula singular at 0), got {alpha}")
    return mu + A**2 / (4.0 * alpha**2)


def tf_mu_from_norm(total_norm: float, omega: float) -> float:
    """Invert the single-component TF normalization N = (4 sqrt(2)/3) mu^{3/2} / omega."""
    if not (total_norm > 0 and omega > 0):
        raise ValueError("total_norm and omega must be positive")
    return (3.0 * total_norm * omega / (4.0 * math.sqrt(2.0))) ** (2.0 / 3.0)


def tf_profile(params: SystemParams, mu: float, grid: Grid1D) -> np.ndarray:
    """Single-component TF profile sqrt(max(0, mu - V)) on the grid."""
    v = 0.5 * params.omega**2 * grid.nodes**2
    return np.sqrt(np.maximum(0.0, mu - v))


def tf_pair(
    params: SystemParams, profile: CouplingProfile, mu: float, grid: Grid1D
) -> TFApprox:
    """Sample the perturbative pair on the grid.

    ``mu`` is the bare chemical potential, typically taken from a converged
    decoupled solve; the effective shift is applied internally.
    """
    if not profile.wavenumber > 0:
        raise ValueError("tf_pair requires a positive modulation wavenumber")
    A = profile.amplitude
    alpha = profile.wavenumber
    g = params.g
    mu_eff = effective_mu(mu, A, alpha)
    if not mu_eff > 0:
        raise ValueError(f"effective chemical potential must be positive, got {mu_eff}")
    x = grid.nodes
    v = 0.5 * params.omega**2 * x**2
    t = mu_eff - v
    support = t > 0
    den = (g - 1.0) * t + 0.5 * alpha**2

    sign_flips = support[:-1] & support[1:] & (np.sign(den[:-1]) != np.sign(den[1:]))
    if np.any(sign_flips) or np.any(support & (den == 0.0)):
        locs = x[:-1][sign_flips]
        if locs.size == 0:
            locs = x[support & (den == 0.0)]
        raise TFDenominatorError(locs)

    phase = alpha * x
    osc = np.sin(phase) if profile.parity is Parity.ODD else np.cos(phase)
    sqrt_t = np.sqrt(np.where(support, t, 0.0))
    phi2 = np.where(support, -(A / 2.0) * sqrt_t / den * osc, 0.0)
    corr = second_order_correction(params, profile, mu_eff, x)
    phi1 = np.where(support, sqrt_t * (1.0 + corr), 0.0)
    support_radius = (
        math.sqrt(2.0 * mu_eff) / params.omega if params.omega > 0 else math.inf
    )
    fields = FieldPair(grid=grid, phi1=phi1, phi2=phi2)
    return TFApprox(mu_eff=mu_eff, support_radius=support_radius, fields=fields)


def second_order_correction(
    params: SystemParams, profile: CouplingProfile, mu_eff: float, x: np.ndarray
) -> np.ndarray:
    """Relative second-order correction to the majority profile.

    Negative at x = 0 for odd modulation whenever the perturbative
    denominator is positive there, producing the central dip of the
    majority component.
    """
    A = profile.amplitude
    alpha = profile.wavenumber
    t = mu_eff - 0.5 * params.omega**2 * np.asarray(x, dtype=float) ** 2
    den = (params.g - 1.0) * t + 0.5 * alpha**2
    upper = profile.parity is Parity.ODD
    sign = -1.0 if upper else 1.0
    with np.errstate(divide="ignore", invalid="ignore"):
        corr = sign * (A**2 / 16.0) * np.cos(2.0 * alpha * x) / ((alpha**2 + t) * den)
    return np.where(t > 0, corr, 0.0)
