import math

import numpy as np
import pytest

from bico import (
    CouplingProfile,
    FieldPair,
    Parity,
    SystemParams,
    chemical_potential,
    coupling_at,
    energy,
    make_grid,
    stationary_residual,
    trap_at,
)
from bico.model import grid_from_nodes, residual_fields
from bico.thomas_fermi import tf_mu_from_norm, tf_profile

from conftest import smooth_pair


class TestGrid:
    def test_default_spacing(self):
        g = make_grid(25.0, 1024)
        assert g.spacing == pytest.approx(50.0 / 1023)
        assert g.nodes.size == 1024

    def test_endpoints_exact(self):
        g = make_grid(1.0, 16)
        assert g.nodes[0] == -1.0
        assert g.nodes[-1] == 1.0

    def test_symmetric_and_increasing(self):
        for n in (16, 17, 101, 1024):
            g = make_grid(7.3, n)
            assert np.all(np.diff(g.nodes) > 0)
            assert np.array_equal(g.nodes[::-1], -g.nodes)

    def test_odd_point_count_has_center(self):
        g = make_grid(5.0, 65)
        assert g.nodes[32] == 0.0

    def test_too_few_points_rejected(self):
        with pytest.raises(ValueError, match="at least 16"):
            make_grid(25.0, 8)

    def test_nonpositive_x_max_rejected(self):
        with pytest.raises(ValueError, match="positive"):
            make_grid(0.0, 64)

    def test_round_trip_from_nodes(self):
        g = make_grid(25.0, 128)
        g2 = grid_from_nodes(g.nodes.copy())
        assert np.array_equal(g.nodes, g2.nodes)
        assert g2.spacing == pytest.approx(g.spacing)


class TestCouplingAndTrap:
    def test_odd_vanishes_at_center(self):
        p = CouplingProfile(amplitude=0.1, wavenumber=0.4624, parity=Parity.ODD)
        assert coupling_at(p, 0.0) == 0.0

    def test_even_at_center(self):
        p = CouplingProfile(amplitude=1.0, wavenumber=0.4624, parity=Parity.EVEN)
        assert coupling_at(p, 0.0) == 1.0

    def test_odd_quarter_period(self):
        p = CouplingProfile(amplitude=0.1, wavenumber=0.5, parity=Parity.ODD)
        assert coupling_at(p, math.pi) == pytest.approx(0.1, rel=1e-12)

    def test_zero_wavenumber_limits(self):
        even = CouplingProfile(amplitude=0.7, wavenumber=0.0, parity=Parity.EVEN)
        odd = CouplingProfile(amplitude=0.7, wavenumber=0.0, parity=Parity.ODD)
        x = np.linspace(-3, 3, 7)
        assert np.all(coupling_at(even, x) == 0.7)
        assert np.all(coupling_at(odd, x) == 0.0)

    def test_negative_amplitude_rejected(self):
        with pytest.raises(ValueError, match="non-negative"):
            CouplingProfile(amplitude=-0.1, wavenumber=1.0, parity=Parity.ODD)

    def test_trap_values(self):
        params = SystemParams(g=0.0, omega=0.05)
        assert trap_at(params, 0.0) == 0.0
        assert trap_at(params, 25.0) == pytest.approx(0.78125, rel=1e-12)
        untrapped = SystemParams(g=0.0, omega=0.0)
        assert trap_at(untrapped, 17.3) == 0.0


def constant_pair(grid, a1, a2):
    return FieldPair(
        grid=grid,
        phi1=np.full(grid.n_points, a1),
        phi2=np.full(grid.n_points, a2),
    )


class TestEnergy:
    def test_vacuum(self, small_grid, odd_profile, default_params):
        zero = constant_pair(small_grid, 0.0, 0.0)
        assert energy(zero, default_params, odd_profile) == 0.0

    def test_constant_fields_unit_measure(self):
        # phi1^2 = phi2^2 = 1/2, g = 1, A = 0, omega = 0 on a unit-measure domain
        grid = make_grid(0.5, 33)
        pair = constant_pair(grid, math.sqrt(0.5), math.sqrt(0.5))
        params = SystemParams(g=1.0, omega=0.0, total_norm=1.0)
        profile = CouplingProfile(amplitude=0.0, wavenumber=0.0, parity=Parity.EVEN)
        assert energy(pair, params, profile) == pytest.approx(0.5, rel=1e-12)

    def test_symmetric_uniform_density(self):
        # N = 1, g = 0, A = 0.2, sign-locked: density (g+1)N^2/4 - N|A|/2 = 0.15
        grid = make_grid(8.0, 65)
        amp = math.sqrt(0.5)
        pair = constant_pair(grid, amp, -amp)
        params = SystemParams(g=0.0, omega=0.0, total_norm=1.0)
        profile = CouplingProfile(amplitude=0.2, wavenumber=0.0, parity=Parity.EVEN)
        per_length = energy(pair, params, profile) / (2 * grid.x_max)
        assert per_length == pytest.approx(0.15, rel=1e-12)

    def test_mismatched_lengths_rejected(self, small_grid):
        with pytest.raises(ValueError, match="shape"):
            FieldPair(
                grid=small_grid,
                phi1=np.zeros(small_grid.n_points),
                phi2=np.zeros(small_grid.n_points + 1),
            )

    def test_non_finite_fields_rejected(self, small_grid):
        bad = np.zeros(small_grid.n_points)
        bad[3] = np.nan
        with pytest.raises(ValueError, match="finite"):
            FieldPair(grid=small_grid, phi1=bad, phi2=np.zeros_like(bad))

    def test_field_pair_isolated_from_caller(self, small_grid):
        source = np.zeros(small_grid.n_points)
        pair = FieldPair(grid=small_grid, phi1=source, phi2=source.copy())
        source[0] = 7.0  # caller's array stays writable and detached
        assert pair.phi1[0] == 0.0

    def test_global_sign_flip_invariance(self, small_grid, odd_profile, default_params):
        pair = smooth_pair(small_grid)
        flipped = FieldPair(grid=small_grid, phi1=-pair.phi1, phi2=-pair.phi2)
        e0 = energy(pair, default_params, odd_profile)
        e1 = energy(flipped, default_params, odd_profile)
        assert e1 == pytest.approx(e0, rel=1e-12)

    def test_parity_covariance_odd(self, small_grid, odd_profile, default_params):
        # reflecting x and flipping phi2's sign leaves the energy unchanged
        pair = smooth_pair(small_grid)
        reflected = FieldPair(
            grid=small_grid, phi1=pair.phi1[::-1].copy(), phi2=-pair.phi2[::-1].copy()
        )
        e0 = energy(pair, default_params, odd_profile)
        e1 = energy(reflected, default_params, odd_profile)
        assert e1 == pytest.approx(e0, rel=1e-10)

    def test_gradient_matches_stationary_operator(self):
        # finite-difference dE/dphi_n(x_i) against 2 h * (bracket terms)
        grid = make_grid(6.0, 48)
        pair = smooth_pair(grid, seed=3)
        params = SystemParams(g=0.7, omega=0.1, total_norm=1.0)
        profile = CouplingProfile(amplitude=0.3, wavenumber=0.9, parity=Parity.ODD)
        r1, r2 = residual_fields(pair, 0.0, params, profile)
        h = grid.spacing
        eps = 1e-6
        for comp, analytic in ((0, r1), (1, r2)):
            arrays = [pair.phi1.copy(), pair.phi2.copy()]
            for i in (10, 17, 24, 33):
                base = arrays[comp][i]
                arrays[comp][i] = base + eps
                e_plus = energy(FieldPair(grid, arrays[0], arrays[1]), params, profile)
                arrays[comp][i] = base - eps
                e_minus = energy(FieldPair(grid, arrays[0], arrays[1]), params, profile)
                arrays[comp][i] = base
                fd = (e_plus - e_minus) / (2 * eps)
                expected = 2.0 * h * analytic[i - 1]  # residual arrays start at node 1
                scale = max(abs(expected), 1e-3 * np.max(np.abs(analytic)) * 2 * h)
                assert abs(fd - expected) <= 1e-5 * scale


class TestChemicalPotential:
    def test_uniform_symmetric_state(self):
        # mu = (1+g) N/2 - |A|/2 for the sign-locked equal-share state
        grid = make_grid(8.0, 64)
        for g, A, dens in ((0.0, 0.2, 1.0), (2.0 / 3.0, 1.0, 2.0), (2.0, 0.5, 0.7)):
            amp = math.sqrt(dens / 2)
            pair = constant_pair(grid, amp, -amp if A > 0 else amp)
            params = SystemParams(g=g, omega=0.0, total_norm=dens * 2 * grid.x_max)
            profile = CouplingProfile(amplitude=A, wavenumber=0.0, parity=Parity.EVEN)
            expected = 0.5 * (1 + g) * dens - 0.5 * abs(A)
            assert chemical_potential(pair, params, profile) == pytest.approx(expected, rel=1e-12)

    def test_uniform_asymmetric_state(self):
        # mu = N for the polarized state, independent of g and A
        grid = make_grid(8.0, 64)
        g, A, dens = 2.0, 0.1, 1.0
        disc = math.sqrt(dens**2 - (A / (g - 1)) ** 2)
        p1 = math.sqrt(0.5 * (dens + disc))
        p2 = -math.sqrt(0.5 * (dens - disc))  # sign lock: -sgn((g-1)A)
        pair = constant_pair(grid, p1, p2)
        params = SystemParams(g=g, omega=0.0, total_norm=dens * 2 * grid.x_max)
        profile = CouplingProfile(amplitude=A, wavenumber=0.0, parity=Parity.EVEN)
        assert chemical_potential(pair, params, profile) == pytest.approx(dens, rel=1e-12)

    def test_zero_fields_rejected(self, small_grid, odd_profile, default_params):
        zero = constant_pair(small_grid, 0.0, 0.0)
        with pytest.raises(ValueError, match="zero-norm"):
            chemical_potential(zero, default_params, odd_profile)

    def test_tf_fields_near_tf_mu(self):
        # The non-kinetic part reproduces the TF chemical potential to O(h^2);
        # the full value carries the (physical) kinetic correction of the sharp
        # TF edge, which is a few percent at these parameters.
        grid = make_grid(25.0, 1024)
        params = SystemParams(g=0.0, omega=0.05, total_norm=2.41)
        profile = CouplingProfile(amplitude=0.0, wavenumber=0.4624, parity=Parity.ODD)
        mu_tf = tf_mu_from_norm(params.total_norm, params.omega)
        phi1 = tf_profile(params, mu_tf, grid)
        pair = FieldPair(grid=grid, phi1=phi1, phi2=np.zeros_like(phi1))
        mu_full = chemical_potential(pair, params, profile)
        assert mu_full == pytest.approx(mu_tf, rel=0.20)
        assert mu_full > mu_tf  # the kinetic term only adds
        h = grid.spacing
        v = trap_at(params, grid.nodes)
        dens = v * phi1**2 + phi1**4
        non_kinetic = h * (dens.sum() - 0.5 * (dens[0] + dens[-1])) / pair.norm()
        assert non_kinetic == pytest.approx(mu_tf, rel=1e-3)


class TestStationaryResidual:
    def test_vacuum_solves_everything(self, small_grid, odd_profile, default_params):
        zero = constant_pair(small_grid, 0.0, 0.0)
        assert stationary_residual(zero, 0.37, default_params, odd_profile) == 0.0

    def test_exact_uniform_state(self):
        # constant symmetric state with omega = 0 and constant coupling:
        # interior residual vanishes to round-off
        grid = make_grid(8.0, 64)
        dens, g, A = 1.0, 0.5, 0.2
        amp = math.sqrt(dens / 2)
        pair = constant_pair(grid, amp, -amp)
        params = SystemParams(g=g, omega=0.0, total_norm=dens * 2 * grid.x_max)
        profile = CouplingProfile(amplitude=A, wavenumber=0.0, parity=Parity.EVEN)
        mu = 0.5 * (1 + g) * dens - 0.5 * A
        assert stationary_residual(pair, mu, params, profile) < 1e-14
