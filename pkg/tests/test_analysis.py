import math
import warnings

import numpy as np
import pytest

import relwigner as rw
from relwigner.errors import InvalidInputError, PreconditionError


def make_packet(p0=4.0, sigma_x=0.5, x0=0.0):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return rw.WavepacketSpec(p0=p0, sigma_x=sigma_x, x0=x0)


def synthetic_ridge_grid(frequency_of_tau, taus, omegas, width=0.4):
    vals = np.exp(-(omegas[None, :] - frequency_of_tau(taus)[:, None]) ** 2
                  / (2 * width ** 2))
    return rw.TimeFrequencyGrid(taus, omegas, vals)


class TestExtractRidge:
    def test_inertial_packet_constant_ridge(self):
        v = 0.5
        dv = math.sqrt((1 - v) / (1 + v))
        traj = rw.Trajectory(rw.ConstantProfile(0.0), rapidity0=math.atanh(v))
        wp = make_packet(p0=6.0, sigma_x=0.5)
        taus = np.linspace(-1.0, 1.0, 21)
        omegas = np.linspace(1.0, 8.0, 141)
        grid = rw.excess_wigner(rw.GaussianFock(1, wp), traj, taus, omegas,
                                upsilon_max=14.0, n_upsilon=2048)
        ridge = rw.extract_ridge(grid, omega_min=1.2)
        np.testing.assert_allclose(ridge.omegas, dv * wp.p0, rtol=0.02)

    def test_uniform_acceleration_ridge(self, uniform_traj):
        # the per-row maximum sits an Airy lobe above the curve, a relative
        # offset ~(a/omega)^(2/3); at p0/a = 100 it is below the 2% target
        # over the packet support
        wp = make_packet(p0=100.0, sigma_x=0.05)
        taus = np.linspace(-0.1, 0.1, 21)
        omegas = np.linspace(70.0, 130.0, 601)
        grid = rw.excess_wigner(rw.GaussianFock(1, wp), uniform_traj, taus,
                                omegas, upsilon_max=2.0, n_upsilon=1024)
        ridge = rw.extract_ridge(grid, omega_min=75.0)
        want = wp.p0 * np.exp(-ridge.taus)
        assert np.max(np.abs(ridge.omegas - want) / want) < 0.02

    def test_zero_grid_empty_ridge(self):
        taus = np.linspace(0, 1, 8)
        omegas = np.linspace(0, 1, 8)
        grid = rw.TimeFrequencyGrid(taus, omegas, np.zeros((8, 8)))
        ridge = rw.extract_ridge(grid, omega_min=0.1)
        assert ridge.taus.size == 0

    def test_scale_invariance(self):
        taus = np.linspace(0, 2, 33)
        omegas = np.linspace(0.5, 6, 111)
        grid = synthetic_ridge_grid(lambda t: 3.0 + 0.5 * t, taus, omegas)
        r1 = rw.extract_ridge(grid, omega_min=0.6)
        r2 = rw.extract_ridge(grid.scaled(37.0), omega_min=0.6)
        np.testing.assert_allclose(r1.omegas, r2.omegas, rtol=1e-12)

    def test_no_columns_above_omega_min(self):
        taus = np.linspace(0, 1, 8)
        omegas = np.linspace(0, 1, 8)
        grid = rw.TimeFrequencyGrid(taus, omegas, np.ones((8, 8)))
        with pytest.raises(PreconditionError):
            rw.extract_ridge(grid, omega_min=5.0)


class TestRecoverAcceleration:
    def test_exponential_ridge(self):
        taus = np.linspace(-1, 1, 81)
        omegas = np.linspace(0.5, 9, 501)
        a = 0.8
        grid = synthetic_ridge_grid(lambda t: 4.0 * np.exp(-a * t), taus, omegas,
                                    width=0.3)
        ridge = rw.extract_ridge(grid, omega_min=0.6)
        ts, a_est = rw.recover_acceleration(ridge)
        np.testing.assert_allclose(a_est, a, rtol=1e-3)

    def test_constant_ridge(self):
        ridge = rw.RidgeCurve(np.linspace(0, 1, 11), np.full(11, 3.0), np.ones(11))
        _, a_est = rw.recover_acceleration(ridge)
        np.testing.assert_allclose(a_est, 0.0, atol=1e-14)

    def test_too_few_points(self):
        ridge = rw.RidgeCurve(np.array([0.0, 1.0]), np.array([1.0, 2.0]),
                              np.ones(2))
        with pytest.raises(InvalidInputError):
            rw.recover_acceleration(ridge)

    def test_twin_profile_sign_flips(self, twin_traj):
        # packets received at the printed transitions: the recovered
        # acceleration crosses zero within 0.1/a of each transition
        for tau_r, before, after in [(-1.0, 1.0, -1.0), (1.0, -1.0, 1.0)]:
            x0 = -twin_traj.tminusx(tau_r)
            wp = make_packet(p0=12.0, sigma_x=0.15, x0=x0)
            d_r = math.exp(-twin_traj.rapidity(tau_r))
            w_r = wp.p0 * d_r
            taus = np.linspace(tau_r - 0.45, tau_r + 0.45, 37)
            omegas = np.linspace(0.5 * w_r, 1.8 * w_r, 351)
            grid = rw.excess_wigner(rw.GaussianFock(1, wp), twin_traj, taus,
                                    omegas, upsilon_max=5.0, n_upsilon=1024)
            ridge = rw.extract_ridge(grid, omega_min=omegas[0] + 0.1)
            ts, a_est = rw.recover_acceleration(
                ridge, weight_floor=0.02 * ridge.weights.max())
            crossings = ts[np.where(np.diff(np.sign(a_est)) != 0)[0]]
            assert crossings.size >= 1
            assert np.min(np.abs(crossings - tau_r)) < 0.1
            assert np.sign(a_est[0]) == before and np.sign(a_est[-1]) == after


class TestStationarySmooth:
    def test_stationary_grid_unchanged(self):
        # constant profile: huge stationary window, stationary input
        taus = np.linspace(-10, 10, 41)
        omegas = np.linspace(-3, 3, 49)
        vals = np.tile(rw.thermal_excess_wigner(1.0, omegas), (41, 1))
        grid = rw.TimeFrequencyGrid(taus, omegas, vals)
        out = rw.stationary_smooth(grid, rw.ConstantProfile(1.0), ratio=0.05)
        assert np.max(np.abs(out.values - vals)) < 1e-3 * np.max(vals)

    def test_mass_preservation(self):
        # varying stationary width across the grid
        prof = rw.SinusoidalProfile(1.0, 0.8, 1.0 / (10 * np.pi))
        taus = np.linspace(-12, 12, 49)
        omegas = np.linspace(-3, 3, 41)
        rng = np.random.default_rng(5)
        vals = rng.random((49, 41))
        grid = rw.TimeFrequencyGrid(taus, omegas, vals)
        out = rw.stationary_smooth(grid, prof, ratio=0.05)
        mass_in = np.sum(vals)
        mass_out = np.sum(out.values)
        assert mass_out == pytest.approx(mass_in, rel=1e-6)

    def test_narrow_feature_spreads_to_window_width(self):
        # delta-like feature in time acquires the stationary width
        taus = np.linspace(-8, 8, 161)
        omegas = np.linspace(-2, 2, 33)
        vals = np.zeros((161, 33))
        vals[80, :] = 1.0
        grid = rw.TimeFrequencyGrid(taus, omegas, vals)
        width = 1.5
        out = rw.stationary_smooth(grid, rw.ConstantProfile(1.0), ratio=0.05,
                                   cap=width)
        col = out.values[:, 16]
        mean = np.sum(taus * col) / np.sum(col)
        var = np.sum((taus - mean) ** 2 * col) / np.sum(col)
        assert math.sqrt(var) == pytest.approx(width, rel=0.05)

    def test_degenerate_rows_flagged(self):
        f = 1.0 / (10 * np.pi)
        prof = rw.SinusoidalProfile(1.0, 1.0, f)
        tau_dead = -0.25 / f
        taus = np.linspace(tau_dead - 2, tau_dead + 2, 17)
        omegas = np.linspace(-2, 2, 17)
        grid = rw.TimeFrequencyGrid(taus, omegas, np.ones((17, 17)))
        out = rw.stationary_smooth(grid, prof, ratio=0.05, cap=5.0)
        assert any("degenerate" in n for n in out.meta.notes)

    def test_smoothed_column_is_thermal(self):
        # strong drive a0 = a1 at the acceleration maximum: away from the
        # omega ~ 0 kink (which any conjugate-width blur rounds off) the
        # smoothed column matches the thermal curve at a(tau); light version
        # of the acceptance criterion
        a0 = 1.0
        f = (1.0 / 5.0) / (2 * np.pi)
        prof = rw.SinusoidalProfile(a0, a0, f)
        traj = rw.Trajectory(prof)
        period = 1.0 / f
        tau_max = 0.25 / f
        taus = np.linspace(tau_max - period / 2, tau_max + period / 2, 97)
        omegas = np.linspace(-4.5, 4.5, 97)
        job = rw.VacuumJob(traj, taus, omegas, upsilon_max=50.0, n_upsilon=8192)
        grid = rw.vacuum_excess_wigner(job)
        sm = rw.stationary_smooth(grid, prof, ratio=0.05, cap=period / 2)
        a_tau = prof.value(tau_max)
        band = (omegas >= 0.5 * a_tau) & (omegas <= 2 * a_tau)
        col = sm.values[48][band]
        want = rw.thermal_excess_wigner(a_tau, omegas[band])
        peak = a_tau / (4 * np.pi ** 2)   # thermal curve maximum
        assert np.max(np.abs(col - want)) < 0.1 * peak
