"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line
with the measured figure next to its pinned tolerance.

Criterion 5 is implemented exactly as stated and fails: the band
omega/a in [8, 14] at a*tau = 1 is pre-asymptotic for the leading-order
discontinuity formula (independently verified against a 30-digit oracle;
see the companion test for the same metric on the band where the printed
asymptote actually holds, and the decisions ledger for the full analysis).
"""

import math
import time
import warnings

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq, least_squares

import relwigner as rw

warnings.filterwarnings("ignore", message=".*narrow-band.*")


def report(criterion, ok, detail):
    print(f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")


def packet(p0, sigma_x, x0=0.0):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return rw.WavepacketSpec(p0=p0, sigma_x=sigma_x, x0=x0)


def test_criterion_01_thermal_law():
    t0 = time.perf_counter()
    traj = rw.Trajectory(rw.ConstantProfile(1.0))
    omegas = np.linspace(-4.0, 4.0, 64)
    job = rw.VacuumJob(traj, np.linspace(-0.3, 0.3, 4), omegas,
                       upsilon_max=36.0, n_upsilon=4096)
    grid = rw.vacuum_excess_wigner(job)
    oracle = rw.thermal_wigner(1.0, omegas)
    total = grid.values + rw.inertial_vacuum_wigner(omegas)[None, :]
    dev = np.max(np.abs(total - oracle[None, :])) / np.max(np.abs(oracle))
    elapsed = time.perf_counter() - t0
    ok = dev < 1e-3 and elapsed < 10.0
    report(1, ok, f"thermal law sup dev {dev:.2e} (tol 1e-3), {elapsed:.1f}s (limit 10s)")
    assert dev < 1e-3
    assert elapsed < 10.0


def test_criterion_02_power_identity():
    traj = rw.Trajectory(rw.ConstantProfile(1.0))
    job = rw.VacuumJob(traj, np.array([0.0, 0.1]), np.linspace(-6, 6, 1025),
                       upsilon_max=36.0, n_upsilon=4096)
    grid = rw.vacuum_excess_wigner(job)
    want = 1.0 / (48 * math.pi ** 2)
    got = rw.integrate_power(grid, 0.0).value
    dev_const = abs(got - want) / want

    prof = rw.SinusoidalProfile(1.0, 0.1, 0.05 / (2 * np.pi))
    taus = np.linspace(0.0, 100.0, 8)
    job2 = rw.VacuumJob(rw.Trajectory(prof), taus, np.linspace(-5, 5, 641),
                        upsilon_max=45.0, n_upsilon=8192)
    grid2 = rw.vacuum_excess_wigner(job2)
    dev_sin = max(abs(rw.integrate_power(grid2, float(t)).value
                      - prof.value(t) ** 2 / (48 * math.pi ** 2))
                  / (prof.value(t) ** 2 / (48 * math.pi ** 2)) for t in taus)
    ok = dev_const < 1e-3 and dev_sin < 2e-2
    report(2, ok, f"power: constant dev {dev_const:.2e} (tol 1e-3), "
                  f"sinusoidal dev {dev_sin:.2e} (tol 2e-2)")
    assert dev_const < 1e-3
    assert dev_sin < 2e-2


def test_criterion_03_adiabatic_hierarchy():
    t0 = time.perf_counter()
    a0, a1 = 1.0, 1e-2
    f = 1e-2 * a0 / (2 * np.pi)
    period = 1.0 / f
    prof = rw.SinusoidalProfile(a0, a1, f)
    taus = period * np.array([1 / 12, 2 / 12, 3 / 12])
    omegas = np.linspace(0.0, 2 * a0, 64)
    job = rw.VacuumJob(rw.Trajectory(prof), taus, omegas,
                       upsilon_max=45.0, n_upsilon=16384)
    grid = rw.vacuum_excess_wigner(job)
    sup = [0.0, 0.0, 0.0]
    for i, tau in enumerate(taus):
        a_t = prof.value(tau)
        w0 = rw.adiabatic_W0(a_t, omegas)
        w12 = rw.correction_W12(a_t, prof.second_derivative(tau), omegas)
        w22 = rw.correction_W22(a_t, prof.derivative(tau), omegas)
        w = grid.values[i]
        sup[0] = max(sup[0], np.max(np.abs(w - w0)))
        sup[1] = max(sup[1], np.max(np.abs(w - w0 - w12)))
        sup[2] = max(sup[2], np.max(np.abs(w - w0 - w12 - w22)))
    elapsed = time.perf_counter() - t0
    ok = sup[0] > 10 * sup[1] > 100 * sup[2] and elapsed < 120.0
    report(3, ok, f"hierarchy sups {sup[0]:.2e} > 10x {sup[1]:.2e} > 10x {sup[2]:.2e} "
                  f"(ratios {sup[0]/sup[1]:.0f}, {sup[1]/sup[2]:.0f}), {elapsed:.1f}s (limit 120s)")
    assert sup[0] > 10 * sup[1]
    assert sup[1] > 10 * sup[2]
    assert elapsed < 120.0


def test_criterion_04_first_order_limits():
    t0 = time.perf_counter()
    a0, a1 = 1.0, 1e-2
    # low-frequency limit reproduces the addot kernel within 1%
    f_lo = 1e-3 * a0 / (2 * np.pi)
    tau = 0.3 / (2 * np.pi * f_lo)
    omegas = np.linspace(0.05, 2.0, 40)
    s = math.sin(2 * np.pi * f_lo * tau)
    scale = a1 * (2 * np.pi * f_lo) ** 2 * s
    w1 = np.array([rw.first_order_sinusoidal(a0, a1, f_lo, tau, w) for w in omegas])
    a_t = a0 + a1 * s
    kernel = rw.correction_W12(a_t, -a1 * (2 * np.pi * f_lo) ** 2 * s, omegas) / scale
    mask = np.abs(kernel) > 0.05 * np.max(np.abs(kernel))
    dev_lo = np.max(np.abs(w1[mask] / scale - kernel[mask]) / np.abs(kernel[mask]))

    # high-frequency reduction within 5% at f = 20 a0
    from relwigner.specfun import thermal_g, thermal_g_prime
    f_hi, tau_hi, w = 20.0 * a0, 0.013, 0.5 * a0
    a_t = a0 + a1 * math.sin(2 * np.pi * f_hi * tau_hi)
    x = 2 * np.pi * w / a_t
    reduced = (a1 * math.sin(2 * np.pi * f_hi * tau_hi) / (4 * np.pi ** 2)) * (
        (2 * np.pi / a_t) * w * thermal_g_prime(x) - thermal_g(x))
    full = rw.first_order_sinusoidal(a0, a1, f_hi, tau_hi, w)
    dev_hi = abs(full - reduced) / abs(reduced)
    elapsed = time.perf_counter() - t0
    ok = dev_lo < 0.01 and dev_hi < 0.05 and elapsed < 1.0
    report(4, ok, f"first-order limits: f->0 dev {dev_lo:.2e} (tol 1e-2), "
                  f"high-f dev {dev_hi:.2e} (tol 5e-2), {elapsed:.2f}s (limit 1s)")
    assert dev_lo < 0.01
    assert dev_hi < 0.05
    assert elapsed < 1.0


def _discontinuity_envelope_ratio(band):
    profile = rw.PiecewiseConstantProfile((0.0, 4.0), (0.0, 1.0, 0.0))
    traj = rw.Trajectory(profile)
    omegas = np.linspace(band[0], band[1], 97)
    job = rw.VacuumJob(traj, np.array([1.0]), omegas,
                       upsilon_max=36.0, n_upsilon=512 * 36)
    grid = rw.vacuum_excess_wigner(job)
    resid = grid.values[0] - rw.thermal_excess_wigner(1.0, omegas)
    asym = rw.discontinuity_asymptote(1.0, 1.0, omegas, side="after")
    return math.sqrt(np.trapezoid(resid ** 2, omegas) / np.trapezoid(asym ** 2, omegas))


def test_criterion_05_discontinuity_asymptotics_as_stated():
    ratio = _discontinuity_envelope_ratio((8.0, 14.0))
    ok = 0.9 < ratio < 1.1
    report(5, ok, f"envelope ratio {ratio:.3f} on omega/a in [8,14] at a*tau=1 "
                  f"(tol [0.9,1.1]); band is pre-asymptotic, see ledger and companion test")
    assert 0.9 < ratio < 1.1, (
        f"envelope ratio {ratio:.4f} outside [0.9, 1.1]: the printed leading-order "
        "asymptote is ~16% high on this band (verified against a 30-digit "
        "independent oracle; ratio converges to 1 for omega/a >~ 20, see "
        "test_criterion_05_companion_asymptotic_band)")


def test_criterion_05_companion_asymptotic_band():
    ratio = _discontinuity_envelope_ratio((20.0, 30.0))
    ok = 0.9 < ratio < 1.1
    report("5b", ok, f"envelope ratio {ratio:.3f} on omega/a in [20,30] at a*tau=1 "
                     f"(tol [0.9,1.1])")
    assert 0.9 < ratio < 1.1


def test_criterion_06_doppler_kinematics():
    traj = rw.Trajectory(rw.ConstantProfile(1.0))
    offsets = {}
    for x0 in (0.0, 0.5, 0.9):
        wp = packet(4.0, 0.5, x0)
        d_r = 1.0 + x0
        tau_r, omega_r = -math.log(d_r), wp.p0 * d_r
        sig_tau, sig_om = wp.sigma_x / d_r, d_r / (2 * wp.sigma_x)
        # grid cells at the spot widths, prediction on a node
        taus = tau_r + sig_tau * np.arange(-5, 6)
        n_below = int(min(5, (omega_r - 0.3) // sig_om))
        omegas = omega_r + sig_om * np.arange(-n_below, 6)
        grid = rw.excess_wigner(rw.GaussianFock(1, wp), traj, taus, omegas,
                                upsilon_max=12.0, n_upsilon=2048)
        i, j = np.unravel_index(np.argmax(grid.values), grid.values.shape)
        di = i - int(np.argmin(np.abs(taus - tau_r)))
        dj = j - int(np.argmin(np.abs(omegas - omega_r)))
        offsets[x0] = (di, dj)
    ok = all(abs(di) <= 1 and abs(dj) <= 1 for di, dj in offsets.values())
    report(6, ok, f"argmax offsets in spot-width cells vs (tau_r, omega_r): {offsets} "
                  f"(tol: one cell)")
    for x0, (di, dj) in offsets.items():
        assert abs(di) <= 1 and abs(dj) <= 1, (x0, di, dj)


def test_criterion_07_twin_delay():
    traj = rw.Trajectory(rw.twin_profile(1.0))
    prof = traj.profile

    # independent oracle for the light-cone coordinate
    def tminusx_oracle(t):
        pts = [p for p in (-2, -1, 1, 2) if min(0, t) < p < max(0, t)]
        val, _ = quad(lambda u: np.exp(-prof.integral(u)), 0.0, t,
                      points=pts, limit=400)
        return val

    target = rw.twin_delay(1.0, 3.0)   # 4 sinh(3/4)
    s_star = brentq(lambda s: tminusx_oracle(s + 3.0) - tminusx_oracle(s) - target,
                    -2.0, -1.5, xtol=1e-13)
    x0_a, x0_b = -tminusx_oracle(s_star), -tminusx_oracle(s_star + 3.0)
    t1 = traj.reception_time(x0_a)
    t2 = traj.reception_time(x0_b)
    dev = abs((t2 - t1) - 3.0)

    # the two Wigner spots of the corresponding packet pair sit 3 apart
    # receptions at ~-1.80 and ~+1.20 with redshift factors 0.82 and 2.24:
    # narrow packets keep the spot maxima localized against the fringe
    # enhancement along the redshift curve and the midpoint cross term
    wp1 = packet(16.0, 0.1, x0_a)
    wp2 = packet(16.0, 0.1, x0_b)
    state = rw.Superposition(((1.0, wp1), (1.0, wp2)), statistics="fock")
    taus = np.linspace(-2.6, 2.0, 93)   # step 0.05
    omegas = np.linspace(2.0, 55.0, 213)
    grid = rw.excess_wigner(state, traj, taus, omegas, upsilon_max=4.0,
                            n_upsilon=2048)
    profile_tau = np.max(grid.values, axis=1)
    win1 = np.abs(taus - t1) < 0.5
    win2 = np.abs(taus - t2) < 0.5
    spot1 = taus[win1][np.argmax(profile_tau[win1])]
    spot2 = taus[win2][np.argmax(profile_tau[win2])]
    spot_sep_dev = abs((spot2 - spot1) - 3.0)
    ok = dev < 1e-6 and spot_sep_dev <= grid.tau_step + 1e-12
    report(7, ok, f"reception separation dev {dev:.2e} (tol 1e-6); spot separation "
                  f"dev {spot_sep_dev:.3f} (tol one cell = {grid.tau_step:.3f})")
    assert dev < 1e-6
    assert spot_sep_dev <= grid.tau_step + 1e-12


def test_criterion_08_bessel_closed_forms():
    t0 = time.perf_counter()
    a = 1.0
    traj = rw.Trajectory(rw.ConstantProfile(a))
    taus = np.linspace(-1.5, 1.5, 64)
    omegas = np.linspace(-6.0, 6.0, 64)
    state = rw.MonochromaticFock(1, 2.0)
    closed = rw.monochromatic_accel_wigner(state, a, taus, omegas)
    numeric = rw.excess_wigner(state, traj, taus, omegas,
                               upsilon_max=16.0, n_upsilon=16384)
    peak = np.max(np.abs(closed.values))
    dev_fock = np.max(np.abs(closed.values - numeric.values)) / peak

    # pair-creation terms exercised on a smaller grid
    state_c = rw.MonochromaticCoherent(0.8 + 0.1j, 2.0)
    taus_c = np.linspace(-1.0, 1.0, 32)
    omegas_c = np.linspace(-5.0, 5.0, 32)
    closed_c = rw.monochromatic_accel_wigner(state_c, a, taus_c, omegas_c)
    numeric_c = rw.excess_wigner(state_c, traj, taus_c, omegas_c,
                                 upsilon_max=16.0, n_upsilon=16384)
    dev_coh = np.max(np.abs(closed_c.values - numeric_c.values)) \
        / np.max(np.abs(closed_c.values))
    elapsed = time.perf_counter() - t0
    ok = dev_fock < 1e-4 and dev_coh < 1e-4 and elapsed < 60.0
    report(8, ok, f"Bessel closed forms: Fock dev {dev_fock:.2e}, coherent dev "
                  f"{dev_coh:.2e} (tol 1e-4 of peak), {elapsed:.1f}s (limit 60s)")
    assert dev_fock < 1e-4
    assert dev_coh < 1e-4
    assert elapsed < 60.0


def test_criterion_09_structural_invariants():
    results = {}

    # grid realness: reference two-sided transform of Hermitian slices
    traj = rw.Trajectory(rw.ConstantProfile(1.0))
    ups = np.linspace(0.0, 30.0, 2049)
    from relwigner.vacuum import regularized_kernel_row
    kernel = regularized_kernel_row(traj, 0.0, ups).astype(complex)
    _, res_vac = rw.ComplexKernelSlice(0.0, ups, kernel).wigner_row(
        np.linspace(-3, 3, 13), return_residual=True)
    wp = packet(8.0, 0.5)
    offs = np.linspace(-5.0, 5.0, 2049)
    w_off = traj.tminusx_row(0.0, offs)
    phi = wp.peak_amplitude * np.exp(-(w_off + wp.x0) ** 2 / (4 * wp.sigma_x ** 2)
                                     - 1j * wp.p0 * (w_off + wp.x0))
    k_pack = np.conj(phi[1024::-1]) * phi[1024:] + phi[1024::-1] * np.conj(phi[1024:])
    _, res_pack = rw.ComplexKernelSlice(0.0, offs[1024:] * 2, k_pack).wigner_row(
        np.linspace(-12, 12, 13), return_residual=True)
    results["realness"] = (max(res_vac, res_pack), 1e-9)

    # frequency symmetry of the regularized vacuum, independent transform
    row_ref = rw.ComplexKernelSlice(0.0, ups, kernel).wigner_row(
        np.linspace(-3, 3, 25))
    sym = np.max(np.abs(row_ref - row_ref[::-1])) / np.max(np.abs(row_ref))
    results["frequency-symmetry"] = (sym, 1e-8)

    # Fock states carry no interference mid-ridge
    inert = rw.Trajectory(rw.ConstantProfile(0.0))
    taus = np.linspace(-1.5, 1.5, 31)
    omegas = np.linspace(-18, 18, 241)
    fock = rw.excess_wigner(rw.GaussianFock(1, wp), inert, taus, omegas,
                            upsilon_max=12.0, n_upsilon=2048)
    mid = np.abs(omegas) < wp.sigma_p
    results["fock-mid-ridge"] = (
        float(np.max(np.abs(fock.values[:, mid])) / np.max(np.abs(fock.values))), 1e-3)

    # horizon loss
    wp_ref = packet(4.0, 0.5, 0.0)
    wp_lost = packet(4.0, 0.5, -1.0 - 8 * 0.5)
    taus_h = np.linspace(-2, 6, 65)
    omegas_h = np.linspace(0.0, 10.0, 65)
    e_ref = rw.average_energy(rw.excess_wigner(
        rw.GaussianFock(1, wp_ref), traj, taus_h, omegas_h,
        upsilon_max=10.0, n_upsilon=1024)).value
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        e_lost = rw.average_energy(rw.excess_wigner(
            rw.GaussianFock(1, wp_lost), traj, taus_h, omegas_h,
            upsilon_max=10.0, n_upsilon=1024), support_tol=1.0).value
    results["horizon-loss"] = (abs(e_lost) / e_ref, 1e-6)

    # covariance under reparametrization of the same worldline
    state = rw.GaussianFock(1, packet(4.0, 0.5, 0.3))
    t_const = rw.Trajectory(rw.ConstantProfile(1.0))
    t_piece = rw.Trajectory(rw.PiecewiseConstantProfile((), (1.0,)))
    t_sampl = rw.Trajectory(rw.SampledProfile(tuple(np.linspace(-3, 3, 301)),
                                              tuple(np.ones(301))))
    dev_cov = 0.0
    for t1, t2 in [(0.4, -0.2), (1.1, 0.9), (0.0, 0.7)]:
        ref = rw.excess_correlation(state, t_const, t1, t2)
        for other in (t_piece, t_sampl):
            got = rw.excess_correlation(state, other, t1, t2)
            dev_cov = max(dev_cov, abs(got - ref) / abs(ref))
    results["covariance"] = (dev_cov, 1e-10)

    # convolution mass preservation
    prof = rw.SinusoidalProfile(1.0, 0.8, 1.0 / (10 * np.pi))
    taus_m = np.linspace(-12, 12, 49)
    omegas_m = np.linspace(-3, 3, 41)
    rng = np.random.default_rng(5)
    vals = rng.random((49, 41))
    grid_m = rw.TimeFrequencyGrid(taus_m, omegas_m, vals)
    out = rw.stationary_smooth(grid_m, prof, ratio=0.05)
    results["mass-preservation"] = (
        abs(np.sum(out.values) - np.sum(vals)) / np.sum(vals), 1e-6)

    ok = all(value < tol for value, tol in results.values())
    detail = ", ".join(f"{k} {v:.2e}/{tol:.0e}" for k, (v, tol) in results.items())
    report(9, ok, detail)
    for name, (value, tol) in results.items():
        assert value < tol, (name, value, tol)


def test_criterion_10_smoothing_particle_reconstruction():
    a0 = 1.0
    f = (1.0 / 5.0) / (2 * np.pi)
    prof = rw.SinusoidalProfile(a0, a0, f)
    period = 1.0 / f
    tau_max = 0.25 / f
    taus = np.linspace(tau_max - period / 2, tau_max + period / 2, 97)
    omegas = np.linspace(-4.5, 4.5, 97)
    job = rw.VacuumJob(rw.Trajectory(prof), taus, omegas,
                       upsilon_max=50.0, n_upsilon=8192)
    grid = rw.vacuum_excess_wigner(job)
    sm = rw.stationary_smooth(grid, prof, ratio=1.0 / 20.0, cap=period / 2)
    a_tau = prof.value(tau_max)
    band = (omegas >= 0.0) & (omegas <= 2 * a_tau)
    col = sm.values[48][band]
    om_b = omegas[band]

    # thermal-shaped distribution at a temperature around a_tau
    def model(p):
        return p[0] * rw.thermal_excess_wigner(p[1], om_b)

    fit = least_squares(lambda p: model(p) - col, x0=[1.0, a_tau])
    resid_l2 = np.linalg.norm(model(fit.x) - col) / np.linalg.norm(col)
    a_fit = fit.x[1]

    # pointwise agreement with the unfitted thermal curve away from the
    # blur-rounded omega ~ 0 kink, normalized by the curve peak
    upper = (om_b >= 0.5 * a_tau)
    want = rw.thermal_excess_wigner(a_tau, om_b[upper])
    band_dev = np.max(np.abs(col[upper] - want)) / (a_tau / (4 * np.pi ** 2))

    ok = resid_l2 < 0.10 and abs(a_fit / a_tau - 1.0) < 0.25 and band_dev < 0.10
    report(10, ok, f"smoothed column: thermal-shape L2 residual {resid_l2:.3f} "
                   f"(tol 0.10), fitted a {a_fit:.2f} vs a_tau {a_tau:.2f} "
                   f"(tol 25%), band dev {band_dev:.3f} (tol 0.10)")
    assert resid_l2 < 0.10
    assert abs(a_fit / a_tau - 1.0) < 0.25
    assert band_dev < 0.10
