"""Excess correlation and excess Wigner functions for excitations above the
vacuum: Gaussian coherent / Fock packets, superpositions, and monochromatic
states, on any trajectory; Bessel closed forms for monochromatic states on
the uniformly accelerated worldline.

All excess correlations here are real and symmetric (each state carries its
Hermitian-conjugate terms), so the excess Wigner functions are real and
even in omega.  The interference (PhiPhi) part is present for coherent
statistics and absent for Fock statistics; both parts are available
separately for diagnostics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (COMPONENT_EXCITATION_EXCESS, FieldState, GaussianCoherent,
                   GaussianFock, GridMeta, MonochromaticCoherent,
                   MonochromaticFock, Superposition, TimeFrequencyGrid,
                   WavepacketSpec)
from .errors import DomainError, InvalidInputError
from .quadrature import hermitian_kernel_transform
from .specfun import bessel_k_imag_order, oscillatory_cosh_integral
from .trajectory import Trajectory

_PARTS = ("total", "main", "interference")


@dataclass(frozen=True)
class PacketValue:
    """Packet amplitude Phi at one proper time; modulus bounded by the
    packet's peak amplitude."""

    tau: float
    phi: complex


def packet_value(wp: WavepacketSpec, traj: Trajectory, tau: float) -> complex:
    """Gaussian packet evaluated on the worldline:

    Phi(tau) = sqrt(p0/sqrt(2 pi sigma_x^2))
               exp(-[(t-x) + x0]^2 / 4 sigma_x^2) exp(-i p0 [(t-x) + x0]).
    """
    arg = traj.tminusx(tau) + wp.x0
    mod = wp.peak_amplitude * math.exp(-arg * arg / (4.0 * wp.sigma_x ** 2))
    return mod * complex(math.cos(wp.p0 * arg), -math.sin(wp.p0 * arg))


def _packet_from_args(wp: WavepacketSpec, args: np.ndarray) -> np.ndarray:
    mod = wp.peak_amplitude * np.exp(-args * args / (4.0 * wp.sigma_x ** 2))
    return mod * np.exp(-1j * wp.p0 * args)


def plane_wave_value(p: float, traj: Trajectory, tau: float) -> complex:
    """Right-moving massless mode on the worldline: exp(-i p (t - x))."""
    return complex(np.exp(-1j * p * traj.tminusx(tau)))


# ---------------------------------------------------------------------------
# Excess correlations
# ---------------------------------------------------------------------------

def _superposed_packet(state: Superposition, traj: Trajectory, tau: float) -> complex:
    return sum(complex(amp) * packet_value(wp, traj, tau) for amp, wp in state.terms)


def excess_correlation(state: FieldState, traj: Trajectory,
                       tau1: float, tau2: float, part: str = "total") -> complex:
    """State contribution to G(tau2, tau1) after vacuum subtraction.

    ``part`` selects the PhiPhi*-type terms ("main"), the PhiPhi-type
    interference terms ("interference"), or their sum.  The result only
    depends on the trajectory through the packet values on it.
    """
    if part not in _PARTS:
        raise InvalidInputError(f"excess_correlation: unknown part {part!r}")
    if isinstance(state, GaussianFock):
        if part == "interference":
            return 0.0 + 0.0j
        p1 = packet_value(state.wp, traj, tau1)
        p2 = packet_value(state.wp, traj, tau2)
        return state.n * (np.conj(p1) * p2 + p1 * np.conj(p2))
    if isinstance(state, GaussianCoherent):
        p1 = packet_value(state.wp, traj, tau1)
        p2 = packet_value(state.wp, traj, tau2)
        main = np.conj(p1) * p2 + p1 * np.conj(p2)
        interf = p1 * p2 + np.conj(p1 * p2)
        return {"main": main, "interference": interf, "total": main + interf}[part]
    if isinstance(state, Superposition):
        p1 = _superposed_packet(state, traj, tau1)
        p2 = _superposed_packet(state, traj, tau2)
        main = np.conj(p1) * p2 + p1 * np.conj(p2)
        if state.statistics == "fock" or part == "main":
            return 0.0 + 0.0j if part == "interference" else main
        interf = p1 * p2 + np.conj(p1 * p2)
        return {"interference": interf, "total": main + interf}[part]
    if isinstance(state, MonochromaticFock):
        if part == "interference":
            return 0.0 + 0.0j
        u1 = plane_wave_value(state.p, traj, tau1)
        u2 = plane_wave_value(state.p, traj, tau2)
        return state.n * (np.conj(u1) * u2 + u1 * np.conj(u2))
    if isinstance(state, MonochromaticCoherent):
        a = complex(state.alpha)
        u1 = plane_wave_value(state.p, traj, tau1)
        u2 = plane_wave_value(state.p, traj, tau2)
        main = abs(a) ** 2 * (np.conj(u1) * u2 + u1 * np.conj(u2))
        interf = a * a * u1 * u2 + np.conj(a * a * u1 * u2)
        return {"main": main, "interference": interf, "total": main + interf}[part]
    raise InvalidInputError(f"excess_correlation: unsupported state {state!r} (vacuum has no excess)")


# ---------------------------------------------------------------------------
# Excess Wigner grids
# ---------------------------------------------------------------------------

def _mono_window(traj, tau, upsilons, offsets, p, omega_max, with_interference,
                 gap: float = 24.0, taper_len: float = 3.0):
    """Smooth cutoff for non-decaying monochromatic kernels.

    The slice phases oscillate at rates (p/2)(e^{-A+} +- e^{-A-}); once the
    slower rate clears max|omega| by ``gap`` the remaining tail carries no
    stationary points and only unresolvable chirp, so it is rolled off over
    ``taper_len``.  Returns None when the rates never clear the band (e.g.
    inertial stretches), leaving the plain taper in charge.
    """
    n_up = upsilons.size - 1
    red = np.exp(-traj.rapidity(tau + offsets))
    red_p, red_m = red[n_up:], red[n_up::-1]
    rate_main = 0.5 * p * (red_p + red_m)
    rate = np.minimum(rate_main, 0.5 * p * np.abs(red_p - red_m)) \
        if with_interference else rate_main
    clear = np.nonzero(rate >= omega_max + gap)[0]
    if clear.size == 0:
        return None
    start = upsilons[clear[0]]
    window = np.ones_like(upsilons)
    ramp = (upsilons - start) / taper_len
    roll = (ramp > 0) & (ramp < 1)
    window[roll] = 0.5 * (1.0 + np.cos(np.pi * ramp[roll]))
    window[ramp >= 1] = 0.0
    return window


def _kernel_row(state, traj, tau, upsilons, part, omega_max=None):
    """Slice k(u) = Delta G(tau + u/2, tau - u/2) on the half-axis grid."""
    n_up = upsilons.size - 1
    offsets = np.linspace(-0.5 * upsilons[-1], 0.5 * upsilons[-1], 2 * n_up + 1)
    w_off = traj.tminusx_row(tau, offsets)
    plus = slice(n_up, 2 * n_up + 1)      # w at tau + u/2
    minus = slice(n_up, None, -1)         # w at tau - u/2

    def pair_terms(phi_all):
        phi_p, phi_m = phi_all[plus], phi_all[minus]
        main = 2.0 * np.real(np.conj(phi_m) * phi_p)
        interf = 2.0 * np.real(phi_m * phi_p)
        return main, interf

    if isinstance(state, (GaussianFock, GaussianCoherent)):
        wp = state.wp
        phi_all = _packet_from_args(wp, w_off + wp.x0)
        main, interf = pair_terms(phi_all)
        if isinstance(state, GaussianFock):
            return {"total": state.n * main, "main": state.n * main,
                    "interference": np.zeros_like(main)}[part]
        return {"total": main + interf, "main": main, "interference": interf}[part]
    if isinstance(state, Superposition):
        phi_all = sum(complex(amp) * _packet_from_args(wp, w_off + wp.x0)
                      for amp, wp in state.terms)
        main, interf = pair_terms(phi_all)
        if state.statistics == "fock":
            interf = np.zeros_like(main)
        return {"total": main + interf, "main": main, "interference": interf}[part]
    if isinstance(state, (MonochromaticFock, MonochromaticCoherent)):
        p = state.p
        u_all = np.exp(-1j * p * w_off)
        main, interf = pair_terms(u_all)
        if isinstance(state, MonochromaticFock):
            out = {"total": state.n * main, "main": state.n * main,
                   "interference": np.zeros_like(main)}[part]
            with_interf = False
        else:
            a = complex(state.alpha)
            interf_c = 2.0 * np.real(a * a * u_all[minus] * u_all[plus])
            main_c = abs(a) ** 2 * main
            out = {"total": main_c + interf_c, "main": main_c,
                   "interference": interf_c}[part]
            with_interf = part != "main"
        if omega_max is not None:
            window = _mono_window(traj, tau, upsilons, offsets, p, omega_max, with_interf)
            if window is not None:
                out = out * window
        return out
    raise InvalidInputError(f"excess_wigner: unsupported state {state!r}")


def excess_wigner(state: FieldState, traj: Trajectory, taus, omegas,
                  upsilon_max: float, n_upsilon: int = 4096,
                  part: str = "total", taper_fraction: float | None = None,
                  threads: int = 1) -> TimeFrequencyGrid:
    """Excess Wigner grid for an excited state on an arbitrary trajectory.

    Packet kernels decay on their own and are transformed untapered;
    monochromatic kernels never decay and get a raised-cosine taper
    (default 0.25 of the window) that suppresses the stationary-point-free
    truncation ringing.  A truncation note is attached when the kernel has
    not decayed at the window end.
    """
    if part not in _PARTS:
        raise InvalidInputError(f"excess_wigner: unknown part {part!r}")
    taus = np.atleast_1d(np.asarray(taus, dtype=float))
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    ups = np.linspace(0.0, upsilon_max, n_upsilon + 1)
    mono = isinstance(state, (MonochromaticFock, MonochromaticCoherent))
    if taper_fraction is None:
        taper_fraction = 0.25 if mono else 0.0
    omega_max = float(np.max(np.abs(omegas))) if mono else None

    def row(t):
        return _kernel_row(state, traj, t, ups, part, omega_max=omega_max)

    if threads > 1 and taus.size >= 4:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = np.array(list(pool.map(row, taus)))
    else:
        rows = np.array([row(t) for t in taus])

    notes = [f"part={part}", f"upsilon_max={upsilon_max}"]
    peak = np.max(np.abs(rows)) if rows.size else 0.0
    n_edge = max(2, n_upsilon // 50)
    if taper_fraction == 0.0 and peak > 0 and np.max(np.abs(rows[:, -n_edge:])) > 1e-6 * peak:
        notes.append("truncation-warning")
    values = hermitian_kernel_transform(ups, rows, omegas, taper_fraction=taper_fraction)
    meta = GridMeta(trajectory=traj.profile.describe(), state=state.describe(),
                    component=COMPONENT_EXCITATION_EXCESS, notes=tuple(notes))
    return TimeFrequencyGrid(taus, omegas, values, meta)


# ---------------------------------------------------------------------------
# Monochromatic closed forms on the uniformly accelerated worldline
# ---------------------------------------------------------------------------

def monochromatic_mode_argument(p: float, a: float, tau) -> np.ndarray:
    """f(tau) = 2 (p/a) exp(-a tau): the positive, offset-independent
    argument entering the Bessel closed forms (wave co-directed with the
    acceleration)."""
    return 2.0 * (p / a) * np.exp(-a * np.asarray(tau, dtype=float))


def monochromatic_accel_wigner(state: FieldState, a: float, taus, omegas) -> TimeFrequencyGrid:
    """Excess Wigner of a monochromatic state seen by a uniformly
    accelerated detector, assembled from imaginary-order Bessel values.

    Fock n:    n (I2+ + I2-) = (8 n / a) cosh(pi w / a) K_{2 i w/a}(f(tau))
    coherent:  2 Re[alpha^2 e^{-2ip/a} I1+] + |alpha|^2 (I2+ + I2-),
               I1+ = (2/a) int exp(i f cosh t + 2 i w t/a) dt

    The phase e^{-2ip/a} of the pair-creation term is kept explicit so the
    result matches the direct transform of the plane-wave correlation.
    """
    if a <= 0:
        raise DomainError("monochromatic_accel_wigner: a must be > 0")
    if not isinstance(state, (MonochromaticFock, MonochromaticCoherent)):
        raise InvalidInputError("monochromatic_accel_wigner: need a monochromatic state")
    taus = np.atleast_1d(np.asarray(taus, dtype=float))
    omegas = np.atleast_1d(np.asarray(omegas, dtype=float))
    p = state.p
    values = np.empty((taus.size, omegas.size))
    for i, tau in enumerate(taus):
        f = float(monochromatic_mode_argument(p, a, tau))
        for j, w in enumerate(omegas):
            mu = 2.0 * w / a
            k_real = bessel_k_imag_order(mu, f)
            i2_sum = (8.0 / a) * math.cosh(math.pi * w / a) * k_real
            if isinstance(state, MonochromaticFock):
                values[i, j] = state.n * i2_sum
            else:
                alpha = complex(state.alpha)
                i1_plus = (2.0 / a) * oscillatory_cosh_integral(f, mu)
                pair = alpha * alpha * np.exp(-2j * p / a) * i1_plus
                values[i, j] = abs(alpha) ** 2 * i2_sum + 2.0 * pair.real
    meta = GridMeta(trajectory=f"constant(a0={a!r})", state=state.describe(),
                    component=COMPONENT_EXCITATION_EXCESS,
                    notes=("bessel-closed-form",))
    return TimeFrequencyGrid(taus, omegas, values, meta)


def twin_delay(a: float, delta_tau_r: float) -> float:
    """Inertial reception delay for a proper reception separation
    delta_tau_r spanning a round trip: 4 sinh(a delta_tau_r / 4) / a."""
    return 4.0 / a * math.sinh(0.25 * a * delta_tau_r)
