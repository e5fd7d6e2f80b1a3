"""Analytic approximation schemes for excitation Wigner functions on
accelerated worldlines: the chirped-Gaussian spot approximation, the
stationary-phase approximation inside the hull of the instantaneous
frequency curve, and the curvature scale that bounds its validity.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .core import WavepacketSpec
from .errors import AiryRegimeError, DomainError, HorizonError
from .trajectory import Trajectory


@dataclass(frozen=True)
class StationaryPointSet:
    """Stationary offsets of the Wigner phase at (tau, omega); empty outside
    the hull of the instantaneous frequency curve, a symmetric pair inside,
    the degenerate single point on the curve itself."""

    tau: float
    omega: float
    points: tuple[float, ...]
    inside_hull: bool


def stationary_points(a: float, p0: float, tau: float, omega: float) -> StationaryPointSet:
    """Solve cosh(a u_s / 2) = omega e^{a tau} / p0.

    Two symmetric solutions when the right side exceeds 1, the degenerate
    u_s = 0 when it equals 1, none otherwise.
    """
    if a <= 0 or p0 <= 0:
        raise DomainError("stationary_points: need a > 0 and p0 > 0")
    ratio = omega * math.exp(a * tau) / p0
    if ratio < 1.0:
        return StationaryPointSet(tau, omega, (), inside_hull=False)
    if ratio == 1.0:
        return StationaryPointSet(tau, omega, (0.0,), inside_hull=True)
    us = 2.0 / a * math.acosh(ratio)
    return StationaryPointSet(tau, omega, (-us, us), inside_hull=True)


def gaussian_approx_wigner(wp: WavepacketSpec, traj: Trajectory,
                           tau: float, omega: float) -> tuple[float, float]:
    """Chirped-Gaussian spot approximation around the reception event.

    Expands the received packet to second order around tau_r, giving a
    linear chirp with rate -a_r omega_r.  Returns (main, interference):

    main = (2 p0/D_r) exp(-D_r^2 (tau-tau_r)^2 / 2 sigma_x^2)
                      exp(-2 sigma_x^2 [omega - omega_r(1 - a_r(tau-tau_r))]^2 / D_r^2)

    and the interference term is the transform of the squared chirped
    Gaussian (the exact complex-Gaussian integral; its real part is the
    omega ~ 0 ridge oscillating at 2 omega_r in time).
    """
    tau_r = traj.reception_time(wp.x0)
    if tau_r is None:
        raise HorizonError("gaussian_approx_wigner: packet emitted behind the horizon")
    d_r = math.exp(-traj.rapidity(tau_r))
    a_r = float(traj.acceleration(tau_r))
    omega_r = wp.p0 * d_r
    sig2 = wp.sigma_x ** 2
    delta = tau - tau_r

    a_cf = d_r * d_r / (4.0 * sig2)           # Gaussian curvature of Phi
    b_cf = 0.5 * omega_r * a_r                # chirp rate / 2
    n2 = wp.p0 / (math.sqrt(2.0 * math.pi) * wp.sigma_x)   # |Phi|^2 peak

    kappa = omega - omega_r * (1.0 - a_r * delta)
    main = (2.0 * wp.p0 / d_r) * math.exp(-2.0 * a_cf * delta * delta
                                          - kappa * kappa / (2.0 * a_cf))

    # PhiPhi part plus conjugate: 2 Re FT of
    # N^2 exp(-2 c delta^2) exp(-c u^2/2) exp(-2 i omega_r delta)
    # with c = a_cf - i b_cf; the u integral is sqrt(2 pi / c) exp(-omega^2/(2c)).
    c = complex(a_cf, -b_cf)
    amp = n2 * cmath.sqrt(2.0 * math.pi / c) * cmath.exp(
        -2.0 * c * delta * delta - omega * omega / (2.0 * c) - 2.0j * omega_r * delta)
    return main, 2.0 * float(amp.real)


def airy_curvature(a: float, p0: float, tau: float) -> float:
    """Curvature frequency scale of the instantaneous frequency curve:
    (a^2 w(tau))^(1/3) / 4 pi with w(tau) = p0 e^{-a tau}.  The
    stationary-phase approximation degrades within about this distance of
    the curve."""
    if a <= 0 or p0 <= 0:
        raise DomainError("airy_curvature: need a > 0 and p0 > 0")
    return (a * a * p0 * math.exp(-a * tau)) ** (1.0 / 3.0) / (4.0 * math.pi)


def stationary_phase_wigner(wp: WavepacketSpec, a: float, tau: float, omega: float,
                            phase_form: str = "linear", prefactor: str = "spa",
                            guard: float = 1.0) -> float:
    """Stationary-phase approximation of the main (PhiPhi*) Wigner term for
    a packet on the uniformly accelerated worldline, x0 = 0 conventions.

    Envelope and oscillation:

        (2 p0/sigma_x) sqrt(2 / (a sqrt(omega^2 - w(tau)^2)))
        exp(-[(omega-omega_r)^2 + omega^2 - w(tau)^2] / 2 (a p0 sigma_x)^2)
        cos(phase + pi/4)

    with w(tau) = p0 e^{-a tau} and omega_r = p0.  ``phase_form`` selects the
    three printed stages of the cosine argument:

    * "exact":  2 sqrt(omega^2-w^2)/a - (2 omega/a) acosh(omega/w(tau))
    * "log":    (2 omega/a)(1 - ln(2 omega / w(tau)))
    * "linear": 2 (1 - ln 2) omega/a - 2 omega tau

    ``prefactor`` = "spa" uses the quarter-power scaling above (the proper
    stationary-phase result); "alternative" uses the half-power variant
    sqrt(8 p0^2 / a sigma_x^2) / sqrt(omega^2 - w^2).

    Raises outside the hull, and raises :class:`AiryRegimeError` when
    omega - w(tau) <= guard * 2 pi epsilon(tau): the curvature epsilon is an
    ordinary frequency while the omega axis is angular, so the consistent
    band width is 2 pi epsilon = (a^2 w(tau))^(1/3) / 2.  Inside that band
    the cubic phase term takes over and the caller should fall back to the
    numeric grid.
    """
    pts = stationary_points(a, wp.p0, tau, omega)
    if not pts.inside_hull:
        raise DomainError("stationary_phase_wigner: outside the hull of the "
                          "instantaneous frequency curve")
    w_inst = wp.p0 * math.exp(-a * tau)
    gap2 = omega * omega - w_inst * w_inst
    eps = airy_curvature(a, wp.p0, tau)
    if omega - w_inst <= guard * 2.0 * math.pi * eps:
        raise AiryRegimeError("stationary_phase_wigner: within the Airy band "
                              "of the instantaneous frequency curve")
    root = math.sqrt(gap2)
    omega_r = wp.p0
    envelope = math.exp(-((omega - omega_r) ** 2 + gap2) / (2.0 * (a * wp.p0 * wp.sigma_x) ** 2))
    if prefactor == "spa":
        pref = (2.0 * wp.p0 / wp.sigma_x) * math.sqrt(2.0 / (a * root))
    elif prefactor == "alternative":
        pref = math.sqrt(8.0 * wp.p0 ** 2 / (a * wp.sigma_x ** 2)) / root
    else:
        raise DomainError("stationary_phase_wigner: prefactor must be 'spa' or 'alternative'")
    if phase_form == "exact":
        phase = 2.0 * root / a - (2.0 * omega / a) * math.acosh(omega / w_inst)
    elif phase_form == "log":
        phase = (2.0 * omega / a) * (1.0 - math.log(2.0 * omega / w_inst))
    elif phase_form == "linear":
        phase = 2.0 * (1.0 - math.log(2.0)) * omega / a - 2.0 * omega * tau
    else:
        raise DomainError("stationary_phase_wigner: unknown phase_form")
    return pref * envelope * math.cos(phase + 0.25 * math.pi)


def stationary_phase_deviations(wp: WavepacketSpec, a: float, tau: float,
                                omega: float, guard: float = 1.0) -> dict:
    """Mutual deviations of the three printed phase stages at one point;
    reported rather than silently picking one."""
    vals = {form: stationary_phase_wigner(wp, a, tau, omega, phase_form=form, guard=guard)
            for form in ("exact", "log", "linear")}
    return {
        "values": vals,
        "exact_vs_log": abs(vals["exact"] - vals["log"]),
        "log_vs_linear": abs(vals["log"] - vals["linear"]),
        "exact_vs_linear": abs(vals["exact"] - vals["linear"]),
    }
