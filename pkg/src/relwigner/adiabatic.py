"""Adiabatic expansion of the vacuum response around the instantaneous
thermal law: the universal derivative-expansion corrections, the full first
functional-order correction for a sinusoidal drive, regime classification,
and the stationary timescale.

All operator polynomials acting on the thermal distribution g are expanded
analytically into g, g', g'', g''' (closed derivative formulas from
specfun), so the corrections are bit-reproducible; no numeric
differentiation happens here.  Throughout, x = 2 pi omega / a_tau and the
instantaneous acceleration a_tau is used uniformly, including inside the
shifted arguments of the sinusoidal correction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import AccelerationProfile
from .errors import DomainError, PreconditionError
from .specfun import (thermal_g, thermal_g_prime, thermal_g_second,
                      thermal_g_third)
from .vacuum import thermal_excess_wigner

_FOURPI2 = 4.0 * math.pi ** 2

ADIABATIC_ORDERS = ("W0", "W12", "W22", "W1_sinusoidal")


def adiabatic_W0(a_tau: float, omega):
    """Leading adiabatic response: thermal law at the instantaneous
    acceleration (regular part, even in omega)."""
    if a_tau <= 0:
        raise DomainError("adiabatic_W0: a_tau must be > 0")
    return thermal_excess_wigner(a_tau, omega)


def correction_W12(a: float, addot: float, omega):
    """Second-derivative correction, proportional to addot/a^2:

    -(1/4pi^2)(addot/a^2) [ -g + x g' + (pi^2/2) g'' - (pi^2 x/6) g''' ],
    x = 2 pi omega / a.
    """
    if a <= 0:
        raise DomainError("correction_W12: a must be > 0")
    x = 2.0 * np.pi * np.asarray(omega, dtype=float) / a
    bracket = (-np.asarray(thermal_g(x)) + x * thermal_g_prime(x)
               + 0.5 * np.pi ** 2 * np.asarray(thermal_g_second(x))
               - (np.pi ** 2 / 6.0) * x * thermal_g_third(x))
    out = -(addot / (a * a)) / _FOURPI2 * bracket
    return out if np.ndim(omega) else float(out)


def correction_W22(a: float, adot: float, omega):
    """Squared-first-derivative correction, proportional to adot^2/a^3:

    (2/3pi^2)(adot^2/a^3) [ -g + x g' + (x^2/16 + 5 pi^2/8) g'' ],
    x = 2 pi omega / a.  The first two terms act as a small thermal shift
    by 8 adot^2 / 3 a^3.
    """
    if a <= 0:
        raise DomainError("correction_W22: a must be > 0")
    x = 2.0 * np.pi * np.asarray(omega, dtype=float) / a
    bracket = (-np.asarray(thermal_g(x)) + x * thermal_g_prime(x)
               + (x * x / 16.0 + 5.0 * np.pi ** 2 / 8.0) * np.asarray(thermal_g_second(x)))
    out = (2.0 / (3.0 * np.pi ** 2)) * (adot * adot / a ** 3) * bracket
    return out if np.ndim(omega) else float(out)


def first_order_sinusoidal(a0: float, a1: float, f: float, tau: float, omega,
                           kernel_acceleration: float | None = None):
    """Full first functional-order correction for a(tau) = a0 + a1 sin(2 pi f tau).

    W1 = (a1 sin(2 pi f tau) / 4 pi^2) [ (g+ + g-)/2 / (1 + (2 pi f/a)^2)
         - (omega/2 pi f)(g+ - g-) / (1 + (2 pi f/a)^2)
         + (2 pi/a) omega g0' - g0 ],

    with g+- = g(2 pi (omega +- pi f)/a), g0 = g(2 pi omega/a).  By default
    a is the instantaneous acceleration a_tau, which makes the bracket
    weakly tau-dependent and breaks exact oddness in tau at relative order
    a1/a0; passing ``kernel_acceleration=a0`` evaluates the bracket on the
    unperturbed trajectory instead, making W1 exactly odd.  Contains every
    derivative order of the drive at linear order in a1; reduces to the
    addot correction for f -> 0 and to the average-acceleration shift at
    high f.
    """
    if a0 <= 0:
        raise DomainError("first_order_sinusoidal: a0 must be > 0")
    w = np.asarray(omega, dtype=float)
    two_pi_f = 2.0 * np.pi * f
    a_tau = a0 + a1 * math.sin(two_pi_f * tau)
    if kernel_acceleration is not None:
        a_tau = kernel_acceleration
    gp = thermal_g(2.0 * np.pi * (w + np.pi * f) / a_tau)
    gm = thermal_g(2.0 * np.pi * (w - np.pi * f) / a_tau)
    g0 = thermal_g(2.0 * np.pi * w / a_tau)
    g0dot = thermal_g_prime(2.0 * np.pi * w / a_tau)
    denom = 1.0 + (two_pi_f / a_tau) ** 2
    bracket = (0.5 * (np.asarray(gp) + gm) / denom
               - (w / two_pi_f) * (np.asarray(gp) - gm) / denom
               + (2.0 * np.pi / a_tau) * w * np.asarray(g0dot) - g0)
    out = (a1 * math.sin(two_pi_f * tau) / _FOURPI2) * bracket
    return out if np.ndim(omega) else float(out)


@dataclass(frozen=True)
class TimescaleResult:
    value: float
    degenerate: bool
    capped: bool


def stationary_timescale(profile: AccelerationProfile, tau: float, ratio: float,
                         cap: float = math.inf, rel_tol: float = 1e-6) -> TimescaleResult:
    """Largest tau_s with |a(tau+u) - a(tau)| <= ratio |a(tau)| for all
    |u| <= tau_s, by expanding search plus bisection.

    Returns tau_s capped at ``cap`` (and at the profile domain); a(tau) = 0
    yields 0 with the degenerate flag set.
    """
    if not 0.0 < ratio < 1.0:
        raise PreconditionError("stationary_timescale: ratio must be in (0, 1)")
    a_ref = float(profile.value(tau))
    if a_ref == 0.0:
        return TimescaleResult(0.0, degenerate=True, capped=False)
    lo_dom, hi_dom = profile.domain()
    limit = min(cap, tau - lo_dom, hi_dom - tau)
    bound = ratio * abs(a_ref)

    def violated(window: float) -> bool:
        u = np.linspace(-window, window, 513)
        return bool(np.any(np.abs(np.asarray(profile.value(tau + u)) - a_ref) > bound))

    if not violated(limit):
        return TimescaleResult(float(limit), degenerate=False, capped=True)
    # expand from a small seed window to bracket the first violation
    lo = 0.0
    hi = limit
    seed = limit * 1e-6
    if not violated(seed):
        lo = seed
        while lo < limit:
            trial = min(2.0 * lo, limit)
            if violated(trial):
                hi = trial
                break
            lo = trial
    else:
        hi = seed
    while (hi - lo) > rel_tol * max(hi, 1e-300):
        mid = 0.5 * (lo + hi)
        if violated(mid):
            hi = mid
        else:
            lo = mid
    return TimescaleResult(float(lo), degenerate=False, capped=False)


def classify_regime(a0: float, a1: float, f: float) -> str:
    """Qualitative drive regime: 'adiabatic' (both a1/a0 and 2 pi f/a0 below
    0.2), 'averaged-thermal' (small amplitude but fast drive), otherwise
    'non-perturbative'."""
    if a0 <= 0:
        raise DomainError("classify_regime: a0 must be > 0")
    amp = abs(a1) / a0
    freq = 2.0 * np.pi * f / a0
    if amp < 0.2 and freq < 0.2:
        return "adiabatic"
    if amp < 0.2:
        return "averaged-thermal"
    return "non-perturbative"
