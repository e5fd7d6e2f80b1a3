"""Special functions for the closed forms: the thermal distribution
g(x) = x/(e^x - 1) with its derivatives, and modified Bessel functions of
imaginary order for real and imaginary arguments.

The imaginary-argument values are what the oscillatory integrals

    int_R exp(+-i y cosh t + i mu t) dt      (cosh phase)
    int_R exp(+-i y sinh t + i mu t) dt      (sinh phase)

evaluate to.  The sinh-phase integral rotates onto the real decaying
representation 2 exp(-mu pi/2) K_{i mu}(y); the cosh phase has a genuine
stationary point and is evaluated with a stable hybrid contour: a direct
phase-adaptive stretch through the stationary point, then a vertical
rotation at a point where the rotated factor exp(mu pi/2) is fully damped
by exp(-y sinh t0).  Overflow-free for the grids this package targets.

A direct Filon-type route for the sinh phase is kept as the second leg of
the dual-route consistency check.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError
from .quadrature import gl_rule, oscillatory_panel_integral, tanh_sinh

_SERIES_CUT = 1e-3


def thermal_g(x):
    """Thermal distribution g(x) = x / (e^x - 1), g(0) = 1.

    The removable singularity is handled by the series
    1 - x/2 + x^2/12 - x^4/720 for |x| below 1e-3.
    """
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < _SERIES_CUT
    xs = np.where(small, 1.0, x)
    with np.errstate(over="ignore"):
        out = np.where(small,
                       1.0 - x / 2.0 + x * x / 12.0,
                       xs / np.expm1(xs))
    return out if out.ndim else float(out)


def thermal_g_prime(x):
    """g'(x); series -1/2 + x/6 - x^3/180 near 0."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < _SERIES_CUT
    xs = np.where(small, 1.0, x)
    with np.errstate(over="ignore"):
        d = np.expm1(xs)
        e = np.exp(xs)
        out = np.where(small,
                       -0.5 + x / 6.0 - x ** 3 / 180.0,
                       1.0 / d - xs * e / (d * d))
    return out if out.ndim else float(out)


def thermal_g_second(x):
    """g''(x); the closed form cancels heavily near 0, so the Bernoulli
    series (through x^6) takes over below |x| = 0.05."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 0.05
    xs = np.where(small, 1.0, x)
    with np.errstate(over="ignore"):
        d = np.expm1(xs)
        e = np.exp(xs)
        x2 = x * x
        out = np.where(small,
                       1.0 / 6.0 - x2 / 60.0 + x2 * x2 / 1008.0 - x2 ** 3 / 21600.0,
                       -2.0 * e / (d * d) - xs * e / (d * d) + 2.0 * xs * e * e / (d ** 3))
    return out if out.ndim else float(out)


def thermal_g_third(x):
    """g'''(x); Bernoulli series (through x^5) below |x| = 0.05."""
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < 0.05
    xs = np.where(small, 1.0, x)
    with np.errstate(over="ignore"):
        d = np.expm1(xs)
        e = np.exp(xs)
        e2 = e * e
        out = np.where(small,
                       -x / 30.0 + x ** 3 / 252.0 - x ** 5 / 3600.0,
                       -3.0 * e / (d * d) - xs * e / (d * d)
                       + 6.0 * e2 / (d ** 3) + 6.0 * xs * e2 / (d ** 3)
                       - 6.0 * xs * e2 * e / (d ** 4))
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# K_{i mu}(x), real argument
# ---------------------------------------------------------------------------

def bessel_k_imag_order(mu: float, x: float, tol: float = 1e-10) -> float:
    """K_{i mu}(x) = int_0^inf exp(-x cosh t) cos(mu t) dt for x > 0.

    Tanh-sinh nodes on [0, T] with exp(-x cosh T) below 1e-330; the result
    is real and even in mu.  Absolute accuracy is limited by the oscillatory
    cancellation of the integrand, about 1e-13 in float64; the requested
    tolerance applies to the level-doubling convergence check.
    """
    if x <= 0:
        raise DomainError("bessel_k_imag_order: argument must be > 0 "
                          "(use the imaginary-argument variant otherwise)")
    mu = abs(float(mu))
    tmax = float(np.arccosh(max(760.0 / x, 2.0)))

    def integrand(t):
        return np.exp(-x * np.cosh(t)) * np.cos(mu * t)

    # node budget grows with mu so the cosine stays resolved
    level = 14 if mu * tmax > 250.0 else 13
    value, _ = tanh_sinh(integrand, 0.0, tmax, tol=tol, max_level=level)
    return float(value)


# ---------------------------------------------------------------------------
# Oscillatory sinh phase
# ---------------------------------------------------------------------------

def oscillatory_sinh_integral(y: float, mu: float) -> complex:
    """int_R exp(i y sinh t + i mu t) dt = 2 exp(-mu pi/2) K_{i|mu|}(y).

    The contour shift t -> t + i pi/2 maps the phase onto pure decay; valid
    for every real mu, and the result is real.
    """
    if y <= 0:
        raise DomainError("oscillatory_sinh_integral: y must be > 0")
    return complex(2.0 * math.exp(-mu * math.pi / 2.0) * bessel_k_imag_order(mu, y))


def oscillatory_sinh_direct(y: float, mu: float, cutoff_scale: float = 40.0) -> complex:
    """Direct Filon-style evaluation of int_R exp(i y sinh t + i mu t) dt.

    Substituting u = y sinh t gives int exp(i u) g(u) du with the slowly
    oscillating envelope g(u) = exp(i mu asinh(u/y)) / sqrt(u^2 + y^2);
    phase-adaptive panels cover |u| <= U and four-term integration-by-parts
    expansions supply the tails (successive terms shrink by (1+mu)/U).
    Used as the independent second route of the dual-route consistency
    check.
    """
    if y <= 0:
        raise DomainError("oscillatory_sinh_direct: y must be > 0")
    am = abs(mu)
    U = max(90.0, cutoff_scale * (1.0 + am), 4.0 * y)

    def g(u):
        r = np.sqrt(u * u + y * y)
        return np.exp(1j * mu * np.arcsinh(u / y)) / r

    def _b_chain(u):
        r2 = u * u + y * y
        r = np.sqrt(r2)
        b = 1j * mu / r - u / r2
        db = -1j * mu * u / (r2 * r) - (y * y - u * u) / (r2 * r2)
        ddb = (-1j * mu * (r2 - 3 * u * u) / (r2 * r2 * r)
               + 2 * u / (r2 * r2) + 4 * u * (y * y - u * u) / (r2 ** 3))
        return b, db, ddb

    def g1(u):
        b, _, _ = _b_chain(u)
        return g(u) * b

    def g2(u):
        b, db, _ = _b_chain(u)
        return g(u) * (b * b + db)

    def g3(u):
        b, db, ddb = _b_chain(u)
        return g(u) * (b ** 3 + 3 * b * db + ddb)

    def integrand(u):
        return g(u) * np.exp(1j * u)

    def rate(u):
        return 1.0 + am / math.sqrt(u * u + y * y)

    core = oscillatory_panel_integral(integrand, -U, U, rate, max_dphase=1.6)
    tail_r = np.exp(1j * U) * (1j * g(U) - g1(U) - 1j * g2(U) + g3(U))
    tail_l = np.exp(-1j * U) * (-1j * g(-U) + g1(-U) + 1j * g2(-U) - g3(-U))
    return complex(core + tail_r + tail_l)


# ---------------------------------------------------------------------------
# Oscillatory cosh phase (imaginary-argument K)
# ---------------------------------------------------------------------------

def oscillatory_cosh_integral(y: float, mu: float) -> complex:
    """P(y, mu) = int_R exp(i y cosh t + i mu t) dt for y > 0 (even in mu).

    Equals 2 K_{-i mu}(-i y) on the principal branch.  Split at t = 0:

    * the no-saddle half rotates fully onto [0, i pi/2] + [i pi/2, inf):
      every term is bounded by 1 (the factor exp(-mu pi/2) only damps);
    * the saddle-carrying half is integrated directly with phase-adaptive
      panels up to t0 with y sinh t0 = mu pi/2 + 45, after which the same
      rotation is applied; the would-be growth exp(mu theta) is then
      suppressed by exp(-y sinh t0 sin theta), keeping all magnitudes <= 1.
    """
    if y <= 0:
        raise DomainError("oscillatory_cosh_integral: y must be > 0")
    mu = abs(float(mu))

    x, w = gl_rule(48)
    th = 0.25 * math.pi * (x + 1.0)
    wth = 0.25 * math.pi * w

    # J+ (phase +mu t): vertical segment plus damped horizontal ray
    seg_plus = 1j * np.sum(wth * np.exp(1j * y * np.cos(th) - mu * th))
    s_hi = float(np.arcsinh(760.0 / y))

    def horiz(s):
        return np.exp(-y * np.sinh(s) + 1j * mu * s)

    q = oscillatory_panel_integral(horiz, 0.0, s_hi, lambda s: mu + 1.0, max_dphase=2.0)
    j_plus = seg_plus + math.exp(-mu * math.pi / 2.0) * q

    # J- (phase -mu t): direct through the saddle, then rotate
    t0 = float(np.arcsinh((mu * math.pi / 2.0 + 45.0) / y))

    def direct(t):
        return np.exp(1j * (y * np.cosh(t) - mu * t))

    j_minus = oscillatory_panel_integral(direct, 0.0, t0,
                                         lambda t: abs(y * math.sinh(t) - mu) + 1.0,
                                         max_dphase=1.6)
    ych, ysh = y * math.cosh(t0), y * math.sinh(t0)

    def vert(th_):
        return np.exp(1j * ych * np.cos(th_) - ysh * np.sin(th_) + mu * th_)

    j_minus += 1j * np.exp(-1j * mu * t0) * oscillatory_panel_integral(
        vert, 0.0, 0.5 * math.pi, lambda t: ych * math.sin(t) + mu + ysh, max_dphase=1.6)
    # remaining horizontal ray is bounded by exp(-45); kept for completeness

    def horiz2(s):
        return np.exp(-y * np.sinh(s + t0) - 1j * mu * s)

    j_minus += (math.exp(mu * math.pi / 2.0) * np.exp(-1j * mu * t0)
                * oscillatory_panel_integral(horiz2, 0.0, max(s_hi - t0, 1.0),
                                             lambda s: mu + 1.0, max_dphase=2.0))
    return complex(j_plus + j_minus)


def bessel_k_imag_order_imag_arg(mu: float, y: float, sign: int = +1) -> complex:
    """K_{-i mu}(-i y) for sign=+1, K_{+i mu}(+i y) for sign=-1 (y > 0).

    These are the two conjugate combinations the cosh-phase integrals
    produce: 2 K_{-+ i mu}(-+ i y) = int_R exp(+-i y cosh t + i mu t) dt.
    """
    if y <= 0:
        raise DomainError("bessel_k_imag_order_imag_arg: y must be > 0")
    val = 0.5 * oscillatory_cosh_integral(y, mu)
    if sign >= 0:
        return val
    return val.conjugate()
