"""Quadrature and Fourier-transform machinery shared by the physics modules.

Three families of tools live here:

* ordinary quadrature: cached Gauss-Legendre rules, composite and adaptive
  panel integration, tanh-sinh (double-exponential) rules for integrands
  with endpoint decay or mild endpoint singularities;
* Fourier transforms of sampled kernels: the exact transform of the cubic
  spline interpolant, evaluated for all requested frequencies at once
  through shared complex-exponential matrices, plus the analytic tail of a
  1/upsilon^2 kernel beyond the truncation point;
* oscillatory phase integrals: phase-adaptive panel integration of
  exp(i*phi(t)) with panel widths controlled by the local phase rate.

Everything is pure and stateless apart from the Gauss-Legendre node cache.
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.interpolate import CubicSpline
from scipy.special import sici

from .errors import AccuracyError

_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def gl_rule(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [-1, 1], cached per order."""
    rule = _GL_CACHE.get(order)
    if rule is None:
        rule = leggauss(order)
        _GL_CACHE[order] = rule
    return rule


def gauss_panel(f, a: float, b: float, order: int = 32) -> complex:
    """Single Gauss-Legendre panel of ``f`` over [a, b]."""
    x, w = gl_rule(order)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return half * np.sum(w * f(mid + half * x))


def composite_gauss(f, a: float, b: float, n_panels: int, order: int = 16) -> complex:
    edges = np.linspace(a, b, n_panels + 1)
    return sum(gauss_panel(f, lo, hi, order) for lo, hi in zip(edges[:-1], edges[1:]))


def adaptive_gauss(f, a: float, b: float, tol: float = 1e-12,
                   order: int = 16, max_depth: int = 24, corners=()):
    """Adaptive quadrature with an embedded low/high-order error estimate.

    Each panel compares GL(order) against GL(2*order) (two genuinely
    different rules; a plain bisection estimate can be fooled by integrand
    kinks) and bisects until the difference is below the scaled tolerance.
    ``corners`` lists known non-smooth points to split at up front.
    Returns ``(value, err)``.
    """
    if a == b:
        return 0.0, 0.0
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    total_scale = abs(b - a)
    edges = [a] + sorted(c for c in corners if a < c < b) + [b]

    def recurse(lo, hi, depth):
        coarse = gauss_panel(f, lo, hi, order)
        fine = gauss_panel(f, lo, hi, 2 * order)
        err = abs(fine - coarse)
        if err < tol * max(1.0, (hi - lo) / total_scale) or depth >= max_depth:
            return fine, err
        mid = 0.5 * (lo + hi)
        lv, le = recurse(lo, mid, depth + 1)
        rv, re = recurse(mid, hi, depth + 1)
        return lv + rv, le + re

    value, err = 0.0, 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        v, e = recurse(lo, hi, 0)
        value += v
        err += e
    return sign * value, err


def tanh_sinh(f, a: float, b: float, tol: float = 1e-12, max_level: int = 12):
    """Tanh-sinh (double-exponential) quadrature on the finite interval [a, b].

    Doubles the node density per level until two consecutive levels agree
    to ``tol`` (absolute, scaled by the magnitude of the result).  Returns
    ``(value, err_estimate)``; raises :class:`AccuracyError` if the budget
    is exhausted without convergence.
    """
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    prev = None
    value, err = 0.0, np.inf
    for level in range(4, max_level):
        n = 2 ** level
        h = 3.0 / n
        u = np.arange(-n, n + 1) * h
        su = np.sinh(u)
        nodes = np.tanh(0.5 * np.pi * su)
        weights = 0.5 * np.pi * np.cosh(u) / np.cosh(0.5 * np.pi * su) ** 2 * h
        value = half * np.sum(weights * f(mid + half * nodes))
        if prev is not None:
            err = abs(value - prev)
            if err < tol * (1.0 + abs(value)):
                return value, err
        prev = value
    raise AccuracyError("tanh-sinh quadrature did not converge",
                        value=value, estimate=err)


# ---------------------------------------------------------------------------
# Fourier transforms of sampled kernels
# ---------------------------------------------------------------------------

def segment_moments(omegas: np.ndarray, step: float) -> np.ndarray:
    """Moments M_j(w) = int_0^step s^j exp(i w s) ds for j = 0..3.

    Uses a Taylor series for |w*step| < 0.8 (the recurrence loses digits
    there) and the stable upward recurrence otherwise.  Shape (4, len(w)).
    """
    om = np.asarray(omegas, dtype=float)
    theta = om * step
    moments = np.empty((4, om.size), dtype=complex)

    small = np.abs(theta) < 0.8
    if np.any(small):
        ths = theta[small]
        for j in range(4):
            acc = np.zeros_like(ths, dtype=complex)
            term = np.ones_like(ths, dtype=complex)
            for n in range(30):
                acc += term / (j + n + 1)
                term *= 1j * ths / (n + 1)
            moments[j, small] = step ** (j + 1) * acc
    big = ~small
    if np.any(big):
        omb, thb = om[big], theta[big]
        phase = np.exp(1j * thb)
        prev = (phase - 1.0) / (1j * omb)
        moments[0, big] = prev
        for j in range(1, 4):
            prev = (step ** j * phase - j * prev) / (1j * omb)
            moments[j, big] = prev
    return moments


def spline_fourier_rows(upsilons: np.ndarray, rows: np.ndarray,
                        omegas: np.ndarray, max_block: int = 4_000_000) -> np.ndarray:
    """Exact Fourier transform of the cubic-spline interpolant, per row.

    Computes ``int_0^T S_r(u) exp(i w u) du`` for every row r and frequency
    w, where S_r interpolates ``rows[r]`` on the uniform grid ``upsilons``
    (which must start at 0).  The interpolation error is O(step^4) uniformly
    in w, so high frequencies are not penalised the way plain trapezoid
    sums are.  Rows may be complex.

    The complex-exponential matrix exp(i u_k w_j) is shared by all rows and
    chunked along w so memory stays below ``max_block`` entries.
    """
    ups = np.asarray(upsilons, dtype=float)
    rows = np.atleast_2d(rows)
    om = np.asarray(omegas, dtype=float)
    if ups[0] != 0.0:
        raise ValueError("upsilon grid must start at 0")
    step = ups[1] - ups[0]

    spline = CubicSpline(ups, rows, axis=1)
    coeff = spline.c  # (4, n_seg, n_rows); c[m] multiplies (u - u_k)^(3-m)
    moments = segment_moments(om, step)  # (4, n_omega)

    n_seg = ups.size - 1
    out = np.empty((rows.shape[0], om.size), dtype=complex)
    chunk = max(1, min(om.size, max_block // max(n_seg, 1)))
    for start in range(0, om.size, chunk):
        sl = slice(start, min(start + chunk, om.size))
        expmat = np.exp(1j * np.outer(ups[:-1], om[sl]))  # (n_seg, n_chunk)
        acc = np.zeros((rows.shape[0], sl.stop - sl.start), dtype=complex)
        for m in range(4):
            acc += moments[3 - m, sl][None, :] * (coeff[m].T @ expmat)
        out[:, sl] = acc
    return out


def inverse_square_tail(omegas: np.ndarray, cutoff: float) -> np.ndarray:
    """Two-sided tail integral of a 1/u^2 kernel beyond |u| = cutoff.

    Returns ``int_{|u|>T} exp(i w u)/u^2 du = 2[cos(wT)/T - |w|(pi/2 - Si(|w|T))]``
    (real and even in w).
    """
    om = np.abs(np.asarray(omegas, dtype=float))
    si, _ = sici(om * cutoff)
    return 2.0 * (np.cos(om * cutoff) / cutoff - om * (0.5 * np.pi - si))


def raised_cosine_taper(n_samples: int, fraction: float) -> np.ndarray:
    """Window equal to 1 except for a raised-cosine rolloff on the last
    ``fraction`` of the samples."""
    w = np.ones(n_samples)
    n_roll = int(round(n_samples * fraction))
    if n_roll > 1:
        x = np.linspace(0.0, 1.0, n_roll)
        w[-n_roll:] = 0.5 * (1.0 + np.cos(np.pi * x))
    return w


def hermitian_kernel_transform(upsilons, rows, omegas, tail_coeffs=None,
                               taper_fraction: float = 0.0) -> np.ndarray:
    """Real Wigner rows from Hermitian kernel samples on the half-axis.

    For a kernel with k(-u) = conj(k(u)), the two-sided transform reduces to
    ``2 Re int_0^T k(u) exp(i w u) du``.  ``tail_coeffs`` (one per row) adds
    the analytic 1/u^2 tail with that coefficient; ``taper_fraction`` applies
    a raised-cosine taper instead (used for kernels with no decay model).
    """
    rows = np.atleast_2d(rows)
    if taper_fraction > 0.0:
        rows = rows * raised_cosine_taper(rows.shape[1], taper_fraction)[None, :]
    result = 2.0 * np.real(spline_fourier_rows(upsilons, rows, omegas))
    if tail_coeffs is not None:
        tail = inverse_square_tail(omegas, upsilons[-1])
        result = result + np.outer(np.asarray(tail_coeffs, dtype=float), tail)
    return result


# ---------------------------------------------------------------------------
# Oscillatory phase integrals
# ---------------------------------------------------------------------------

def phase_adaptive_panels(a: float, b: float, rate, max_dphase: float,
                          min_step: float = 1e-7) -> np.ndarray:
    """Panel edges on [a, b] such that the local phase change per panel,
    estimated from the rate function, stays below ``max_dphase``."""
    edges = [a]
    t = a
    span = b - a
    while t < b:
        r = max(abs(rate(t)), abs(rate(min(b, t + 0.05 * span))), 1e-12)
        t = min(b, t + max(min(max_dphase / r, 0.25 * span), min_step))
        edges.append(t)
    return np.asarray(edges)


def oscillatory_panel_integral(f, a: float, b: float, rate,
                               max_dphase: float = 1.8, order: int = 32) -> complex:
    """Integrate an oscillatory integrand with phase-rate-controlled panels."""
    edges = phase_adaptive_panels(a, b, rate, max_dphase)
    return sum(gauss_panel(f, lo, hi, order) for lo, hi in zip(edges[:-1], edges[1:]))
