"""Worldline kinematics derived from an acceleration profile.

The 4-velocity is parametrized by the rapidity A(tau) = A0 + int_0^tau a, so
u = (cosh A, sinh A) and the velocity normalization holds identically.  The
quantities the correlation kernels need are

* f_pm(tau, u) = int_{-u/2}^{u/2} exp(+-A_tau(s)) ds with
  A_tau(s) = A(tau+s) - A(tau),
* the invariant interval Delta x^2(tau, u) = -f_+ f_-,
* the light-cone coordinate t - x = int_0^tau exp(-A),

all in cancellation-free form: f_pm - u is accumulated from expm1(+-A_tau),
so the regularized combination 1/Delta x^2 + 1/u^2 keeps full precision down
to u = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .core import AccelerationProfile, ConstantProfile
from .errors import RangeError
from .quadrature import adaptive_gauss, gl_rule

_ROW_GL_ORDER = 12


@dataclass(frozen=True)
class Trajectory:
    """Immutable worldline built from an acceleration profile.

    ``rapidity0`` boosts the whole worldline (A(0) = rapidity0); the default
    0 anchors the detector at rest at tau = 0.  Regularized vacuum kernels
    are invariant under the boost since only rapidity differences enter.
    """

    profile: AccelerationProfile
    rapidity0: float = 0.0

    @property
    def domain(self) -> tuple[float, float]:
        return self.profile.domain()

    def _check_domain(self, tau):
        lo, hi = self.domain
        t = np.asarray(tau, dtype=float)
        if np.any(t < lo) or np.any(t > hi):
            raise RangeError(f"tau outside trajectory domain [{lo}, {hi}]")

    # -- rapidity -----------------------------------------------------------

    def rapidity(self, tau):
        """A(tau) = rapidity0 + int_0^tau a."""
        self._check_domain(tau)
        return self.rapidity0 + self.profile.integral(tau)

    def relative_rapidity(self, tau, s):
        """A(tau + s) - A(tau), exact down to s = 0 for every variant."""
        return self.profile.integral_between(tau, np.asarray(tau) + np.asarray(s))

    def acceleration(self, tau):
        return self.profile.value(tau)

    # -- f_pm and the invariant interval -------------------------------------

    def _expm1_pair_row(self, tau: float, upsilons: np.ndarray):
        """e_pm(u) = (1/u) int_{-u/2}^{u/2} expm1(+-A_tau(s)) ds on an
        ascending uniform grid starting at 0 (e_pm(0) = 0).

        Gauss-Legendre increments over the paired panels [u_k/2, u_{k+1}/2]
        and [-u_{k+1}/2, -u_k/2] are prefix-summed, vectorized over panels.
        """
        ups = np.asarray(upsilons, dtype=float)
        if ups[0] != 0.0:
            raise ValueError("upsilon grid must start at 0")
        self._check_domain(tau + 0.5 * ups[-1])
        self._check_domain(tau - 0.5 * ups[-1])
        halves = 0.5 * ups
        x, w = gl_rule(_ROW_GL_ORDER)
        lo, hi = halves[:-1], halves[1:]
        mid = (0.5 * (lo + hi))[:, None]
        half = (0.5 * (hi - lo))[:, None]
        s_right = mid + half * x[None, :]
        nodes = np.concatenate([s_right, -s_right], axis=1)   # (n_panels, 2*order)
        wts = np.concatenate([half * w[None, :]] * 2, axis=1)
        a_rel = self.relative_rapidity(tau, nodes)
        int_plus = np.concatenate([[0.0], np.cumsum(np.sum(np.expm1(a_rel) * wts, axis=1))])
        int_minus = np.concatenate([[0.0], np.cumsum(np.sum(np.expm1(-a_rel) * wts, axis=1))])
        safe = np.where(ups > 0, ups, 1.0)
        return np.where(ups > 0, int_plus / safe, 0.0), np.where(ups > 0, int_minus / safe, 0.0)

    def _expm1_pair_scalar(self, tau: float, upsilon: float, tol: float = 1e-13):
        """e_pm for a single offset; adaptive quadrature, sign of u handled
        so that f_pm = u (1 + e_pm) holds for either sign."""
        self._check_domain(tau + 0.5 * upsilon)
        self._check_domain(tau - 0.5 * upsilon)
        if upsilon == 0.0:
            return 0.0, 0.0
        h = 0.5 * abs(upsilon)
        corners = [c - tau for c in self.profile.corners() if -h < c - tau < h]
        ip, _ = adaptive_gauss(lambda s: np.expm1(self.relative_rapidity(tau, s)),
                               -h, h, tol=tol, corners=corners)
        im, _ = adaptive_gauss(lambda s: np.expm1(-self.relative_rapidity(tau, s)),
                               -h, h, tol=tol, corners=corners)
        return ip / abs(upsilon), im / abs(upsilon)

    def f_plus_minus(self, tau: float, upsilon: float) -> tuple[float, float]:
        """(f_+, f_-); closed form 2 sinh(a u/2)/a for constant profiles."""
        if isinstance(self.profile, ConstantProfile):
            self._check_domain(tau + 0.5 * upsilon)
            self._check_domain(tau - 0.5 * upsilon)
            a = self.profile.a0
            val = 2.0 * math.sinh(0.5 * a * upsilon) / a if a != 0.0 else float(upsilon)
            return val, val
        ep, em = self._expm1_pair_scalar(tau, upsilon)
        return upsilon * (1.0 + ep), upsilon * (1.0 + em)

    def interval_sq(self, tau: float, upsilon: float) -> float:
        """Delta x^2(tau + u/2, tau - u/2) = -f_+ f_- (<= 0, = 0 iff u = 0)."""
        if upsilon == 0.0:
            self._check_domain(tau)
            return 0.0
        fp, fm = self.f_plus_minus(tau, upsilon)
        return -fp * fm

    def dminus_row(self, tau: float, upsilons: np.ndarray) -> np.ndarray:
        """f_+ f_- - u^2 on a uniform half-axis grid, cancellation-free.

        The regularized vacuum kernel is dminus / ((u^2 + dminus) u^2); its
        u -> 0 limit a_tau^2/12 is reproduced by :meth:`dminus_series`.
        """
        ups = np.asarray(upsilons, dtype=float)
        if isinstance(self.profile, ConstantProfile):
            a = self.profile.a0
            if a == 0.0:
                return np.zeros_like(ups)
            x = 0.5 * a * ups
            small = np.abs(x) < 1e-3
            xs = np.where(ups > 0, x, 1.0)
            rel = np.where(small, x * x / 6.0 * (1.0 + x * x / 20.0),
                           np.sinh(xs) / xs - 1.0)
            rel = np.where(ups > 0, rel, 0.0)
            return ups * ups * (2.0 * rel + rel * rel)
        e_plus, e_minus = self._expm1_pair_row(tau, ups)
        return ups * ups * (e_plus + e_minus + e_plus * e_minus)

    def dminus_series(self, tau: float, upsilon) -> np.ndarray:
        """Small-u series of f_+ f_- - u^2:
        u^4 [a^2/12 + (8 a^4 + 4 adot^2 + 6 a addot) u^2 / 2880].

        Kept as the u -> 0 oracle for the product route above.
        """
        u = np.asarray(upsilon, dtype=float)
        a = self.profile.value(tau)
        adot = self.profile.derivative(tau)
        addot = self.profile.second_derivative(tau)
        u2 = u * u
        return u2 * u2 * (a * a / 12.0
                          + (8 * a ** 4 + 4 * adot ** 2 + 6 * a * addot) * u2 / 2880.0)

    # -- positions and light-cone quantities ----------------------------------

    def position(self, tau: float) -> tuple[float, float]:
        """(t, x) in the frame that is locally inertial at tau = 0."""
        self._check_domain(tau)
        if isinstance(self.profile, ConstantProfile) and self.rapidity0 == 0.0:
            a = self.profile.a0
            if a == 0.0:
                return float(tau), 0.0
            return math.sinh(a * tau) / a, (math.cosh(a * tau) - 1.0) / a
        corners = self.profile.corners()
        t, _ = adaptive_gauss(lambda u: np.cosh(self.rapidity0 + self.profile.integral(u)),
                              0.0, tau, tol=1e-12, corners=corners)
        x, _ = adaptive_gauss(lambda u: np.sinh(self.rapidity0 + self.profile.integral(u)),
                              0.0, tau, tol=1e-12, corners=corners)
        return float(t), float(x)

    def tminusx(self, tau: float) -> float:
        """Light-cone coordinate t(tau) - x(tau) = int_0^tau exp(-A(u)) du."""
        self._check_domain(tau)
        if isinstance(self.profile, ConstantProfile) and self.rapidity0 == 0.0:
            a = self.profile.a0
            if a == 0.0:
                return float(tau)
            return -math.expm1(-a * tau) / a
        val, _ = adaptive_gauss(lambda u: np.exp(-(self.rapidity0 + self.profile.integral(u))),
                                0.0, tau, tol=1e-12, corners=self.profile.corners())
        return float(val)

    def tminusx_row(self, tau: float, offsets: np.ndarray) -> np.ndarray:
        """t - x evaluated at tau + offsets for an ascending offset grid.

        One scalar quadrature anchors the first point; the rest accumulates
        vectorized Gauss-Legendre panel increments of exp(-A).
        """
        offs = np.asarray(offsets, dtype=float)
        if offs.size == 1:
            return np.array([self.tminusx(tau + offs[0])])
        if np.any(np.diff(offs) <= 0):
            raise ValueError("offsets must be strictly ascending")
        self._check_domain(tau + offs[0])
        self._check_domain(tau + offs[-1])
        base = self.tminusx(tau + offs[0])
        scale = math.exp(-self.rapidity(tau))
        x, w = gl_rule(_ROW_GL_ORDER)
        lo, hi = offs[:-1], offs[1:]
        mid = (0.5 * (lo + hi))[:, None]
        half = (0.5 * (hi - lo))[:, None]
        nodes = mid + half * x[None, :]
        incs = np.sum(np.exp(-self.relative_rapidity(tau, nodes)) * (half * w[None, :]), axis=1)
        return base + scale * np.concatenate([[0.0], np.cumsum(incs)])

    def reception_time(self, x0: float, search_limit: float = 400.0):
        """Proper time solving t - x + x0 = 0 on the worldline, or None.

        tminusx is strictly increasing, so the root is unique when it
        exists.  The bracket expands geometrically, clipped to the profile
        domain and ``search_limit``; exhaustion means the emission point is
        behind the horizon (or unreachable within the sampled domain).
        """
        if x0 == 0.0:
            return 0.0
        target = -float(x0)
        lo_dom, hi_dom = self.domain

        def g(t):
            return self.tminusx(t) - target

        if target > 0:
            hi = min(1.0, hi_dom)
            while g(hi) < 0.0:
                if hi >= min(search_limit, hi_dom):
                    return None
                hi = min(2.0 * hi, search_limit, hi_dom)
            if g(hi) == 0.0:
                # discriminate a genuine root from float saturation of the
                # asymptoting light-cone coordinate (emission at the horizon)
                rate = math.exp(-self.rapidity(hi))
                if rate * max(hi, 1.0) < 1e-15 * max(1.0, abs(target)):
                    return None
                return float(hi)
            lo = 0.0
        else:
            lo = max(-1.0, lo_dom)
            while g(lo) > 0.0:
                if lo <= max(-search_limit, lo_dom):
                    return None
                lo = max(2.0 * lo, -search_limit, lo_dom)
            if g(lo) == 0.0:
                rate = math.exp(-self.rapidity(lo))
                if rate * max(-lo, 1.0) < 1e-15 * max(1.0, abs(target)):
                    return None
                return float(lo)
            hi = 0.0
        return float(brentq(g, lo, hi, xtol=1e-14, rtol=8.9e-16))

    def instantaneous_frequency(self, p0: float, tau):
        """Redshifted frequency p0 exp(-A(tau)); satisfies dw/dtau = -a w."""
        if p0 <= 0:
            raise RangeError("instantaneous_frequency: p0 must be > 0")
        return p0 * np.exp(-self.rapidity(tau))
