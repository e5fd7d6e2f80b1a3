"""Regularized vacuum Wigner function for arbitrary trajectories, the
thermal closed form, the causal Page distribution, and the high-frequency
asymptotics of acceleration discontinuities.

The regularized kernel at center tau and offset u is

    k(tau, u) = (1/4 pi^2) (1/Delta x^2(tau, u) + 1/u^2)
              = (1/4 pi^2) dminus / ((u^2 + dminus) u^2),

with dminus = f_+ f_- - u^2 >= 0 supplied cancellation-free by the
trajectory.  k is real, even in u, nonnegative, and equals a_tau^2 / 48 pi^2
at u = 0, which is the power identity in kernel form.

Transform bookkeeping: the kernel's Fourier transform is even in omega and
equals the printed thermal law for omega > 0; the printed law at omega < 0
additionally contains the inertial part |omega|/2pi.  `thermal_wigner` is
the printed (total) form, `thermal_excess_wigner` the even regular part
that grids actually hold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (COMPONENT_PAGE, COMPONENT_VACUUM_EXCESS, GridMeta,
                   TimeFrequencyGrid)
from .errors import DomainError, PreconditionError, RangeError
from .quadrature import (gl_rule, hermitian_kernel_transform)
from .specfun import thermal_g
from .trajectory import Trajectory

_FOURPI2 = 4.0 * math.pi ** 2


def inertial_vacuum_wigner(omega):
    """Divergent inertial vacuum part: |omega|/2pi for omega < 0, else 0."""
    w = np.asarray(omega, dtype=float)
    out = np.where(w < 0.0, np.abs(w) / (2.0 * np.pi), 0.0)
    return out if out.ndim else float(out)


def thermal_wigner(a: float, omega):
    """Stationary response of uniform acceleration a:
    (omega/2pi) / (exp(2 pi omega / a) - 1), with the removable singularity
    a/4pi^2 at omega = 0.  This is the total (inertial + regular) form.
    """
    if a <= 0:
        raise DomainError("thermal_wigner: a must be > 0")
    w = np.asarray(omega, dtype=float)
    out = (a / _FOURPI2) * np.asarray(thermal_g(2.0 * np.pi * w / a))
    return out if w.ndim else float(out)


def thermal_excess_wigner(a: float, omega):
    """Regular (inertial-subtracted) part of the thermal law: even in omega,
    equal to thermal_wigner(a, |omega|).  This is what vacuum grids hold."""
    if a <= 0:
        raise DomainError("thermal_excess_wigner: a must be > 0")
    w = np.abs(np.asarray(omega, dtype=float))
    out = (a / _FOURPI2) * np.asarray(thermal_g(2.0 * np.pi * w / a))
    return out if np.ndim(omega) else float(out)


@dataclass(frozen=True)
class VacuumJob:
    """Grid request for the vacuum Wigner / Page transforms.

    ``upsilon_max`` truncates the offset integral; ``n_upsilon`` samples it
    uniformly (the transform is exact for the cubic interpolant, so the
    sampling only needs to resolve the kernel and the fastest requested
    frequency).  ``taper_fraction`` > 0 switches from the analytic
    1/u^2-tail correction to a raised-cosine taper.
    """

    traj: Trajectory
    taus: np.ndarray
    omegas: np.ndarray
    upsilon_max: float
    n_upsilon: int = 8192
    taper_fraction: float = 0.0

    def __post_init__(self):
        taus = np.atleast_1d(np.asarray(self.taus, dtype=float))
        omegas = np.atleast_1d(np.asarray(self.omegas, dtype=float))
        object.__setattr__(self, "taus", taus)
        object.__setattr__(self, "omegas", omegas)
        if self.upsilon_max <= 0 or self.n_upsilon < 32:
            raise PreconditionError("VacuumJob: need upsilon_max > 0 and n_upsilon >= 32")
        lo, hi = self.traj.domain
        half = 0.5 * self.upsilon_max
        if taus[0] - half < lo or taus[-1] + half > hi:
            raise RangeError("VacuumJob: trajectory domain does not cover tau +- upsilon_max/2")
        nonzero = np.abs(omegas[np.abs(omegas) > 0])
        object.__setattr__(self, "resolution_warning",
                           bool(nonzero.size and self.upsilon_max <= 4 * np.pi / nonzero.min()))

    @property
    def upsilons(self) -> np.ndarray:
        return np.linspace(0.0, self.upsilon_max, self.n_upsilon + 1)


def regularized_kernel_row(traj: Trajectory, tau: float, upsilons: np.ndarray) -> np.ndarray:
    """(1/4 pi^2)(1/Delta x^2 + 1/u^2) on the half-axis grid, with the exact
    u = 0 limit a_tau^2/12 in place."""
    ups = np.asarray(upsilons, dtype=float)
    dminus = traj.dminus_row(tau, ups)
    out = np.empty_like(ups)
    pos = ups > 0
    u2 = ups[pos] ** 2
    out[pos] = dminus[pos] / ((u2 + dminus[pos]) * u2)
    if np.any(~pos):
        a = traj.acceleration(tau)
        out[~pos] = a * a / 12.0
    return out / _FOURPI2


def _tail_coefficient(kernel_row: np.ndarray, upsilons: np.ndarray) -> float:
    """Coefficient c of the asymptotic c/u^2 kernel tail, fitted from the
    last few samples.  c -> 1/4pi^2 for trajectories still accelerating at
    the window end, tanh^2((A_hi - A_lo)/2)/4pi^2 for inertial ends."""
    n_fit = max(4, kernel_row.size // 64)
    return float(np.mean(kernel_row[-n_fit:] * upsilons[-n_fit:] ** 2))


def vacuum_excess_wigner(job: VacuumJob, threads: int = 1) -> TimeFrequencyGrid:
    """Regularized vacuum Wigner grid.

    Per row: cancellation-free kernel samples, exact spline transform for
    all omegas at once, then either the analytic 1/u^2 tail (default) or a
    raised-cosine taper.  Output is real and even in omega by construction
    of the kernel (real, even); the evenness of the underlying transform is
    a tested invariant, not an enforced symmetrization.
    """
    ups = job.upsilons
    rows = _map_rows(lambda t: regularized_kernel_row(job.traj, t, ups), job.taus, threads)
    if job.taper_fraction > 0.0:
        values = hermitian_kernel_transform(ups, rows, job.omegas,
                                            taper_fraction=job.taper_fraction)
        tail_note = f"taper={job.taper_fraction}"
    else:
        coeffs = [_tail_coefficient(r, ups) for r in rows]
        values = hermitian_kernel_transform(ups, rows, job.omegas, tail_coeffs=coeffs)
        tail_note = "analytic-invsq-tail"
    meta = GridMeta(trajectory=job.traj.profile.describe(),
                    state="vacuum",
                    component=COMPONENT_VACUUM_EXCESS,
                    notes=(f"upsilon_max={job.upsilon_max}", tail_note)
                    + (("resolution-warning",) if job.resolution_warning else ()))
    return TimeFrequencyGrid(job.taus, job.omegas, values, meta)


def page_distribution(job: VacuumJob, threads: int = 1) -> TimeFrequencyGrid:
    """Causal Page distribution with the same regularized kernel:
    2 Re int_0^inf k(tau - u/2, u) exp(i omega u) du.

    The pair (tau, tau - u) only reaches past points, so rows before any
    acceleration onset vanish identically.  For stationary trajectories the
    result coincides with the Wigner transform.
    """
    ups = job.upsilons
    x, w = gl_rule(12)

    def page_row(tau):
        # kernel centered at tau - u/2: pairwise, via per-panel integrals of
        # exp(+-A) accumulated from the right end tau
        lo, hi = ups[:-1], ups[1:]
        mid = (0.5 * (lo + hi))[:, None]
        half = (0.5 * (hi - lo))[:, None]
        nodes = tau - (mid + half * x[None, :])
        a_nodes = job.traj.rapidity(nodes)
        wts = half * w[None, :]
        with np.errstate(over="ignore"):
            p_plus = np.sum(np.exp(a_nodes) * wts, axis=1)
            p_minus = np.sum(np.exp(-a_nodes) * wts, axis=1)
        h_plus = np.concatenate([[0.0], np.cumsum(p_plus)])
        h_minus = np.concatenate([[0.0], np.cumsum(p_minus)])
        centers = tau - 0.5 * ups
        a_c = job.traj.rapidity(centers)
        f_plus = np.exp(-a_c) * h_plus
        f_minus = np.exp(a_c) * h_minus
        out = np.empty_like(ups)
        pos = ups > 0
        u2 = ups[pos] ** 2
        dminus = f_plus[pos] * f_minus[pos] - u2
        out[pos] = dminus / ((u2 + dminus) * u2)
        if np.any(~pos):
            a0 = job.traj.acceleration(tau)
            out[~pos] = a0 * a0 / 12.0
        return out / _FOURPI2

    rows = _map_rows(page_row, job.taus, threads)
    if job.taper_fraction > 0.0:
        values = hermitian_kernel_transform(ups, rows, job.omegas,
                                            taper_fraction=job.taper_fraction)
    else:
        coeffs = [_tail_coefficient(r, ups) for r in rows]
        values = hermitian_kernel_transform(ups, rows, job.omegas, tail_coeffs=coeffs)
    meta = GridMeta(trajectory=job.traj.profile.describe(),
                    state="vacuum",
                    component=COMPONENT_PAGE,
                    notes=("page/causal-running-transform",
                           f"upsilon_max={job.upsilon_max}"))
    return TimeFrequencyGrid(job.taus, job.omegas, values, meta)


def discontinuity_asymptote(a: float, tau_rel: float, omega, side: str = "after"):
    """High-frequency Wigner structure near a jump in the acceleration.

    after (tau > jump):  -(1/4pi^2) a^4/(8 sinh^2 a tau) sin(2 w tau)/w^3
    before (tau < jump): -(1/4pi^2) a^2/(16 tau^3) cos(2 w tau)/w^4

    ``tau_rel`` is the proper time since (after) or until (before) the jump.
    """
    if tau_rel == 0.0:
        raise DomainError("discontinuity_asymptote: tau_rel must be nonzero")
    w = np.asarray(omega, dtype=float)
    if np.any(w == 0.0):
        raise DomainError("discontinuity_asymptote: omega must be nonzero")
    if side == "after":
        out = -(1.0 / _FOURPI2) * a ** 4 / (8.0 * math.sinh(a * tau_rel) ** 2) \
            * np.sin(2.0 * w * tau_rel) / w ** 3
    elif side == "before":
        out = -(1.0 / _FOURPI2) * a ** 2 / (16.0 * tau_rel ** 3) \
            * np.cos(2.0 * w * tau_rel) / w ** 4
    else:
        raise DomainError("discontinuity_asymptote: side must be 'after' or 'before'")
    return out if out.ndim else float(out)


def _map_rows(fn, taus, threads: int):
    if threads <= 1 or len(taus) < 4:
        return np.array([fn(t) for t in taus])
    from concurrent.futures import ThreadPoolExecutor
    with ThreadPoolExecutor(max_workers=threads) as pool:
        rows = list(pool.map(fn, taus))
    return np.array(rows)
