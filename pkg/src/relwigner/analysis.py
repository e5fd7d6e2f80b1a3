"""Post-processing of time-frequency grids: ridge extraction, recovery of
the acceleration history from a ridge, and the stationary-domain Gaussian
smoothing that turns a non-stationary response into locally thermal
columns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .adiabatic import stationary_timescale
from .core import AccelerationProfile, GridMeta, TimeFrequencyGrid
from .errors import InvalidInputError, PreconditionError


@dataclass(frozen=True)
class RidgeCurve:
    """One ridge frequency per retained proper time, with peak intensities
    as weights (rows with no significant peak are dropped)."""

    taus: np.ndarray
    omegas: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.taus, dtype=float)
        w = np.asarray(self.omegas, dtype=float)
        g = np.asarray(self.weights, dtype=float)
        if not (t.shape == w.shape == g.shape):
            raise InvalidInputError("RidgeCurve: mismatched arrays")
        if np.any(g < 0):
            raise InvalidInputError("RidgeCurve: weights must be >= 0")
        object.__setattr__(self, "taus", t)
        object.__setattr__(self, "omegas", w)
        object.__setattr__(self, "weights", g)


def extract_ridge(grid: TimeFrequencyGrid, omega_min: float,
                  floor: float = 1e-9) -> RidgeCurve:
    """Per-row argmax of the grid over omega > omega_min, refined by
    three-point parabolic interpolation.

    ``omega_min`` excludes the omega ~ 0 interference ridge of coherent
    states.  Rows whose peak is below ``floor`` are skipped.  The result is
    invariant under positive rescaling of the grid up to the fixed floor.
    """
    sel = grid.omegas > omega_min
    if not np.any(sel):
        raise PreconditionError("extract_ridge: no columns above omega_min")
    om = grid.omegas[sel]
    sub = grid.values[:, sel]
    taus, ridge, weights = [], [], []
    for i, row in enumerate(sub):
        j = int(np.argmax(row))
        peak = row[j]
        if peak < floor:
            continue
        omega_hat = om[j]
        if 0 < j < row.size - 1:
            denom = row[j - 1] - 2.0 * row[j] + row[j + 1]
            if denom < 0:
                omega_hat = om[j] + 0.5 * (row[j - 1] - row[j + 1]) / denom * (om[1] - om[0])
        taus.append(grid.taus[i])
        ridge.append(omega_hat)
        weights.append(peak)
    return RidgeCurve(np.asarray(taus), np.asarray(ridge), np.asarray(weights))


def recover_acceleration(ridge: RidgeCurve, weight_floor: float = 0.0):
    """a(tau) = -(dw/dtau)/w by central differences on the ridge.

    Returns ``(taus, a_estimates)`` on the interior points.  Needs at least
    three ridge points above the weight floor.
    """
    keep = ridge.weights > weight_floor
    taus = ridge.taus[keep]
    omegas = ridge.omegas[keep]
    if taus.size < 3:
        raise InvalidInputError("recover_acceleration: need at least 3 ridge points")
    dw = omegas[2:] - omegas[:-2]
    dt = taus[2:] - taus[:-2]
    a_est = -(dw / dt) / omegas[1:-1]
    return taus[1:-1], a_est


def _gaussian_kernel(offsets: np.ndarray, width: float) -> np.ndarray:
    k = np.exp(-0.5 * (offsets / width) ** 2)
    return k / np.sum(k)


def _reflect_index(idx: np.ndarray, n: int) -> np.ndarray:
    # symmetric (edge-repeating) reflection: ..., 1, 0, 0, 1, ...; with a
    # symmetric kernel the scatter matrix is doubly stochastic, so both the
    # total mass and constant fields are preserved exactly
    idx = np.mod(idx, 2 * n)
    return np.where(idx >= n, 2 * n - 1 - idx, idx)


def stationary_smooth(grid: TimeFrequencyGrid, profile: AccelerationProfile,
                      ratio: float, cap: float | None = None) -> TimeFrequencyGrid:
    """Gaussian average over the stationary domain of each proper time.

    Each input row tau is spread over neighbouring rows with a Gaussian of
    width tau_s(tau) = stationary_timescale(profile, tau, ratio) (scatter
    normalization, so the total integral is preserved for any width
    profile), then each output row is blurred in omega with the conjugate
    width 1/(2 tau_s) demanded by the time-frequency indeterminacy.
    Degenerate tau_s = 0 rows fall back to the smallest positive width and
    are flagged in the metadata.
    """
    if not 0.0 < ratio < 1.0:
        raise PreconditionError("stationary_smooth: ratio must be in (0, 1)")
    taus, omegas, values = grid.taus, grid.omegas, grid.values
    n_tau, n_omega = values.shape
    span = taus[-1] - taus[0]
    if cap is None:
        cap = span

    widths = np.empty(n_tau)
    degenerate = np.zeros(n_tau, dtype=bool)
    for i, t in enumerate(taus):
        ts = stationary_timescale(profile, t, ratio, cap=cap)
        widths[i] = ts.value
        degenerate[i] = ts.degenerate
    positive = widths[widths > 0]
    fallback = positive.min() if positive.size else span / n_tau
    widths = np.where(widths > 0, widths, fallback)
    widths = np.maximum(widths, grid.tau_step)   # never below one cell

    # time smoothing: scatter each input row with its own kernel
    smoothed_t = np.zeros_like(values)
    for i in range(n_tau):
        reach = int(math.ceil(4.0 * widths[i] / grid.tau_step))
        cols = np.arange(i - reach, i + reach + 1)
        kern = _gaussian_kernel((cols - i) * grid.tau_step, widths[i])
        target = _reflect_index(cols, n_tau)
        np.add.at(smoothed_t, target, kern[:, None] * values[i][None, :])

    # frequency smoothing per row, conjugate width 1/(2 tau_s); widths below
    # the grid resolution act as the identity
    out = np.empty_like(values)
    dom = grid.omega_step
    for i in range(n_tau):
        w_freq = 0.5 / widths[i]
        if w_freq < 0.75 * dom:
            out[i] = smoothed_t[i]
            continue
        reach = int(math.ceil(4.0 * w_freq / dom))
        offs = np.arange(-reach, reach + 1)
        kern = _gaussian_kernel(offs * dom, w_freq)
        acc = np.zeros(n_omega)
        for j in range(n_omega):
            target = _reflect_index(j + offs, n_omega)
            np.add.at(acc, target, kern * smoothed_t[i, j])
        out[i] = acc

    notes = grid.meta.notes + (f"stationary-smooth ratio={ratio}",)
    if np.any(degenerate):
        notes += ("degenerate-rows:" + ",".join(str(i) for i in np.where(degenerate)[0]),)
    meta = GridMeta(trajectory=grid.meta.trajectory, state=grid.meta.state,
                    component=grid.meta.component,
                    regularization=grid.meta.regularization, notes=notes)
    return TimeFrequencyGrid(taus, omegas, out, meta)
