"""Domain types shared by all modules, the time-frequency grid container,
and marginal/integral reductions of finished grids.

Units are natural (hbar = c = k_B = 1) throughout; accelerations are inverse
times, frequencies are angular.  All types are immutable after construction
and safe to share across threads.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import InvalidInputError, PreconditionError, RangeError

# Component labels carried in grid metadata.  Reductions that only make
# sense on regularized content refuse the "total" label.
COMPONENT_VACUUM_EXCESS = "vacuum-excess"
COMPONENT_EXCITATION_EXCESS = "excitation-excess"
COMPONENT_TOTAL = "total"
COMPONENT_PAGE = "page"

_COMPONENTS = (COMPONENT_VACUUM_EXCESS, COMPONENT_EXCITATION_EXCESS,
               COMPONENT_TOTAL, COMPONENT_PAGE)


def _check_finite(name, *values):
    for v in values:
        if not np.all(np.isfinite(v)):
            raise InvalidInputError(f"{name}: non-finite value encountered")


# ---------------------------------------------------------------------------
# Acceleration profiles
# ---------------------------------------------------------------------------

class AccelerationProfile:
    """Declarative proper-acceleration history a(tau).

    Concrete variants supply the pointwise value, its first two derivatives,
    and *exact* integrals: ``integral(tau)`` is A(tau) = int_0^tau a, and
    ``integral_between(t0, t1)`` is evaluated in a cancellation-free form so
    that small differences A(tau+s) - A(tau) keep full precision.
    """

    def value(self, tau):
        raise NotImplementedError

    def derivative(self, tau):
        raise NotImplementedError

    def second_derivative(self, tau):
        raise NotImplementedError

    def integral(self, tau):
        raise NotImplementedError

    def integral_between(self, t0, t1):
        """int_{t0}^{t1} a(u) du, safe for |t1 - t0| down to 0."""
        raise NotImplementedError

    def domain(self) -> tuple[float, float]:
        return (-math.inf, math.inf)

    def corners(self) -> tuple[float, ...]:
        """Proper times where a(tau) is not smooth (quadrature split points)."""
        return ()

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class ConstantProfile(AccelerationProfile):
    a0: float

    def __post_init__(self):
        _check_finite("ConstantProfile", self.a0)

    def value(self, tau):
        return np.broadcast_to(np.float64(self.a0), np.shape(tau)).copy() \
            if np.ndim(tau) else float(self.a0)

    def derivative(self, tau):
        return np.zeros_like(np.asarray(tau, dtype=float)) if np.ndim(tau) else 0.0

    second_derivative = derivative

    def integral(self, tau):
        return self.a0 * np.asarray(tau, dtype=float) if np.ndim(tau) else self.a0 * tau

    def integral_between(self, t0, t1):
        return self.a0 * (np.asarray(t1, dtype=float) - t0) if np.ndim(t1) \
            else self.a0 * (t1 - t0)

    def describe(self):
        return f"constant(a0={self.a0!r})"


@dataclass(frozen=True)
class SinusoidalProfile(AccelerationProfile):
    """a(tau) = a0 + a1 sin(2 pi f tau)."""

    a0: float
    a1: float
    f: float

    def __post_init__(self):
        _check_finite("SinusoidalProfile", self.a0, self.a1, self.f)
        if self.f <= 0:
            raise InvalidInputError("SinusoidalProfile: drive frequency must be > 0")

    def value(self, tau):
        return self.a0 + self.a1 * np.sin(2 * np.pi * self.f * np.asarray(tau, dtype=float))

    def derivative(self, tau):
        return self.a1 * 2 * np.pi * self.f * np.cos(2 * np.pi * self.f * np.asarray(tau, dtype=float))

    def second_derivative(self, tau):
        w = 2 * np.pi * self.f
        return -self.a1 * w * w * np.sin(w * np.asarray(tau, dtype=float))

    def integral(self, tau):
        w = 2 * np.pi * self.f
        tau = np.asarray(tau, dtype=float)
        # a0 tau + (a1/w)(1 - cos w tau), written with sin^2 to stay exact near 0
        return self.a0 * tau + (2 * self.a1 / w) * np.sin(0.5 * w * tau) ** 2

    def integral_between(self, t0, t1):
        # product form of cos(w t0) - cos(w t1): no cancellation for t1 ~ t0
        w = 2 * np.pi * self.f
        t0 = np.asarray(t0, dtype=float)
        t1 = np.asarray(t1, dtype=float)
        s = t1 - t0
        return self.a0 * s + (2 * self.a1 / w) * np.sin(0.5 * w * s) * np.sin(0.5 * w * (t0 + t1))

    def describe(self):
        return f"sinusoidal(a0={self.a0!r},a1={self.a1!r},f={self.f!r})"


@dataclass(frozen=True)
class PiecewiseConstantProfile(AccelerationProfile):
    """Segment accelerations; ``values`` has one more entry than ``breakpoints``.

    The first/last value extends to -inf/+inf, so finite acceleration
    episodes between inertial phases are expressed naturally.
    """

    breakpoints: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        bp = tuple(float(b) for b in self.breakpoints)
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)
        _check_finite("PiecewiseConstantProfile", np.asarray(bp or (0.0,)), np.asarray(vals))
        if len(vals) != len(bp) + 1:
            raise InvalidInputError("PiecewiseConstantProfile: need len(values) == len(breakpoints) + 1")
        if any(b1 <= b0 for b0, b1 in zip(bp[:-1], bp[1:])):
            raise InvalidInputError("PiecewiseConstantProfile: breakpoints must be strictly ascending")
        object.__setattr__(self, "_bp_arr", np.asarray(bp))
        object.__setattr__(self, "_val_arr", np.asarray(vals))
        # segment edges including the unbounded end segments
        object.__setattr__(self, "_edges", np.concatenate([[-np.inf], bp, [np.inf]]))

    def value(self, tau):
        idx = np.searchsorted(self._bp_arr, np.asarray(tau, dtype=float), side="right")
        out = self._val_arr[idx]
        return out if np.ndim(tau) else float(out)

    def derivative(self, tau):
        return np.zeros_like(np.asarray(tau, dtype=float)) if np.ndim(tau) else 0.0

    second_derivative = derivative

    def integral_between(self, t0, t1):
        """Exact sum of segment overlaps: each term is one product, so small
        intervals lose no precision."""
        t0 = np.asarray(t0, dtype=float)
        t1 = np.asarray(t1, dtype=float)
        lo, hi = np.minimum(t0, t1), np.maximum(t0, t1)
        sign = np.where(t1 >= t0, 1.0, -1.0)
        total = np.zeros(np.broadcast(t0, t1).shape)
        for i, v in enumerate(self._val_arr):
            if v == 0.0:
                continue
            seg_lo = np.maximum(lo, self._edges[i])
            seg_hi = np.minimum(hi, self._edges[i + 1])
            total += v * np.maximum(seg_hi - seg_lo, 0.0)
        out = sign * total
        return out if out.ndim else float(out)

    def integral(self, tau):
        return self.integral_between(0.0, tau)

    def corners(self):
        return self.breakpoints

    def describe(self):
        return f"piecewise(breakpoints={list(self.breakpoints)!r},values={list(self.values)!r})"


@dataclass(frozen=True)
class SampledProfile(AccelerationProfile):
    """Linearly interpolated samples; domain limited to the sampled range."""

    taus: tuple[float, ...]
    accels: tuple[float, ...]

    def __post_init__(self):
        ts = np.asarray(self.taus, dtype=float)
        vs = np.asarray(self.accels, dtype=float)
        _check_finite("SampledProfile", ts, vs)
        if ts.size != vs.size or ts.size < 2:
            raise InvalidInputError("SampledProfile: need >= 2 samples with matching lengths")
        if np.any(np.diff(ts) <= 0):
            raise InvalidInputError("SampledProfile: sample times must be strictly ascending")
        if not (ts[0] <= 0.0 <= ts[-1]):
            raise InvalidInputError("SampledProfile: sample range must contain tau = 0")
        object.__setattr__(self, "taus", tuple(ts))
        object.__setattr__(self, "accels", tuple(vs))
        object.__setattr__(self, "_t", ts)
        object.__setattr__(self, "_v", vs)
        # exact integral of the interpolant at the nodes
        seg = 0.5 * (vs[1:] + vs[:-1]) * np.diff(ts)
        nodes = np.concatenate([[0.0], np.cumsum(seg)])
        object.__setattr__(self, "_node_integral", nodes)

    def domain(self):
        return (self._t[0], self._t[-1])

    def _check(self, tau):
        t = np.asarray(tau, dtype=float)
        if np.any(t < self._t[0]) or np.any(t > self._t[-1]):
            raise RangeError("SampledProfile: tau outside the sampled range")
        return t

    def value(self, tau):
        t = self._check(tau)
        out = np.interp(t, self._t, self._v)
        return out if np.ndim(tau) else float(out)

    def derivative(self, tau):
        t = self._check(tau)
        idx = np.clip(np.searchsorted(self._t, t, side="right") - 1, 0, self._t.size - 2)
        slope = (self._v[idx + 1] - self._v[idx]) / (self._t[idx + 1] - self._t[idx])
        return slope if np.ndim(tau) else float(slope)

    def second_derivative(self, tau):
        self._check(tau)
        return np.zeros_like(np.asarray(tau, dtype=float)) if np.ndim(tau) else 0.0

    def _integral_raw(self, t):
        idx = np.clip(np.searchsorted(self._t, t, side="right") - 1, 0, self._t.size - 2)
        t0 = self._t[idx]
        dt = t - t0
        slope = (self._v[idx + 1] - self._v[idx]) / (self._t[idx + 1] - self._t[idx])
        return self._node_integral[idx] + self._v[idx] * dt + 0.5 * slope * dt * dt

    def integral(self, tau):
        t = self._check(tau)
        out = self._integral_raw(np.atleast_1d(t)) - self._integral_raw(np.zeros(1))
        return out if np.ndim(tau) else float(out[0])

    def integral_between(self, t0, t1):
        a = self._integral_raw(np.atleast_1d(self._check(t0)))
        b = self._integral_raw(np.atleast_1d(self._check(t1)))
        out = b - a
        return out if (np.ndim(t0) or np.ndim(t1)) else float(out[0])

    def corners(self):
        return self.taus

    def describe(self):
        return f"sampled(n={len(self.taus)},range=({self._t[0]!r},{self._t[-1]!r}))"


def twin_profile(a: float, transitions=(-2.0, -1.0, 1.0, 2.0)) -> PiecewiseConstantProfile:
    """Uniformly-accelerated-by-parts round trip: inertial, +a, -a, +a, inertial."""
    t = tuple(float(x) / 1.0 for x in transitions)
    return PiecewiseConstantProfile(breakpoints=t, values=(0.0, a, -a, a, 0.0))


# ---------------------------------------------------------------------------
# Wavepackets and field states
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WavepacketSpec:
    """Gaussian packet: central momentum p0, spatial width sigma_x, emission
    position x0.  The momentum width is fixed by sigma_x sigma_p = 1/2."""

    p0: float
    sigma_x: float
    x0: float = 0.0

    def __post_init__(self):
        _check_finite("WavepacketSpec", self.p0, self.sigma_x, self.x0)
        if self.p0 <= 0 or self.sigma_x <= 0:
            raise InvalidInputError("WavepacketSpec: p0 and sigma_x must be > 0")
        if self.p0 < 5 * self.sigma_p:
            # validity assumption p0 >> sigma_p; flagged, not fatal
            object.__setattr__(self, "narrowband_warning", True)
            warnings.warn("WavepacketSpec: p0 < 5 sigma_p, narrow-band assumption is marginal",
                          stacklevel=2)
        else:
            object.__setattr__(self, "narrowband_warning", False)

    @property
    def sigma_p(self) -> float:
        return 0.5 / self.sigma_x

    @property
    def peak_amplitude(self) -> float:
        """sup |Phi| = sqrt(p0 / sqrt(2 pi sigma_x^2))."""
        return math.sqrt(self.p0 / math.sqrt(2 * math.pi * self.sigma_x ** 2))

    def describe(self):
        return f"wavepacket(p0={self.p0!r},sigma_x={self.sigma_x!r},x0={self.x0!r})"


class FieldState:
    """Marker base class for field states."""

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class Vacuum(FieldState):
    def describe(self):
        return "vacuum"


@dataclass(frozen=True)
class GaussianCoherent(FieldState):
    wp: WavepacketSpec

    def describe(self):
        return f"coherent[{self.wp.describe()}]"


@dataclass(frozen=True)
class GaussianFock(FieldState):
    n: int
    wp: WavepacketSpec

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError("GaussianFock: n must be >= 1")

    def describe(self):
        return f"fock[n={self.n},{self.wp.describe()}]"


@dataclass(frozen=True)
class Superposition(FieldState):
    """Linear superposition of packets in one excitation.

    ``statistics`` selects the state built on the superposed mode:
    "fock" drops all particle-number-violating (PhiPhi) terms, "coherent"
    keeps them.
    """

    terms: tuple[tuple[complex, WavepacketSpec], ...]
    statistics: str = "fock"

    def __post_init__(self):
        if len(self.terms) < 1:
            raise InvalidInputError("Superposition: need at least one term")
        for amp, _ in self.terms:
            _check_finite("Superposition", abs(complex(amp)))
        if self.statistics not in ("fock", "coherent"):
            raise InvalidInputError("Superposition: statistics must be 'fock' or 'coherent'")

    def describe(self):
        inner = ",".join(f"{amp!r}*{wp.describe()}" for amp, wp in self.terms)
        return f"superposition[{self.statistics};{inner}]"


@dataclass(frozen=True)
class MonochromaticCoherent(FieldState):
    alpha: complex
    p: float

    def __post_init__(self):
        _check_finite("MonochromaticCoherent", abs(complex(self.alpha)), self.p)
        if self.p <= 0:
            raise InvalidInputError("MonochromaticCoherent: p must be > 0")

    def describe(self):
        return f"mono-coherent[alpha={self.alpha!r},p={self.p!r}]"


@dataclass(frozen=True)
class MonochromaticFock(FieldState):
    n: int
    p: float

    def __post_init__(self):
        if self.n < 1:
            raise InvalidInputError("MonochromaticFock: n must be >= 1")
        _check_finite("MonochromaticFock", self.p)
        if self.p <= 0:
            raise InvalidInputError("MonochromaticFock: p must be > 0")

    def describe(self):
        return f"mono-fock[n={self.n},p={self.p!r}]"


# ---------------------------------------------------------------------------
# Time-frequency grid
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GridMeta:
    trajectory: str = ""
    state: str = ""
    component: str = COMPONENT_VACUUM_EXCESS
    regularization: str = "inertial-vacuum-subtraction"
    notes: tuple[str, ...] = ()

    def with_note(self, note: str) -> "GridMeta":
        return replace(self, notes=self.notes + (note,))


def _uniform(axis: np.ndarray, name: str, min_points: int = 2):
    if axis.size < min_points:
        raise InvalidInputError(f"{name}: need at least {min_points} points")
    if axis.size < 2:
        return
    steps = np.diff(axis)
    if np.any(steps <= 0):
        raise InvalidInputError(f"{name}: must be strictly ascending")
    if (steps.max() - steps.min()) > 1e-12 * max(abs(steps.mean()), 1e-300):
        raise InvalidInputError(f"{name}: spacing must be uniform")


@dataclass(frozen=True)
class TimeFrequencyGrid:
    """Real W(tau, omega) samples on a rectangular grid, row-major in tau."""

    taus: np.ndarray
    omegas: np.ndarray
    values: np.ndarray
    meta: GridMeta = field(default_factory=GridMeta)

    def __post_init__(self):
        taus = np.asarray(self.taus, dtype=float)
        omegas = np.asarray(self.omegas, dtype=float)
        values = np.asarray(self.values, dtype=float)
        _uniform(taus, "taus", min_points=1)
        _uniform(omegas, "omegas")
        if values.shape != (taus.size, omegas.size):
            raise InvalidInputError("values shape must be (n_tau, n_omega)")
        _check_finite("TimeFrequencyGrid", values)
        if self.meta.component not in _COMPONENTS:
            raise InvalidInputError(f"unknown component label {self.meta.component!r}")
        for arr in (taus, omegas, values):
            arr.setflags(write=False)
        object.__setattr__(self, "taus", taus)
        object.__setattr__(self, "omegas", omegas)
        object.__setattr__(self, "values", values)

    @property
    def tau_step(self) -> float:
        if self.taus.size < 2:
            return 0.0
        return float(self.taus[1] - self.taus[0])

    @property
    def omega_step(self) -> float:
        return float(self.omegas[1] - self.omegas[0])

    def row_index(self, tau: float) -> int:
        if tau < self.taus[0] or tau > self.taus[-1]:
            raise RangeError(f"tau={tau} outside grid range [{self.taus[0]}, {self.taus[-1]}]")
        if self.taus.size < 2:
            return 0
        return int(round((tau - self.taus[0]) / self.tau_step))

    def scaled(self, factor: float, note: str = "") -> "TimeFrequencyGrid":
        meta = self.meta.with_note(note) if note else self.meta
        return TimeFrequencyGrid(self.taus, self.omegas, factor * self.values, meta)


@dataclass(frozen=True)
class ComplexKernelSlice:
    """Samples of the two-point kernel G(tau + u/2, tau - u/2) at fixed tau.

    ``upsilons`` covers the half-axis u >= 0; Hermitian symmetry
    value(-u) = conj(value(u)) supplies the other half.
    """

    tau: float
    upsilons: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        ups = np.asarray(self.upsilons, dtype=float)
        vals = np.asarray(self.values, dtype=complex)
        if ups.shape != vals.shape:
            raise InvalidInputError("ComplexKernelSlice: shape mismatch")
        if ups[0] != 0.0:
            raise InvalidInputError("ComplexKernelSlice: upsilons must start at 0")
        if abs(vals[0].imag) > 1e-10 * max(abs(vals[0].real), 1e-300):
            raise InvalidInputError("ComplexKernelSlice: kernel at u=0 must be real (Hermitian symmetry)")
        object.__setattr__(self, "upsilons", ups)
        object.__setattr__(self, "values", vals)

    def wigner_row(self, omegas, return_residual=False):
        """Two-sided transform of the Hermitian extension, by trapezoid.

        This is the slow reference path used for diagnostics; the imaginary
        residual it reports checks the realness invariant of produced grids.
        """
        ups_full = np.concatenate([-self.upsilons[:0:-1], self.upsilons])
        vals_full = np.concatenate([np.conj(self.values[:0:-1]), self.values])
        phases = np.exp(1j * np.outer(np.asarray(omegas, dtype=float), ups_full))
        integ = np.trapezoid(phases * vals_full[None, :], ups_full, axis=1)
        if return_residual:
            scale = max(np.max(np.abs(integ.real)), 1e-300)
            return integ.real, float(np.max(np.abs(integ.imag)) / scale)
        return integ.real


# ---------------------------------------------------------------------------
# Reductions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PowerEstimate:
    value: float
    error_estimate: float


@dataclass(frozen=True)
class EnergyEstimate:
    value: float
    truncated: bool


def marginal_spectral_density(grid: TimeFrequencyGrid, period: float | None = None):
    """Time average of the grid per omega column.

    With ``period`` given, the average is restricted to one period window
    centred in the grid (the stationary average of a periodically driven
    response).  Returns ``(omegas, values)``.
    """
    if grid.values.size == 0:
        raise InvalidInputError("marginal_spectral_density: empty grid")
    taus = grid.taus
    if period is None:
        sel = np.ones(taus.size, dtype=bool)
    else:
        span = taus[-1] - taus[0]
        if span < period:
            raise PreconditionError("marginal_spectral_density: grid spans less than one period")
        mid = 0.5 * (taus[0] + taus[-1])
        sel = (taus >= mid - 0.5 * period) & (taus <= mid + 0.5 * period)
    t = taus[sel]
    block = grid.values[sel]
    if t.size < 2:
        return grid.omegas.copy(), block[0].copy()
    avg = np.trapezoid(block, t, axis=0) / (t[-1] - t[0])
    return grid.omegas.copy(), avg


def integrate_power(grid: TimeFrequencyGrid, tau: float) -> PowerEstimate:
    """Frequency integral int W(tau, w) dw / 2pi at the nearest tau row.

    Trapezoid rule with a Richardson error estimate from the half-resolution
    sum.  Refuses unregularized ("total") grids, whose integral diverges.
    """
    if grid.meta.component == COMPONENT_TOTAL:
        raise PreconditionError("integrate_power: 'total' grids are unregularized (divergent integral)")
    row = grid.values[grid.row_index(tau)]
    full = np.trapezoid(row, grid.omegas) / (2 * np.pi)
    half = np.trapezoid(row[::2], grid.omegas[::2]) / (2 * np.pi)
    return PowerEstimate(value=float(full), error_estimate=float(abs(full - half) / 3.0))


def average_energy(grid: TimeFrequencyGrid, support_tol: float = 1e-6) -> EnergyEstimate:
    """Integral of the grid over tau and omega >= 0, measure dtau dw/2pi.

    If the excess signal is not contained in the grid (boundary values above
    ``support_tol`` of the peak) a truncation warning is attached instead of
    failing.
    """
    om_sel = grid.omegas >= 0.0
    if not np.any(om_sel):
        raise PreconditionError("average_energy: grid has no omega >= 0 columns")
    sub = grid.values[:, om_sel]
    inner = np.trapezoid(sub, grid.omegas[om_sel], axis=1) / (2 * np.pi)
    total = float(np.trapezoid(inner, grid.taus))
    peak = np.max(np.abs(grid.values))
    boundary = 0.0
    if peak > 0:
        boundary = max(np.max(np.abs(grid.values[0])), np.max(np.abs(grid.values[-1])),
                       np.max(np.abs(grid.values[:, -1])))
        if om_sel[0]:
            boundary = max(boundary, np.max(np.abs(grid.values[:, 0])))
    truncated = bool(peak > 0 and boundary > support_tol * peak)
    if truncated:
        warnings.warn("average_energy: excess signal support reaches the grid boundary",
                      stacklevel=2)
    return EnergyEstimate(value=total, truncated=truncated)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def write_grid_csv(grid: TimeFrequencyGrid, path) -> None:
    """CSV with shape headers plus a JSON sidecar carrying full metadata."""
    path = str(path)
    lines = [
        f"# tau_min,tau_max,n_tau = {float(grid.taus[0])!r},{float(grid.taus[-1])!r},{grid.taus.size}",
        f"# omega_min,omega_max,n_omega = {float(grid.omegas[0])!r},{float(grid.omegas[-1])!r},{grid.omegas.size}",
        f"# component,{grid.meta.component}",
        "tau,omega,value",
    ]
    for i, t in enumerate(grid.taus):
        for j, w in enumerate(grid.omegas):
            lines.append(f"{float(t)!r},{float(w)!r},{float(grid.values[i, j])!r}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    sidecar = {
        "trajectory": grid.meta.trajectory,
        "state": grid.meta.state,
        "component": grid.meta.component,
        "regularization": grid.meta.regularization,
        "notes": list(grid.meta.notes),
        "n_tau": int(grid.taus.size),
        "n_omega": int(grid.omegas.size),
        "tau_range": [float(grid.taus[0]), float(grid.taus[-1])],
        "omega_range": [float(grid.omegas[0]), float(grid.omegas[-1])],
    }
    with open(path + ".json", "w") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
        fh.write("\n")


def read_grid_csv(path) -> TimeFrequencyGrid:
    path = str(path)
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    header = [ln for ln in lines if ln.startswith("#")]
    component = COMPONENT_VACUUM_EXCESS
    for ln in header:
        if ln.startswith("# component,"):
            component = ln.split(",", 1)[1].strip()
    data = [ln for ln in lines if not ln.startswith("#") and not ln.startswith("tau,")]
    arr = np.array([[float(x) for x in ln.split(",")] for ln in data])
    taus = np.unique(arr[:, 0])
    omegas = np.unique(arr[:, 1])
    values = arr[:, 2].reshape(taus.size, omegas.size)
    meta = GridMeta(component=component)
    try:
        with open(path + ".json") as fh:
            side = json.load(fh)
        meta = GridMeta(trajectory=side.get("trajectory", ""), state=side.get("state", ""),
                        component=side.get("component", component),
                        regularization=side.get("regularization", ""),
                        notes=tuple(side.get("notes", ())))
    except FileNotFoundError:
        pass
    return TimeFrequencyGrid(taus, omegas, values, meta)
