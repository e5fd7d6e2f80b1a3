"""Scenario-driven command line front end.

Subcommands:

* ``run``             compute the products requested by a TOML config
* ``compare``         normalized difference of two grid CSV files
* ``list-scenarios``  bundled scenario configs
* ``selftest``        closed-form oracle battery

Exit codes: 0 ok, 2 config error, 3 accuracy failure.  All physical numbers
in a config are in units of the reference acceleration ``a_ref`` declared in
the file; the pipeline contains no randomness, so outputs are byte-identical
across runs for the same config.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from . import analysis, core, excitation, vacuum
from .core import (ConstantProfile, GaussianCoherent, GaussianFock,
                   MonochromaticCoherent, MonochromaticFock,
                   PiecewiseConstantProfile, SampledProfile,
                   SinusoidalProfile, Superposition, Vacuum, WavepacketSpec,
                   integrate_power, marginal_spectral_density, read_grid_csv,
                   write_grid_csv)
from .errors import InvalidInputError, RelWignerError
from .trajectory import Trajectory


class ConfigError(Exception):
    """Config parsing/validation failure; message names the field."""


@dataclass
class OutputSpec:
    kind: str
    path: str
    options: dict = field(default_factory=dict)


@dataclass
class ScenarioConfig:
    """Validated scenario: trajectory, state, grid axes, products."""

    title: str
    a_ref: float
    profile: object
    rapidity0: float
    state: object
    tau_range: tuple[float, float]
    n_tau: int
    omega_range: tuple[float, float]
    n_omega: int
    upsilon_max: float
    n_upsilon: int
    outputs: list[OutputSpec]
    tolerances: dict

    @property
    def taus(self):
        return np.linspace(self.tau_range[0], self.tau_range[1], self.n_tau)

    @property
    def omegas(self):
        return np.linspace(self.omega_range[0], self.omega_range[1], self.n_omega)


_OUTPUT_KINDS = ("grid", "marginal", "power", "ridge", "smooth", "compare")


def _require(table, key, where):
    if key not in table:
        raise ConfigError(f"{where}: missing key '{key}'")
    return table[key]


def _parse_profile(table, a_ref):
    kind = _require(table, "kind", "trajectory")
    if kind == "constant":
        return ConstantProfile(a_ref * float(_require(table, "a0", "trajectory")))
    if kind == "sinusoidal":
        return SinusoidalProfile(a_ref * float(_require(table, "a0", "trajectory")),
                                 a_ref * float(_require(table, "a1", "trajectory")),
                                 a_ref * float(_require(table, "f", "trajectory")))
    if kind == "piecewise":
        bps = [float(b) / a_ref for b in _require(table, "breakpoints", "trajectory")]
        vals = [a_ref * float(v) for v in _require(table, "values", "trajectory")]
        return PiecewiseConstantProfile(tuple(bps), tuple(vals))
    if kind == "twin":
        a = a_ref * float(_require(table, "a", "trajectory"))
        return core.twin_profile(a, transitions=[t / a_ref for t in
                                                 table.get("transitions", (-2, -1, 1, 2))])
    if kind == "sampled":
        taus = [float(t) / a_ref for t in _require(table, "taus", "trajectory")]
        accs = [a_ref * float(v) for v in _require(table, "accels", "trajectory")]
        return SampledProfile(tuple(taus), tuple(accs))
    raise ConfigError(f"trajectory.kind: unknown '{kind}'")


def _parse_state(table, a_ref):
    kind = table.get("kind", "vacuum")
    if kind == "vacuum":
        return Vacuum()

    def packet(tbl):
        return WavepacketSpec(p0=a_ref * float(_require(tbl, "p0", "state")),
                              sigma_x=float(_require(tbl, "sigma_x", "state")) / a_ref,
                              x0=float(tbl.get("x0", 0.0)) / a_ref)

    if kind == "coherent":
        return GaussianCoherent(packet(table))
    if kind == "fock":
        return GaussianFock(int(table.get("n", 1)), packet(table))
    if kind == "superposition":
        terms = []
        for term in _require(table, "terms", "state"):
            amp = complex(term.get("re", 1.0), term.get("im", 0.0))
            terms.append((amp, packet(term)))
        return Superposition(tuple(terms), statistics=table.get("statistics", "fock"))
    if kind == "mono-fock":
        return MonochromaticFock(int(table.get("n", 1)),
                                 a_ref * float(_require(table, "p", "state")))
    if kind == "mono-coherent":
        alpha = complex(table.get("alpha_re", 1.0), table.get("alpha_im", 0.0))
        return MonochromaticCoherent(alpha, a_ref * float(_require(table, "p", "state")))
    raise ConfigError(f"state.kind: unknown '{kind}'")


def parse_scenario(text: str) -> ScenarioConfig:
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"TOML parse error: {exc}") from exc
    a_ref = float(raw.get("a_ref", 1.0))
    if not (a_ref > 0 and math.isfinite(a_ref)):
        raise ConfigError("a_ref: must be finite and > 0")
    grid = _require(raw, "grid", "top level")
    tau_range = tuple(float(x) / a_ref for x in _require(grid, "tau", "grid"))
    omega_range = tuple(a_ref * float(x) for x in _require(grid, "omega", "grid"))
    n_tau = int(_require(grid, "n_tau", "grid"))
    n_omega = int(_require(grid, "n_omega", "grid"))
    if n_tau < 16 or n_omega < 16:
        raise ConfigError("grid: n_tau and n_omega must be >= 16")
    if not all(map(math.isfinite, (*tau_range, *omega_range))):
        raise ConfigError("grid: ranges must be finite")
    outputs = []
    for i, o in enumerate(raw.get("outputs", ())):
        kind = _require(o, "kind", f"outputs[{i}]")
        if kind not in _OUTPUT_KINDS:
            raise ConfigError(f"outputs[{i}].kind: unknown '{kind}'")
        path = o.get("path", "")
        if kind != "compare" and not path:
            raise ConfigError(f"outputs[{i}].path: must be nonempty")
        outputs.append(OutputSpec(kind=kind, path=path,
                                  options={k: v for k, v in o.items()
                                           if k not in ("kind", "path")}))
    return ScenarioConfig(
        title=str(raw.get("title", "scenario")),
        a_ref=a_ref,
        profile=_parse_profile(_require(raw, "trajectory", "top level"), a_ref),
        rapidity0=float(raw.get("trajectory", {}).get("rapidity0", 0.0)),
        state=_parse_state(raw.get("state", {"kind": "vacuum"}), a_ref),
        tau_range=tau_range, n_tau=n_tau,
        omega_range=omega_range, n_omega=n_omega,
        upsilon_max=float(grid.get("upsilon_max", 40.0)) / a_ref,
        n_upsilon=int(grid.get("n_upsilon", 8192)),
        outputs=outputs,
        tolerances=dict(raw.get("tolerances", {})),
    )


# ---------------------------------------------------------------------------
# Product computation
# ---------------------------------------------------------------------------

def _compute_grid(cfg: ScenarioConfig, threads: int) -> core.TimeFrequencyGrid:
    traj = Trajectory(cfg.profile, rapidity0=cfg.rapidity0)
    if isinstance(cfg.state, Vacuum):
        job = vacuum.VacuumJob(traj, cfg.taus, cfg.omegas,
                               upsilon_max=cfg.upsilon_max, n_upsilon=cfg.n_upsilon)
        return vacuum.vacuum_excess_wigner(job, threads=threads)
    return excitation.excess_wigner(cfg.state, traj, cfg.taus, cfg.omegas,
                                    upsilon_max=cfg.upsilon_max,
                                    n_upsilon=cfg.n_upsilon, threads=threads)


def run_scenario(cfg: ScenarioConfig, out_dir: Path, threads: int = 1,
                 tolerance: float | None = None) -> dict:
    """Compute every requested product; returns the machine-readable report."""
    out_dir.mkdir(parents=True, exist_ok=True)
    report = {"title": cfg.title, "products": [], "status": "ok"}
    grid = None
    failures = 0
    for spec in cfg.outputs:
        t0 = time.perf_counter()
        entry = {"kind": spec.kind, "path": spec.path}
        try:
            if spec.kind in ("grid", "marginal", "power", "ridge", "smooth") and grid is None:
                grid = _compute_grid(cfg, threads)
            if spec.kind == "grid":
                write_grid_csv(grid, out_dir / spec.path)
            elif spec.kind == "marginal":
                period = spec.options.get("period")
                om, vals = marginal_spectral_density(grid, period=period)
                _write_table(out_dir / spec.path, "omega,value", zip(om, vals))
            elif spec.kind == "power":
                rows = []
                for t in grid.taus:
                    est = integrate_power(grid, float(t))
                    rows.append((t, est.value, est.error_estimate))
                _write_table(out_dir / spec.path, "tau,power,error_estimate", rows)
                entry["error_estimate"] = max(r[2] for r in rows)
            elif spec.kind == "ridge":
                ridge = analysis.extract_ridge(grid, float(spec.options.get("omega_min", 0.0)))
                _write_table(out_dir / spec.path, "tau,omega,weight",
                             zip(ridge.taus, ridge.omegas, ridge.weights))
            elif spec.kind == "smooth":
                ratio = float(spec.options.get("ratio", 0.05))
                smoothed = analysis.stationary_smooth(grid, cfg.profile, ratio)
                write_grid_csv(smoothed, out_dir / spec.path)
            elif spec.kind == "compare":
                against = spec.options.get("against", "thermal")
                entry.update(_compare_with_oracle(cfg, grid, against, threads))
                tol = tolerance if tolerance is not None else \
                    float(cfg.tolerances.get(against, spec.options.get("tolerance", 1e-3)))
                entry["tolerance"] = tol
                if entry["normalized_difference"] > tol:
                    entry["status"] = "accuracy-failure"
                    failures += 1
        except RelWignerError as exc:
            entry["status"] = "error"
            entry["message"] = str(exc)
            failures += 1
        entry.setdefault("status", "ok")
        entry["elapsed_s"] = round(time.perf_counter() - t0, 6)
        report["products"].append(entry)
    if failures:
        report["status"] = "accuracy-failure"
    return report


def _compare_with_oracle(cfg, grid, against, threads):
    if grid is None:
        grid = _compute_grid(cfg, threads)
    if against == "thermal":
        a = cfg.profile.a0 if isinstance(cfg.profile, ConstantProfile) else cfg.a_ref
        oracle = vacuum.thermal_excess_wigner(a, grid.omegas)[None, :] * np.ones((grid.taus.size, 1))
    elif against == "doubled-upsilon":
        job = vacuum.VacuumJob(Trajectory(cfg.profile, rapidity0=cfg.rapidity0),
                               cfg.taus, cfg.omegas,
                               upsilon_max=2 * cfg.upsilon_max,
                               n_upsilon=2 * cfg.n_upsilon)
        oracle = vacuum.vacuum_excess_wigner(job, threads=threads).values
    else:
        raise InvalidInputError(f"compare: unknown oracle '{against}'")
    scale = float(np.max(np.abs(oracle)))
    diff = float(np.max(np.abs(grid.values - oracle)))
    return {"normalized_difference": diff / scale if scale else diff, "against": against}


def _write_table(path, header, rows):
    lines = [header]
    for row in rows:
        lines.append(",".join(repr(float(x)) for x in row))
    Path(path).write_text("\n".join(lines) + "\n")


def compare_grids(path_a, path_b, norm: str = "max") -> dict:
    """Normalized difference of two grid files sharing the same axes."""
    ga = read_grid_csv(path_a)
    gb = read_grid_csv(path_b)
    if ga.values.shape != gb.values.shape or \
            not np.allclose(ga.taus, gb.taus, rtol=0, atol=1e-12) or \
            not np.allclose(ga.omegas, gb.omegas, rtol=0, atol=1e-12):
        raise InvalidInputError("compare_grids: grids do not share axes")
    diff = ga.values - gb.values
    scale = max(float(np.max(np.abs(ga.values))), 1e-300)
    if norm == "max":
        value = float(np.max(np.abs(diff))) / scale
    elif norm == "l2":
        value = float(np.linalg.norm(diff) / max(np.linalg.norm(ga.values), 1e-300))
    else:
        raise InvalidInputError("compare_grids: norm must be 'max' or 'l2'")
    return {"norm": norm, "normalized_difference": value}


# ---------------------------------------------------------------------------
# Self test
# ---------------------------------------------------------------------------

def selftest() -> dict:
    """Closed-form oracle battery; fast enough for CI."""
    from .specfun import bessel_k_imag_order, thermal_g
    checks = []

    def check(name, got, want, tol):
        ok = abs(got - want) <= tol * max(1.0, abs(want))
        checks.append({"name": name, "got": got, "want": want, "ok": bool(ok)})

    traj = Trajectory(ConstantProfile(1.0))
    job = vacuum.VacuumJob(traj, np.array([0.0]), np.linspace(-3, 3, 31),
                           upsilon_max=36.0, n_upsilon=4096)
    grid = vacuum.vacuum_excess_wigner(job)
    oracle = vacuum.thermal_excess_wigner(1.0, grid.omegas)
    check("thermal-law", float(np.max(np.abs(grid.values[0] - oracle))), 0.0, 1e-6)

    fine = vacuum.VacuumJob(traj, np.array([0.0]), np.linspace(-6, 6, 769),
                            upsilon_max=36.0, n_upsilon=4096)
    p = integrate_power(vacuum.vacuum_excess_wigner(fine), 0.0)
    check("power-identity", p.value, 1.0 / (48 * math.pi ** 2), 2e-3)

    check("thermal-g-balance", thermal_g(-2.0), thermal_g(2.0) * math.exp(2.0), 1e-12)
    check("bessel-k0", bessel_k_imag_order(0.0, 1.0), 0.42102443824070834, 1e-10)
    check("twin-delay", excitation.twin_delay(1.0, 4.0),
          4.0 * math.sinh(1.0), 1e-15)
    check("reception-uniform", traj.reception_time(1.0), -math.log(2.0), 1e-12)
    ok = all(c["ok"] for c in checks)
    return {"status": "ok" if ok else "accuracy-failure", "checks": checks}


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def _bundled_scenarios():
    base = resources.files("relwigner") / "scenarios"
    return sorted(p.name for p in base.iterdir() if p.name.endswith(".cfg"))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="relwigner",
                                     description="time-frequency detector response toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a scenario config")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--out-dir", default=".")
    p_run.add_argument("--threads", type=int, default=1)
    p_run.add_argument("--tolerance", type=float, default=None)

    p_cmp = sub.add_parser("compare", help="compare two grid CSV files")
    p_cmp.add_argument("path_a")
    p_cmp.add_argument("path_b")
    p_cmp.add_argument("--norm", choices=("max", "l2"), default="max")
    p_cmp.add_argument("--tolerance", type=float, default=None)

    sub.add_parser("list-scenarios", help="list bundled scenario configs")
    sub.add_parser("selftest", help="run the closed-form oracle battery")

    args = parser.parse_args(argv)

    if args.command == "run":
        cfg_path = Path(args.config)
        if not cfg_path.exists():
            bundled = resources.files("relwigner") / "scenarios" / args.config
            if bundled.is_file():
                text = bundled.read_text()
            else:
                print(json.dumps({"status": "config-error",
                                  "message": f"config not found: {args.config}"}))
                return 2
        else:
            text = cfg_path.read_text()
        try:
            cfg = parse_scenario(text)
        except (ConfigError, InvalidInputError) as exc:
            print(json.dumps({"status": "config-error", "message": str(exc)}))
            return 2
        report = run_scenario(cfg, Path(args.out_dir), threads=args.threads,
                              tolerance=args.tolerance)
        print(json.dumps(report, indent=2, sort_keys=True))
        return 0 if report["status"] == "ok" else 3

    if args.command == "compare":
        try:
            result = compare_grids(args.path_a, args.path_b, norm=args.norm)
        except (InvalidInputError, FileNotFoundError) as exc:
            print(json.dumps({"status": "config-error", "message": str(exc)}))
            return 2
        result["status"] = "ok"
        if args.tolerance is not None and result["normalized_difference"] > args.tolerance:
            result["status"] = "accuracy-failure"
        print(json.dumps(result, indent=2, sort_keys=True))
        return 0 if result["status"] == "ok" else 3

    if args.command == "list-scenarios":
        print(json.dumps({"scenarios": _bundled_scenarios()}, indent=2))
        return 0

    if args.command == "selftest":
        report = selftest()
        print(json.dumps(report, indent=2, sort_keys=True))
        return 0 if report["status"] == "ok" else 3

    return 2


if __name__ == "__main__":
    sys.exit(main())
