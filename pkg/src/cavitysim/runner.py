"""Scenario engine: configured runs, figure presets, CSV output."""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import __version__
from .discord import GqdOptions, gqd, von_neumann_entropy
from .dynamics import apply_kernel, purity
from .linalg import eig_hermitian, trace_out_field
from .metrology import qfi
from .model import (InitialStateParams, SystemParams, build_hamiltonian,
                    build_initial_state, initial_state_theta_derivative)

OBSERVABLES = ("gqd", "qfi", "purity", "atomic_entropy")


class ConfigError(ValueError):
    """Invalid scenario configuration; the message names the offending field."""


class RunError(RuntimeError):
    """Numeric failure during a run; the message names t and the observable."""


@dataclass(frozen=True)
class ScenarioConfig:
    system: SystemParams
    initial: InitialStateParams
    t_max: float = 200.0
    dt: float = 0.05
    observables: tuple[str, ...] = ("gqd", "qfi")
    qfi_theta_point: float = math.pi / 4
    label: str = ""
    seed: int = 42

    def __post_init__(self):
        if self.dt <= 0:
            raise ConfigError(f"dt must be > 0, got {self.dt}")
        if self.t_max < self.dt:
            raise ConfigError(f"t_max must be >= dt, got t_max={self.t_max}, dt={self.dt}")
        if not self.observables:
            raise ConfigError("observables must be non-empty")
        for obs in self.observables:
            if obs not in OBSERVABLES:
                raise ConfigError(f"observables: unknown observable {obs!r}, "
                                  f"valid are {OBSERVABLES}")


@dataclass(frozen=True)
class TimeSeriesRecord:
    t: float
    values: dict[str, float]


def time_grid(t_max: float, dt: float) -> list[float]:
    n = int(math.floor(t_max / dt + 1e-9)) + 1
    return [k * dt for k in range(n)]


def config_from_dict(d: dict) -> ScenarioConfig:
    try:
        system = SystemParams(**d["system"])
        initial = InitialStateParams(**d["initial"])
    except KeyError as exc:
        raise ConfigError(f"missing config field {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    rest = {k: v for k, v in d.items() if k not in ("system", "initial")}
    if "observables" in rest:
        rest["observables"] = tuple(rest["observables"])
    try:
        return ScenarioConfig(system=system, initial=initial, **rest)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def load_config(path: str) -> ScenarioConfig:
    with open(path) as f:
        return config_from_dict(json.load(f))


# Warm-start chunk length for the GQD optimizer. Chunk boundaries are fixed
# by grid index (not by worker count), so parallel and serial runs produce
# identical bytes.
WARM_CHUNK = 256


def run_scenario(cfg: ScenarioConfig, n_workers: int | None = None) -> list[TimeSeriesRecord]:
    """Evolve the configured system and evaluate observables on the sampling grid.

    GQD/purity/entropy track the state built from ``cfg.initial``; the QFI
    tracks the family at theta = ``cfg.qfi_theta_point`` (same mixedness p).
    The GQD optimizer is warm-started with the previous grid point's optimum
    within each fixed-size chunk; chunks may run in parallel processes.
    """
    grid = time_grid(cfg.t_max, cfg.dt)
    chunks = [grid[i:i + WARM_CHUNK] for i in range(0, len(grid), WARM_CHUNK)]
    if n_workers is None:
        n_workers = os.cpu_count() or 1
    n_workers = min(n_workers, len(chunks))
    if n_workers <= 1:
        results = [_run_chunk(cfg, chunk) for chunk in chunks]
    else:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            results = list(pool.map(_run_chunk, [cfg] * len(chunks), chunks))
    return [rec for part in results for rec in part]


def _run_chunk(cfg: ScenarioConfig, t_values: list[float]) -> list[TimeSeriesRecord]:
    layout = cfg.system.layout
    h = build_hamiltonian(cfg.system)
    spec = eig_hermitian(h)
    v = spec.eigenvectors
    gamma = cfg.system.gamma

    rho0e = v.conj().T @ build_initial_state(cfg.initial, layout) @ v
    need_qfi = "qfi" in cfg.observables
    if need_qfi:
        isp_q = InitialStateParams(p=cfg.initial.p, theta=cfg.qfi_theta_point)
        rho0qe = v.conj().T @ build_initial_state(isp_q, layout) @ v
        drho0qe = v.conj().T @ initial_state_theta_derivative(isp_q, layout) @ v

    opts = GqdOptions(seed=cfg.seed)
    warm: tuple = ()
    records: list[TimeSeriesRecord] = []
    for t in t_values:
        rho_t = apply_kernel(spec, rho0e, gamma, t)
        rho_at = trace_out_field(rho_t, layout)
        values: dict[str, float] = {}
        for obs in cfg.observables:
            try:
                if obs == "gqd":
                    result = gqd(rho_at, opts, extra_starts=warm)
                    warm = (result.optimal_angles,)
                    values[obs] = result.value
                elif obs == "qfi":
                    rho_q = trace_out_field(apply_kernel(spec, rho0qe, gamma, t), layout)
                    drho_q = trace_out_field(apply_kernel(spec, drho0qe, gamma, t), layout)
                    values[obs] = qfi(rho_q, drho_q)
                elif obs == "purity":
                    values[obs] = purity(rho_at)
                elif obs == "atomic_entropy":
                    values[obs] = von_neumann_entropy(rho_at)
            except (ValueError, np.linalg.LinAlgError) as exc:
                raise RunError(f"observable {obs!r} failed at t={t}: {exc}") from exc
            if not math.isfinite(values[obs]):
                raise RunError(f"observable {obs!r} is not finite at t={t}")
        records.append(TimeSeriesRecord(t=t, values=values))
    return records


_FIG_COMMON = dict(gamma=0.05)
_FIG_INITIAL = InitialStateParams(p=0.5, theta=math.pi / 4)


def preset_variants(name: str) -> int:
    counts = {"fig1": 4, "fig2": 4, "fig3": 2, "fig4": 2, "fig5": 2}
    if name not in counts:
        raise ConfigError(f"unknown preset figure {name!r}, valid are {sorted(counts)}")
    return counts[name]


def preset(name: str, variant: int) -> ScenarioConfig:
    """Scenario configuration reproducing one curve of the study's figures."""
    n_variants = preset_variants(name)
    if not 0 <= variant < n_variants:
        raise ConfigError(f"variant for {name} must be in [0, {n_variants - 1}], got {variant}")
    if name in ("fig1", "fig2"):
        n_c = (2, 3, 4, 5)[variant]
        system = SystemParams(n_atoms=2, n_cutoff=n_c, chi=1.0, kappa=1.0, **_FIG_COMMON)
        obs = ("gqd",) if name == "fig1" else ("qfi",)
        label = f"{name} n_c={n_c}"
    elif name == "fig3":
        n = (3, 4)[variant]
        system = SystemParams(n_atoms=n, n_cutoff=2, chi=1.0, kappa=1.0, **_FIG_COMMON)
        obs = ("gqd", "qfi")
        label = f"fig3 N={n}"
    else:
        kappa = (0.3, 3.0)[variant]
        chi = 0.3 if name == "fig4" else 3.0
        system = SystemParams(n_atoms=2, n_cutoff=2, chi=chi, kappa=kappa, **_FIG_COMMON)
        obs = ("gqd", "qfi")
        label = f"{name} chi={chi} kappa={kappa}"
    return ScenarioConfig(system=system, initial=_FIG_INITIAL,
                          observables=obs, label=label)


def _metadata_items(cfg: ScenarioConfig) -> list[tuple[str, str]]:
    items: list[tuple[str, str]] = [("artifact_version", __version__)]
    for name in ("n_atoms", "n_cutoff", "omega0", "omega", "g", "chi", "kappa", "gamma"):
        items.append((f"system.{name}", repr(getattr(cfg.system, name))))
    items.append(("initial.p", repr(cfg.initial.p)))
    items.append(("initial.theta", repr(cfg.initial.theta)))
    items.append(("t_max", repr(cfg.t_max)))
    items.append(("dt", repr(cfg.dt)))
    items.append(("observables", ",".join(cfg.observables)))
    items.append(("qfi_theta_point", repr(cfg.qfi_theta_point)))
    items.append(("label", cfg.label))
    items.append(("seed", repr(cfg.seed)))
    return items


def write_csv(records: list[TimeSeriesRecord], cfg: ScenarioConfig, path: str) -> None:
    """Write `# key=value` metadata lines, a header, then 6-decimal data rows."""
    lines = [f"# {k}={v}" for k, v in _metadata_items(cfg)]
    lines.append("t," + ",".join(cfg.observables))
    for rec in records:
        row = [f"{rec.t:.6f}"] + [f"{rec.values[o]:.6f}" for o in cfg.observables]
        lines.append(",".join(row))
    try:
        with open(path, "w", newline="") as f:
            f.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise IOError(f"failed to write {path}: {exc}") from exc
