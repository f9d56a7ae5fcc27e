"""Command line interface: simulate, reproduce, selftest."""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import replace

from .model import InitialStateParams, SystemParams
from .runner import (ConfigError, ScenarioConfig, load_config, preset,
                     preset_variants, run_scenario, write_csv)
from .selftest import run_selftest

FIGURES = ("fig1", "fig2", "fig3", "fig4", "fig5")


def _add_simulate_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file mirroring ScenarioConfig fields")
    p.add_argument("--n-atoms", type=int)
    p.add_argument("--n-cutoff", type=int)
    p.add_argument("--chi", type=float)
    p.add_argument("--kappa", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--g", type=float)
    p.add_argument("--omega", type=float)
    p.add_argument("--omega0", type=float)
    p.add_argument("--p", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--t-max", type=float)
    p.add_argument("--dt", type=float)
    p.add_argument("--observables", help="comma-separated, e.g. gqd,qfi")
    p.add_argument("--qfi-theta", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--label")
    p.add_argument("--out", required=True, help="output CSV path")


def _build_simulate_config(args) -> ScenarioConfig:
    if args.config:
        cfg = load_config(args.config)
        system_kw = {}
        initial_kw = {}
    else:
        cfg = None
        system_kw = {"n_atoms": 2, "n_cutoff": 2}
        initial_kw = {"p": 0.5, "theta": math.pi / 4}

    sys_flags = {"n_atoms": args.n_atoms, "n_cutoff": args.n_cutoff, "chi": args.chi,
                 "kappa": args.kappa, "gamma": args.gamma, "g": args.g,
                 "omega": args.omega, "omega0": args.omega0}
    init_flags = {"p": args.p, "theta": args.theta}
    cfg_flags = {"t_max": args.t_max, "dt": args.dt, "qfi_theta_point": args.qfi_theta,
                 "seed": args.seed, "label": args.label}
    if args.observables is not None:
        cfg_flags["observables"] = tuple(s.strip() for s in args.observables.split(",") if s.strip())

    try:
        if cfg is None:
            system_kw.update({k: v for k, v in sys_flags.items() if v is not None})
            initial_kw.update({k: v for k, v in init_flags.items() if v is not None})
            cfg = ScenarioConfig(system=SystemParams(**system_kw),
                                 initial=InitialStateParams(**initial_kw),
                                 **{k: v for k, v in cfg_flags.items() if v is not None})
        else:
            sys_over = {k: v for k, v in sys_flags.items() if v is not None}
            init_over = {k: v for k, v in init_flags.items() if v is not None}
            if sys_over:
                cfg = replace(cfg, system=replace(cfg.system, **sys_over))
            if init_over:
                cfg = replace(cfg, initial=replace(cfg.initial, **init_over))
            over = {k: v for k, v in cfg_flags.items() if v is not None}
            if over:
                cfg = replace(cfg, **over)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return cfg


def cmd_simulate(args) -> int:
    cfg = _build_simulate_config(args)
    records = run_scenario(cfg)
    write_csv(records, cfg, args.out)
    print(f"wrote {len(records)} records to {args.out}")
    return 0


def cmd_reproduce(args) -> int:
    os.makedirs(args.outdir, exist_ok=True)
    for variant in range(preset_variants(args.figure)):
        cfg = preset(args.figure, variant)
        overrides = {}
        if args.t_max is not None:
            overrides["t_max"] = args.t_max
        if args.dt is not None:
            overrides["dt"] = args.dt
        if args.seed is not None:
            overrides["seed"] = args.seed
        if overrides:
            cfg = replace(cfg, **overrides)
        path = os.path.join(args.outdir, f"{args.figure}_{variant}.csv")
        records = run_scenario(cfg)
        write_csv(records, cfg, path)
        print(f"wrote {path} ({cfg.label})")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="cavitysim",
                                     description="Atoms-field simulator with discord and "
                                                 "Fisher-information observables.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run one configured scenario to CSV")
    _add_simulate_flags(p_sim)

    p_rep = sub.add_parser("reproduce", help="run the preset scenarios of one figure")
    p_rep.add_argument("--figure", required=True, choices=FIGURES)
    p_rep.add_argument("--outdir", required=True)
    p_rep.add_argument("--t-max", type=float, help="override the preset time span")
    p_rep.add_argument("--dt", type=float, help="override the preset sampling step")
    p_rep.add_argument("--seed", type=int)

    sub.add_parser("selftest", help="run built-in oracle checks")

    args = parser.parse_args(argv)
    if args.command == "selftest":
        return 1 if run_selftest() else 0
    try:
        if args.command == "simulate":
            return cmd_simulate(args)
        return cmd_reproduce(args)
    except (ConfigError, IOError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
