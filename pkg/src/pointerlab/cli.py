"""Command-line front end.

Subcommands: ``simulate | windows | classify | oracle-check | sweep | info``,
each driven by one strict JSON config (see :mod:`pointerlab.config`).

Exit codes: 0 success, 1 validation error, 2 runtime/capacity error (this
includes unwritable output paths and failed oracle checks).  Identical
config plus seeds produce byte-identical outputs; CSV floats use the
shortest round-trip decimal form.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

import numpy as np

from .classify import (
    accessibility,
    order_vs_disorder_report,
    place_in_diagram,
    reliability,
)
from .config import RunConfig, load_config, override_seed
from .errors import CapacityError, ValidationError
from .info import GeneralState, wprc_info_deficit
from .model import (
    DisorderedCouplings,
    OrderedCouplings,
    availability_grid,
    long_time_variance,
    make_apparatus,
    overlap_grid,
    reduced_system_state,
)
from .oracle import evolve_full, partial_trace_system, qubit_model_as_general
from .oracle import GeneralOzawaEvolver
from .model import ApparatusSpec, RandomInits, SystemInit
from .windows import longest_window, prc_times, revivals, wprc_set

_FIRST_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def format_float(x: float) -> str:
    """Shortest decimal text that round-trips to the same double."""
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


def _write_text(out_path: Optional[str], text: str) -> None:
    if out_path is None:
        sys.stdout.write(text)
        return
    with open(out_path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _json_text(payload: object) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _ensemble_label(ensemble) -> str:
    """CSV-safe ensemble id (no commas)."""
    if isinstance(ensemble, OrderedCouplings):
        return f"ordered(g={format_float(ensemble.g)})"
    return f"disordered({format_float(ensemble.lo)}..{format_float(ensemble.hi)})"


def cmd_simulate(cfg: RunConfig, out_path: Optional[str], threads: int) -> int:
    grid = cfg.require("simulate")
    spec = cfg.build_apparatus()
    times = grid.times()
    values = availability_grid(spec, np.asarray(times))
    lines = ["t,availability"]
    lines += [f"{format_float(t)},{format_float(v)}" for t, v in zip(times, values)]
    _write_text(out_path, "\n".join(lines) + "\n")
    return 0


def _windows_payload(cfg: RunConfig) -> dict:
    spec = cfg.build_apparatus()
    wcfg = cfg.require("window")
    ts = wprc_set(spec, wcfg)
    prc = prc_times(spec, wcfg)
    rev = revivals(spec, wcfg)
    lw = longest_window(ts)
    notes = []
    if rev.degenerate:
        notes.append(
            "availability is constant 1 on the horizon: every qubit starts in a "
            "coupling eigenstate, so no decoherence ever occurs"
        )
    return {
        "time_set": ts.to_dict(),
        "prc_points": list(prc.points),
        "revivals": {"times": list(rev.times), "degenerate": rev.degenerate},
        "longest_window": {
            "interval": list(lw.interval) if lw.interval else None,
            "duration": lw.duration,
        },
        "notes": notes,
    }


def cmd_windows(cfg: RunConfig, out_path: Optional[str], threads: int) -> int:
    _write_text(out_path, _json_text(_windows_payload(cfg)))
    return 0


def cmd_classify(cfg: RunConfig, out_path: Optional[str], threads: int) -> int:
    payload: dict = {}
    n = cfg.require("n_qubits")

    if cfg.observer is not None or cfg.region is not None:
        spec = cfg.build_apparatus()
        wcfg = cfg.require("window")
        ts = wprc_set(spec, wcfg)
        prc = prc_times(spec, wcfg)
        lw = longest_window(ts)
        payload["longest_window"] = {
            "interval": list(lw.interval) if lw.interval else None,
            "duration": lw.duration,
        }
        if cfg.observer is not None:
            payload["reliability"] = reliability(cfg.observer, ts, prc).to_dict()
        if cfg.region is not None:
            payload["placement"] = place_in_diagram(n, lw.duration, cfg.region).to_dict()

    if cfg.budget is not None:
        payload["accessibility"] = accessibility(n, cfg.budget).to_dict()

    if cfg.compare is not None:
        report = order_vs_disorder_report(
            g=cfg.compare.g,
            interval=cfg.compare.interval,
            n_qubits=n,
            cfg=cfg.require("window"),
            obs=cfg.observer,
            seeds=cfg.compare.seeds,
            inits=cfg.inits,
            max_workers=threads if threads > 1 else None,
        )
        payload["order_vs_disorder"] = report.to_dict()

    if not payload:
        raise ValidationError(
            "classify needs at least one of: observer, budget, region, compare"
        )
    _write_text(out_path, _json_text(payload))
    return 0


def incommensurate_spec(n_qubits: int, seed: int) -> ApparatusSpec:
    """Pairwise-incommensurate couplings 0.1*sqrt(prime_k), seeded random inits."""
    if n_qubits > len(_FIRST_PRIMES):
        raise ValidationError(f"supports at most {len(_FIRST_PRIMES)} qubits")
    couplings = np.array([0.1 * math.sqrt(p) for p in _FIRST_PRIMES[:n_qubits]])
    base = make_apparatus(OrderedCouplings(1.0), n_qubits, RandomInits(seed))
    return ApparatusSpec(couplings=couplings, alphas=base.alphas, betas=base.betas)


def run_oracle_checks(cfg: RunConfig) -> dict:
    """Cross-validate closed forms against the brute-force evolutions."""
    job = cfg.oracle_check
    if job.max_qubits > 12:
        raise CapacityError(
            f"state-vector evolution supports at most 12 apparatus qubits, "
            f"got max_qubits = {job.max_qubits}"
        )
    rng = np.random.default_rng(job.seed)
    checks: list[dict] = []

    # closed-form reduced state vs state-vector partial trace
    worst = 0.0
    for _ in range(job.n_pairs):
        n = int(rng.integers(1, job.max_qubits + 1))
        spec = make_apparatus(
            DisorderedCouplings(0.0, 0.5, int(rng.integers(0, 2**32))),
            n,
            RandomInits(int(rng.integers(0, 2**32))),
        )
        theta = float(rng.uniform(0, math.pi))
        phi = float(rng.uniform(0, 2 * math.pi))
        sysq = SystemInit(math.cos(theta / 2), math.sin(theta / 2) * complex(math.cos(phi), math.sin(phi)))
        t = float(rng.uniform(0.0, 20.0))
        rho_model = reduced_system_state(spec, sysq, t)
        rho_oracle = partial_trace_system(evolve_full(spec, sysq, t))
        worst = max(worst, float(np.max(np.abs(rho_model - rho_oracle))))
    checks.append(
        {
            "check": "reduced_state_matches_partial_trace",
            "passed": worst <= 1e-10,
            "pairs": job.n_pairs,
            "worst_entry_error": worst,
            "tolerance": 1e-10,
        }
    )

    # general evolver reduction vs factored overlap
    worst_gen = 0.0
    for _ in range(10):
        n = int(rng.integers(1, min(8, job.max_qubits) + 1))
        spec = make_apparatus(
            DisorderedCouplings(0.0, 0.5, int(rng.integers(0, 2**32))),
            n,
            RandomInits(int(rng.integers(0, 2**32))),
        )
        evolver = GeneralOzawaEvolver(qubit_model_as_general(spec))
        for t in rng.uniform(0.0, 20.0, 5):
            delta = evolver.delta_matrix(float(t))
            product = overlap_grid(spec, np.array([float(t)]))[0]
            worst_gen = max(worst_gen, float(abs(delta[1, 0] - product)))
    checks.append(
        {
            "check": "general_evolver_matches_factored_overlap",
            "passed": worst_gen <= 1e-10,
            "worst_error": worst_gen,
            "tolerance": 1e-10,
        }
    )

    # unitarity of the full evolution at long times
    spec = make_apparatus(DisorderedCouplings(0.0, 0.5, job.seed), min(8, job.max_qubits), RandomInits(job.seed))
    sysq = SystemInit(0.6, 0.8)
    norm = float(np.linalg.norm(evolve_full(spec, sysq, 1.0e3).amplitudes))
    checks.append(
        {
            "check": "unitarity_long_time",
            "passed": abs(norm - 1.0) <= 1e-12,
            "norm": norm,
            "tolerance": 1e-12,
        }
    )

    # long-time average law on incommensurate couplings
    spec_var = incommensurate_spec(job.variance_qubits, job.seed)
    ts = np.linspace(0.0, job.variance_horizon, 400001)
    vals = overlap_grid(spec_var, ts)
    mean_sq = float(np.mean(np.abs(vals) ** 2))
    predicted = long_time_variance(spec_var)
    rel_err = abs(mean_sq - predicted) / predicted
    mean_overlap = complex(np.mean(vals))
    checks.append(
        {
            "check": "availability_squared_time_average",
            "passed": rel_err <= 0.05,
            "empirical_mean": mean_sq,
            "predicted": predicted,
            "relative_error": rel_err,
            "tolerance": 0.05,
        }
    )
    checks.append(
        {
            "check": "complex_overlap_time_average",
            "passed": abs(mean_overlap) < 0.02,
            "mean_modulus": abs(mean_overlap),
            "tolerance": 0.02,
        }
    )

    return {"checks": checks, "all_passed": all(c["passed"] for c in checks)}


def cmd_oracle_check(cfg: RunConfig, out_path: Optional[str], threads: int) -> int:
    payload = run_oracle_checks(cfg)
    _write_text(out_path, _json_text(payload))
    return 0 if payload["all_passed"] else 2


def cmd_sweep(cfg: RunConfig, out_path: Optional[str], threads: int) -> int:
    sweep = cfg.require("sweep")
    wcfg = cfg.require("window")
    obs = cfg.require("observer")
    budget = cfg.require("budget")
    region = cfg.require("region")

    cells = []
    for n in sorted(sweep.n_values):
        for idx, ensemble in enumerate(sweep.ensembles):
            for seed in sorted(sweep.seeds):
                cells.append((n, idx, ensemble, seed))

    def run_cell(cell):
        n, idx, ensemble, seed = cell
        if isinstance(ensemble, DisorderedCouplings):
            ensemble = DisorderedCouplings(ensemble.lo, ensemble.hi, seed)
        spec = make_apparatus(ensemble, n, cfg.inits)
        ts = wprc_set(spec, wcfg)
        prc = prc_times(spec, wcfg)
        lw = longest_window(ts)
        rel = reliability(obs, ts, prc)
        acc = accessibility(n, budget)
        placed = place_in_diagram(n, lw.duration, region)
        return (
            f"{n},{_ensemble_label(ensemble)},{seed},"
            f"{format_float(lw.duration)},{format_float(rel.theta_big)},"
            f"{format_float(rel.theta_eps)},{format_float(rel.theta_ratio)},"
            f"{rel.verdict.value},{acc.verdict.value},{str(placed.in_region).lower()}"
        )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(run_cell, cells))
    else:
        rows = [run_cell(c) for c in cells]

    header = (
        "n,ensemble,seed,longest_window,theta,theta_eps,theta_ratio,"
        "reliability,accessibility,in_region"
    )
    _write_text(out_path, "\n".join([header] + rows) + "\n")
    return 0


def cmd_info(cfg: RunConfig, out_path: Optional[str], threads: int) -> int:
    job = cfg.require("info")
    report = wprc_info_deficit(GeneralState(job.coefficients), job.epsilon)
    _write_text(out_path, _json_text(report.to_dict()))
    return 0


_COMMANDS = {
    "simulate": cmd_simulate,
    "windows": cmd_windows,
    "classify": cmd_classify,
    "oracle-check": cmd_oracle_check,
    "sweep": cmd_sweep,
    "info": cmd_info,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pointerlab",
        description="Pointer-overlap simulation, window extraction and apparatus classification",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="path to the JSON run config")
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument(
            "--seed",
            type=int,
            default=None,
            help="override the disorder/random-inits seed (rejected for sweep)",
        )
        p.add_argument(
            "--threads", type=int, default=1, help="worker threads for grid commands"
        )
    return parser


def _emit_error(kind: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": {"kind": kind, "message": message}}) + "\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            if args.command == "sweep":
                raise ValidationError(
                    "--seed cannot override a sweep; list seeds in sweep.seeds"
                )
            cfg = override_seed(cfg, args.seed)
        if args.threads < 1:
            raise ValidationError("--threads must be >= 1")
        out_path = args.out if args.out is not None else cfg.out
        return _COMMANDS[args.command](cfg, out_path, args.threads)
    except ValidationError as exc:
        _emit_error("validation", str(exc))
        return 1
    except CapacityError as exc:
        _emit_error("capacity", str(exc))
        return 2
    except OSError as exc:
        _emit_error("io", str(exc))
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
