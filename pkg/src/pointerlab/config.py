"""Strict JSON run-config loading.

One JSON document drives every CLI subcommand.  Validation is strict: any
unrecognized key anywhere in the document is an error, every physical
constraint of the referenced types is enforced at load time, and the
document must carry ``schema_version`` 1.  Complex numbers are written as
``[re, im]`` pairs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence, Union

from .classify import (
    AccessibilityBudget,
    ObserverModel,
    RegionSpec,
    TruncatedGaussian,
    UniformDistribution,
)
from .errors import ValidationError
from .model import (
    ApparatusSpec,
    CouplingEnsemble,
    DisorderedCouplings,
    EquatorialInits,
    FixedInits,
    InitsPolicy,
    OrderedCouplings,
    QubitInit,
    RandomInits,
    SystemInit,
    make_apparatus,
)
from .windows import WindowConfig

SCHEMA_VERSION = 1


def _check_keys(obj: dict, allowed: set[str], ctx: str) -> None:
    unknown = sorted(set(obj) - allowed)
    if unknown:
        raise ValidationError(f"unknown key(s) {unknown} in {ctx}")


def _as_dict(value: Any, ctx: str) -> dict:
    if not isinstance(value, dict):
        raise ValidationError(f"{ctx} must be an object")
    return value


def _as_real(value: Any, ctx: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{ctx} must be a number")
    v = float(value)
    if not math.isfinite(v):
        raise ValidationError(f"{ctx} must be finite")
    return v


def _as_int(value: Any, ctx: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{ctx} must be an integer")
    return int(value)


def _as_complex(value: Any, ctx: str) -> complex:
    if not (isinstance(value, list) and len(value) == 2):
        raise ValidationError(f"{ctx} must be a [re, im] pair")
    return complex(_as_real(value[0], f"{ctx}[0]"), _as_real(value[1], f"{ctx}[1]"))


def _as_pair(value: Any, ctx: str) -> tuple[float, float]:
    if not (isinstance(value, list) and len(value) == 2):
        raise ValidationError(f"{ctx} must be a [lo, hi] pair")
    return (_as_real(value[0], f"{ctx}[0]"), _as_real(value[1], f"{ctx}[1]"))


def _parse_ensemble(obj: Any, ctx: str) -> CouplingEnsemble:
    obj = _as_dict(obj, ctx)
    kind = obj.get("kind")
    if kind == "ordered":
        _check_keys(obj, {"kind", "g"}, ctx)
        if "g" not in obj:
            raise ValidationError(f"{ctx}: ordered ensemble needs 'g'")
        return OrderedCouplings(_as_real(obj["g"], f"{ctx}.g"))
    if kind == "disordered":
        _check_keys(obj, {"kind", "interval", "seed"}, ctx)
        if "interval" not in obj or "seed" not in obj:
            raise ValidationError(f"{ctx}: disordered ensemble needs 'interval' and 'seed'")
        lo, hi = _as_pair(obj["interval"], f"{ctx}.interval")
        return DisorderedCouplings(lo, hi, _as_int(obj["seed"], f"{ctx}.seed"))
    raise ValidationError(f"{ctx}.kind must be 'ordered' or 'disordered', got {kind!r}")


def _parse_inits(obj: Any, ctx: str) -> InitsPolicy:
    obj = _as_dict(obj, ctx)
    policy = obj.get("policy")
    if policy == "equatorial":
        _check_keys(obj, {"policy", "alpha_phase", "beta_phase"}, ctx)
        return EquatorialInits(
            alpha_phase=_as_real(obj.get("alpha_phase", 0.0), f"{ctx}.alpha_phase"),
            beta_phase=_as_real(obj.get("beta_phase", 0.0), f"{ctx}.beta_phase"),
        )
    if policy == "random":
        _check_keys(obj, {"policy", "seed"}, ctx)
        if "seed" not in obj:
            raise ValidationError(f"{ctx}: random inits need 'seed'")
        return RandomInits(seed=_as_int(obj["seed"], f"{ctx}.seed"))
    if policy == "fixed":
        _check_keys(obj, {"policy", "qubits"}, ctx)
        qubits = obj.get("qubits")
        if not isinstance(qubits, list) or not qubits:
            raise ValidationError(f"{ctx}.qubits must be a nonempty list")
        inits = []
        for i, q in enumerate(qubits):
            q = _as_dict(q, f"{ctx}.qubits[{i}]")
            _check_keys(q, {"alpha", "beta"}, f"{ctx}.qubits[{i}]")
            inits.append(
                QubitInit(
                    _as_complex(q.get("alpha"), f"{ctx}.qubits[{i}].alpha"),
                    _as_complex(q.get("beta"), f"{ctx}.qubits[{i}].beta"),
                )
            )
        return FixedInits(inits=tuple(inits))
    raise ValidationError(
        f"{ctx}.policy must be 'equatorial', 'random' or 'fixed', got {policy!r}"
    )


def _parse_system(obj: Any, ctx: str) -> SystemInit:
    obj = _as_dict(obj, ctx)
    _check_keys(obj, {"a", "b"}, ctx)
    if "a" not in obj or "b" not in obj:
        raise ValidationError(f"{ctx} needs both 'a' and 'b'")
    return SystemInit(_as_complex(obj["a"], f"{ctx}.a"), _as_complex(obj["b"], f"{ctx}.b"))


def _parse_window(obj: Any, ctx: str) -> WindowConfig:
    obj = _as_dict(obj, ctx)
    _check_keys(
        obj, {"epsilon", "t_max", "grid_step", "refine_tol", "revival_eta"}, ctx
    )
    if "epsilon" not in obj or "t_max" not in obj:
        raise ValidationError(f"{ctx} needs 'epsilon' and 't_max'")
    kwargs: dict[str, float] = {
        "epsilon": _as_real(obj["epsilon"], f"{ctx}.epsilon"),
        "t_max": _as_real(obj["t_max"], f"{ctx}.t_max"),
    }
    if "grid_step" in obj:
        kwargs["grid_step"] = _as_real(obj["grid_step"], f"{ctx}.grid_step")
    if "refine_tol" in obj:
        kwargs["refine_tol"] = _as_real(obj["refine_tol"], f"{ctx}.refine_tol")
    if "revival_eta" in obj:
        kwargs["revival_eta"] = _as_real(obj["revival_eta"], f"{ctx}.revival_eta")
    return WindowConfig(**kwargs)


def _parse_observer(obj: Any, ctx: str) -> ObserverModel:
    obj = _as_dict(obj, ctx)
    _check_keys(obj, {"window", "distribution"}, ctx)
    if "window" not in obj:
        raise ValidationError(f"{ctx} needs 'window'")
    window = _as_pair(obj["window"], f"{ctx}.window")
    dist_obj = obj.get("distribution", {"kind": "uniform"})
    dist_obj = _as_dict(dist_obj, f"{ctx}.distribution")
    kind = dist_obj.get("kind")
    if kind == "uniform":
        _check_keys(dist_obj, {"kind"}, f"{ctx}.distribution")
        dist: Union[UniformDistribution, TruncatedGaussian] = UniformDistribution()
    elif kind == "gaussian":
        _check_keys(dist_obj, {"kind", "t_m", "delta_t"}, f"{ctx}.distribution")
        if "t_m" not in dist_obj or "delta_t" not in dist_obj:
            raise ValidationError(f"{ctx}.distribution: gaussian needs 't_m' and 'delta_t'")
        dist = TruncatedGaussian(
            t_m=_as_real(dist_obj["t_m"], f"{ctx}.distribution.t_m"),
            delta_t=_as_real(dist_obj["delta_t"], f"{ctx}.distribution.delta_t"),
        )
    else:
        raise ValidationError(
            f"{ctx}.distribution.kind must be 'uniform' or 'gaussian', got {kind!r}"
        )
    return ObserverModel(window=window, distribution=dist)


def _parse_budget(obj: Any, ctx: str) -> AccessibilityBudget:
    obj = _as_dict(obj, ctx)
    _check_keys(obj, {"e0", "noise_floor", "max_energy"}, ctx)
    for key in ("e0", "noise_floor", "max_energy"):
        if key not in obj:
            raise ValidationError(f"{ctx} needs '{key}'")
    return AccessibilityBudget(
        e0=_as_real(obj["e0"], f"{ctx}.e0"),
        noise_floor=_as_real(obj["noise_floor"], f"{ctx}.noise_floor"),
        max_energy=_as_real(obj["max_energy"], f"{ctx}.max_energy"),
    )


def _parse_region(obj: Any, ctx: str) -> RegionSpec:
    obj = _as_dict(obj, ctx)
    _check_keys(obj, {"n_range", "t_range"}, ctx)
    if "n_range" not in obj or "t_range" not in obj:
        raise ValidationError(f"{ctx} needs 'n_range' and 't_range'")
    n_range = obj["n_range"]
    if not (isinstance(n_range, list) and len(n_range) == 2):
        raise ValidationError(f"{ctx}.n_range must be a [lo, hi] pair")
    return RegionSpec(
        n_range=(
            _as_int(n_range[0], f"{ctx}.n_range[0]"),
            _as_int(n_range[1], f"{ctx}.n_range[1]"),
        ),
        t_range=_as_pair(obj["t_range"], f"{ctx}.t_range"),
    )


@dataclass(frozen=True)
class SimulateGrid:
    """Uniform time grid t_i = t_start + i * step, inclusive of t_stop."""

    t_start: float
    t_stop: float
    step: float

    def __post_init__(self) -> None:
        if self.t_start < 0.0 or self.t_stop <= self.t_start or self.step <= 0.0:
            raise ValidationError(
                "simulate grid needs 0 <= t_start < t_stop and step > 0"
            )

    def times(self) -> list[float]:
        n = int(math.floor((self.t_stop - self.t_start) / self.step + 1e-9)) + 1
        return [self.t_start + i * self.step for i in range(n)]


@dataclass(frozen=True)
class SweepGrid:
    """Cartesian product of sizes x ensembles x seeds for the sweep command."""

    n_values: tuple[int, ...]
    ensembles: tuple[CouplingEnsemble, ...]
    seeds: tuple[int, ...]


@dataclass(frozen=True)
class InfoJob:
    coefficients: tuple[complex, ...]
    epsilon: float


@dataclass(frozen=True)
class OracleCheckJob:
    n_pairs: int = 50
    max_qubits: int = 10
    seed: int = 20240803
    variance_qubits: int = 6
    variance_horizon: float = 1.0e5


@dataclass(frozen=True)
class CompareJob:
    g: float
    interval: tuple[float, float]
    seeds: tuple[int, ...]


@dataclass(frozen=True)
class RunConfig:
    """Everything a CLI subcommand may need, parsed and physically validated."""

    ensemble: Optional[CouplingEnsemble] = None
    n_qubits: Optional[int] = None
    inits: InitsPolicy = field(default_factory=EquatorialInits)
    system: SystemInit = field(default_factory=lambda: SystemInit(1 / math.sqrt(2), 1 / math.sqrt(2)))
    window: Optional[WindowConfig] = None
    observer: Optional[ObserverModel] = None
    budget: Optional[AccessibilityBudget] = None
    region: Optional[RegionSpec] = None
    simulate: Optional[SimulateGrid] = None
    sweep: Optional[SweepGrid] = None
    info: Optional[InfoJob] = None
    oracle_check: OracleCheckJob = field(default_factory=OracleCheckJob)
    compare: Optional[CompareJob] = None
    out: Optional[str] = None

    def build_apparatus(self) -> ApparatusSpec:
        if self.ensemble is None or self.n_qubits is None:
            raise ValidationError("config needs 'ensemble' and 'n_qubits' for this command")
        return make_apparatus(self.ensemble, self.n_qubits, self.inits)

    def require(self, name: str) -> Any:
        value = getattr(self, name)
        if value is None:
            raise ValidationError(f"config needs a '{name}' section for this command")
        return value


_TOP_KEYS = {
    "schema_version",
    "ensemble",
    "n_qubits",
    "inits",
    "system",
    "window",
    "observer",
    "budget",
    "region",
    "simulate",
    "sweep",
    "info",
    "oracle_check",
    "compare",
    "out",
}


def parse_config(doc: Any) -> RunConfig:
    doc = _as_dict(doc, "config")
    _check_keys(doc, _TOP_KEYS, "config")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ValidationError(
            f"config schema_version must be {SCHEMA_VERSION}, got {version!r}"
        )

    kwargs: dict[str, Any] = {}
    if "ensemble" in doc:
        kwargs["ensemble"] = _parse_ensemble(doc["ensemble"], "ensemble")
    if "n_qubits" in doc:
        n = _as_int(doc["n_qubits"], "n_qubits")
        if n < 1:
            raise ValidationError("n_qubits must be >= 1")
        kwargs["n_qubits"] = n
    if "inits" in doc:
        kwargs["inits"] = _parse_inits(doc["inits"], "inits")
    if "system" in doc:
        kwargs["system"] = _parse_system(doc["system"], "system")
    if "window" in doc:
        kwargs["window"] = _parse_window(doc["window"], "window")
    if "observer" in doc:
        kwargs["observer"] = _parse_observer(doc["observer"], "observer")
    if "budget" in doc:
        kwargs["budget"] = _parse_budget(doc["budget"], "budget")
    if "region" in doc:
        kwargs["region"] = _parse_region(doc["region"], "region")

    if "simulate" in doc:
        sim = _as_dict(doc["simulate"], "simulate")
        _check_keys(sim, {"t_start", "t_stop", "step"}, "simulate")
        if "t_stop" not in sim or "step" not in sim:
            raise ValidationError("simulate needs 't_stop' and 'step'")
        kwargs["simulate"] = SimulateGrid(
            t_start=_as_real(sim.get("t_start", 0.0), "simulate.t_start"),
            t_stop=_as_real(sim["t_stop"], "simulate.t_stop"),
            step=_as_real(sim["step"], "simulate.step"),
        )

    if "sweep" in doc:
        sw = _as_dict(doc["sweep"], "sweep")
        _check_keys(sw, {"n_values", "ensembles", "seeds"}, "sweep")
        n_values = sw.get("n_values")
        ensembles = sw.get("ensembles")
        if not isinstance(n_values, list) or not n_values:
            raise ValidationError("sweep.n_values must be a nonempty list")
        if not isinstance(ensembles, list) or not ensembles:
            raise ValidationError("sweep.ensembles must be a nonempty list")
        seeds = sw.get("seeds", [0])
        if not isinstance(seeds, list) or not seeds:
            raise ValidationError("sweep.seeds must be a nonempty list")
        kwargs["sweep"] = SweepGrid(
            n_values=tuple(
                _as_int(v, f"sweep.n_values[{i}]") for i, v in enumerate(n_values)
            ),
            ensembles=tuple(
                _parse_ensemble(e, f"sweep.ensembles[{i}]") for i, e in enumerate(ensembles)
            ),
            seeds=tuple(_as_int(s, f"sweep.seeds[{i}]") for i, s in enumerate(seeds)),
        )

    if "info" in doc:
        inf = _as_dict(doc["info"], "info")
        _check_keys(inf, {"coefficients", "epsilon"}, "info")
        coeffs = inf.get("coefficients")
        if not isinstance(coeffs, list) or len(coeffs) < 2:
            raise ValidationError("info.coefficients must list at least two [re, im] pairs")
        kwargs["info"] = InfoJob(
            coefficients=tuple(
                _as_complex(c, f"info.coefficients[{i}]") for i, c in enumerate(coeffs)
            ),
            epsilon=_as_real(inf.get("epsilon", 0.0), "info.epsilon"),
        )

    if "oracle_check" in doc:
        oc = _as_dict(doc["oracle_check"], "oracle_check")
        _check_keys(
            oc,
            {"n_pairs", "max_qubits", "seed", "variance_qubits", "variance_horizon"},
            "oracle_check",
        )
        kwargs["oracle_check"] = OracleCheckJob(
            n_pairs=_as_int(oc.get("n_pairs", 50), "oracle_check.n_pairs"),
            max_qubits=_as_int(oc.get("max_qubits", 10), "oracle_check.max_qubits"),
            seed=_as_int(oc.get("seed", 20240803), "oracle_check.seed"),
            variance_qubits=_as_int(oc.get("variance_qubits", 6), "oracle_check.variance_qubits"),
            variance_horizon=_as_real(
                oc.get("variance_horizon", 1.0e5), "oracle_check.variance_horizon"
            ),
        )

    if "compare" in doc:
        cp = _as_dict(doc["compare"], "compare")
        _check_keys(cp, {"g", "interval", "seeds"}, "compare")
        if "g" not in cp or "interval" not in cp:
            raise ValidationError("compare needs 'g' and 'interval'")
        seeds = cp.get("seeds", list(range(20)))
        if not isinstance(seeds, list) or not seeds:
            raise ValidationError("compare.seeds must be a nonempty list")
        kwargs["compare"] = CompareJob(
            g=_as_real(cp["g"], "compare.g"),
            interval=_as_pair(cp["interval"], "compare.interval"),
            seeds=tuple(_as_int(s, f"compare.seeds[{i}]") for i, s in enumerate(seeds)),
        )

    if "out" in doc:
        if not isinstance(doc["out"], str) or not doc["out"]:
            raise ValidationError("out must be a nonempty path string")
        kwargs["out"] = doc["out"]

    return RunConfig(**kwargs)


def load_config(path: str) -> RunConfig:
    """Read and validate a JSON config file."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"config {path} is not valid JSON: {exc}") from exc
    return parse_config(doc)


def override_seed(cfg: RunConfig, seed: int) -> RunConfig:
    """Apply a CLI --seed override to the seeded parts of a config."""
    from dataclasses import replace

    out = cfg
    if isinstance(cfg.ensemble, DisorderedCouplings):
        out = replace(out, ensemble=replace(cfg.ensemble, seed=seed))
    if isinstance(cfg.inits, RandomInits):
        out = replace(out, inits=RandomInits(seed=seed))
    return out
