"""Measurement-window extraction from the availability curve.

Three time structures are pulled off a finite horizon [0, t_max]:

* the weak-condition set {t : availability(t) < epsilon}, returned as closed
  intervals with threshold-crossing endpoints refined by bisection;
* the exact-orthogonality times, an isolated-point set (zeros of the overlap);
* revivals, the local maxima where the availability climbs back above
  1 - revival_eta and interrupts usable windows.

Grid defaults resolve the fastest per-qubit oscillation with 32 points per
half-period; a coarser grid triggers a GridResolutionWarning because dips or
spikes between samples would then go unseen.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .errors import GridResolutionWarning, ValidationError
from .model import ApparatusSpec, availability, availability_grid

DEFAULT_REVIVAL_ETA = 0.01

# |alpha|^2 == |beta|^2 gate deciding whether a factor can reach exactly zero;
# wider gaps make the factor's minimum modulus positive, hence no true zero.
EQUATORIAL_TOL = 1e-12

# interval endpoints must land on the threshold within eps * this factor
BOUNDARY_REL_TOL = 1e-6

_MAX_BISECT = 200


@dataclass(frozen=True)
class TimeSet:
    """Disjoint closed intervals plus isolated points inside a horizon."""

    horizon: tuple[float, float]
    intervals: tuple[tuple[float, float], ...] = ()
    points: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        lo, hi = (float(self.horizon[0]), float(self.horizon[1]))
        if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
            raise ValidationError(f"horizon must be a nonempty interval, got [{lo}, {hi}]")
        ivals = tuple((float(a), float(b)) for a, b in self.intervals)
        prev_hi = None
        for a, b in ivals:
            if not a < b:
                raise ValidationError(f"interval [{a}, {b}] must have positive length")
            if a < lo - 1e-15 or b > hi + 1e-15:
                raise ValidationError(f"interval [{a}, {b}] escapes the horizon")
            if prev_hi is not None and a <= prev_hi:
                raise ValidationError("intervals must be sorted and pairwise disjoint")
            prev_hi = b
        pts = tuple(float(p) for p in self.points)
        if any(pts[i] >= pts[i + 1] for i in range(len(pts) - 1)):
            raise ValidationError("points must be strictly increasing")
        for p in pts:
            if p < lo - 1e-15 or p > hi + 1e-15:
                raise ValidationError(f"point {p} escapes the horizon")
            for a, b in ivals:
                if a < p < b:
                    raise ValidationError(f"point {p} lies inside interval [{a}, {b}]")
        object.__setattr__(self, "horizon", (lo, hi))
        object.__setattr__(self, "intervals", ivals)
        object.__setattr__(self, "points", pts)

    @property
    def is_empty(self) -> bool:
        return not self.intervals and not self.points

    def total_length(self) -> float:
        return float(sum(b - a for a, b in self.intervals))

    def contains(self, t: float, atol: float = 0.0) -> bool:
        t = float(t)
        if any(a - atol <= t <= b + atol for a, b in self.intervals):
            return True
        return any(abs(t - p) <= atol for p in self.points)

    def clip_intervals(self, lo: float, hi: float) -> tuple[tuple[float, float], ...]:
        """Intervals intersected with [lo, hi]; degenerate pieces are dropped."""
        out = []
        for a, b in self.intervals:
            a2, b2 = max(a, lo), min(b, hi)
            if a2 < b2:
                out.append((a2, b2))
        return tuple(out)

    def to_dict(self) -> dict:
        return {
            "horizon": [self.horizon[0], self.horizon[1]],
            "intervals": [[a, b] for a, b in self.intervals],
            "points": list(self.points),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TimeSet":
        return cls(
            horizon=(d["horizon"][0], d["horizon"][1]),
            intervals=tuple((a, b) for a, b in d["intervals"]),
            points=tuple(d["points"]),
        )


@dataclass(frozen=True)
class WindowConfig:
    """Threshold and numerical knobs for window extraction.

    ``grid_step`` and ``refine_tol`` default per apparatus: pi/(32 * max g)
    and grid_step * 1e-6 respectively.
    """

    epsilon: float
    t_max: float
    grid_step: Optional[float] = None
    refine_tol: Optional[float] = None
    revival_eta: float = DEFAULT_REVIVAL_ETA

    def __post_init__(self) -> None:
        if not (0.0 < float(self.epsilon) < 1.0):
            raise ValidationError(f"epsilon must lie in (0, 1), got {self.epsilon!r}")
        if not (math.isfinite(float(self.t_max)) and float(self.t_max) > 0.0):
            raise ValidationError(f"t_max must be finite and > 0, got {self.t_max!r}")
        if not (0.0 < float(self.revival_eta) < 1.0):
            raise ValidationError(f"revival_eta must lie in (0, 1), got {self.revival_eta!r}")
        if self.grid_step is not None and not (0.0 < float(self.grid_step) < float(self.t_max)):
            raise ValidationError("grid_step must satisfy 0 < grid_step < t_max")
        if self.refine_tol is not None:
            if self.grid_step is not None and not (
                0.0 < float(self.refine_tol) < float(self.grid_step)
            ):
                raise ValidationError("need 0 < refine_tol < grid_step")
            if float(self.refine_tol) <= 0.0:
                raise ValidationError("refine_tol must be > 0")

    def resolved(self, spec: ApparatusSpec) -> "WindowConfig":
        """Fill grid defaults from the fastest coupling of ``spec``."""
        g_max = float(np.max(np.abs(spec.couplings)))
        step = self.grid_step
        if step is None:
            step = math.pi / (32.0 * g_max) if g_max > 0.0 else self.t_max / 1024.0
            step = min(step, self.t_max / 16.0)
        tol = self.refine_tol if self.refine_tol is not None else step * 1e-6
        if g_max > 0.0 and step > math.pi / (4.0 * g_max):
            warnings.warn(
                f"grid_step {step:g} exceeds pi/(4*max g) = {math.pi / (4 * g_max):g}; "
                "threshold crossings between samples may be missed",
                GridResolutionWarning,
                stacklevel=3,
            )
        return replace(self, grid_step=step, refine_tol=tol)


def _time_grid(t_max: float, step: float) -> np.ndarray:
    n_cells = max(int(math.ceil(t_max / step)), 16)
    return np.linspace(0.0, t_max, n_cells + 1)


def _refine_threshold_crossing(
    spec: ApparatusSpec, eps: float, lo: float, hi: float, tol: float
) -> float:
    """Bisect availability(t) - eps on a sign-changing bracket [lo, hi]."""
    f_lo = availability(spec, lo) - eps
    for _ in range(_MAX_BISECT):
        mid = 0.5 * (lo + hi)
        f_mid = availability(spec, mid) - eps
        if abs(f_mid) <= eps * BOUNDARY_REL_TOL and (hi - lo) <= tol:
            return mid
        if (f_lo <= 0.0) == (f_mid <= 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
        if hi - lo <= max(1e-15, 1e-15 * hi) and abs(f_mid) <= eps * BOUNDARY_REL_TOL:
            return mid
    return 0.5 * (lo + hi)


def wprc_set(spec: ApparatusSpec, cfg: WindowConfig) -> TimeSet:
    """All times in [0, t_max] where the availability sits below epsilon.

    Endpoints other than the horizon ends land on the threshold within
    eps * 1e-6 by bisection.  Besides the grid scan, every exact overlap
    zero seeds its own dip search: the V-shaped drop around an isolated
    zero can be narrower than any fixed grid, yet it always dips below
    every positive threshold.
    """
    r = cfg.resolved(spec)
    eps, t_max, tol = r.epsilon, r.t_max, r.refine_tol
    ts = _time_grid(t_max, r.grid_step)
    below = availability_grid(spec, ts) < eps

    intervals: list[tuple[float, float]] = []
    i = 0
    n = len(ts)
    while i < n:
        if not below[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and below[j + 1]:
            j += 1
        lo = 0.0 if i == 0 else _refine_threshold_crossing(spec, eps, ts[i - 1], ts[i], tol)
        hi = t_max if j == n - 1 else _refine_threshold_crossing(spec, eps, ts[j], ts[j + 1], tol)
        if hi > lo:
            intervals.append((lo, hi))
        i = j + 1

    # dips hiding between samples around exact zeros
    step = float(ts[1] - ts[0])
    for t0 in _balanced_factor_zeros(spec, t_max, r.grid_step, tol):
        if any(a <= t0 <= b for a, b in intervals):
            continue
        lo = _dip_crossing(spec, eps, t0, -1.0, step / 8.0, 0.0, t_max, tol)
        hi = _dip_crossing(spec, eps, t0, +1.0, step / 8.0, 0.0, t_max, tol)
        if lo is not None and hi is not None and hi > lo:
            intervals.append((lo, hi))

    intervals.sort()
    merged: list[tuple[float, float]] = []
    for lo, hi in intervals:
        if merged and lo <= merged[-1][1]:
            merged[-1] = (merged[-1][0], max(merged[-1][1], hi))
        else:
            merged.append((lo, hi))
    return TimeSet(horizon=(0.0, t_max), intervals=tuple(merged))


def _dip_crossing(
    spec: ApparatusSpec,
    eps: float,
    t0: float,
    direction: float,
    h: float,
    t_lo: float,
    t_hi: float,
    tol: float,
) -> Optional[float]:
    """Nearest threshold crossing on one side of an exact-zero dip at t0.

    Walks outward in steps of h until the availability climbs back to eps,
    then bisects; returns the horizon end if the dip runs into it.
    """
    prev = t0
    for m in range(1, 65):
        x = t0 + direction * m * h
        x = min(max(x, t_lo), t_hi)
        if availability(spec, x) >= eps:
            lo, hi = (x, prev) if direction < 0 else (prev, x)
            return _refine_threshold_crossing(spec, eps, lo, hi, tol)
        if x in (t_lo, t_hi):
            return x  # still below threshold at the horizon end
        prev = x
    return None


def _balanced_factor_zeros(
    spec: ApparatusSpec, t_max: float, grid_step: float, tol: float
) -> list[float]:
    """Exact zeros of the overlap: roots of cos(2 g_k t) over balanced qubits.

    A finite product vanishes iff one factor does, and a factor reaches zero
    only when its qubit starts balanced (|alpha|^2 = |beta|^2); that factor
    is then the sign-changing cos(2 g_k t), so its roots are bracketed on a
    per-factor grid and bisected.  Duplicates across factors merge within tol.
    """
    balanced = np.abs(spec.balance) <= EQUATORIAL_TOL
    roots: list[float] = []
    for k in np.nonzero(balanced)[0]:
        g = abs(float(spec.couplings[k]))
        if g == 0.0:
            continue  # constant factor, never zero
        step = min(grid_step, math.pi / (8.0 * g))
        ts = _time_grid(t_max, step)
        u = np.cos(2.0 * g * ts)
        for i in range(len(ts) - 1):
            if u[i] == 0.0:
                roots.append(float(ts[i]))
            elif (u[i] < 0.0) != (u[i + 1] < 0.0):
                roots.append(
                    _bisect_root(lambda t: math.cos(2.0 * g * t), ts[i], ts[i + 1], tol)
                )
        if u[-1] == 0.0:
            roots.append(float(ts[-1]))
    roots.sort()
    merged: list[float] = []
    for t in roots:
        if merged and t - merged[-1] <= tol:
            continue  # same zero found through two factors
        merged.append(t)
    return merged


def _bisect_root(f: Callable[[float], float], lo: float, hi: float, tol: float) -> float:
    f_lo = f(lo)
    if f_lo == 0.0:
        return lo
    for _ in range(_MAX_BISECT):
        mid = 0.5 * (lo + hi)
        if hi - lo <= tol:
            return mid
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_lo < 0.0) == (f_mid < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def prc_times(spec: ApparatusSpec, cfg: WindowConfig) -> TimeSet:
    """Isolated times where the overlap vanishes exactly (point set only).

    A finite product vanishes iff one factor does, and a factor reaches zero
    only when its qubit starts balanced (|alpha|^2 = |beta|^2) and its
    cos(2 g t) crosses zero.  Each balanced factor's cosine is a
    sign-changing function, so its roots are bracketed on a per-factor grid
    and bisected to refine_tol.  Unbalanced factors give tangential minima
    with positive floor and contribute no points.
    """
    r = cfg.resolved(spec)
    zeros = _balanced_factor_zeros(spec, r.t_max, r.grid_step, r.refine_tol)
    return TimeSet(horizon=(0.0, r.t_max), points=tuple(zeros))


_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_max(
    f: Callable[[float], float], lo: float, hi: float, tol: float
) -> tuple[float, float]:
    """Golden-section maximizer on [lo, hi]; returns (argmax, max)."""
    a, b = lo, hi
    c = b - _INV_GOLDEN * (b - a)
    d = a + _INV_GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_GOLDEN * (b - a)
            fd = f(d)
    t = 0.5 * (a + b)
    return t, f(t)


@dataclass(frozen=True)
class RevivalReport:
    """Times where the availability returns above 1 - revival_eta.

    ``degenerate`` marks the no-decoherence case (availability identically 1),
    where only the horizon endpoints are reported.
    """

    times: tuple[float, ...]
    degenerate: bool = False


def revivals(spec: ApparatusSpec, cfg: WindowConfig) -> RevivalReport:
    """Local maxima of the availability reaching at least 1 - revival_eta."""
    r = cfg.resolved(spec)
    t_max, tol, eta = r.t_max, r.refine_tol, r.revival_eta
    ts = _time_grid(t_max, r.grid_step)
    vals = availability_grid(spec, ts)
    # unit-modulus factors only round at ~n*1e-16, so 1e-9 flags the flat case
    if np.all(np.abs(vals - 1.0) <= 1e-9):
        return RevivalReport(times=(0.0, t_max), degenerate=True)

    threshold = 1.0 - eta
    found: list[float] = []

    def _consider(lo: float, hi: float) -> None:
        t, v = _golden_max(lambda x: availability(spec, x), lo, hi, tol)
        if v >= threshold:
            found.append(float(t))

    n = len(ts)
    if vals[0] >= vals[1]:
        _consider(ts[0], ts[1])
    for i in range(1, n - 1):
        if vals[i] >= vals[i - 1] and vals[i] >= vals[i + 1]:
            _consider(ts[i - 1], ts[i + 1])
    if vals[-1] >= vals[-2]:
        _consider(ts[-2], ts[-1])

    found.sort()
    merged: list[float] = []
    for t in found:
        if merged and t - merged[-1] <= max(tol, r.grid_step * 0.5):
            continue
        merged.append(t)
    # the start is always a maximum (availability(0) = 1); snap it to 0 exactly
    if merged and abs(merged[0]) <= max(tol, r.grid_step):
        merged[0] = 0.0
    return RevivalReport(times=tuple(merged), degenerate=False)


@dataclass(frozen=True)
class LongestWindow:
    interval: Optional[tuple[float, float]]
    duration: float


def longest_window(ts: TimeSet) -> LongestWindow:
    """Maximal-length interval of a TimeSet; ties go to the earliest start."""
    best: Optional[tuple[float, float]] = None
    best_len = 0.0
    for a, b in ts.intervals:
        if b - a > best_len:
            best, best_len = (a, b), b - a
    return LongestWindow(interval=best, duration=best_len)


def ordered_wprc_interval(
    g: float, n_qubits: int, epsilon: float, k: int = 0
) -> tuple[float, float]:
    """Closed-form window of an equatorial ordered apparatus, k-th half-period.

    |cos(2 g t)|^N crosses epsilon at arccos(epsilon^(1/N)) / (2 g) past each
    revival, so the k-th window is that crossing mirrored inside
    [k pi/(2g), (k+1) pi/(2g)].  Cross-check only; valid for equatorial
    ordered apparatuses.
    """
    if not (0.0 < epsilon < 1.0) or g <= 0.0 or n_qubits < 1:
        raise ValidationError("need g > 0, n_qubits >= 1 and epsilon in (0, 1)")
    half_period = math.pi / (2.0 * g)
    tau = math.acos(epsilon ** (1.0 / n_qubits)) / (2.0 * g)
    return (k * half_period + tau, (k + 1) * half_period - tau)
