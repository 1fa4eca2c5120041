"""One-to-all qubit premeasurement model: exact pointer-state overlap dynamics.

A single measured qubit couples to N apparatus qubits through a commuting
sigma_z (x) sum_k g_k sigma_z^(k) interaction.  Everything observable here
follows from the overlap of the two apparatus pointer states, which factors
into one complex term per apparatus qubit:

    overlap(t) = prod_k ( |alpha_k|^2 e^{-2i g_k t} + |beta_k|^2 e^{+2i g_k t} )

Conventions: hbar = 1, couplings are angular frequencies, time carries units
of 1/frequency.  All functions in this module are pure and thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import ValidationError

NORM_TOL = 1e-12

# Above this many qubits the overlap product is accumulated as
# log-magnitude + phase so that e.g. cos^100 does not underflow to zero
# prematurely near its roots.
_DIRECT_PRODUCT_MAX = 64


def _require_finite(name: str, z: complex) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValidationError(f"{name} must be finite, got {z!r}")
    return z


def _require_time(t: float) -> float:
    t = float(t)
    if not math.isfinite(t) or t < 0.0:
        raise ValidationError(f"time must be finite and >= 0, got {t!r}")
    return t


@dataclass(frozen=True)
class QubitInit:
    """Initial amplitudes of one apparatus qubit, alpha|up> + beta|down>."""

    alpha: complex
    beta: complex

    def __post_init__(self) -> None:
        a = _require_finite("alpha", self.alpha)
        b = _require_finite("beta", self.beta)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)
        norm = abs(a) ** 2 + abs(b) ** 2
        if abs(norm - 1.0) > NORM_TOL:
            raise ValidationError(
                f"|alpha|^2 + |beta|^2 = {norm!r}, expected 1 within {NORM_TOL}"
            )


@dataclass(frozen=True)
class SystemInit:
    """Initial amplitudes of the measured qubit, a|up> + b|down>."""

    a: complex
    b: complex

    def __post_init__(self) -> None:
        a = _require_finite("a", self.a)
        b = _require_finite("b", self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        norm = abs(a) ** 2 + abs(b) ** 2
        if abs(norm - 1.0) > NORM_TOL:
            raise ValidationError(
                f"|a|^2 + |b|^2 = {norm!r}, expected 1 within {NORM_TOL}"
            )


EQUATOR = SystemInit(1 / math.sqrt(2), 1 / math.sqrt(2))


@dataclass(frozen=True, eq=False)
class ApparatusSpec:
    """N apparatus qubits: coupling frequencies plus initial amplitudes.

    Attributes
    ----------
    couplings : (N,) float array
        Angular frequencies g_k (hbar = 1).
    alphas, betas : (N,) complex arrays
        Per-qubit initial amplitudes; each row is normalized.
    """

    couplings: np.ndarray
    alphas: np.ndarray
    betas: np.ndarray

    def __post_init__(self) -> None:
        g = np.atleast_1d(np.asarray(self.couplings, dtype=float)).copy()
        al = np.atleast_1d(np.asarray(self.alphas, dtype=complex)).copy()
        be = np.atleast_1d(np.asarray(self.betas, dtype=complex)).copy()
        if g.ndim != 1 or al.shape != g.shape or be.shape != g.shape:
            raise ValidationError(
                "couplings, alphas and betas must be 1-d sequences of equal length"
            )
        if g.size < 1:
            raise ValidationError("an apparatus needs at least one qubit")
        if not np.all(np.isfinite(g)):
            raise ValidationError("couplings must all be finite")
        if not (np.all(np.isfinite(al)) and np.all(np.isfinite(be))):
            raise ValidationError("initial amplitudes must all be finite")
        norms = np.abs(al) ** 2 + np.abs(be) ** 2
        worst = float(np.max(np.abs(norms - 1.0)))
        if worst > NORM_TOL:
            raise ValidationError(
                f"qubit inits must be normalized within {NORM_TOL}; worst deviation {worst:g}"
            )
        for arr in (g, al, be):
            arr.flags.writeable = False
        object.__setattr__(self, "couplings", g)
        object.__setattr__(self, "alphas", al)
        object.__setattr__(self, "betas", be)

    @property
    def n(self) -> int:
        return int(self.couplings.size)

    @property
    def up_weights(self) -> np.ndarray:
        """|alpha_k|^2 per qubit."""
        return np.abs(self.alphas) ** 2

    @property
    def down_weights(self) -> np.ndarray:
        """|beta_k|^2 per qubit."""
        return np.abs(self.betas) ** 2

    @property
    def balance(self) -> np.ndarray:
        """|beta_k|^2 - |alpha_k|^2 per qubit; zero marks a balanced qubit."""
        return self.down_weights - self.up_weights

    @property
    def inits(self) -> tuple[QubitInit, ...]:
        return tuple(QubitInit(a, b) for a, b in zip(self.alphas, self.betas))

    @classmethod
    def from_inits(cls, couplings: Sequence[float], inits: Iterable[QubitInit]) -> "ApparatusSpec":
        inits = tuple(inits)
        return cls(
            couplings=np.asarray(couplings, dtype=float),
            alphas=np.array([q.alpha for q in inits], dtype=complex),
            betas=np.array([q.beta for q in inits], dtype=complex),
        )

    def concat(self, other: "ApparatusSpec") -> "ApparatusSpec":
        """Join two apparatuses into one acting on the same measured qubit."""
        return ApparatusSpec(
            couplings=np.concatenate([self.couplings, other.couplings]),
            alphas=np.concatenate([self.alphas, other.alphas]),
            betas=np.concatenate([self.betas, other.betas]),
        )


@dataclass(frozen=True)
class OrderedCouplings:
    """All N couplings equal to the same g > 0."""

    g: float

    def __post_init__(self) -> None:
        g = float(self.g)
        if not math.isfinite(g) or g <= 0.0:
            raise ValidationError(f"ordered coupling must be finite and > 0, got {g!r}")
        object.__setattr__(self, "g", g)


@dataclass(frozen=True)
class DisorderedCouplings:
    """Couplings drawn i.i.d. uniform from [lo, hi], reproducibly from a seed.

    The draw uses numpy's PCG64 generator: ``default_rng(seed).uniform(lo, hi, n)``
    in qubit order, so a (lo, hi, seed, n) tuple pins the sample bit-for-bit.
    """

    lo: float
    hi: float
    seed: int

    def __post_init__(self) -> None:
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)) or not 0.0 <= lo < hi:
            raise ValidationError(
                f"sampling interval must satisfy 0 <= lo < hi, got [{lo!r}, {hi!r}]"
            )
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "seed", int(self.seed))


CouplingEnsemble = Union[OrderedCouplings, DisorderedCouplings]


@dataclass(frozen=True)
class EquatorialInits:
    """All qubits start with |alpha|^2 = |beta|^2 = 1/2; phases configurable."""

    alpha_phase: float = 0.0
    beta_phase: float = 0.0


@dataclass(frozen=True)
class FixedInits:
    """An explicit list of per-qubit initial amplitudes."""

    inits: tuple[QubitInit, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "inits", tuple(self.inits))


@dataclass(frozen=True)
class RandomInits:
    """Per-qubit pure states drawn uniformly on the Bloch sphere from a seed.

    Stream order: ``rng = default_rng(seed)`` then ``cos_theta = rng.uniform(-1, 1, n)``
    followed by ``phi = rng.uniform(0, 2*pi, n)``; qubit k gets
    alpha_k = cos(theta_k/2), beta_k = sin(theta_k/2) e^{i phi_k}.
    """

    seed: int


InitsPolicy = Union[EquatorialInits, FixedInits, RandomInits]


def make_apparatus(
    ensemble: CouplingEnsemble,
    n_qubits: int,
    inits: InitsPolicy = EquatorialInits(),
) -> ApparatusSpec:
    """Build an apparatus from a coupling ensemble and an init policy.

    Deterministic given (ensemble, n_qubits, inits): disorder and random
    inits are seeded draws with documented stream order.
    """
    n = int(n_qubits)
    if n < 1:
        raise ValidationError(f"n_qubits must be >= 1, got {n}")

    if isinstance(ensemble, OrderedCouplings):
        couplings = np.full(n, ensemble.g, dtype=float)
    elif isinstance(ensemble, DisorderedCouplings):
        rng = np.random.default_rng(ensemble.seed)
        couplings = rng.uniform(ensemble.lo, ensemble.hi, n)
    else:
        raise ValidationError(f"unknown coupling ensemble {ensemble!r}")

    if isinstance(inits, EquatorialInits):
        amp = 1.0 / math.sqrt(2.0)
        alphas = np.full(n, amp * np.exp(1j * float(inits.alpha_phase)), dtype=complex)
        betas = np.full(n, amp * np.exp(1j * float(inits.beta_phase)), dtype=complex)
    elif isinstance(inits, FixedInits):
        if len(inits.inits) != n:
            raise ValidationError(
                f"fixed inits list has length {len(inits.inits)}, expected {n}"
            )
        alphas = np.array([q.alpha for q in inits.inits], dtype=complex)
        betas = np.array([q.beta for q in inits.inits], dtype=complex)
    elif isinstance(inits, RandomInits):
        rng = np.random.default_rng(inits.seed)
        cos_theta = rng.uniform(-1.0, 1.0, n)
        phi = rng.uniform(0.0, 2.0 * math.pi, n)
        half = np.arccos(cos_theta) / 2.0
        alphas = np.cos(half).astype(complex)
        betas = np.sin(half) * np.exp(1j * phi)
    else:
        raise ValidationError(f"unknown inits policy {inits!r}")

    return ApparatusSpec(couplings=couplings, alphas=alphas, betas=betas)


def _overlap_factors(spec: ApparatusSpec, ts: np.ndarray) -> np.ndarray:
    """Per-qubit overlap factors, shape (N, len(ts)).

    |a|^2 e^{-i phi} + |b|^2 e^{+i phi} rewritten through |a|^2 + |b|^2 = 1
    as cos(phi) + i (|b|^2 - |a|^2) sin(phi), which is exact at phi = 0 and
    keeps balanced factors exactly real.
    """
    phase = 2.0 * spec.couplings[:, None] * ts[None, :]
    return np.cos(phase) + 1j * spec.balance[:, None] * np.sin(phase)


def overlap_grid(spec: ApparatusSpec, ts: np.ndarray) -> np.ndarray:
    """Pointer-state overlap <down-pointer|up-pointer> at each time in ``ts``."""
    ts = np.asarray(ts, dtype=float)
    factors = _overlap_factors(spec, ts)
    if spec.n <= _DIRECT_PRODUCT_MAX:
        return np.prod(factors, axis=0)
    # log-magnitude + phase accumulation; exact zeros short-circuit the log
    mags = np.abs(factors)
    dead = np.any(mags == 0.0, axis=0)
    safe = np.where(mags == 0.0, 1.0, mags)
    log_mag = np.sum(np.log(safe), axis=0)
    total_phase = np.sum(np.angle(factors), axis=0)
    out = np.exp(log_mag) * np.exp(1j * total_phase)
    out[dead] = 0.0
    return out


def overlap(spec: ApparatusSpec, t: float) -> complex:
    """Exact N-factor pointer overlap at time t; modulus is always <= 1."""
    t = _require_time(t)
    return complex(overlap_grid(spec, np.array([t]))[0])


def availability_grid(spec: ApparatusSpec, ts: np.ndarray) -> np.ndarray:
    """|overlap| evaluated on an arbitrary array of times, clipped into [0, 1]."""
    return np.minimum(np.abs(overlap_grid(spec, np.asarray(ts, dtype=float))), 1.0)


def availability(spec: ApparatusSpec, t: float) -> float:
    """Pointer-overlap modulus at time t: 1 = fully overlapping, 0 = orthogonal."""
    return abs(overlap(spec, t))


def sample_availability(
    spec: ApparatusSpec, t_grid: Sequence[float]
) -> list[tuple[float, float]]:
    """Evaluate the availability on a sorted, nonnegative time grid.

    Returns one (t, availability) pair per grid point, in grid order.
    """
    ts = np.asarray(t_grid, dtype=float)
    if ts.ndim != 1 or ts.size == 0:
        raise ValidationError("t_grid must be a nonempty 1-d sequence")
    if not np.all(np.isfinite(ts)):
        raise ValidationError("t_grid must be finite")
    if ts[0] < 0.0:
        raise ValidationError("t_grid must be nonnegative")
    if np.any(np.diff(ts) < 0.0):
        raise ValidationError("t_grid must be sorted ascending")
    vals = availability_grid(spec, ts)
    return [(float(t), float(v)) for t, v in zip(ts, vals)]


def reduced_system_state(spec: ApparatusSpec, sys: SystemInit, t: float) -> np.ndarray:
    """Exact 2x2 reduced density matrix of the measured qubit at time t.

    Populations stay (|a|^2, |b|^2) for all t; the coherence is
    a * conj(b) * overlap(t) and its conjugate.
    """
    t = _require_time(t)
    coh = sys.a * np.conj(sys.b) * overlap(spec, t)
    return np.array(
        [
            [abs(sys.a) ** 2, coh],
            [np.conj(coh), abs(sys.b) ** 2],
        ],
        dtype=complex,
    )


@dataclass(frozen=True)
class BlochVector:
    """Bloch-ball coordinates of a single-qubit density matrix."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        r = self.norm()
        if not math.isfinite(r) or r > 1.0 + 1e-12:
            raise ValidationError(f"Bloch vector must satisfy |r| <= 1, got |r| = {r!r}")

    def norm(self) -> float:
        return math.sqrt(self.x**2 + self.y**2 + self.z**2)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=float)


def bloch_vector(spec: ApparatusSpec, sys: SystemInit, t: float) -> BlochVector:
    """Bloch vector of the reduced qubit state; z stays constant in t.

    The transverse radius equals the availability times 2|a||b|; for the
    balanced start a = b the full radius |r(t)| equals the availability.
    """
    coh = sys.a * np.conj(sys.b) * overlap(spec, _require_time(t))
    return BlochVector(
        x=2.0 * float(np.real(coh)),
        y=-2.0 * float(np.imag(coh)),
        z=abs(sys.a) ** 2 - abs(sys.b) ** 2,
    )


def long_time_variance(spec: ApparatusSpec) -> float:
    """Long-time variance of the availability: prod_k (|alpha_k|^4 + |beta_k|^4).

    Also the long-time average of availability^2 when the couplings are
    pairwise incommensurate.
    """
    factors = spec.up_weights**2 + spec.down_weights**2
    if spec.n <= _DIRECT_PRODUCT_MAX:
        return float(np.prod(factors))
    return float(np.exp(np.sum(np.log(factors))))


def perturbative_overlap(g: float, deltas: Sequence[float], t: float) -> complex:
    """First-order overlap for couplings g_k = g + delta_k near an ordered apparatus.

    Valid for equatorial inits, |delta_k| << g, and away from the zeros of
    cos(2 g t); the relative error against the exact product grows like
    (max|delta_k| * t)^2.

    Raises
    ------
    ValidationError
        If |cos(2 g t)| <= 0.1, where the expansion loses its meaning.
    """
    g = float(g)
    if not math.isfinite(g) or g <= 0.0:
        raise ValidationError(f"g must be finite and > 0, got {g!r}")
    t = _require_time(t)
    d = np.asarray(deltas, dtype=float)
    if d.ndim != 1 or d.size == 0 or not np.all(np.isfinite(d)):
        raise ValidationError("deltas must be a nonempty finite 1-d sequence")
    if np.max(np.abs(d)) >= g:
        raise ValidationError("expansion assumes |delta_k| < g")
    base = math.cos(2.0 * g * t)
    if abs(base) <= 0.1:
        raise ValidationError(
            f"|cos(2 g t)| = {abs(base):.3g} <= 0.1: first-order expansion is "
            "invalid near the overlap zeros"
        )
    correction = 1.0 - (2.0 * t / base) * float(np.sum(d * np.sin(2.0 * (g + d) * t)))
    return complex(base ** d.size * correction)
