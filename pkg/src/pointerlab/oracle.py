"""Brute-force reference evolutions used to validate every closed form.

Two independent code paths live here:

* ``evolve_full`` keeps the whole (N+1)-qubit state vector and applies the
  diagonal interaction phase per computational basis state, never touching
  the factored overlap formula of :mod:`pointerlab.model`.
* ``GeneralOzawaEvolver`` evolves pointer states |P_g(t)> = exp(-i w_g O t)|R>
  for an arbitrary Hermitian generator O via one eigendecomposition, reused
  across branch frequencies and times.

Hard capacity guards (12 apparatus qubits, generator dimension 4096) raise
``CapacityError`` instead of silently truncating.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CapacityError, ValidationError
from .model import ApparatusSpec, SystemInit, _require_time

MAX_FULL_QUBITS = 12
MAX_GENERAL_DIM = 4096
STATE_NORM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized state of the measured qubit plus N apparatus qubits.

    Basis ordering: index = s * 2^N + e where s is the system bit and e
    runs over apparatus bits, qubit 1 most significant.  Bit value 0 means
    spin up (+1), bit value 1 means spin down (-1).
    """

    amplitudes: np.ndarray
    n_apparatus: int

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex).copy()
        n = int(self.n_apparatus)
        if amps.ndim != 1 or amps.size != 2 ** (n + 1):
            raise ValidationError(
                f"amplitude vector must have length 2^{n + 1}, got {amps.size}"
            )
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > STATE_NORM_TOL:
            raise ValidationError(f"state norm is {norm!r}, expected 1 within {STATE_NORM_TOL}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "n_apparatus", n)


def _apparatus_field(spec: ApparatusSpec) -> np.ndarray:
    """sum_k g_k z_k over all 2^N apparatus basis states (z_k = +/-1)."""
    n = spec.n
    idx = np.arange(2**n)
    field = np.zeros(2**n, dtype=float)
    for k in range(n):
        spins = 1.0 - 2.0 * ((idx >> (n - 1 - k)) & 1)
        field += spec.couplings[k] * spins
    return field


def _initial_product_state(spec: ApparatusSpec, sys: SystemInit) -> np.ndarray:
    app = np.array([1.0 + 0.0j])
    for a, b in zip(spec.alphas, spec.betas):
        app = np.kron(app, np.array([a, b], dtype=complex))
    full = np.concatenate([sys.a * app, sys.b * app])
    # absorb the 1e-12 normalization slack the input types allow
    return full / np.linalg.norm(full)


def evolve_full(spec: ApparatusSpec, sys: SystemInit, t: float) -> StateVector:
    """Exact state vector at time t from per-basis-state diagonal phases.

    The interaction is diagonal in the computational basis, so the basis
    state (s, z_1..z_N) just picks up exp(-i s [sum_k g_k z_k] t).  The
    Hamiltonian is never materialized as a matrix.
    """
    n = spec.n
    if n > MAX_FULL_QUBITS:
        raise CapacityError(
            f"state-vector evolution supports at most {MAX_FULL_QUBITS} apparatus "
            f"qubits, got {n}"
        )
    t = _require_time(t)
    field = _apparatus_field(spec)
    full = _initial_product_state(spec, sys)
    half = 2**n
    phased = np.concatenate(
        [
            full[:half] * np.exp(-1j * field * t),
            full[half:] * np.exp(1j * field * t),
        ]
    )
    return StateVector(amplitudes=phased, n_apparatus=n)


def partial_trace_system(psi: StateVector) -> np.ndarray:
    """2x2 reduced density matrix of the measured qubit."""
    m = psi.amplitudes.reshape(2, -1)
    return m @ m.conj().T


@dataclass(frozen=True, eq=False)
class GeneralOzawaSpec:
    """A measured system spectrum, a Hermitian pointer generator, a ready state.

    ``system_spectrum[i]`` is the eigenvalue w_i of the system-side operator
    on basis branch i; the apparatus evolves as exp(-i w_i * generator * t)
    from ``ready_state`` on that branch.
    """

    system_spectrum: np.ndarray
    pointer_generator: np.ndarray
    ready_state: np.ndarray

    def __post_init__(self) -> None:
        spectrum = np.atleast_1d(np.asarray(self.system_spectrum, dtype=float)).copy()
        gen = np.asarray(self.pointer_generator)
        if gen.ndim != 2 or gen.shape[0] != gen.shape[1]:
            raise ValidationError("pointer generator must be a square matrix")
        if gen.shape[0] > MAX_GENERAL_DIM:
            raise CapacityError(
                f"pointer generator dimension {gen.shape[0]} exceeds the "
                f"{MAX_GENERAL_DIM} guard"
            )
        gen = gen.astype(complex)
        if not np.all(np.isfinite(spectrum)) or spectrum.size < 1:
            raise ValidationError("system spectrum must be a nonempty finite sequence")
        herm_defect = float(np.max(np.abs(gen - gen.conj().T))) if gen.size else 0.0
        if herm_defect > 1e-12:
            raise ValidationError(
                f"pointer generator must be Hermitian within 1e-12, defect {herm_defect:g}"
            )
        ready = np.asarray(self.ready_state, dtype=complex).copy()
        if ready.ndim != 1 or ready.size != gen.shape[0]:
            raise ValidationError("ready state length must match the generator dimension")
        norm = float(np.linalg.norm(ready))
        if abs(norm - 1.0) > STATE_NORM_TOL:
            raise ValidationError(f"ready state norm is {norm!r}, expected 1")
        for arr in (spectrum, gen, ready):
            arr.flags.writeable = False
        object.__setattr__(self, "system_spectrum", spectrum)
        object.__setattr__(self, "pointer_generator", gen)
        object.__setattr__(self, "ready_state", ready)

    @property
    def n_branches(self) -> int:
        return int(self.system_spectrum.size)


@dataclass(frozen=True, eq=False)
class GeneralOzawaResult:
    """Pointer states (rows), their overlap matrix, and the reduced system state.

    ``delta[i, j] = <pointer_i(t)|pointer_j(t)>``; it is conjugate-symmetric
    with unit diagonal.
    """

    pointers: np.ndarray
    delta: np.ndarray
    rho_system: np.ndarray


class GeneralOzawaEvolver:
    """Evolves pointer states for every branch frequency from one eigh() call."""

    def __init__(self, spec: GeneralOzawaSpec):
        self.spec = spec
        evals, evecs = np.linalg.eigh(spec.pointer_generator)
        self._evals = evals
        self._evecs = evecs
        self._ready_eig = evecs.conj().T @ spec.ready_state

    def pointer_states(self, t: float) -> np.ndarray:
        """Rows: exp(-i w_i * generator * t) applied to the ready state."""
        t = _require_time(t)
        phases = np.exp(
            -1j * t * np.outer(self.spec.system_spectrum, self._evals)
        )
        return (phases * self._ready_eig[None, :]) @ self._evecs.T

    def delta_matrix(self, t: float) -> np.ndarray:
        states = self.pointer_states(t)
        return states.conj() @ states.T

    def evolve(self, coeffs: Sequence[complex], t: float) -> GeneralOzawaResult:
        c = np.asarray(coeffs, dtype=complex)
        if c.ndim != 1 or c.size != self.spec.n_branches:
            raise ValidationError(
                f"need {self.spec.n_branches} branch coefficients, got {c.size}"
            )
        total = float(np.sum(np.abs(c) ** 2))
        if abs(total - 1.0) > STATE_NORM_TOL:
            raise ValidationError(f"branch coefficients must be normalized, got {total!r}")
        states = self.pointer_states(t)
        delta = states.conj() @ states.T
        rho = np.outer(c, c.conj()) * delta.T
        return GeneralOzawaResult(pointers=states, delta=delta, rho_system=rho)


def evolve_general_ozawa(
    spec: GeneralOzawaSpec, coeffs: Sequence[complex], t: float
) -> GeneralOzawaResult:
    """One-shot wrapper around :class:`GeneralOzawaEvolver`."""
    return GeneralOzawaEvolver(spec).evolve(coeffs, t)


def qubit_model_as_general(spec: ApparatusSpec) -> GeneralOzawaSpec:
    """Recast the qubit model as a general spec: w = (+1, -1), diagonal generator.

    Lets the general evolver cross-validate the factored overlap formula on
    an entirely separate code path.
    """
    if spec.n > MAX_FULL_QUBITS:
        raise CapacityError(
            f"general recast supports at most {MAX_FULL_QUBITS} apparatus qubits"
        )
    field = _apparatus_field(spec)
    app = np.array([1.0 + 0.0j])
    for a, b in zip(spec.alphas, spec.betas):
        app = np.kron(app, np.array([a, b], dtype=complex))
    app = app / np.linalg.norm(app)
    return GeneralOzawaSpec(
        system_spectrum=np.array([1.0, -1.0]),
        pointer_generator=np.diag(field),
        ready_state=app,
    )
