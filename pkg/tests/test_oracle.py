"""Brute-force evolution checks: unitarity, hand-expanded phases, dense expm."""

from __future__ import annotations

import cmath
import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings

from pointerlab import (
    ApparatusSpec,
    CapacityError,
    DisorderedCouplings,
    EquatorialInits,
    GeneralOzawaEvolver,
    GeneralOzawaSpec,
    OrderedCouplings,
    QubitInit,
    RandomInits,
    StateVector,
    SystemInit,
    ValidationError,
    evolve_full,
    evolve_general_ozawa,
    make_apparatus,
    overlap,
    partial_trace_system,
    qubit_model_as_general,
    reduced_system_state,
)

from conftest import apparatus_specs, random_system, system_inits


SQ2 = 1.0 / math.sqrt(2.0)


def test_t0_returns_separable_input():
    spec = make_apparatus(DisorderedCouplings(0.0, 0.3, 42), 3, RandomInits(9))
    sysq = SystemInit(0.6, 0.8j)
    psi = evolve_full(spec, sysq, 0.0)
    expected = np.array([1.0 + 0j])
    for a, b in zip(spec.alphas, spec.betas):
        expected = np.kron(expected, np.array([a, b]))
    expected = np.concatenate([sysq.a * expected, sysq.b * expected])
    np.testing.assert_allclose(psi.amplitudes, expected, atol=1e-12)


def test_hand_expanded_two_qubit_phases():
    # a = 1 so only the system-up block is populated; each apparatus qubit
    # contributes (e^{-i g t}/sqrt2, e^{+i g t}/sqrt2) on that block
    g1, g2, t = 0.1, 0.3, 1.0
    spec = make_apparatus(OrderedCouplings(1.0), 2, EquatorialInits())
    spec = ApparatusSpec(couplings=[g1, g2], alphas=spec.alphas, betas=spec.betas)
    psi = evolve_full(spec, SystemInit(1.0, 0.0), t)

    def phase(z1: int, z2: int) -> complex:
        return cmath.exp(-1j * (g1 * z1 + g2 * z2) * t) * 0.5

    expected = np.array(
        [
            phase(+1, +1),  # |up, up up>
            phase(+1, -1),  # |up, up dn>
            phase(-1, +1),  # |up, dn up>
            phase(-1, -1),  # |up, dn dn>
            0.0,
            0.0,
            0.0,
            0.0,
        ]
    )
    np.testing.assert_allclose(psi.amplitudes, expected, atol=1e-14)


def test_norm_preserved_long_time():
    spec = make_apparatus(DisorderedCouplings(0.0, 0.5, 3), 8, RandomInits(4))
    psi = evolve_full(spec, SystemInit(0.6, 0.8), 1.0e3)
    assert abs(np.linalg.norm(psi.amplitudes) - 1.0) <= 1e-12


def test_capacity_error_above_twelve_qubits():
    spec = make_apparatus(OrderedCouplings(0.1), 13)
    with pytest.raises(CapacityError):
        evolve_full(spec, SystemInit(1.0, 0.0), 1.0)


def test_state_vector_validation():
    with pytest.raises(ValidationError):
        StateVector(amplitudes=np.array([1.0, 0.0, 0.0]), n_apparatus=1)
    with pytest.raises(ValidationError):
        StateVector(amplitudes=np.array([1.0, 1.0, 0.0, 0.0]), n_apparatus=1)


def test_partial_trace_separable_is_pure_projector():
    spec = make_apparatus(DisorderedCouplings(0.0, 0.3, 1), 4, RandomInits(2))
    rho = partial_trace_system(evolve_full(spec, SystemInit(1.0, 0.0), 0.0))
    np.testing.assert_allclose(rho, np.array([[1.0, 0.0], [0.0, 0.0]]), atol=1e-12)
    purity = float(np.real(np.trace(rho @ rho)))
    assert abs(purity - 1.0) <= 1e-12


def _sigma_z_chain(n: int, k: int) -> np.ndarray:
    """I (x) ... sigma_z at slot k ... (x) I over n qubits."""
    sz = np.diag([1.0, -1.0])
    out = np.array([[1.0]])
    for i in range(n):
        out = np.kron(out, sz if i == k else np.eye(2))
    return out


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_diagonal_shortcut_matches_dense_expm(n):
    rng = np.random.default_rng(100 + n)
    spec = make_apparatus(
        DisorderedCouplings(0.0, 0.5, int(rng.integers(1 << 31))), n,
        RandomInits(int(rng.integers(1 << 31))),
    )
    sysq = random_system(rng)
    t = float(rng.uniform(0.0, 10.0))

    bath = sum(spec.couplings[k] * _sigma_z_chain(n, k) for k in range(n))
    h = np.kron(np.diag([1.0, -1.0]), bath)
    psi0 = evolve_full(spec, sysq, 0.0).amplitudes
    dense = scipy.linalg.expm(-1j * h * t) @ psi0

    np.testing.assert_allclose(evolve_full(spec, sysq, t).amplitudes, dense, atol=1e-10)


def test_partial_trace_matches_model_reduced_state():
    rng = np.random.default_rng(77)
    spec = make_apparatus(DisorderedCouplings(0.0, 0.4, 5), 5, RandomInits(6))
    sysq = random_system(rng)
    rho_model = reduced_system_state(spec, sysq, 2.1)
    rho_oracle = partial_trace_system(evolve_full(spec, sysq, 2.1))
    np.testing.assert_allclose(rho_model, rho_oracle, atol=1e-12)


def test_partial_trace_maximally_mixed_at_ordered_zero():
    spec = make_apparatus(OrderedCouplings(0.1), 6, EquatorialInits())
    t_zero = math.pi / (4 * 0.1)
    rho = partial_trace_system(evolve_full(spec, SystemInit(SQ2, SQ2), t_zero))
    np.testing.assert_allclose(rho, np.eye(2) / 2, atol=1e-8)


def test_general_ozawa_t0_delta_all_ones():
    spec = make_apparatus(DisorderedCouplings(0.0, 0.3, 8), 4, RandomInits(9))
    res = evolve_general_ozawa(qubit_model_as_general(spec), [SQ2, SQ2], 0.0)
    np.testing.assert_allclose(res.delta, np.ones((2, 2)), atol=1e-12)


def test_general_ozawa_degenerate_frequencies_share_pointers():
    gen = GeneralOzawaSpec(
        system_spectrum=[0.7, 0.7],
        pointer_generator=np.diag([0.1, -0.4, 0.3]),
        ready_state=np.array([0.5, 0.5, SQ2]),
    )
    res = evolve_general_ozawa(gen, [0.6, 0.8], 3.0)
    np.testing.assert_allclose(res.pointers[0], res.pointers[1], atol=1e-14)
    assert abs(res.delta[0, 1] - 1.0) <= 1e-12


def test_general_ozawa_delta_structure():
    spec = make_apparatus(DisorderedCouplings(0.0, 0.4, 12), 5, RandomInits(13))
    res = evolve_general_ozawa(qubit_model_as_general(spec), [0.6, 0.8j], 4.2)
    np.testing.assert_allclose(res.delta, res.delta.conj().T, atol=1e-12)
    np.testing.assert_allclose(np.diag(res.delta), np.ones(2), atol=1e-12)


def test_general_ozawa_reduction_matches_factored_overlap():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(1, 9))
        spec = make_apparatus(
            DisorderedCouplings(0.0, 0.5, int(rng.integers(1 << 31))),
            n,
            RandomInits(int(rng.integers(1 << 31))),
        )
        evolver = GeneralOzawaEvolver(qubit_model_as_general(spec))
        t = float(rng.uniform(0.0, 30.0))
        delta = evolver.delta_matrix(t)
        worst = max(worst, abs(delta[1, 0] - overlap(spec, t)))
    assert worst <= 1e-10


def test_general_ozawa_rho_matches_model():
    rng = np.random.default_rng(31)
    spec = make_apparatus(DisorderedCouplings(0.0, 0.3, 17), 4, RandomInits(18))
    sysq = random_system(rng)
    res = evolve_general_ozawa(qubit_model_as_general(spec), [sysq.a, sysq.b], 6.6)
    np.testing.assert_allclose(
        res.rho_system, reduced_system_state(spec, sysq, 6.6), atol=1e-12
    )


def test_general_ozawa_validation():
    good_gen = np.diag([0.1, 0.2])
    ready = np.array([1.0, 0.0])
    with pytest.raises(ValidationError):
        GeneralOzawaSpec([1.0, -1.0], np.array([[0.0, 1.0], [0.0, 0.0]]), ready)
    with pytest.raises(ValidationError):
        GeneralOzawaSpec([1.0, -1.0], good_gen, np.array([1.0, 1.0]))
    spec = GeneralOzawaSpec([1.0, -1.0], good_gen, ready)
    with pytest.raises(ValidationError):
        evolve_general_ozawa(spec, [1.0, 1.0], 0.5)
    with pytest.raises(ValidationError):
        evolve_general_ozawa(spec, [1.0], 0.5)


def test_general_ozawa_capacity_guard():
    big = np.zeros((4097, 4097))
    with pytest.raises(CapacityError):
        GeneralOzawaSpec([1.0], big, np.zeros(4097))


@settings(max_examples=25, deadline=None)
@given(spec=apparatus_specs(max_n=6), sysq=system_inits())
def test_partial_trace_always_physical(spec, sysq):
    rho = partial_trace_system(evolve_full(spec, sysq, 3.3))
    assert abs(np.trace(rho) - 1.0) <= 1e-12
    np.testing.assert_allclose(rho, rho.conj().T, atol=1e-12)
    assert np.all(np.linalg.eigvalsh(rho) >= -1e-12)
