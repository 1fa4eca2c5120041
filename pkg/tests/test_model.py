"""Closed-form model checks against the state-vector oracle and exact algebra."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pointerlab import (
    ApparatusSpec,
    DisorderedCouplings,
    EquatorialInits,
    FixedInits,
    OrderedCouplings,
    QubitInit,
    RandomInits,
    SystemInit,
    ValidationError,
    availability,
    availability_grid,
    bloch_vector,
    evolve_full,
    long_time_variance,
    make_apparatus,
    overlap,
    partial_trace_system,
    perturbative_overlap,
    reduced_system_state,
    sample_availability,
)
from pointerlab.cli import incommensurate_spec

from conftest import apparatus_specs, eigenstate_specs, random_system, system_inits, times

SQ2 = 1.0 / math.sqrt(2.0)
BALANCED = SystemInit(SQ2, SQ2)


class TestOverlap:
    def test_identity_at_zero(self):
        spec = make_apparatus(DisorderedCouplings(0.0, 0.4, 21), 7, RandomInits(22))
        assert overlap(spec, 0.0) == 1.0 + 0.0j

    def test_ordered_equatorial_is_cosine_power(self):
        spec = make_apparatus(OrderedCouplings(0.1), 3, EquatorialInits())
        for t in (0.3, 1.7, 9.2, 31.0):
            val = overlap(spec, t)
            assert val.imag == 0.0
            assert val.real == pytest.approx(math.cos(0.2 * t) ** 3, abs=1e-14)

    def test_matches_state_vector_oracle_disordered(self):
        # dual route: the oracle never sees the factored product formula
        spec = make_apparatus(DisorderedCouplings(0.0, 0.2, 7), 4, RandomInits(7))
        rho = partial_trace_system(evolve_full(spec, BALANCED, 3.7))
        from_oracle = complex(rho[0, 1] / (BALANCED.a * np.conj(BALANCED.b)))
        assert abs(overlap(spec, 3.7) - from_oracle) <= 1e-12

    def test_rejects_negative_time(self):
        spec = make_apparatus(OrderedCouplings(0.1), 2)
        with pytest.raises(ValidationError):
            overlap(spec, -0.5)

    @settings(max_examples=60, deadline=None)
    @given(spec=apparatus_specs(), t=times)
    def test_modulus_at_most_one(self, spec, t):
        assert abs(overlap(spec, t)) <= 1.0 + 1e-12

    @settings(max_examples=30, deadline=None)
    @given(spec_a=apparatus_specs(max_n=4), spec_b=apparatus_specs(max_n=4), t=times)
    def test_factorization_under_concat(self, spec_a, spec_b, t):
        joint = spec_a.concat(spec_b)
        assert overlap(joint, t) == pytest.approx(
            overlap(spec_a, t) * overlap(spec_b, t), abs=1e-12
        )

    @settings(max_examples=30, deadline=None)
    @given(spec=eigenstate_specs(), t=times)
    def test_eigenstate_inits_never_decohere(self, spec, t):
        assert availability(spec, t) == pytest.approx(1.0, abs=1e-12)


class TestAvailability:
    def test_vanishes_at_ordered_quarter_period(self):
        spec = make_apparatus(OrderedCouplings(0.1), 8, EquatorialInits())
        assert availability(spec, math.pi / (4 * 0.1)) <= 1e-12

    def test_log_product_path_matches_direct_extension(self):
        # N = 100 crosses the log-accumulation threshold; compare against the
        # same spec split into two 50-qubit halves multiplied directly
        spec = make_apparatus(DisorderedCouplings(0.0, 0.2, 3), 100, RandomInits(4))
        half_a = ApparatusSpec(
            couplings=spec.couplings[:50], alphas=spec.alphas[:50], betas=spec.betas[:50]
        )
        half_b = ApparatusSpec(
            couplings=spec.couplings[50:], alphas=spec.alphas[50:], betas=spec.betas[50:]
        )
        for t in (0.9, 7.7, 42.0):
            direct = overlap(half_a, t) * overlap(half_b, t)
            assert overlap(spec, t) == pytest.approx(direct, abs=1e-13)

    @settings(max_examples=40, deadline=None)
    @given(spec=apparatus_specs(), t=times)
    def test_range(self, spec, t):
        val = availability(spec, t)
        assert 0.0 <= val <= 1.0

    @settings(max_examples=25, deadline=None)
    @given(
        g=st.floats(min_value=0.02, max_value=0.5),
        n=st.integers(min_value=1, max_value=30),
        t=st.floats(min_value=0.0, max_value=40.0),
    )
    def test_ordered_periodicity(self, g, n, t):
        spec = make_apparatus(OrderedCouplings(g), n, EquatorialInits())
        period = math.pi / (2.0 * g)
        assert availability(spec, t + period) == pytest.approx(
            availability(spec, t), abs=1e-9
        )


class TestSampleAvailability:
    def test_single_origin_point(self):
        spec = make_apparatus(OrderedCouplings(0.1), 4)
        assert sample_availability(spec, [0.0]) == [(0.0, 1.0)]

    def test_rejects_bad_grids(self):
        spec = make_apparatus(OrderedCouplings(0.1), 4)
        with pytest.raises(ValidationError):
            sample_availability(spec, [1.0, 0.5])
        with pytest.raises(ValidationError):
            sample_availability(spec, [-1.0, 0.5])
        with pytest.raises(ValidationError):
            sample_availability(spec, [])

    def test_period_repeats_pointwise(self):
        spec = make_apparatus(OrderedCouplings(0.1), 10, EquatorialInits())
        ts = np.linspace(0.0, 50.0, 1000)
        period = math.pi / 0.2
        base = availability_grid(spec, ts)
        shifted = availability_grid(spec, ts + period)
        np.testing.assert_allclose(base, shifted, atol=1e-12)

    def test_decoherence_depth_grows_with_n(self):
        ts = np.linspace(0.0, 50.0, 1000)
        fractions = {}
        for n in (5, 100):
            spec = make_apparatus(OrderedCouplings(0.1), n, EquatorialInits())
            vals = [v for _, v in sample_availability(spec, ts)]
            fractions[n] = np.mean(np.asarray(vals) < 0.01)
        assert fractions[100] > fractions[5]


class TestReducedState:
    def test_projector_at_t0(self):
        spec = make_apparatus(OrderedCouplings(0.1), 4)
        rho = reduced_system_state(spec, SystemInit(1.0, 0.0), 0.0)
        np.testing.assert_allclose(rho, np.diag([1.0, 0.0]), atol=1e-14)

    def test_balanced_coherence_is_half_availability(self):
        spec = make_apparatus(DisorderedCouplings(0.0, 0.3, 5), 6, RandomInits(8))
        for t in (0.0, 1.3, 8.8):
            rho = reduced_system_state(spec, BALANCED, t)
            assert abs(rho[0, 1]) == pytest.approx(availability(spec, t) / 2, abs=1e-13)

    def test_matches_oracle_partial_trace(self):
        rng = np.random.default_rng(55)
        spec = make_apparatus(DisorderedCouplings(0.0, 0.4, 9), 5, RandomInits(10))
        sysq = random_system(rng)
        np.testing.assert_allclose(
            reduced_system_state(spec, sysq, 2.1),
            partial_trace_system(evolve_full(spec, sysq, 2.1)),
            atol=1e-12,
        )

    def test_matches_oracle_at_100_random_times(self):
        rng = np.random.default_rng(808)
        spec = make_apparatus(DisorderedCouplings(0.0, 0.5, 14), 10, RandomInits(15))
        sysq = random_system(rng)
        for t in rng.uniform(0.0, 40.0, 100):
            np.testing.assert_allclose(
                reduced_system_state(spec, sysq, float(t)),
                partial_trace_system(evolve_full(spec, sysq, float(t))),
                atol=1e-10,
            )

    @settings(max_examples=30, deadline=None)
    @given(spec=apparatus_specs(max_n=6), sysq=system_inits(), t=times)
    def test_always_physical(self, spec, sysq, t):
        rho = reduced_system_state(spec, sysq, t)
        assert abs(np.trace(rho) - 1.0) <= 1e-12
        np.testing.assert_allclose(rho, rho.conj().T, atol=1e-12)
        assert np.all(np.linalg.eigvalsh(rho) >= -1e-12)
        assert rho[0, 0].real == pytest.approx(abs(sysq.a) ** 2, abs=1e-13)
        assert rho[1, 1].real == pytest.approx(abs(sysq.b) ** 2, abs=1e-13)


class TestBlochVector:
    def test_pole_is_stationary(self):
        spec = make_apparatus(DisorderedCouplings(0.0, 0.3, 2), 5, RandomInits(3))
        for t in (0.0, 4.4, 27.0):
            r = bloch_vector(spec, SystemInit(1.0, 0.0), t)
            assert (r.x, r.y, r.z) == (0.0, 0.0, pytest.approx(1.0, abs=1e-13))

    def test_equator_starts_pure(self):
        spec = make_apparatus(OrderedCouplings(0.1), 5)
        r = bloch_vector(spec, BALANCED, 0.0)
        assert r.norm() == pytest.approx(1.0, abs=1e-12)
        assert r.z == pytest.approx(0.0, abs=1e-13)

    def test_norm_vanishes_at_ordered_zero_large_n(self):
        spec = make_apparatus(OrderedCouplings(0.1), 100, EquatorialInits())
        r = bloch_vector(spec, BALANCED, math.pi / 0.4)
        assert r.norm() <= 1e-6

    def test_balanced_radius_equals_availability(self):
        spec = make_apparatus(DisorderedCouplings(0.0, 0.25, 6), 7, RandomInits(7))
        for t in (0.7, 3.1, 12.0):
            r = bloch_vector(spec, BALANCED, t)
            assert r.norm() == pytest.approx(availability(spec, t), abs=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(spec=apparatus_specs(max_n=6), sysq=system_inits(), t=times)
    def test_reconstructs_density_matrix(self, spec, sysq, t):
        r = bloch_vector(spec, sysq, t)
        sx = np.array([[0, 1], [1, 0]], dtype=complex)
        sy = np.array([[0, -1j], [1j, 0]])
        sz = np.diag([1.0, -1.0]).astype(complex)
        rebuilt = 0.5 * (np.eye(2) + r.x * sx + r.y * sy + r.z * sz)
        np.testing.assert_allclose(rebuilt, reduced_system_state(spec, sysq, t), atol=1e-12)
        # z never moves
        assert r.z == pytest.approx(bloch_vector(spec, sysq, t + 13.7).z, abs=1e-13)


class TestLongTimeVariance:
    def test_equatorial_gives_two_to_minus_n(self):
        for n in (1, 6, 40, 200):
            spec = make_apparatus(OrderedCouplings(0.1), n, EquatorialInits())
            assert long_time_variance(spec) == pytest.approx(0.5**n, rel=1e-12)

    def test_eigenstate_factor_is_one(self):
        spec = ApparatusSpec.from_inits(
            [0.1, 0.2], [QubitInit(1.0, 0.0), QubitInit(SQ2, SQ2)]
        )
        assert long_time_variance(spec) == pytest.approx(0.5, rel=1e-12)

    def test_time_average_of_squared_availability(self):
        # incommensurate couplings so the factor averages decouple
        spec = incommensurate_spec(6, 20240803)
        ts = np.linspace(0.0, 1.0e5, 400001)
        empirical = float(np.mean(availability_grid(spec, ts) ** 2))
        assert empirical == pytest.approx(long_time_variance(spec), rel=0.05)


class TestPerturbativeOverlap:
    def test_zero_deltas_reduce_to_cosine_power(self):
        for t in (0.4, 3.0):
            val = perturbative_overlap(0.1, np.zeros(10), t)
            assert val == pytest.approx(math.cos(0.2 * t) ** 10, abs=1e-14)

    def test_short_time_agreement_with_exact(self):
        rng = np.random.default_rng(5)
        deltas = rng.uniform(-0.001, 0.001, 10)
        exact_spec = ApparatusSpec(
            couplings=0.1 + deltas,
            alphas=np.full(10, SQ2, dtype=complex),
            betas=np.full(10, SQ2, dtype=complex),
        )
        exact = overlap(exact_spec, 1.0).real
        approx = perturbative_overlap(0.1, deltas, 1.0).real
        assert abs(approx - exact) / abs(exact) < 1e-4

    def test_long_time_divergence(self):
        # randomness catches up with the expansion at large t
        rng = np.random.default_rng(5)
        deltas = rng.uniform(-0.001, 0.001, 10)
        exact_spec = ApparatusSpec(
            couplings=0.1 + deltas,
            alphas=np.full(10, SQ2, dtype=complex),
            betas=np.full(10, SQ2, dtype=complex),
        )
        exact = overlap(exact_spec, 200.0).real
        approx = perturbative_overlap(0.1, deltas, 200.0).real
        assert abs(approx - exact) / abs(exact) > 0.5

    def test_rejects_near_zero_cosine(self):
        with pytest.raises(ValidationError):
            perturbative_overlap(0.1, [0.001] * 5, math.pi / 0.4)

    def test_rejects_large_deltas(self):
        with pytest.raises(ValidationError):
            perturbative_overlap(0.1, [0.2], 1.0)


class TestMakeApparatus:
    def test_ordered_couplings_all_equal(self):
        spec = make_apparatus(OrderedCouplings(0.1), 5, EquatorialInits())
        np.testing.assert_allclose(spec.couplings, 0.1)
        np.testing.assert_allclose(np.abs(spec.alphas) ** 2, 0.5, atol=1e-15)

    def test_equatorial_phases(self):
        spec = make_apparatus(OrderedCouplings(0.2), 3, EquatorialInits(beta_phase=0.5))
        np.testing.assert_allclose(np.angle(spec.betas), 0.5, atol=1e-15)

    def test_disordered_is_deterministic(self):
        a = make_apparatus(DisorderedCouplings(0.0, 0.2, 99), 10)
        b = make_apparatus(DisorderedCouplings(0.0, 0.2, 99), 10)
        np.testing.assert_array_equal(a.couplings, b.couplings)

    def test_disordered_mean_in_lln_band(self):
        # +/- 3 sigma / sqrt(N) for uniform on [0, 0.2]
        spec = make_apparatus(DisorderedCouplings(0.0, 0.2, 123), 100)
        assert 0.08 <= float(np.mean(spec.couplings)) <= 0.12

    def test_random_inits_normalized_and_deterministic(self):
        a = make_apparatus(DisorderedCouplings(0.0, 0.2, 1), 20, RandomInits(44))
        b = make_apparatus(DisorderedCouplings(0.0, 0.2, 1), 20, RandomInits(44))
        np.testing.assert_array_equal(a.alphas, b.alphas)
        np.testing.assert_allclose(
            np.abs(a.alphas) ** 2 + np.abs(a.betas) ** 2, 1.0, atol=1e-12
        )

    def test_rejections(self):
        with pytest.raises(ValidationError):
            make_apparatus(OrderedCouplings(0.1), 0)
        with pytest.raises(ValidationError):
            DisorderedCouplings(0.3, 0.2, 1)
        with pytest.raises(ValidationError):
            DisorderedCouplings(-0.1, 0.2, 1)
        with pytest.raises(ValidationError):
            OrderedCouplings(0.0)
        with pytest.raises(ValidationError):
            make_apparatus(
                OrderedCouplings(0.1), 3, FixedInits((QubitInit(1.0, 0.0),))
            )

    def test_spec_validation(self):
        with pytest.raises(ValidationError):
            QubitInit(1.0, 1.0)
        with pytest.raises(ValidationError):
            SystemInit(math.nan, 0.0)
        with pytest.raises(ValidationError):
            ApparatusSpec(couplings=[0.1, 0.2], alphas=[1.0], betas=[0.0])
        with pytest.raises(ValidationError):
            ApparatusSpec(couplings=[], alphas=[], betas=[])
