"""Shared strategies and helpers for the test suite."""

from __future__ import annotations

import math

import numpy as np
from hypothesis import strategies as st

from pointerlab import ApparatusSpec, QubitInit, SystemInit


def bloch_state(theta: float, phi: float, global_phase: float = 0.0) -> tuple[complex, complex]:
    """Amplitudes of the pure qubit state at colatitude theta, azimuth phi."""
    g = complex(math.cos(global_phase), math.sin(global_phase))
    return (
        g * math.cos(theta / 2.0),
        g * math.sin(theta / 2.0) * complex(math.cos(phi), math.sin(phi)),
    )


angles = st.floats(min_value=0.0, max_value=math.pi, allow_nan=False)
azimuths = st.floats(min_value=0.0, max_value=2.0 * math.pi, allow_nan=False)


@st.composite
def qubit_inits(draw) -> QubitInit:
    a, b = bloch_state(draw(angles), draw(azimuths), draw(azimuths))
    return QubitInit(a, b)


@st.composite
def system_inits(draw) -> SystemInit:
    a, b = bloch_state(draw(angles), draw(azimuths))
    return SystemInit(a, b)


couplings = st.floats(min_value=0.0, max_value=0.5, allow_nan=False)


@st.composite
def apparatus_specs(draw, max_n: int = 8) -> ApparatusSpec:
    n = draw(st.integers(min_value=1, max_value=max_n))
    gs = draw(st.lists(couplings, min_size=n, max_size=n))
    inits = [draw(qubit_inits()) for _ in range(n)]
    return ApparatusSpec.from_inits(gs, inits)


@st.composite
def eigenstate_specs(draw, max_n: int = 8) -> ApparatusSpec:
    """Specs whose qubits all start in a coupling eigenstate (alpha in {0, 1})."""
    n = draw(st.integers(min_value=1, max_value=max_n))
    gs = draw(st.lists(couplings, min_size=n, max_size=n))
    ups = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    inits = [QubitInit(1.0 if up else 0.0, 0.0 if up else 1.0) for up in ups]
    return ApparatusSpec.from_inits(gs, inits)


times = st.floats(min_value=0.0, max_value=100.0, allow_nan=False)


def random_system(rng: np.random.Generator) -> SystemInit:
    theta = float(rng.uniform(0.0, math.pi))
    phi = float(rng.uniform(0.0, 2.0 * math.pi))
    a, b = bloch_state(theta, phi)
    return SystemInit(a, b)
