"""
Property tests for the pure-dephasing channel
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dephaseprobe.core import dephasing
from dephaseprobe.models import ProbeState

dimensions = st.sampled_from([2, 3, 5])
seeds = st.integers(min_value=0, max_value=2**32 - 1)
exponents = st.floats(min_value=0.0, max_value=5.0, allow_nan=False)


def random_state(seed: int, d: int) -> ProbeState:
    """
    Random full-rank density matrix with random ascending energies.
    """
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = a @ a.conj().T
    rho = rho / np.trace(rho).real
    rho = 0.5 * (rho + rho.conj().T)
    energies = np.sort(rng.uniform(0.0, 3.0, size=d))
    return ProbeState(energies=tuple(float(e) for e in energies), rho=rho)


@settings(max_examples=200, deadline=None)
@given(seed=seeds, d=dimensions, gamma=exponents)
def test_trace_and_hermiticity_preserved(seed, d, gamma):
    state = random_state(seed, d)
    out = dephasing.apply_dephasing(state, gamma)
    assert np.trace(out.rho) == np.trace(state.rho)
    assert np.array_equal(out.rho, out.rho.conj().T)
    assert np.array_equal(np.diag(out.rho), np.diag(state.rho))


@settings(max_examples=200, deadline=None)
@given(seed=seeds, d=dimensions, gamma=exponents)
def test_coherence_never_increases(seed, d, gamma):
    state = random_state(seed, d)
    out = dephasing.apply_dephasing(state, gamma)
    assert dephasing.coherence(out) <= dephasing.coherence(state) + 1e-15


@settings(max_examples=200, deadline=None)
@given(seed=seeds, d=dimensions, first=exponents, second=exponents)
def test_exponents_compose(seed, d, first, second):
    state = random_state(seed, d)
    twice = dephasing.apply_dephasing(dephasing.apply_dephasing(state, first), second)
    once = dephasing.apply_dephasing(state, first + second)
    assert np.max(np.abs(twice.rho - once.rho)) <= 1e-14


def test_zero_exponent_is_identity(plus_state):
    assert np.array_equal(dephasing.apply_dephasing(plus_state, 0.0).rho, plus_state.rho)


def test_negative_exponent_rejected(plus_state):
    with pytest.raises(ValueError):
        dephasing.apply_dephasing(plus_state, -0.1)


def test_qubit_coherence_decays(plus_state):
    out = dephasing.apply_dephasing(plus_state, math.log(2.0))
    assert out.rho[0, 1] == pytest.approx(0.25)
    assert dephasing.coherence(out) == pytest.approx(0.5)


def test_degenerate_levels_keep_coherence():
    state = ProbeState.maximally_coherent((0.0, 1.0, 1.0))
    out = dephasing.apply_dephasing(state, 10.0)
    assert out.rho[1, 2] == pytest.approx(1.0 / 3.0)
    assert abs(out.rho[0, 1]) < 1e-4


def test_residual_coherence_values():
    assert dephasing.residual_coherence_equispaced(2, 0.0) == 1.0
    assert dephasing.residual_coherence_equispaced(2, math.log(2.0)) == pytest.approx(0.5)
    assert dephasing.residual_coherence_equispaced(4, 0.3) == pytest.approx(
        0.5 * (math.exp(-0.3) + math.exp(-1.2) + math.exp(-2.7))
    )
    assert dephasing.residual_coherence_equispaced(5, 0.0) == pytest.approx(8.0 / 5.0)


def test_residual_coherence_of_dephased_qubit():
    gamma = 0.7
    state = ProbeState.equispaced(2)
    assert dephasing.coherence(dephasing.apply_dephasing(state, gamma)) == pytest.approx(
        dephasing.residual_coherence_equispaced(2, gamma)
    )


def test_residual_coherence_domain():
    with pytest.raises(ValueError):
        dephasing.residual_coherence_equispaced(1, 0.1)
    with pytest.raises(ValueError):
        dephasing.residual_coherence_equispaced(3, -0.1)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_lindblad_evolution_matches_channel(d):
    state = random_state(7, d)
    kappa, t = 0.4, 1.7
    evolved = dephasing.lindblad_dephasing(state, kappa, t)
    channel = dephasing.apply_dephasing(state, kappa * t)
    assert np.max(np.abs(evolved.rho - channel.rho)) < 1e-10


@pytest.mark.parametrize("gamma", [0.0, 0.05, 0.3])
def test_random_phase_average_matches_channel(gamma):
    state = ProbeState.equispaced(3)
    averaged = dephasing.gaussian_phase_average(state, gamma)
    channel = dephasing.apply_dephasing(state, gamma)
    assert np.max(np.abs(averaged.rho - channel.rho)) < 1e-10
