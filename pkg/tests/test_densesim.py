from __future__ import absolute_import

import numpy as np
import pytest

from quditmagic.densesim import (
    DenseState, applyGate, attachReference, brickworkPairs, coherentInformation, entropies,
    haarUnitary, measureRegion, reducedDensity, renyiEntropy, runBrickwork,
)
from quditmagic.exceptions import ConfigError, DimensionMismatchError, GuardExceededError, StateValidationError
from quditmagic.phasespace import magicMeasures


def bellPair(q):
    amplitudes = np.zeros(q * q, dtype=complex)
    amplitudes[[j * q + j for j in range(q)]] = 1 / np.sqrt(q)
    return DenseState(amplitudes, q, 2)


def swapGate(q):
    gate = np.zeros((q * q, q * q))
    for a in range(q):
        for b in range(q):
            gate[b * q + a, a * q + b] = 1
    return gate


def test_brickwork_pairs():
    assert brickworkPairs(4, 0) == [(0, 1), (2, 3)]
    assert brickworkPairs(5, 1) == [(1, 2), (3, 4)]
    assert brickworkPairs(1, 0) == []


def test_computational_state():
    state = DenseState.computational([0, 1], 3)
    assert state.amplitudes[1] == 1
    with pytest.raises(ConfigError):
        DenseState.computational([3], 3)


def test_invalid_states():
    with pytest.raises(StateValidationError):
        DenseState(np.ones(3), 3, 1)
    with pytest.raises(DimensionMismatchError):
        DenseState([1, 0], 3, 1)
    with pytest.raises(GuardExceededError):
        DenseState([1], 3, 15)


def test_identity_and_swap_gates():
    state = DenseState.computational([0, 1], 3)
    unchanged = applyGate(state, np.eye(9), (0, 1))
    np.testing.assert_allclose(unchanged.amplitudes, state.amplitudes)
    swapped = applyGate(state, swapGate(3), (0, 1))
    np.testing.assert_allclose(swapped.amplitudes, DenseState.computational([1, 0], 3).amplitudes)


def test_gate_then_inverse(rng):
    state = runBrickwork(DenseState.computational([0, 0, 0], 3), 2, lambda pair: haarUnitary(9, rng))
    gate = haarUnitary(9, rng)
    restored = applyGate(applyGate(state, gate, (2, 0)), gate.conj().T, (2, 0))
    np.testing.assert_allclose(restored.amplitudes, state.amplitudes, atol=1e-12)


def test_gate_validation():
    state = DenseState.computational([0, 0], 3)
    with pytest.raises(StateValidationError):
        applyGate(state, np.ones((9, 9)), (0, 1))
    with pytest.raises(DimensionMismatchError):
        applyGate(state, np.eye(9), (0, 0))


def test_haar_unitary(rng):
    unitary = haarUnitary(9, rng)
    np.testing.assert_allclose(unitary.dot(unitary.conj().T), np.eye(9), atol=1e-12)


def test_entropies():
    product = DenseState.computational([0, 2], 3)
    assert renyiEntropy(reducedDensity(product, [0])) == pytest.approx(0.0, abs=1e-12)
    rho = reducedDensity(bellPair(3), [1])
    values = entropies(rho, (2, np.inf))
    for value in values.values():
        assert value == pytest.approx(np.log(3))


def test_reduced_density_order(rng):
    state = runBrickwork(DenseState.computational([0, 1, 2], 3), 3, lambda pair: haarUnitary(9, rng))
    rho = reducedDensity(state, [0, 1, 2])
    np.testing.assert_allclose(rho, state.densityMatrix(), atol=1e-12)
    assert np.trace(reducedDensity(state, [2, 0])) == pytest.approx(1.0)


def test_measure_product_state():
    outcomes = measureRegion(DenseState.computational([0, 0, 0], 3), [1])
    assert len(outcomes) == 1
    assert outcomes[0].probability == pytest.approx(1.0)
    assert outcomes[0].outcome == (0,)


def test_measure_bell_pair():
    outcomes = measureRegion(bellPair(5), [0])
    assert len(outcomes) == 5
    for outcome in outcomes:
        assert outcome.probability == pytest.approx(0.2)
        assert abs(outcome.state.tensor()[outcome.outcome[0], outcome.outcome[0]]) == pytest.approx(1.0)


def test_measure_scrambled_state(rng):
    state = runBrickwork(DenseState.computational([0, 0, 0], 3), 3, lambda pair: haarUnitary(9, rng))
    outcomes = measureRegion(state, [0, 2])
    assert sum(outcome.probability for outcome in outcomes) == pytest.approx(1.0, abs=1e-12)
    for outcome in outcomes:
        assert outcome.state.norm() == pytest.approx(1.0)


def test_measure_sampling_needs_rng():
    state = DenseState.computational([0, 0], 3)
    with pytest.raises(ConfigError):
        measureRegion(state, [0], mode='sample')
    with pytest.raises(ConfigError):
        measureRegion(state, [0], basis='haar_random')


def test_measure_sample(rng):
    outcomes = measureRegion(bellPair(3), [1], mode='sample', rng=rng)
    assert len(outcomes) == 1


def test_coherent_information_of_perfect_channel():
    state = DenseState.computational([0, 0], 3)
    extended, references = attachReference(state, [0])
    assert references == (2,)
    assert coherentInformation(extended, [0], references) == pytest.approx(np.log(3))
    assert coherentInformation(extended, [], references) == pytest.approx(-np.log(3))
    assert coherentInformation(extended, [1], references) == pytest.approx(-np.log(3))


def test_reference_needs_basis_state():
    plus = DenseState(np.full(3, 1 / np.sqrt(3)), 3, 1)
    with pytest.raises(StateValidationError):
        attachReference(plus, [0])


def test_measurement_never_adds_negativity(rng):
    for _ in range(50):
        state = runBrickwork(DenseState.computational([0, 0], 3), 2, lambda pair: haarUnitary(9, rng))
        before = magicMeasures(state.densityMatrix(), 3)['one_norm']
        outcomes = measureRegion(state, [1])
        after = sum(outcome.probability * magicMeasures(outcome.state.densityMatrix(), 3)['one_norm']
                    for outcome in outcomes)
        assert after <= before + 1e-12
