from __future__ import absolute_import

import numpy as np
import pytest
import scipy.stats

from quditmagic.cliffordgen import (
    CliffordElement, SymplecticMatrix, allSingleQuditCliffords, allSymplectic, framePotential,
    randomClifford, randomSymplectic, stabilizerOrbit, symplecticToUnitary, transvection,
    transvectionsBetween,
)
from quditmagic.exceptions import ConfigError, GuardExceededError
from quditmagic.fqarith import coefficientGrid, symplecticForm, symplecticGram
from quditmagic.phasespace import displacementOperator, magicMeasures, phasePointOperator, wignerFunction


def phaseFree(a, b):
    """Check two unitaries agree up to a global phase."""
    return abs(abs(np.trace(a.conj().T.dot(b))) / a.shape[0] - 1) < 1e-9


@pytest.mark.parametrize('q', [3, 5])
def test_random_symplectic_preserves_form(rng, q):
    gram = symplecticGram(2)
    for _ in range(10):
        matrix = randomSymplectic(2, q, rng).matrix
        assert not np.any((matrix.T.dot(gram).dot(matrix) - gram) % q)


def test_transvection_inverse():
    forward = transvection((1, 2), 5)
    backward = transvection((1, 2), 5, scale=-1)
    assert forward.compose(backward) == SymplecticMatrix.identity(1, 5)
    assert forward.inverse() == backward


def test_shift_only_is_displacement():
    unitary = symplecticToUnitary(SymplecticMatrix.identity(1, 3), shift=(1, 2))
    assert phaseFree(unitary, displacementOperator((1, 2), 3))


def test_fourier_matrix():
    # [[0, -1], [1, 0]] sends Z to X
    unitary = symplecticToUnitary(SymplecticMatrix([[0, 2], [1, 0]], 3))
    w = np.exp(2j * np.pi / 3)
    fourier = np.array([[w ** (j * k) for k in range(3)] for j in range(3)]) / np.sqrt(3)
    assert phaseFree(unitary, fourier) or phaseFree(unitary, fourier.conj())


def test_random_clifford_covariance(rng):
    for q in (3, 5):
        element = randomClifford(1, q, rng)
        assert element.checkCovariance() == []
    assert randomClifford(2, 3, rng).checkCovariance() == []


def randomDensity(dim, rng):
    ginibre = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = ginibre.dot(ginibre.conj().T)
    return rho / np.trace(rho)


def imageOfOrigin(unitary, nQudits, q):
    """Get the point v with U A_0 U^dagger = A_v."""
    image = unitary.dot(phasePointOperator(np.zeros(2 * nQudits, dtype=int), q)).dot(unitary.conj().T)
    matches = [v for v in coefficientGrid(q, 2 * nQudits) if np.allclose(image, phasePointOperator(v, q), atol=1e-9)]
    assert len(matches) == 1
    return matches[0]


@pytest.mark.parametrize('nQudits', [1, 2])
def test_clifford_relabels_wigner_function(rng, nQudits):
    q = 3
    for _ in range(20 if nQudits == 1 else 3):
        element = randomClifford(nQudits, q, rng)
        unitary = element.unitary
        offset = imageOfOrigin(unitary, nQudits, q)
        rho = randomDensity(q ** nQudits, rng)
        evolved = unitary.dot(rho).dot(unitary.conj().T)
        for u in coefficientGrid(q, 2 * nQudits):
            image = (element.symplectic.apply(u) + offset) % q
            assert wignerFunction(evolved, image, q) == pytest.approx(wignerFunction(rho, u, q), abs=1e-10)


def test_shift_moves_origin():
    for shift in coefficientGrid(3, 2):
        element = CliffordElement(SymplecticMatrix.identity(1, 3), shift)
        np.testing.assert_array_equal(imageOfOrigin(element.unitary, 1, 3), shift)


def test_transvections_between(rng):
    q = 3
    for _ in range(50):
        start, end = rng.integers(0, q, (2, 4))
        if not start.any() or not end.any():
            continue
        steps = transvectionsBetween(start, end, q, rng)
        assert len(steps) <= 2
        image = start
        for step in steps:
            image = step.apply(image)
        np.testing.assert_array_equal(image, end)
    with pytest.raises(ConfigError):
        transvectionsBetween((0, 0), (1, 0), q, rng)


def test_random_symplectic_first_pair(rng):
    for _ in range(20):
        matrix = randomSymplectic(2, 5, rng).matrix
        assert symplecticForm(matrix[:, 0], matrix[:, 1], 5) == 1
        assert symplecticForm(matrix[:, 0], matrix[:, 2], 5) == 0


def test_compose_matches_product(rng):
    a = randomClifford(1, 3, rng)
    b = randomClifford(1, 3, rng)
    product = a.compose(b)
    assert isinstance(product, CliffordElement)
    assert phaseFree(product.unitary, a.unitary.dot(b.unitary))


def test_single_qudit_group_size():
    assert len(allSymplectic(1, 3)) == 24
    assert len(allSingleQuditCliffords(3)) == 27 * 8
    with pytest.raises(GuardExceededError):
        allSymplectic(2, 3)


def test_stabilizer_orbit():
    orbit = stabilizerOrbit(3)
    assert len(orbit) == 12
    for state in orbit:
        assert magicMeasures(state.densityMatrix(), 3)['mana'] == 0.0


def test_frame_potential_of_identical_lists(rng):
    unitaries = [randomClifford(1, 3, rng).unitary for _ in range(5)]
    assert framePotential(unitaries, unitaries, k=1) == pytest.approx(9.0)


@pytest.mark.slow
def test_random_symplectic_is_uniform(rng):
    group = allSymplectic(1, 3)
    counts = dict.fromkeys(group, 0)
    for _ in range(10 ** 5):
        counts[randomSymplectic(1, 3, rng)] += 1
    assert len(counts) == 24 and min(counts.values()) > 0
    assert scipy.stats.chisquare(list(counts.values())).pvalue > 1e-3


@pytest.mark.slow
def test_clifford_two_design(rng):
    count = 20000
    left = [randomClifford(1, 3, rng).unitary for _ in range(count)]
    right = [randomClifford(1, 3, rng).unitary for _ in range(count)]
    values = [abs(np.trace(u.conj().T.dot(v))) ** 4 for u, v in zip(left, right)]
    stderr = np.std(values, ddof=1) / np.sqrt(count)
    assert abs(np.mean(values) - 2) < 4 * stderr
