from __future__ import absolute_import

import itertools

import numpy as np
import pytest

from quditmagic.exceptions import ConfigError, GeometryError, GuardExceededError
from quditmagic.statmech import (
    CutProblem, Geometry, HaarSpinModel, Permutation, cliffordInjectionClosedForm, cutLength,
    cutProblem, predict, predictAll, solveCut,
)
from quditmagic.statmech.predict import (
    BIPARTITION_GUARD, bipartitionMinimum, dominantConfiguration, negativityProblem,
)
from quditmagic.statmech.spins import CliffordSpinModel, spinModel


def bruteForce(problem):
    """Get the cheapest labelling by trying every gate labelling.

    Each choice boundary ends a single leg, so it is minimised on that leg
    unless the choices are shared.
    """
    labelCount = len(problem.labels)
    gateCount = len(problem.gates)
    assignments = np.array(list(itertools.product(range(labelCount), repeat=gateCount)),
                           dtype=np.int64).reshape(labelCount ** gateCount, gateCount)
    choices = problem.choiceBoundaries()
    if problem.shareChoice and choices:
        common = set.intersection(*(set(problem.boundaries[key]) for key in choices))
        options = [dict.fromkeys(choices, label) for label in common]
    else:
        options = [{}]

    best = None
    for shared in options:
        def labels(endpoint):
            if endpoint[0] == 'gate':
                return assignments[:, endpoint[1]][:, None]
            return np.array([shared[endpoint]] if endpoint in shared else problem.boundaries[endpoint])[None, :]

        energies = np.zeros(len(assignments), dtype=np.int64)
        for a, b in problem.legs:
            lower, upper = labels(a), labels(b)
            costs = problem.distances[lower[:, :, None], upper[:, None, :]]
            energies = energies + costs.min(axis=(1, 2))
        value = int(energies.min())
        if best is None or value < best:
            best = value
    return best


def randomGeometry(rng, injection='single_qudit_haar'):
    nSites = int(rng.integers(2, 7))
    depth = int(rng.integers(0, 5))
    sites = rng.permutation(nSites)
    regionA = sites[:int(rng.integers(1, nSites + 1))]
    regionM = rng.permutation(nSites)[:int(rng.integers(1, nSites + 1))]
    return Geometry(nSites, depth, regionA, regionM, injection=injection)


# Permutations

def test_permutation_distances():
    identity = Permutation.identity(4)
    assert identity.cycleCount() == 4
    assert Permutation.multiSwap(2).distance(identity) == 2
    assert Permutation.cyclic(4).distance(identity) == 3
    with pytest.raises(ConfigError):
        Permutation([0, 0, 1])


def test_permutation_metric():
    spins = Permutation.allOfSize(4)
    for a, b, c in itertools.product(spins, repeat=3):
        assert a.distance(c) <= a.distance(b) + b.distance(c)
    for a in spins:
        assert a.distance(a) == 0
        assert a.compose(a.inverse()) == Permutation.identity(4)


# Spin models

def test_haar_weingarten_of_two_copies():
    weingarten = HaarSpinModel(2).weingarten(3)
    np.testing.assert_allclose(weingarten, np.array([[9, -3], [-3, 9]]) / 72.0, rtol=1e-12)


def test_haar_weingarten_inverts_gram():
    model = HaarSpinModel(4)
    np.testing.assert_allclose(model.weingarten(9).dot(model.gram(9)), np.eye(24), atol=1e-10)


def test_three_body_weights():
    model = HaarSpinModel(2)
    identity, swap = model.spins
    assert model.threeBodyWeight(identity, identity, identity, 3) == 1.0
    assert model.threeBodyWeight(swap, swap, identity, 3) == 0.0
    value = model.threeBodyWeight(identity, swap, identity, 3)
    assert value == pytest.approx(0.3)
    assert abs(value - 1 / 3.0) * 3 < 1 / 3.0


def test_clifford_model_matches_haar_for_two_copies():
    haar = HaarSpinModel(2)
    clifford = CliffordSpinModel(2, 3)
    np.testing.assert_allclose(clifford.weingarten(9), haar.weingarten(9))
    assert clifford.threeBodyWeight(clifford.spins[0], clifford.spins[1], clifford.spins[0], 3) == pytest.approx(0.3)


def test_spin_model_names():
    assert isinstance(spinModel('haar', 2), HaarSpinModel)
    with pytest.raises(ConfigError):
        spinModel('clifford', 2)
    with pytest.raises(ConfigError):
        spinModel('other', 2)


# Geometry

def test_geometry_regions():
    geometry = Geometry(6, 2, [0, 1], [4], measured=[4, 5], injection='single_qudit_haar')
    assert geometry.regionB == (2, 3)
    assert geometry.layers() == [[(0, 1), (2, 3), (4, 5)], [(1, 2), (3, 4)]]
    assert Geometry.fromDict(geometry.toDict()).regionB == geometry.regionB


def test_light_cones():
    assert Geometry(6, 0, [0], [3], injection='single_qudit_haar').futureCone() == (3,)
    geometry = Geometry(8, 2, [0], [3], injection='single_qudit_haar')
    assert geometry.futureCone() == (1, 2, 3, 4)
    assert geometry.pastCone() == (0, 1)
    assert geometry.pastCone([3]) == (2, 3, 4, 5)


@pytest.mark.parametrize('kwargs', [
    {'measured': [0]},
    {'regionM': [1]},
    {'regionM': [1], 'measured': [2], 'injection': 'magical_measurement'},
    {'injection': 'other'},
])
def test_invalid_geometry(kwargs):
    with pytest.raises(GeometryError):
        Geometry(4, 1, [0], **kwargs)


# Cuts

def test_cut_lengths():
    assert cutLength(8, 2, range(4), range(4, 8)) == 2
    assert cutLength(8, 1, range(4), range(4, 8)) == 0
    assert cutLength(8, 10, range(3), range(3, 8)) == 3
    assert cutLength(8, 10, range(2, 5), [0, 1, 5, 6, 7]) == 3


def test_cut_problem_rejects_overlap():
    with pytest.raises(ConfigError):
        cutProblem(4, 1, [0], [0, 1])


def test_two_label_cuts_match_brute_force(rng):
    for _ in range(200):
        nSites = int(rng.integers(2, 7))
        depth = int(rng.integers(0, 5))
        sides = rng.integers(0, 3, (2, nSites))
        top = [np.nonzero(sides[0] == side)[0] for side in (0, 1)]
        bottom = [np.nonzero(sides[1] == side)[0] for side in (0, 1)]
        problem = cutProblem(nSites, depth, top[0], top[1], bottom[0], bottom[1])
        solution = solveCut(problem)
        assert solution.exact
        assert solution.value == bruteForce(problem)
        labels = [problem.labels.index(label) for label in solution.gates]
        assert problem.energy(labels) == solution.value


@pytest.mark.parametrize('injection', ['single_qudit_haar', 'multi_qudit_haar'])
def test_negativity_cuts_match_brute_force(rng, injection):
    for _ in range(200):
        geometry = randomGeometry(rng, injection)
        for n in (1, 2):
            problem = negativityProblem(geometry, n)
            solution = solveCut(problem)
            assert solution.exact
            assert solution.value == bruteForce(problem)


def test_non_metric_problem_is_flagged():
    problem = CutProblem(3, 1, ['a', 'b', 'c'], [[0, 1, 5], [1, 0, 1], [5, 1, 0]],
                         top={0: 'a', 1: 'b', 2: 'c'})
    assert solveCut(problem).value == bruteForce(problem)
    with pytest.raises(ConfigError):
        CutProblem(2, 1, ['a', 'b'], [[0, 1], [2, 0]])


# Predictions

def test_haar_subsystem():
    result = predict(Geometry(8, 2, range(4)), 'haar_subsystem')
    assert result['cuts'] == {'l_A|B': 2}
    assert result['mana_logq_units'] == 1.0
    assert result['log_w_logq_units'] == -2.0
    assert result['log_wigner_moment_logq_units'] == -6.0
    assert predict(Geometry(8, 2, range(4)), 'haar_subsystem', n=2)['log_w_logq_units'] == -8.0


@pytest.mark.parametrize('sizeA, sizeM, expected', [
    (5, 1, 0.5),
    (3, 1, 0.0),
    (5, 4, 1.0),
])
def test_late_time_injection(sizeA, sizeM, expected):
    geometry = Geometry(8, 10, range(sizeA), range(sizeM), injection='single_qudit_haar')
    closedForm = cliffordInjectionClosedForm(geometry)
    assert closedForm['regime'] == 'late'
    assert float(closedForm['mana']) == expected


def test_injection_regimes():
    unreached = Geometry(8, 1, [0], [6], injection='single_qudit_haar')
    assert cliffordInjectionClosedForm(unreached)['regime'] == 'unreached'
    assert cliffordInjectionClosedForm(unreached)['mana'] == 0
    contained = Geometry(4, 0, [0, 1], [0, 1], injection='single_qudit_haar')
    assert cliffordInjectionClosedForm(contained)['regime'] == 'all_in_A'
    assert cliffordInjectionClosedForm(contained)['mana'] == 1


def test_clifford_injection_single_site():
    geometry = Geometry(2, 0, [0], [0], injection='single_qudit_haar')
    result = predict(geometry, 'clifford_injection')
    assert result['mana_logq_units'] == 0.5
    assert result['closed_form'] == {'regime': 'all_in_A', 'mana_logq_units': 0.5}
    assert result['cuts'] == {'l_A|BM': 1, 'l_AM|B': 0, 'l_A|B': 0}


def test_multi_qudit_injection_single_site():
    geometry = Geometry(2, 0, [0], [0], injection='multi_qudit_haar')
    result = predict(geometry, 'multi_qudit_injection')
    assert result['mana_logq_units'] == 0.5
    assert result['single_qudit_mana_logq_units'] == 0.5
    assert result['bipartition'] == {'l': 0, 'M_X': (0,)}
    assert result['dominant'] == 'split_wall'


def test_bipartition_matches_free_wall(rng):
    for _ in range(10):
        geometry = randomGeometry(rng, 'multi_qudit_haar')
        wall, _ = bipartitionMinimum(geometry)
        assert wall == cutLength(geometry.nSites, geometry.depth, geometry.regionA, geometry.regionB)


def test_large_injection_uses_free_wall():
    geometry = Geometry(BIPARTITION_GUARD + 2, 0, range(6), range(BIPARTITION_GUARD + 1), injection='multi_qudit_haar')
    with pytest.raises(GuardExceededError):
        bipartitionMinimum(geometry)
    result = predict(geometry, 'multi_qudit_injection')
    assert 'bipartition' not in result
    assert result['cuts']['l_A|B'] == 0


def test_concentration():
    geometry = Geometry(7, 2, range(3), range(3, 7), measured=range(3, 7), injection='single_qudit_haar')
    result = predict(geometry, 'concentration')
    assert result['mana_logq_units'] == 1.0
    assert result['scenario'] == 'concentration'


def test_concentration_saturates():
    values = []
    for depth in range(6):
        geometry = Geometry(7, depth, range(3), range(3, 7), measured=range(3, 7), injection='single_qudit_haar')
        values.append(predict(geometry, 'concentration')['mana_logq_units'])
    assert values == [0.0, 0.5, 1.0, 1.5, 1.5, 1.5]


def test_teleportation_needs_depth():
    geometry = Geometry(4, 0, [0, 1], [2, 3], measured=[2, 3], injection='magical_measurement')
    assert predict(geometry, 'teleportation')['mana_logq_units'] == 0.0


def test_coherent_information_gives_mana(rng):
    for _ in range(30):
        geometry = randomGeometry(rng)
        result = predict(geometry, 'coherent_info')
        coherent = result['coherent_information_logq_units']
        assert result['mana_logq_units'] == 0.5 * max(coherent, 0)


def test_sre_bounds_mana(rng):
    for _ in range(10):
        multi = randomGeometry(rng, 'multi_qudit_haar')
        single = Geometry(multi.nSites, multi.depth, multi.regionA, multi.regionM, injection='single_qudit_haar')
        result = predict(multi, 'sre')
        assert result['sre_logq_units'] >= result['mana_logq_units']
        assert predict(single, 'sre')['sre_logq_units'] == result['sre_logq_units']


def test_haar_sre_is_twice_mana():
    result = predict(Geometry(8, 2, range(4)), 'sre')
    assert result['sre_logq_units'] == 2 * result['mana_logq_units'] == 2.0


def test_every_prediction_is_half_integer(rng):
    for _ in range(5):
        result = predictAll(randomGeometry(rng))
        for prediction in result['predictions'].values():
            assert (2 * prediction['mana_logq_units']).is_integer()
            assert (2 * prediction['log_w_logq_units']).is_integer()


def test_predict_all_skips_unfit_scenarios():
    result = predictAll(Geometry(4, 1, [0, 1]))
    assert 'haar_subsystem' in result['predictions']
    assert 'concentration' in result['skipped']


@pytest.mark.parametrize('scenario, geometry', [
    ('concentration', Geometry(4, 1, [0], [1], injection='single_qudit_haar')),
    ('teleportation', Geometry(4, 1, [0, 1])),
    ('haar_subsystem', Geometry(4, 1, [0], [1], injection='single_qudit_haar')),
    ('clifford_injection', Geometry(4, 1, [0])),
])
def test_scenario_geometry_errors(scenario, geometry):
    with pytest.raises(GeometryError):
        predict(geometry, scenario)


def test_invalid_prediction_requests():
    with pytest.raises(ConfigError):
        predict(Geometry(4, 1, [0]), 'unknown')
    with pytest.raises(ConfigError):
        predict(Geometry(4, 1, [0]), 'haar_subsystem', n=0)


def test_dominant_configuration():
    from quditmagic.statmech.predict import ReplicaConfiguration
    configurations = [ReplicaConfiguration('a', 3, -1), ReplicaConfiguration('b', 3, -2)]
    assert dominantConfiguration(configurations).name == 'b'
