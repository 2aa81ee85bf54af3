"""Domain wall predictions of Wigner moments and mana.

Every prediction is in units of log q. A scenario is described by a list
of replica configurations, each with an energy linear in the replica
index, E(n) = slope * n + offset. The moment follows from the cheapest
configuration at the requested n, and mana from continuing the dominant
configuration (lowest slope, then lowest offset) to n = 1/2:

    log W(2n) = -min E(n)
    mana = -(slope / 2 + offset)

`log W` follows the moment normalisation of the domain wall sum. The
Wigner moment itself, sum_u |W(u)|^2n with W summing to one, is offset
from it by (1 - 2n)|A|.
"""

from __future__ import absolute_import

import collections
import itertools
import logging
from fractions import Fraction

from .geometry import Geometry
from .mincut import CutProblem, cutProblem, solveCut
from ..exceptions import ConfigError, GeometryError, IntegrityError
from ..utils import checkGuard
from ..utils.regions import Region

__all__ = [
    'SCENARIOS', 'ReplicaConfiguration', 'dominantConfiguration', 'predict', 'predictAll',
    'cliffordInjectionClosedForm', 'negativityProblem', 'bipartitionMinimum',
]

logger = logging.getLogger(__name__)

SCENARIOS = (
    'haar_subsystem',
    'clifford_injection',
    'concentration',
    'teleportation',
    'coherent_info',
    'multi_qudit_injection',
    'sre',
    'clifford_negativity',
    'entanglement',
)

BIPARTITION_GUARD = 10  # 2^|M| cuts per check

ANTI_IDENTITY, SWAP, IDENTITY = 'Ibar', 'X', 'I'

ReplicaConfiguration = collections.namedtuple('ReplicaConfiguration', 'name slope offset')


def _energy(configuration, n):
    return configuration.slope * n + configuration.offset


def dominantConfiguration(configurations):
    """Get the configuration that wins at large replica index.

    >>> dominantConfiguration([ReplicaConfiguration('a', 4, -1), ReplicaConfiguration('b', 3, 0)]).name
    'b'
    """
    return min(configurations, key=lambda c: (c.slope, c.offset))


def _mana(configuration):
    return -(Fraction(configuration.slope, 2) + configuration.offset)


def _checkUnits(name, value):
    """Make sure a prediction is a multiple of half a log q."""
    if (Fraction(value) * 2).denominator != 1:
        raise IntegrityError('{} = {} is not a multiple of half a log q'.format(name, value))
    return float(value)


def _cut(geometry, sourceTop, sinkTop, sourceBottom=(), sinkBottom=()):
    return solveCut(cutProblem(geometry.nSites, geometry.depth, sourceTop, sinkTop, sourceBottom, sinkBottom)).value


def _require(geometry, scenario, condition, message):
    if not condition:
        raise GeometryError('{} needs {}, got {!r}'.format(scenario, message, geometry))


def _result(geometry, scenario, n, configurations, cuts, ensemble, **extra):
    """Build the report shared by every scenario."""
    dominant = dominantConfiguration(configurations)
    logW = -min(_energy(c, n) for c in configurations)
    mana = extra.pop('mana', _mana(dominant))
    result = {
        'scenario': scenario,
        'ensemble': ensemble,
        'n': n,
        'unit': 'log q',
        'mana_logq_units': _checkUnits('mana', mana),
        'log_w_logq_units': _checkUnits('log W', logW),
        'log_wigner_moment_logq_units': _checkUnits('log W', logW + (1 - 2 * n) * len(geometry.regionA)),
        'configurations': [configuration._asdict() for configuration in configurations],
        'dominant': dominant.name,
        'cuts': cuts,
    }
    result.update(extra)
    return result


def _predictHaarSubsystem(geometry, n):
    _require(geometry, 'haar_subsystem', geometry.injection == 'none' and not geometry.measured,
             'no injection or measurement')
    size = len(geometry.regionA)
    wall = _cut(geometry, geometry.regionA, geometry.regionB)
    configurations = [ReplicaConfiguration('entangled_wall', size + wall, -size)]
    return _result(geometry, 'haar_subsystem', n, configurations, {'l_A|B': wall}, 'haar')


def _injectionCuts(geometry):
    """Get the three walls separating A, B and the injected sites."""
    regionA, regionB, regionM = geometry.regionA, geometry.regionB, geometry.regionM
    return {
        'l_A|BM': _cut(geometry, regionA, regionB, sinkBottom=regionM),
        'l_AM|B': _cut(geometry, regionA, regionB, sourceBottom=regionM),
        'l_A|B': _cut(geometry, regionA, regionB),
    }


def _predictCliffordInjection(geometry, n):
    _require(geometry, 'clifford_injection',
             geometry.injection == 'single_qudit_haar' and geometry.regionM and not geometry.measured,
             'single qudit injection without measurement')
    cuts = _injectionCuts(geometry)
    l1, l0 = cuts['l_A|BM'], cuts['l_A|B']
    configurations = [ReplicaConfiguration('split_wall', l1 + l0, -l1)]
    lattice = _solveNegativity(geometry)
    if lattice['mana'] != _mana(configurations[0]):
        raise IntegrityError('three label solution {} disagrees with the binary cuts {}'.format(
            lattice['mana'], _mana(configurations[0])))
    closedForm = cliffordInjectionClosedForm(geometry)
    return _result(
        geometry, 'clifford_injection', n, configurations, cuts, 'clifford',
        witness=lattice['witness'],
        closed_form={'regime': closedForm['regime'], 'mana_logq_units': float(closedForm['mana'])},
    )


def _minimumFormula(geometry, sites):
    return min(geometry.depth, len(sites), len(geometry.regionA))


def _predictConcentration(geometry, n):
    _require(geometry, 'concentration',
             geometry.injection == 'single_qudit_haar' and geometry.measured and not geometry.regionB,
             'single qudit injection with every site outside A measured')
    size = _minimumFormula(geometry, geometry.regionM)
    configurations = [ReplicaConfiguration('concentrated', size, -size)]
    wall = _cut(geometry, geometry.regionA, (), sinkBottom=geometry.regionM)
    return _result(
        geometry, 'concentration', n, configurations, {'l_A|M': wall}, 'clifford',
        lattice_mana_logq_units=_checkUnits('mana', Fraction(wall, 2)),
    )


def _predictTeleportation(geometry, n):
    _require(geometry, 'teleportation',
             geometry.injection == 'magical_measurement' and not geometry.regionB,
             'magical measurement on every site outside A')
    size = _minimumFormula(geometry, geometry.measured)
    configurations = [ReplicaConfiguration('teleported', size, -size)]
    wall = _cut(geometry, geometry.regionA, geometry.measured)
    return _result(
        geometry, 'teleportation', n, configurations, {'l_A|M': wall}, 'clifford',
        lattice_mana_logq_units=_checkUnits('mana', Fraction(wall, 2)),
        pre_measurement_entropy_logq_units=wall,
    )


def _sharedInjectionConfigurations(cuts):
    l1, l2 = cuts['l_A|BM'], cuts['l_AM|B']
    return [
        ReplicaConfiguration('wall_around_A', 2 * l1, -l1),
        ReplicaConfiguration('split_wall', l1 + l2, -l1),
    ]


def _predictCoherentInfo(geometry, n):
    _require(geometry, 'coherent_info',
             geometry.injection in ('single_qudit_haar', 'multi_qudit_haar') and geometry.regionM
             and not geometry.measured, 'an injection without measurement')
    cuts = _injectionCuts(geometry)
    coherent = cuts['l_A|BM'] - cuts['l_AM|B']
    configurations = _sharedInjectionConfigurations(cuts)
    mana = Fraction(max(coherent, 0), 2)
    if mana != _mana(dominantConfiguration(configurations)):
        raise IntegrityError('coherent information {} does not match the dominant wall'.format(coherent))
    return _result(
        geometry, 'coherent_info', n, configurations, cuts, 'clifford',
        coherent_information_logq_units=coherent,
    )


def _predictMultiQuditInjection(geometry, n):
    _require(geometry, 'multi_qudit_injection',
             geometry.injection == 'multi_qudit_haar' and geometry.regionM and not geometry.measured,
             'multi qudit injection without measurement')
    cuts = _injectionCuts(geometry)
    configurations = _sharedInjectionConfigurations(cuts)
    extra = {'single_qudit_mana_logq_units': _checkUnits('mana', Fraction(cuts['l_A|BM'] - cuts['l_A|B'], 2))}
    if len(geometry.regionM) <= BIPARTITION_GUARD:
        best, regionX = bipartitionMinimum(geometry)
        if best != cuts['l_A|B']:
            raise IntegrityError('bipartition minimum {} differs from the free wall {}'.format(best, cuts['l_A|B']))
        extra['bipartition'] = {'l': best, 'M_X': regionX}
    lattice = _solveNegativity(geometry)
    if lattice['mana'] != _mana(dominantConfiguration(configurations)):
        raise IntegrityError('shared choice solution {} disagrees with the cuts'.format(lattice['mana']))
    extra['witness'] = lattice['witness']
    return _result(geometry, 'multi_qudit_injection', n, configurations, cuts, 'clifford', **extra)


def _predictSre(geometry, n, ensemble):
    _require(geometry, 'sre', not geometry.measured, 'no measurement')
    if ensemble == 'haar':
        size = len(geometry.regionA)
        wall = _cut(geometry, geometry.regionA, geometry.regionB)
        sre = size - wall
        cuts = {'l_A|B': wall}
        configurations = [ReplicaConfiguration('entangled_wall', size + wall, -size)]
        mana = Fraction(sre, 2)
    elif ensemble == 'clifford':
        _require(geometry, 'sre', geometry.injection in ('single_qudit_haar', 'multi_qudit_haar'),
                 'an injection for the clifford ensemble')
        cuts = _injectionCuts(geometry)
        sre = cuts['l_A|BM'] - cuts['l_A|B']
        configurations = _sharedInjectionConfigurations(cuts)
        mana = _mana(dominantConfiguration(configurations))
        if sre < mana:
            raise IntegrityError('stabilizer entropy {} is below the multi qudit mana {}'.format(sre, mana))
    else:
        raise ConfigError('sre needs the haar or clifford ensemble, got {!r}'.format(ensemble))
    return _result(
        geometry, 'sre', n, configurations, cuts, ensemble,
        mana=mana,
        sre_logq_units=sre,
    )


def _predictEntanglement(geometry, n, ensemble):
    wall = _cut(geometry, geometry.regionA, geometry.regionB)
    configurations = [ReplicaConfiguration('entangled_wall', len(geometry.regionA) + wall, -len(geometry.regionA))]
    return _result(
        geometry, 'entanglement', n, configurations, {'l_A|B': wall}, ensemble,
        entropy_logq_units=wall,
    )


def negativityProblem(geometry, n):
    """Build the three label problem for the Wigner moments of a Clifford circuit.

    A is bounded by the anti-identity and B by the identity. Injected sites
    may end in the swap or the identity, each on its own for single qudit
    injection or all together for multi qudit injection. Other boundaries
    are free.
    """
    if n < 1:
        raise ConfigError('replica index must be at least 1, got {}'.format(n))
    distances = [
        [0, n - 1, 2 * n - 1],
        [n - 1, 0, n],
        [2 * n - 1, n, 0],
    ]
    top = {site: ANTI_IDENTITY for site in geometry.regionA}
    top.update({site: IDENTITY for site in geometry.regionB})
    bottom = {}
    choice = (SWAP, IDENTITY)
    if geometry.injection == 'magical_measurement':
        top.update({site: choice for site in geometry.regionM})
    elif geometry.injection != 'none':
        bottom.update({site: choice for site in geometry.regionM})
    return CutProblem(
        geometry.nSites, geometry.depth, [ANTI_IDENTITY, SWAP, IDENTITY], distances,
        top=top, bottom=bottom, shareChoice=geometry.injection == 'multi_qudit_haar',
    )


def wallLengths(problem, solution):
    """Count the legs crossed by each kind of wall in a solution."""
    def label(endpoint):
        if endpoint[0] == 'gate':
            return solution.gates[endpoint[1]]
        if endpoint in solution.boundaries:
            return solution.boundaries[endpoint]
        return problem.labels[problem.boundaries[endpoint][0]]

    counts = collections.Counter()
    for a, b in problem.legs:
        pair = sorted((label(a), label(b)), key=problem.labels.index)
        if pair[0] != pair[1]:
            counts['|'.join(pair)] += 1
    return dict(counts)


def _solveNegativity(geometry, n=None):
    """Solve the three label problem, returning mana from the dominant walls."""
    legs = len(negativityProblem(geometry, 1).legs)
    nBig = legs + 1
    problem = negativityProblem(geometry, nBig)
    solution = solveCut(problem)
    walls = wallLengths(problem, solution)
    antiSwap = walls.get('{}|{}'.format(ANTI_IDENTITY, SWAP), 0)
    antiIdentity = walls.get('{}|{}'.format(ANTI_IDENTITY, IDENTITY), 0)
    swapIdentity = walls.get('{}|{}'.format(SWAP, IDENTITY), 0)
    configuration = ReplicaConfiguration(
        'lattice', antiSwap + 2 * antiIdentity + swapIdentity, -(antiSwap + antiIdentity))
    if _energy(configuration, nBig) != solution.value:
        raise IntegrityError('wall lengths do not reproduce the energy {}'.format(solution.value))
    result = {
        'configuration': configuration,
        'mana': _mana(configuration),
        'witness': {'walls': walls, 'method': solution.method, 'exact': solution.exact},
    }
    if n is not None:
        result['value'] = solveCut(negativityProblem(geometry, n)).value
    return result


def _predictCliffordNegativity(geometry, n):
    lattice = _solveNegativity(geometry, n)
    configuration = lattice['configuration']
    # The minimum at n is exact, the dominant configuration only fixes the continuation
    result = _result(
        geometry, 'clifford_negativity', n, [configuration], {}, 'clifford',
        witness=lattice['witness'],
    )
    result['log_w_logq_units'] = _checkUnits('log W', -lattice['value'])
    result['log_wigner_moment_logq_units'] = _checkUnits(
        'log W', -lattice['value'] + (1 - 2 * n) * len(geometry.regionA))
    return result


def bipartitionMinimum(geometry):
    """Get the cheapest wall over every split of M into swap and identity sites.

    Every split is cut separately, so M is limited to `BIPARTITION_GUARD` sites.
    Multi qudit injection predictions skip this check above that size and rely
    on the free wall, whose length is the same minimum for any M.

    Returns:
        Tuple of the wall length and the sites ending in the swap.
    """
    regionM = geometry.regionM
    checkGuard(len(regionM), BIPARTITION_GUARD, 'injection region size', 'the free wall gives the same minimum')
    best = None
    for count in range(len(regionM) + 1):
        for regionX in itertools.combinations(regionM, count):
            regionI = Region(regionM).difference(regionX)
            wall = _cut(geometry, geometry.regionA, geometry.regionB, sourceBottom=regionX, sinkBottom=regionI)
            if best is None or wall < best[0]:
                best = (wall, Region(regionX))
    return best


def cliffordInjectionClosedForm(geometry):
    """Get the light cone formula for single qudit injection.

    Returns:
        dict: The regime, mana and the configurations compared.
    """
    regionA, regionB, regionM = geometry.regionA, geometry.regionB, geometry.regionM
    sizeA, sizeB, sizeM = len(regionA), len(regionB), len(regionM)
    everything = set(range(geometry.nSites))
    future = set(geometry.futureCone())
    if not future & set(regionA):
        return {'regime': 'unreached', 'mana': Fraction(0), 'configurations': []}
    if future <= set(regionA):
        return {'regime': 'all_in_A', 'mana': Fraction(sizeM, 2), 'configurations': []}
    if set(geometry.pastCone()) == everything and set(geometry.pastCone(regionB)) == everything:
        configurations = [
            ReplicaConfiguration('wall_around_A', 2 * sizeA, -sizeA),
            ReplicaConfiguration('wall_around_BM', 2 * sizeB + sizeM, -sizeB - sizeM),
            ReplicaConfiguration('split_wall', sizeA + sizeB, -sizeA),
        ]
        regime = 'late'
    else:
        reached = len(set(geometry.pastCone()) & set(regionM))
        depth = geometry.depth
        configurations = [
            ReplicaConfiguration('vertical_walls', reached + 2 * depth, -reached - depth),
            ReplicaConfiguration('wall_around_BM', sizeM + 2 * sizeB, -sizeM - sizeB),
        ]
        regime = 'early'
    return {
        'regime': regime,
        'mana': _mana(dominantConfiguration(configurations)),
        'configurations': configurations,
    }


def predict(geometry, scenario, n=1, ensemble=None):
    """Predict the Wigner moment and mana of a scenario.

    Parameters:
        geometry (Geometry): Regions of the circuit.
        scenario (str): One of `SCENARIOS`.
        n (int): Replica index of the moment.
        ensemble (str): 'haar' or 'clifford', only read by 'sre' and
            'entanglement'.

    Raises:
        GeometryError: If the geometry does not fit the scenario.
        ConfigError: If the scenario or replica index is invalid.
    """
    if isinstance(geometry, dict):
        geometry = Geometry.fromDict(geometry)
    if int(n) != n or n < 1:
        raise ConfigError('replica index must be a positive integer, got {}'.format(n))
    n = int(n)
    if scenario == 'haar_subsystem':
        result = _predictHaarSubsystem(geometry, n)
    elif scenario == 'clifford_injection':
        result = _predictCliffordInjection(geometry, n)
    elif scenario == 'concentration':
        result = _predictConcentration(geometry, n)
    elif scenario == 'teleportation':
        result = _predictTeleportation(geometry, n)
    elif scenario == 'coherent_info':
        result = _predictCoherentInfo(geometry, n)
    elif scenario == 'multi_qudit_injection':
        result = _predictMultiQuditInjection(geometry, n)
    elif scenario == 'sre':
        result = _predictSre(geometry, n, ensemble or ('haar' if geometry.injection == 'none' else 'clifford'))
    elif scenario == 'clifford_negativity':
        result = _predictCliffordNegativity(geometry, n)
    elif scenario == 'entanglement':
        result = _predictEntanglement(geometry, n, ensemble)
    else:
        raise ConfigError('unknown scenario {!r}, expected one of {}'.format(scenario, SCENARIOS))
    result['geometry'] = geometry
    logger.debug('Predicted %s for %r: mana %s', scenario, geometry, result['mana_logq_units'])
    return result


def predictAll(geometry, n=1, scenarios=SCENARIOS):
    """Predict every scenario the geometry fits.

    Scenarios the geometry does not fit are reported by their error message.
    """
    if isinstance(geometry, dict):
        geometry = Geometry.fromDict(geometry)
    predictions = {}
    skipped = {}
    for scenario in scenarios:
        try:
            predictions[scenario] = predict(geometry, scenario, n)
        except GeometryError as e:
            logger.debug('Skipped %s: %s', scenario, e)
            skipped[scenario] = str(e)
    return {'geometry': geometry, 'n': n, 'unit': 'log q', 'predictions': predictions, 'skipped': skipped}
