"""Monte Carlo over circuit ensembles and measurement outcomes.

Every sample runs the same pipeline:
computational state -> injection -> brickwork layers -> measurement -> measures of A.

Samples draw from their own generator, derived from the master seed and
the sample index alone, so results never depend on how the samples are
spread over worker processes.
"""

from __future__ import absolute_import

import collections
import logging
from multiprocessing import Pool

import numpy as np

from .config import ExperimentConfig
from ..cliffordgen import randomClifford
from ..densesim import (
    ENUMERATE_GUARD, DenseState, applyGate, attachReference, brickworkPairs,
    coherentInformation, entropies, haarUnitary, measureRegion, reducedDensity,
)
from ..exceptions import ConfigError
from ..phasespace import magicMeasures, renyiNegativity, stabilizerRenyiEntropy, wignerTable
from ..statmech.predict import predict
from ..utils import CustomEncoder, getThreadCount, sampleRng, sampleSeed

__all__ = [
    'EstimateRecord', 'ScenarioRun', 'estimate', 'jackknife', 'runSample', 'runScenario',
    'quenchedVsAnnealed', 'coherentInfoExperiment',
]

logger = logging.getLogger(__name__)


class EstimateRecord(object):
    """Mean of one measure over the samples, with its prediction if known.

    Parameters:
        name (str): Measure name.
        mean (float): Estimate.
        stderr (float): Standard error of the estimate.
        count (int): Number of samples.
        seed (int): Master seed of the run.
        flags (dict): Policy decisions taken while sampling.
        prediction (float): Predicted value in the same unit, if any.
        unit (str): 'nats' or 'log q'.
    """

    def __init__(self, name, mean, stderr, count, seed, flags=None, prediction=None, unit='nats'):
        self.name = name
        self.mean = float(mean)
        self.stderr = float(stderr)
        self.count = int(count)
        self.seed = seed
        self.flags = dict(flags or {})
        self.prediction = None if prediction is None else float(prediction)
        self.unit = unit

    def __repr__(self):
        return '{}({!r}, mean={}, stderr={}, count={})'.format(
            type(self).__name__, self.name, self.mean, self.stderr, self.count)

    @property
    def deviation(self):
        """Get the distance to the prediction in standard errors.

        A zero standard error gives 0 for an exact match and inf otherwise.
        """
        if self.prediction is None:
            return None
        difference = self.mean - self.prediction
        if self.stderr > 0:
            return difference / self.stderr
        if abs(difference) <= 1e-9:
            return 0.0
        return float('inf') if difference > 0 else float('-inf')

    @property
    def absoluteDeviation(self):
        if self.prediction is None:
            return None
        return abs(self.mean - self.prediction)

    def toDict(self):
        return {
            'name': self.name,
            'mean': self.mean,
            'stderr': self.stderr,
            'count': self.count,
            'seed': self.seed,
            'flags': self.flags,
            'prediction': self.prediction,
            'deviation': self.deviation,
            'unit': self.unit,
        }

    @classmethod
    def fromDict(cls, data):
        try:
            return cls(
                data['name'], data['mean'], data['stderr'], data['count'], data.get('seed'),
                data.get('flags'), data.get('prediction'), data.get('unit', 'nats'),
            )
        except (KeyError, TypeError) as e:
            raise ConfigError('invalid estimate record: {}'.format(e))


CustomEncoder.register(EstimateRecord, EstimateRecord.toDict)


ScenarioRun = collections.namedtuple('ScenarioRun', 'config samples records prediction flags')


def estimate(values):
    """Get the mean and standard error (sample deviation over root count).

    >>> estimate([1.0, 3.0])
    (2.0, 1.0)
    """
    values = np.asarray(values, dtype=float)
    if not len(values):
        raise ConfigError('cannot estimate from no samples')
    if len(values) == 1:
        return float(values[0]), 0.0
    return float(values.mean()), float(values.std(ddof=1) / np.sqrt(len(values)))


def jackknife(values, function):
    """Get function(values) and its jackknife standard error.

    Parameters:
        values (array): Samples, indexed by the first axis.
        function (callable): Statistic of an array of samples.
    """
    values = np.asarray(values, dtype=float)
    full = float(function(values))
    count = len(values)
    if count < 2:
        return full, 0.0
    leaveOneOut = np.array([function(np.delete(values, i, axis=0)) for i in range(count)])
    spread = np.sum((leaveOneOut - leaveOneOut.mean()) ** 2)
    return full, float(np.sqrt((count - 1) / float(count) * spread))


def _gateSupplier(name, q, rng):
    if name == 'haar':
        return lambda pair: haarUnitary(q * q, rng)
    if name == 'clifford':
        return lambda pair: randomClifford(2, q, rng).unitary
    identity = np.eye(q * q, dtype=complex)
    return lambda pair: identity


def _inject(config, state, rng):
    regionM = config.geometry.regionM
    if config.geometry.injection == 'single_qudit_haar':
        for site in regionM:
            state = applyGate(state, haarUnitary(config.q, rng), (site,), validate=False)
    elif config.geometry.injection == 'multi_qudit_haar':
        state = applyGate(state, haarUnitary(config.q ** len(regionM), rng), regionM, validate=False)
    return state


def _evolve(config, state, rng, nSites=None):
    """Apply the brickwork layers to the first `nSites` sites (default all)."""
    nSites = config.nSites if nSites is None else nSites
    for layer, name in enumerate(config.gates):
        supplier = _gateSupplier(name, config.q, rng)
        for pair in brickworkPairs(nSites, layer % 2):
            state = applyGate(state, supplier(pair), pair, validate=False)
    return state


def outcomePolicy(config):
    """Get 'enumerate' or 'sample' for the measurement stage."""
    if config.outcomes != 'auto':
        return config.outcomes
    if config.q ** len(config.geometry.measured) <= ENUMERATE_GUARD:
        return 'enumerate'
    return 'sample'


def prepareState(config, rng):
    """Get the state before measurement."""
    state = DenseState.computational([0] * config.nSites, config.q)
    state = _inject(config, state, rng)
    return _evolve(config, state, rng)


def _measuresOf(config, state):
    """Get every measure of region A for one pure state."""
    q = config.q
    rho = reducedDensity(state, config.geometry.regionA)
    table = wignerTable(rho, q)
    measures = collections.OrderedDict(magicMeasures(rho, q, table=table))
    for n in config.replicas:
        measures['wigner_moment_n{}'.format(n)] = renyiNegativity(rho, n, q, table=table)
    measures['sre_2'] = stabilizerRenyiEntropy(rho, q)
    for name, value in entropies(rho, config.entropyOrders).items():
        measures['entropy_{}'.format(name)] = value
    measures['mana_entropy_formula'] = 0.5 * (len(config.geometry.regionA) * np.log(q) - measures['entropy_von_neumann'])
    return measures


def runSample(config, index):
    """Run one sample, averaging its measures over measurement outcomes.

    Outcome averages are weighted by the Born probabilities.

    Returns:
        OrderedDict of measure name to value.
    """
    if isinstance(config, dict):
        config = ExperimentConfig.fromDict(config)
    rng = sampleRng(config.seed, index)
    state = prepareState(config, rng)
    if not config.geometry.measured:
        return _measuresOf(config, state)

    outcomes = measureRegion(state, config.geometry.measured, outcomePolicy(config), config.measurementBasis, rng)
    total = sum(outcome.probability for outcome in outcomes)
    averaged = collections.OrderedDict()
    for outcome in outcomes:
        weight = outcome.probability / total if len(outcomes) > 1 else 1.0
        for name, value in _measuresOf(config, outcome.state).items():
            averaged[name] = averaged.get(name, 0.0) + weight * value
    return averaged


def _runSampleTask(args):
    return runSample(*args)


def _runAll(config, workers, task=_runSampleTask):
    """Run every sample, in parallel when more than one worker is allowed."""
    workers = getThreadCount() if workers is None else int(workers)
    tasks = [(config.toDict(), index) for index in range(config.samples)]
    if workers > 1 and config.samples > 1:
        logger.info('Running %s samples on %s workers', config.samples, workers)
        with Pool(processes=workers) as pool:
            return pool.map(task, tasks)
    return [task(args) for args in tasks]


def _predictions(config):
    """Get the predicted value of each record, converted to its unit."""
    if config.scenario is None:
        return None, {}
    logQ = np.log(config.q)
    reports = {n: predict(config.geometry, config.scenario, n, config.ensemble) for n in config.replicas}
    first = reports[config.replicas[0]]
    values = {
        'mana': first['mana_logq_units'] * logQ,
        'annealed_mana': first['mana_logq_units'] * logQ,
    }
    if config.scenario in ('haar_subsystem', 'entanglement'):
        values['entropy_von_neumann'] = first['cuts']['l_A|B'] * logQ
        values['mana_entropy_formula'] = first['mana_logq_units'] * logQ
    if 'sre_logq_units' in first:
        values['sre_2'] = first['sre_logq_units'] * logQ
    for n, report in reports.items():
        values['log_wigner_moment_n{}'.format(n)] = report['log_wigner_moment_logq_units']
    return first, values


def runScenario(config, workers=None):
    """Sample a scenario and estimate every measure.

    Records hold quenched means of each per-sample measure, plus annealed
    values from the mean one-norm and mean Wigner moments, with jackknife
    errors:

        annealed_mana = log E[one_norm]
        log_wigner_moment_n = log E[W(2n)] / log q

    Returns:
        ScenarioRun
    """
    if isinstance(config, dict):
        config = ExperimentConfig.fromDict(config)
    flags = {
        'outcomes': outcomePolicy(config) if config.geometry.measured else 'none',
        'measurement_basis': config.measurementBasis,
        'born_weighted': True,
        'initial_state': 'computational_zero',
    }
    if config.geometry.measured and config.outcomes == 'auto' and flags['outcomes'] == 'sample':
        logger.warning('%s outcomes is above the limit of %s, sampling one outcome per circuit',
                       config.q ** len(config.geometry.measured), ENUMERATE_GUARD)
    logger.info('Starting %r', config)
    prediction, predicted = _predictions(config)
    results = _runAll(config, workers)

    samples = []
    for index, measures in enumerate(results):
        samples.append({'sample_id': index, 'seed': sampleSeed(config.seed, index), 'measures': measures})

    records = collections.OrderedDict()
    names = list(results[0].keys())
    for name in names:
        mean, stderr = estimate([measures[name] for measures in results])
        records[name] = EstimateRecord(name, mean, stderr, len(results), config.seed, flags, predicted.get(name))

    oneNorms = [measures['one_norm'] for measures in results]
    mean, stderr = jackknife(oneNorms, lambda values: np.log(values.mean()))
    records['annealed_mana'] = EstimateRecord(
        'annealed_mana', mean, stderr, len(results), config.seed, flags, predicted.get('annealed_mana'))
    logQ = np.log(config.q)
    for n in config.replicas:
        moments = [measures['wigner_moment_n{}'.format(n)] for measures in results]
        name = 'log_wigner_moment_n{}'.format(n)
        mean, stderr = jackknife(moments, lambda values: np.log(values.mean()) / logQ)
        records[name] = EstimateRecord(name, mean, stderr, len(results), config.seed, flags,
                                       predicted.get(name), unit='log q')

    logger.info('Finished %s samples of %r', len(results), config)
    return ScenarioRun(config, samples, records, prediction, flags)


def quenchedVsAnnealed(config, workers=None):
    """Compare E[log ||rho_A||_W] with log E[||rho_A||_W].

    The gap is never negative beyond statistical error, by concavity of log.
    """
    if isinstance(config, dict):
        config = ExperimentConfig.fromDict(config)
    results = _runAll(config, workers)
    oneNorms = np.array([measures['one_norm'] for measures in results])

    def gap(values):
        return np.log(values.mean()) - np.log(values).mean()

    quenched = float(np.log(oneNorms).mean())
    annealed = float(np.log(oneNorms.mean()))
    value, stderr = jackknife(oneNorms, gap)
    if np.all(oneNorms == oneNorms[0]):
        annealed, value, stderr = quenched, 0.0, 0.0
    return {'quenched': quenched, 'annealed': annealed, 'gap': value, 'gap_stderr': stderr, 'count': len(results)}


def coherentInfoSample(config, index):
    """Get I_c(R; A) in nats for one circuit with references on M.

    Each site of M starts maximally entangled with its own reference,
    which never takes part in the circuit.
    """
    if isinstance(config, dict):
        config = ExperimentConfig.fromDict(config)
    rng = sampleRng(config.seed, index)
    state = DenseState.computational([0] * config.nSites, config.q)
    extended, references = attachReference(state, config.geometry.regionM)
    extended = _evolve(config, extended, rng, nSites=config.nSites)
    return {'coherent_information': coherentInformation(extended, config.geometry.regionA, references)}


def _coherentInfoTask(args):
    return coherentInfoSample(*args)


def coherentInfoExperiment(config, workers=None):
    """Estimate the coherent information from region M to region A.

    Returns:
        EstimateRecord in nats, with the domain wall prediction when the
        geometry has an injection.
    """
    if isinstance(config, dict):
        config = ExperimentConfig.fromDict(config)
    if config.geometry.measured:
        raise ConfigError('coherent information is only sampled without measurements')
    results = _runAll(config, workers, task=_coherentInfoTask)
    mean, stderr = estimate([measures['coherent_information'] for measures in results])
    prediction = None
    if config.geometry.injection in ('single_qudit_haar', 'multi_qudit_haar') and config.geometry.regionM:
        report = predict(config.geometry, 'coherent_info', 1)
        prediction = report['coherent_information_logq_units'] * np.log(config.q)
    return EstimateRecord('coherent_information', mean, stderr, len(results), config.seed,
                          {'reference': 'maximally_entangled'}, prediction)
