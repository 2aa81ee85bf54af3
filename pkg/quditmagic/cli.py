"""Command line front end.

Exit codes:
    0: Success.
    2: Invalid configuration or input file.
    3: A size guard was exceeded.
    4: A numerical identity failed.
"""

from __future__ import absolute_import, print_function

import argparse
import csv
import datetime
import hashlib
import logging
import os
import sys

import numpy as np

from . import __version__
from .commutant import distanceMatrix, enumerateSigma
from .densesim import DenseState
from .ensembles import EstimateRecord, ExperimentConfig, runScenario
from .exceptions import (
    ConfigError, DimensionMismatchError, GuardExceededError, IntegrityError,
    NonInvertibleError, NotLagrangianError, StateValidationError,
)
from .fqarith import coefficientGrid
from .phasespace import magicMeasures, stabilizerRenyiEntropy, wignerTable
from .statmech import Geometry, predict, predictAll
from .utils import dumpJson, loadJson, saveJson

logger = logging.getLogger(__name__)

EXIT_CONFIG = 2

EXIT_GUARD = 3

EXIT_INTEGRITY = 4

SAMPLE_COLUMNS = ('sample_id', 'seed', 'measure', 'value')

COMPARE_COLUMNS = ('measure', 'unit', 'mean', 'stderr', 'prediction', 'deviation_sigma', 'deviation_abs')


def formatFloat(value):
    """Write a float with enough digits to read it back exactly.

    >>> formatFloat(0.1)
    '0.10000000000000001'
    """
    return '{:.17g}'.format(value)


def _emit(text, path=None):
    if path is None:
        print(text)
        return
    with open(path, 'w') as f:
        f.write(text + '\n')
    logger.info('Written %s', path)


def _writeCsv(rows, columns, path=None):
    stream = sys.stdout if path is None else open(path, 'w', newline='')
    try:
        writer = csv.DictWriter(stream, fieldnames=columns, lineterminator='\n')
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    finally:
        if path is not None:
            stream.close()
            logger.info('Written %s', path)


def _fileDigest(path):
    with open(path, 'rb') as f:
        return hashlib.sha256(f.read()).hexdigest()


def _loadState(path, q=None):
    state = DenseState.fromDict(loadJson(path))
    if q is not None and q != state.q:
        raise ConfigError('state file has q={}, but q={} was requested'.format(state.q, q))
    return state


def commandWigner(args):
    """Write the full Wigner table as CSV."""
    state = _loadState(args.state, args.q)
    table = wignerTable(state.densityMatrix(), state.q)
    digits = coefficientGrid(state.q, state.nSites)
    columns = []
    for site in range(state.nSites):
        columns += ['m{}'.format(site), 'n{}'.format(site)]
    columns.append('W')
    rows = []
    for i, ms in enumerate(digits):
        for j, ns in enumerate(digits):
            row = {}
            for site in range(state.nSites):
                row['m{}'.format(site)] = int(ms[site])
                row['n{}'.format(site)] = int(ns[site])
            row['W'] = formatFloat(table[i, j])
            rows.append(row)
    _writeCsv(rows, columns, args.out)


def commandMeasures(args):
    """Print the magic measures of a stored state as JSON."""
    state = _loadState(args.state, args.q)
    rho = state.densityMatrix()
    result = magicMeasures(rho, state.q)
    result['sre_2'] = stabilizerRenyiEntropy(rho, state.q)
    _emit(dumpJson(result), args.out)


def commandRun(args):
    """Run an experiment and write its samples, summary and manifest."""
    config = ExperimentConfig.fromFile(args.config)
    changes = {}
    if args.seed is not None:
        changes['seed'] = args.seed
    if args.samples is not None:
        changes['samples'] = args.samples
    if changes:
        config = config.copy(**changes)

    started = datetime.datetime.now(datetime.timezone.utc).isoformat()
    run = runScenario(config, workers=args.workers)
    if not os.path.exists(args.out):
        os.makedirs(args.out)

    rows = []
    for sample in run.samples:
        for measure, value in sample['measures'].items():
            rows.append({
                'sample_id': sample['sample_id'],
                'seed': sample['seed'],
                'measure': measure,
                'value': formatFloat(value),
            })
    samplesPath = os.path.join(args.out, 'samples.csv')
    _writeCsv(rows, SAMPLE_COLUMNS, samplesPath)

    summaryPath = saveJson(os.path.join(args.out, 'summary.json'), {
        'config': config,
        'records': list(run.records.values()),
        'prediction': run.prediction,
        'flags': run.flags,
    })
    saveJson(os.path.join(args.out, 'manifest.json'), {
        'config_hash': config.digest(),
        'seed': config.seed,
        'version': __version__,
        'started': started,
        'finished': datetime.datetime.now(datetime.timezone.utc).isoformat(),
        'outputs': {
            'samples': {'path': 'samples.csv', 'sha256': _fileDigest(samplesPath)},
            'summary': {'path': 'summary.json', 'sha256': _fileDigest(summaryPath)},
        },
    })
    for record in run.records.values():
        logger.info('%s = %s +/- %s', record.name, record.mean, record.stderr)
    _emit(dumpJson({'records': list(run.records.values())}))


def commandPredict(args):
    """Print domain wall predictions for a geometry document."""
    data = loadJson(args.config)
    geometry = Geometry.fromDict(data)
    n = args.n if args.n is not None else data.get('n', 1)
    scenario = args.scenario or data.get('scenario')
    if scenario:
        result = predict(geometry, scenario, n, data.get('ensemble'))
    else:
        result = predictAll(geometry, n)
    _emit(dumpJson(result), args.out)


def _predictedValues(prediction, config):
    """Get predicted values by record name from a prediction document."""
    if 'predictions' in prediction:
        if config.scenario not in prediction['predictions']:
            raise ConfigError('prediction file has no entry for scenario {!r}'.format(config.scenario))
        prediction = prediction['predictions'][config.scenario]
    if 'mana_logq_units' not in prediction:
        raise ConfigError('prediction file has no mana_logq_units')
    logQ = np.log(config.q)
    values = {
        'mana': prediction['mana_logq_units'] * logQ,
        'annealed_mana': prediction['mana_logq_units'] * logQ,
    }
    if 'log_wigner_moment_logq_units' in prediction:
        values['log_wigner_moment_n{}'.format(prediction.get('n', 1))] = prediction['log_wigner_moment_logq_units']
    if 'sre_logq_units' in prediction:
        values['sre_2'] = prediction['sre_logq_units'] * logQ
    return values


def commandCompare(args):
    """Print a deviation table of a finished run against a prediction file.

    The run directory is only read.
    """
    summary = loadJson(os.path.join(args.run, 'summary.json'))
    try:
        config = ExperimentConfig.fromDict(summary['config'])
        records = [EstimateRecord.fromDict(data) for data in summary['records']]
    except (KeyError, TypeError) as e:
        raise ConfigError('invalid run summary: {}'.format(e))
    values = _predictedValues(loadJson(args.predict), config)

    rows = []
    for record in records:
        if record.name not in values:
            continue
        record.prediction = values[record.name]
        rows.append({
            'measure': record.name,
            'unit': record.unit,
            'mean': formatFloat(record.mean),
            'stderr': formatFloat(record.stderr),
            'prediction': formatFloat(record.prediction),
            'deviation_sigma': formatFloat(record.deviation),
            'deviation_abs': formatFloat(record.absoluteDeviation),
        })
    if not rows:
        raise ConfigError('no record of {} has a prediction'.format(args.run))
    _writeCsv(rows, COMPARE_COLUMNS, args.out)


def commandEnumerate(args):
    """Print the stochastic Lagrangian subspaces and their distances."""
    subspaces = enumerateSigma(args.t, args.q)
    distances = distanceMatrix(subspaces)
    if args.out is None:
        _emit(dumpJson({'t': args.t, 'q': args.q, 'count': len(subspaces),
                        'bases': subspaces, 'distances': distances}))
        return
    if not os.path.exists(args.out):
        os.makedirs(args.out)
    saveJson(os.path.join(args.out, 'bases.json'), {'t': args.t, 'q': args.q, 'bases': subspaces})
    rows = []
    for i, row in enumerate(distances):
        values = {'index': i}
        values.update(('d{}'.format(j), int(value)) for j, value in enumerate(row))
        rows.append(values)
    columns = ['index'] + ['d{}'.format(j) for j in range(len(subspaces))]
    _writeCsv(rows, columns, os.path.join(args.out, 'distances.csv'))


def buildParser():
    parser = argparse.ArgumentParser(prog='quditmagic', description=__doc__.splitlines()[0])
    parser.add_argument('--version', action='version', version=__version__)
    parser.add_argument('-v', '--verbose', action='store_true', help='show debug logs')
    subparsers = parser.add_subparsers(dest='command')
    subparsers.required = True

    wigner = subparsers.add_parser('wigner', help='full Wigner table of a state file as CSV')
    wigner.add_argument('--state', required=True, help='state JSON file')
    wigner.add_argument('--q', type=int, help='expected local dimension')
    wigner.add_argument('--out', help='CSV path, default stdout')
    wigner.set_defaults(func=commandWigner)

    measures = subparsers.add_parser('measures', help='magic measures of a state file as JSON')
    measures.add_argument('--state', required=True, help='state JSON file')
    measures.add_argument('--q', type=int, help='expected local dimension')
    measures.add_argument('--out', help='JSON path, default stdout')
    measures.set_defaults(func=commandMeasures)

    run = subparsers.add_parser('run', help='Monte Carlo experiment')
    run.add_argument('--config', required=True, help='experiment JSON file')
    run.add_argument('--seed', type=int, help='override the master seed')
    run.add_argument('--samples', type=int, help='override the sample count')
    run.add_argument('--workers', type=int, help='worker processes, default from QUDITMAGIC_THREADS')
    run.add_argument('--out', default='run', help='output directory')
    run.set_defaults(func=commandRun)

    statmech = subparsers.add_parser('statmech-predict', help='domain wall predictions of a geometry')
    statmech.add_argument('--config', required=True, help='geometry JSON file')
    statmech.add_argument('--scenario', help='single scenario, default every scenario that fits')
    statmech.add_argument('--n', type=int, help='replica index')
    statmech.add_argument('--out', help='JSON path, default stdout')
    statmech.set_defaults(func=commandPredict)

    compare = subparsers.add_parser('compare', help='deviation table of a run against predictions')
    compare.add_argument('--run', required=True, help='run output directory')
    compare.add_argument('--predict', required=True, help='prediction JSON file')
    compare.add_argument('--out', help='CSV path, default stdout')
    compare.set_defaults(func=commandCompare)

    enumerate_ = subparsers.add_parser('enumerate-lagrangian', help='stochastic Lagrangian subspaces')
    enumerate_.add_argument('--t', type=int, required=True, help='number of copies')
    enumerate_.add_argument('--q', type=int, required=True, help='local dimension')
    enumerate_.add_argument('--out', help='directory for bases.json and distances.csv, default stdout')
    enumerate_.set_defaults(func=commandEnumerate)
    return parser


def main(argv=None):
    """Run the command line, returning the exit code."""
    args = buildParser().parse_args(argv)
    if args.verbose:
        from . import debug  # noqa: F401
    try:
        args.func(args)
    except (ConfigError, StateValidationError, DimensionMismatchError, NotLagrangianError) as e:
        print('error: {}'.format(e), file=sys.stderr)
        return EXIT_CONFIG
    except GuardExceededError as e:
        print('error: {}'.format(e), file=sys.stderr)
        return EXIT_GUARD
    except (IntegrityError, NonInvertibleError) as e:
        print('error: {}'.format(e), file=sys.stderr)
        return EXIT_INTEGRITY
    return 0
