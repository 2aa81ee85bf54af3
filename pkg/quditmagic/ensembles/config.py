"""Experiment configuration documents.

A document is a JSON object such as::

    {
        "q": 3, "N": 4, "t": 2,
        "scenario": "clifford_injection",
        "A": [0, 1], "M": [1], "measured": [],
        "injection": "single_qudit_haar",
        "gates": "clifford",
        "n": [1, 2],
        "samples": 200,
        "seed": 1234,
        "outcomes": "auto"
    }

`gates` is either one ensemble name for every layer or a list with one
name per layer. `scenario` picks the prediction to compare against and
may be left out.
"""

from __future__ import absolute_import

import hashlib
import logging

from ..exceptions import ConfigError
from ..fqarith import PrimeField
from ..statmech.geometry import Geometry
from ..statmech.predict import SCENARIOS
from ..utils import CustomEncoder, dumpJson, loadJson

__all__ = ['GATE_ENSEMBLES', 'OUTCOME_POLICIES', 'ExperimentConfig']

logger = logging.getLogger(__name__)

GATE_ENSEMBLES = ('haar', 'clifford', 'identity')

OUTCOME_POLICIES = ('enumerate', 'sample', 'auto')


class ExperimentConfig(object):
    """Validated description of one Monte Carlo experiment."""

    def __init__(self, q, nSites, depth, regionA, regionM=(), measured=(), injection='none',
                 gates='haar', replicas=(1,), samples=100, seed=0, outcomes='auto',
                 scenario=None, entropyOrders=(2,)):
        PrimeField(q)
        self.q = int(q)
        self.geometry = Geometry(nSites, depth, regionA, regionM, measured, injection)
        if not self.geometry.regionA:
            raise ConfigError('region A must not be empty')

        if isinstance(gates, str):
            gates = [gates] * self.geometry.depth
        gates = list(gates)
        if len(gates) != self.geometry.depth:
            raise ConfigError('expected {} gate ensembles, one per layer, got {}'.format(self.geometry.depth, len(gates)))
        for name in gates:
            if name not in GATE_ENSEMBLES:
                raise ConfigError('unknown gate ensemble {!r}, expected one of {}'.format(name, GATE_ENSEMBLES))
        self.gates = gates

        self.replicas = [int(n) for n in replicas]
        if not self.replicas or any(n < 1 for n in self.replicas):
            raise ConfigError('replica indices must be positive integers, got {}'.format(replicas))
        self.samples = int(samples)
        if self.samples < 1:
            raise ConfigError('need at least one sample, got {}'.format(samples))
        self.seed = int(seed)
        if outcomes not in OUTCOME_POLICIES:
            raise ConfigError('unknown outcome policy {!r}, expected one of {}'.format(outcomes, OUTCOME_POLICIES))
        self.outcomes = outcomes
        if scenario is not None and scenario not in SCENARIOS:
            raise ConfigError('unknown scenario {!r}, expected one of {}'.format(scenario, SCENARIOS))
        self.scenario = scenario
        self.entropyOrders = [int(order) for order in entropyOrders]

    def __repr__(self):
        return '{}(q={}, geometry={!r}, gates={}, samples={}, seed={})'.format(
            type(self).__name__, self.q, self.geometry, self.gates, self.samples, self.seed)

    @property
    def nSites(self):
        return self.geometry.nSites

    @property
    def depth(self):
        return self.geometry.depth

    @property
    def ensemble(self):
        """Get the stat mech ensemble matching the gates, or None for a mixture."""
        kinds = set(self.gates) - {'identity'}
        if len(kinds) == 1:
            return kinds.pop()
        return None

    @property
    def measurementBasis(self):
        if self.geometry.injection == 'magical_measurement':
            return 'haar_random'
        return 'computational'

    @classmethod
    def fromDict(cls, data):
        """Build a config from a parsed JSON document.

        Raises:
            ConfigError: If a field is missing or invalid.
        """
        if not isinstance(data, dict):
            raise ConfigError('config must be a JSON object')
        try:
            return cls(
                q=data['q'],
                nSites=data['N'],
                depth=data['t'],
                regionA=data['A'],
                regionM=data.get('M', ()),
                measured=data.get('measured', ()),
                injection=data.get('injection', 'none'),
                gates=data.get('gates', 'haar'),
                replicas=data.get('n', (1,)),
                samples=data.get('samples', 100),
                seed=data.get('seed', 0),
                outcomes=data.get('outcomes', 'auto'),
                scenario=data.get('scenario'),
                entropyOrders=data.get('entropy_orders', (2,)),
            )
        except KeyError as e:
            raise ConfigError('config is missing the field {}'.format(e))
        except (TypeError, ValueError) as e:
            if isinstance(e, ConfigError):
                raise
            raise ConfigError('invalid config: {}'.format(e))

    @classmethod
    def fromFile(cls, path):
        logger.info('Loading config %s', path)
        return cls.fromDict(loadJson(path))

    def toDict(self):
        return {
            'q': self.q,
            'N': self.nSites,
            't': self.depth,
            'A': self.geometry.regionA,
            'M': self.geometry.regionM,
            'measured': self.geometry.measured,
            'injection': self.geometry.injection,
            'gates': self.gates,
            'n': self.replicas,
            'samples': self.samples,
            'seed': self.seed,
            'outcomes': self.outcomes,
            'scenario': self.scenario,
            'entropy_orders': self.entropyOrders,
        }

    def copy(self, **changes):
        """Get a copy with some fields replaced, using the document names."""
        data = self.toDict()
        data.update(changes)
        return type(self).fromDict(data)

    def digest(self):
        """Get a stable hash of the document."""
        return hashlib.sha256(dumpJson(self.toDict()).encode('utf-8')).hexdigest()


CustomEncoder.register(ExperimentConfig, ExperimentConfig.toDict)
