"""Magic of qudit states produced by random brickwork circuits.

Wigner negativity, mana and stabilizer Renyi entropy are computed exactly
from simulated states, and compared with minimal domain wall predictions
of the averaged replica spin models.

Changes planned for 0.2:
    - Clifford gates in the exact oracle
"""

from __future__ import absolute_import

__all__ = [
    'PrimeField', 'DenseState', 'ExperimentConfig', 'Geometry',
    'magicMeasures', 'wignerTable', 'predict', 'runScenario',
]
__version__ = '0.1.0'

from .densesim import DenseState
from .ensembles import ExperimentConfig, runScenario
from .fqarith import PrimeField
from .phasespace import magicMeasures, wignerTable
from .statmech import Geometry, predict
