"""Monte Carlo experiments over random circuit ensembles."""

from __future__ import absolute_import

from .config import GATE_ENSEMBLES, OUTCOME_POLICIES, ExperimentConfig
from .oracle import exactSmallCircuitOracle
from .runner import (
    EstimateRecord, ScenarioRun, coherentInfoExperiment, estimate, jackknife,
    quenchedVsAnnealed, runSample, runScenario,
)

__all__ = [
    'GATE_ENSEMBLES', 'OUTCOME_POLICIES', 'ExperimentConfig', 'exactSmallCircuitOracle',
    'EstimateRecord', 'ScenarioRun', 'coherentInfoExperiment', 'estimate', 'jackknife',
    'quenchedVsAnnealed', 'runSample', 'runScenario',
]
