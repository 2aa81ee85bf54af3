"""Replica spin models of random circuits and their domain wall predictions."""

from __future__ import absolute_import

from .geometry import INJECTION_KINDS, Geometry
from .mincut import CutProblem, CutSolution, cutLength, cutProblem, solveCut
from .permutations import Permutation
from .predict import SCENARIOS, cliffordInjectionClosedForm, predict, predictAll
from .spins import CliffordSpinModel, HaarSpinModel, spinModel

__all__ = [
    'INJECTION_KINDS', 'Geometry', 'CutProblem', 'CutSolution', 'cutLength', 'cutProblem', 'solveCut',
    'Permutation', 'SCENARIOS', 'cliffordInjectionClosedForm', 'predict', 'predictAll',
    'CliffordSpinModel', 'HaarSpinModel', 'spinModel',
]
