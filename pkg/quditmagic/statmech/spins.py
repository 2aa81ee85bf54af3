"""Spin models of averaged random gates.

Both models share the Gram matrix d^(t - |a, b|), its inverse (the
Weingarten matrix) and the three-body weights built from them. They only
differ in which spins exist and how the distance between two spins is
measured.
"""

from __future__ import absolute_import

import logging

import numpy as np
import scipy.linalg

from .permutations import Permutation
from ..commutant import enumerateSigma, gramDistance
from ..exceptions import ConfigError, GuardExceededError, IntegrityError

logger = logging.getLogger(__name__)


class AbstractSpinModel(object):
    """Spins of t replicas and their metric."""

    NAME = ''  # Name used in configs and reports

    SPIN_GUARD = 5040  # Largest number of spins to build a Gram matrix for

    def __init__(self, t):
        if t < 1:
            raise ConfigError('replica count must be positive, got {}'.format(t))
        self.t = t
        self._spins = None
        self._distances = None
        self._weingarten = {}

    def __repr__(self):
        return '{}(t={})'.format(type(self).__name__, self.t)

    def _buildSpins(self):
        raise NotImplementedError

    def _distance(self, a, b):
        raise NotImplementedError

    @property
    def spins(self):
        if self._spins is None:
            self._spins = self._buildSpins()
            if len(self._spins) > self.SPIN_GUARD:
                raise GuardExceededError('{} spins is above the limit of {}'.format(len(self._spins), self.SPIN_GUARD))
        return self._spins

    def index(self, spin):
        return self.spins.index(spin)

    def distance(self, a, b):
        return self._distance(a, b)

    def distanceMatrix(self):
        if self._distances is None:
            spins = self.spins
            size = len(spins)
            distances = np.zeros((size, size), dtype=np.int64)
            for i in range(size):
                for j in range(i + 1, size):
                    distances[i, j] = distances[j, i] = self._distance(spins[i], spins[j])
            self._distances = distances
        return self._distances

    def gram(self, dim):
        """Get G(a, b) = dim^(t - |a, b|)."""
        return float(dim) ** (self.t - self.distanceMatrix())

    def weingarten(self, dim):
        """Get the inverse of the Gram matrix.

        Raises:
            IntegrityError: If the Gram matrix is singular at this dimension.
        """
        try:
            return self._weingarten[dim]
        except KeyError:
            pass
        gram = self.gram(dim)
        try:
            weingarten = scipy.linalg.inv(gram)
        except (scipy.linalg.LinAlgError, ValueError) as e:
            raise IntegrityError('Gram matrix of {!r} is singular at dimension {}: {}'.format(self, dim, e))
        residual = np.abs(weingarten.dot(gram) - np.eye(len(gram))).max()
        if residual > 1e-8:
            raise IntegrityError('Gram matrix of {!r} is singular at dimension {}'.format(self, dim))
        logger.debug('Inverted %s Gram matrix at dimension %s', self.NAME, dim)
        self._weingarten[dim] = weingarten
        return weingarten

    def threeBodyWeight(self, upperLeft, upperRight, lower, q):
        """Get J(s1, s2; s3) = sum_t Wg_q^2(s3, t) q^(t - |t, s1|) q^(t - |t, s2|).

        Aligned upper spins give an exact delta.
        """
        if upperLeft == upperRight:
            return 1.0 if lower == upperLeft else 0.0
        distances = self.distanceMatrix()
        i, j, k = self.index(upperLeft), self.index(upperRight), self.index(lower)
        row = self.weingarten(q * q)[k]
        return float(np.sum(row * float(q) ** (2 * self.t - distances[:, i] - distances[:, j])))


class HaarSpinModel(AbstractSpinModel):
    """Permutations of t replicas, the commutant of Haar gates."""

    NAME = 'haar'

    def _buildSpins(self):
        return Permutation.allOfSize(self.t)

    def _distance(self, a, b):
        return a.distance(b)


class CliffordSpinModel(AbstractSpinModel):
    """Stochastic Lagrangian subspaces, the commutant of Clifford gates."""

    NAME = 'clifford'

    def __init__(self, t, q):
        super(CliffordSpinModel, self).__init__(t)
        self.q = q

    def __repr__(self):
        return '{}(t={}, q={})'.format(type(self).__name__, self.t, self.q)

    def _buildSpins(self):
        return enumerateSigma(self.t, self.q)

    def _distance(self, a, b):
        return gramDistance(a, b)


def spinModel(name, t, q=None):
    """Get a spin model by name."""
    if name == HaarSpinModel.NAME:
        return HaarSpinModel(t)
    if name == CliffordSpinModel.NAME:
        if q is None:
            raise ConfigError('the clifford spin model needs q')
        return CliffordSpinModel(t, q)
    raise ConfigError('unknown spin model {!r}'.format(name))
