"""Exact state-vector simulation of brickwork circuits on N qudits."""

from __future__ import absolute_import

import collections
import logging

import numpy as np
import scipy.linalg

from .exceptions import ConfigError, DimensionMismatchError, StateValidationError
from .fqarith import PrimeField
from .phasespace import DEFAULT_TOLERANCE
from .utils import CustomEncoder, checkGuard
from .utils.regions import Region

__all__ = [
    'DenseState', 'MeasurementOutcome', 'validateGate', 'applyGate', 'applyTwoQuditGate',
    'brickworkPairs', 'brickworkLayer', 'runBrickwork', 'reducedDensity',
    'renyiEntropy', 'entropies', 'haarUnitary', 'measureRegion', 'sumGate',
    'attachReference', 'coherentInformation',
]

logger = logging.getLogger(__name__)

STATE_GUARD = 3 * 10 ** 6

REDUCED_GUARD = 4096

ENUMERATE_GUARD = 2187

MeasurementOutcome = collections.namedtuple('MeasurementOutcome', 'probability outcome state')


class DenseState(object):
    """Normalised pure state of N qudits.

    Parameters:
        amplitudes (array): Vector of length q^N, site 0 most significant.
        q (int): Local dimension, an odd prime.
        nSites (int): Number of qudits.
    """

    def __init__(self, amplitudes, q, nSites, tol=DEFAULT_TOLERANCE):
        PrimeField(q)
        checkGuard(q ** nSites, STATE_GUARD, 'state size q^N', 'reduce N or q')
        amplitudes = np.array(amplitudes, dtype=complex).reshape(-1)
        if len(amplitudes) != q ** nSites:
            raise DimensionMismatchError('expected {} amplitudes, got {}'.format(q ** nSites, len(amplitudes)))
        norm = np.linalg.norm(amplitudes)
        if abs(norm - 1) > tol:
            raise StateValidationError('state has norm {}'.format(norm))
        self.amplitudes = amplitudes
        self.q = q
        self.nSites = nSites

    def __repr__(self):
        return '{}(q={}, nSites={})'.format(type(self).__name__, self.q, self.nSites)

    @classmethod
    def computational(cls, digits, q):
        """Build the product state |d_0 d_1 ... d_N-1>."""
        digits = [int(d) for d in digits]
        if any(d < 0 or d >= q for d in digits):
            raise ConfigError('basis digits must be in [0, {}), got {}'.format(q, digits))
        amplitudes = np.zeros(q ** len(digits), dtype=complex)
        index = 0
        for d in digits:
            index = index * q + d
        amplitudes[index] = 1
        return cls(amplitudes, q, len(digits))

    @classmethod
    def fromDict(cls, data):
        """Load the {q, N, amplitudes: [[re, im], ...]} layout."""
        try:
            pairs = np.asarray(data['amplitudes'], dtype=float)
            q, nSites = int(data['q']), int(data['N'])
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError('invalid state document: {}'.format(e))
        if pairs.ndim != 2 or pairs.shape[1] != 2:
            raise ConfigError('amplitudes must be a list of [re, im] pairs')
        return cls(pairs[:, 0] + 1j * pairs[:, 1], q, nSites)

    def toDict(self):
        return {
            'q': self.q,
            'N': self.nSites,
            'amplitudes': np.stack([self.amplitudes.real, self.amplitudes.imag], axis=1),
        }

    @property
    def dim(self):
        return self.q ** self.nSites

    def tensor(self):
        """Get the amplitudes with one axis per site."""
        return self.amplitudes.reshape((self.q,) * self.nSites)

    def copy(self):
        return type(self)(self.amplitudes.copy(), self.q, self.nSites)

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))

    def densityMatrix(self):
        return np.outer(self.amplitudes, self.amplitudes.conj())


CustomEncoder.register(DenseState, DenseState.toDict)


def _checkSites(sites, nSites):
    sites = tuple(int(site) for site in sites)
    if len(set(sites)) != len(sites):
        raise DimensionMismatchError('site collision in {}'.format(sites))
    if any(site < 0 or site >= nSites for site in sites):
        raise DimensionMismatchError('sites {} out of range for {} qudits'.format(sites, nSites))
    return sites


def validateGate(gate, nQudits, q, tol=DEFAULT_TOLERANCE):
    """Check a gate is a unitary on nQudits qudits.

    Raises:
        StateValidationError: If the gate has the wrong shape or is not unitary.
    """
    gate = np.asarray(gate, dtype=complex)
    dim = q ** nQudits
    if gate.shape != (dim, dim):
        raise StateValidationError('gate must have shape {}, got {}'.format((dim, dim), gate.shape))
    if not np.allclose(gate.dot(gate.conj().T), np.eye(dim), atol=tol, rtol=0):
        raise StateValidationError('gate is not unitary')
    return gate


def applyGate(state, gate, sites, tol=DEFAULT_TOLERANCE, validate=True):
    """Apply a k-qudit gate, with the gate's tensor order following `sites`.

    Returns:
        New `DenseState`.
    """
    sites = _checkSites(sites, state.nSites)
    k = len(sites)
    if validate:
        gate = validateGate(gate, k, state.q, tol)
    psi = np.moveaxis(state.tensor(), sites, range(k))
    shape = psi.shape
    psi = gate.dot(psi.reshape(state.q ** k, -1)).reshape(shape)
    psi = np.moveaxis(psi, range(k), sites)
    return type(state)(psi.reshape(-1), state.q, state.nSites)


def applyTwoQuditGate(state, gate, sites, tol=DEFAULT_TOLERANCE):
    if len(sites) != 2:
        raise DimensionMismatchError('expected two sites, got {}'.format(sites))
    return applyGate(state, gate, sites, tol)


def brickworkPairs(nSites, parity):
    """Get the gate positions of one brickwork layer with open boundaries.

    >>> brickworkPairs(4, 0)
    [(0, 1), (2, 3)]
    >>> brickworkPairs(5, 1)
    [(1, 2), (3, 4)]
    """
    return [(i, i + 1) for i in range(parity % 2, nSites - 1, 2)]


def brickworkLayer(state, parity, gateSupplier):
    """Apply one layer, asking `gateSupplier(pair)` for each gate."""
    if state.nSites < 2:
        raise ConfigError('brickwork circuits need at least two sites')
    for pair in brickworkPairs(state.nSites, parity):
        state = applyGate(state, gateSupplier(pair), pair)
    return state


def runBrickwork(state, depth, gateSupplier):
    """Apply `depth` alternating layers, starting with the even layer."""
    for layer in range(depth):
        state = brickworkLayer(state, layer % 2, gateSupplier)
    logger.debug('Applied %s brickwork layers to %r', depth, state)
    return state


def reducedDensity(state, region):
    """Get the density matrix of the sites in `region`, in increasing site order.

    Raises:
        GuardExceededError: If q^|A| is above the reduced state guard.
    """
    region = Region(region, state.nSites)
    checkGuard(state.q ** len(region), REDUCED_GUARD, 'reduced state dimension q^|A|')
    psi = np.moveaxis(state.tensor(), region, range(len(region)))
    psi = psi.reshape(state.q ** len(region), -1)
    return psi.dot(psi.conj().T)


def _spectrum(rho):
    values = np.clip(np.linalg.eigvalsh(rho), 0, None)
    return values[values > 0]


def renyiEntropy(rho, order=1):
    """Get the Renyi entropy in nats, von Neumann for order 1."""
    values = _spectrum(rho)
    if order == 1:
        return float(-np.sum(values * np.log(values)))
    if order == np.inf:
        return float(-np.log(values.max()))
    return float(np.log(np.sum(values ** order)) / (1 - order))


def entropies(rho, orders=(2,)):
    """Get the von Neumann entropy and Renyi entropies of the given orders."""
    result = {'von_neumann': renyiEntropy(rho, 1)}
    for order in orders:
        result['renyi_{}'.format(order)] = renyiEntropy(rho, order)
    return result


def haarUnitary(dim, rng):
    """Sample a Haar random unitary.

    Parameters:
        dim (int): Matrix dimension.
        rng (numpy.random.Generator): Source of randomness.
    """
    if dim < 1:
        raise ConfigError('dimension must be positive, got {}'.format(dim))
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = scipy.linalg.qr(z)
    diagonal = np.diag(r)
    return q * (diagonal / np.abs(diagonal))


def _digits(index, q, length):
    digits = []
    for _ in range(length):
        index, d = divmod(index, q)
        digits.append(int(d))
    return tuple(reversed(digits))


def measureRegion(state, region, mode='enumerate', basis='computational', rng=None):
    """Measure every site of `region` projectively.

    Parameters:
        mode (str): 'enumerate' returns every outcome with its Born weight,
            'sample' draws a single outcome.
        basis (str): 'computational', or 'haar_random' to rotate each site by
            an independent Haar unitary before measuring.
        rng (numpy.random.Generator): Required unless enumerating in the
            computational basis.

    Returns:
        List of `MeasurementOutcome`, each with a normalised state on all sites.

    Raises:
        GuardExceededError: If enumerating more than 2187 outcomes.
    """
    if mode not in ('enumerate', 'sample'):
        raise ConfigError('unknown measurement mode {!r}'.format(mode))
    if basis not in ('computational', 'haar_random'):
        raise ConfigError('unknown measurement basis {!r}'.format(basis))
    region = Region(region, state.nSites)
    if (mode == 'sample' or basis == 'haar_random') and rng is None:
        raise ConfigError('a random generator is needed for {} measurement in the {} basis'.format(mode, basis))
    if mode == 'enumerate':
        checkGuard(state.q ** len(region), ENUMERATE_GUARD, 'outcome count q^|R|', 'use sample mode')

    if basis == 'haar_random':
        for site in region:
            state = applyGate(state, haarUnitary(state.q, rng), (site,), validate=False)

    k = len(region)
    psi = np.moveaxis(state.tensor(), region, range(k))
    shape = psi.shape
    psi = psi.reshape(state.q ** k, -1)
    probabilities = np.sum(np.abs(psi) ** 2, axis=1)

    if mode == 'sample':
        indices = [rng.choice(len(probabilities), p=probabilities / probabilities.sum())]
    else:
        indices = np.nonzero(probabilities > DEFAULT_TOLERANCE ** 2)[0]

    outcomes = []
    for index in indices:
        probability = float(probabilities[index])
        projected = np.zeros_like(psi)
        projected[index] = psi[index] / np.sqrt(probability)
        projected = np.moveaxis(projected.reshape(shape), range(k), region)
        outcomes.append(MeasurementOutcome(
            probability, _digits(index, state.q, k),
            type(state)(projected.reshape(-1), state.q, state.nSites),
        ))
    return outcomes


def sumGate(q):
    """Get the gate |a, b> -> |a, a + b> on two qudits."""
    gate = np.zeros((q * q, q * q), dtype=complex)
    for a in range(q):
        for b in range(q):
            gate[a * q + (a + b) % q, a * q + b] = 1
    return gate


def attachReference(state, region, tol=DEFAULT_TOLERANCE):
    """Maximally entangle each site of `region` with a new reference qudit.

    The references are appended after the last site, in the order of
    `region`. Each site must hold a computational basis state.

    Returns:
        Tuple of the state on N + |M| sites and the reference `Region`.
    """
    region = Region(region, state.nSites)
    q = state.q
    checkGuard(q ** (state.nSites + len(region)), STATE_GUARD, 'state size q^(N+|M|)', 'shrink M')
    for site in region:
        populations = np.real(np.diag(reducedDensity(state, [site])))
        if populations.max() < 1 - tol:
            raise StateValidationError('site {} is not in a computational basis state'.format(site))

    plus = np.full(q ** len(region), q ** (-len(region) / 2.0), dtype=complex)
    extended = type(state)(np.kron(state.amplitudes, plus), q, state.nSites + len(region))
    references = Region(range(state.nSites, state.nSites + len(region)))
    gate = sumGate(q)
    for site, reference in zip(region, references):
        extended = applyGate(extended, gate, (reference, site), validate=False)
    return extended, references


def coherentInformation(state, regionA, references, order=1):
    """Get I_c = S(A) - S(A R) in nats."""
    regionA = Region(regionA, state.nSites)
    references = Region(references, state.nSites)
    if not regionA.isdisjoint(references):
        raise ConfigError('region A overlaps the reference qudits')
    entropyA = renyiEntropy(reducedDensity(state, regionA), order) if regionA else 0.0
    entropyAR = renyiEntropy(reducedDensity(state, regionA.union(references)), order)
    return entropyA - entropyAR
