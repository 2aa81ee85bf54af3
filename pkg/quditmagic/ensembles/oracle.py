"""Exact averages of Wigner moments over a few Haar gates.

The 2n-copy state is kept as a weighted sum of site products. Each site
factor is either the initial state rho^(x2n) or a replica permutation
r(sigma). A Haar gate on sites (i, j) maps a term to

    sum_sigma [sum_tau Wg(sigma, tau) f_i(tau) f_j(tau)] r_i(sigma) r_j(sigma)

with f(tau) = Tr(factor r(tau)^dagger) and Wg the Weingarten matrix in
dimension q^2. Closing the sum with the moment operator on A and traces
elsewhere gives E[sum_u |W_A(u)|^2n] with no sampling error.
"""

from __future__ import absolute_import

import collections
import logging

import numpy as np

from ..exceptions import ConfigError
from ..fqarith import PrimeField
from ..phasespace import parityTrace, renyiNegativity, validateDensity
from ..statmech.spins import HaarSpinModel
from ..utils import checkGuard
from ..utils.regions import Region

__all__ = ['GATE_GUARD', 'REPLICA_GUARD', 'exactSmallCircuitOracle']

logger = logging.getLogger(__name__)

GATE_GUARD = 2

REPLICA_GUARD = 4


def _stateTrace(rho, spin):
    """Get Tr(rho^(x2n) r(spin)^dagger), a product of Tr(rho^k) over cycles."""
    value = 1.0
    for length in spin.cycleLengths():
        value *= float(np.real(np.trace(np.linalg.matrix_power(rho, length))))
    return value


def _siteTrace(factor, spin, rhos, q):
    kind, value = factor
    if kind == 'state':
        return _stateTrace(rhos[value], spin)
    return float(q) ** value.inverse().compose(spin).cycleCount()


def _closeSite(factor, inA, rhos, q, n):
    """Get the final factor of one site, with the 1/q^2n of W on A."""
    kind, value = factor
    if not inA:
        if kind == 'state':
            return 1.0
        return float(q) ** value.cycleCount()
    if kind == 'state':
        return renyiNegativity(rhos[value], n, q)
    # Every phase point operator has the spectrum of A_0
    traces = np.prod([parityTrace(q, length) for length in value.cycleLengths()])
    return float(q) ** (2 - 2 * n) * float(traces)


def exactSmallCircuitOracle(q, nSites, gates, regionA, n=1, siteStates=None, ensemble='haar'):
    """Get E[sum_u |W_A(u)|^2n] exactly for a product state and up to two gates.

    Parameters:
        q (int): Local dimension.
        nSites (int): Number of sites.
        gates (list of tuple): Site pairs, applied in order.
        regionA (Region): Sites kept.
        n (int): Replica index.
        siteStates (list of array): Initial density matrix of each site,
            |0><0| by default.
        ensemble (str): 'haar', or 'identity' to skip averaging.

    Raises:
        GuardExceededError: If there are more than two gates or 2n > 4.

    >>> round(exactSmallCircuitOracle(3, 2, [(0, 1)], [0]), 12)
    0.2
    """
    PrimeField(q)
    if ensemble not in ('haar', 'identity'):
        raise ConfigError('the oracle averages haar gates only, got {!r}'.format(ensemble))
    checkGuard(len(gates), GATE_GUARD, 'gate count')
    checkGuard(2 * n, REPLICA_GUARD, 'replica count 2n')
    regionA = Region(regionA, nSites)
    if siteStates is None:
        zero = np.zeros((q, q), dtype=complex)
        zero[0, 0] = 1
        siteStates = [zero] * nSites
    if len(siteStates) != nSites:
        raise ConfigError('expected {} site states, got {}'.format(nSites, len(siteStates)))
    rhos = [validateDensity(rho, q)[0] for rho in siteStates]

    model = HaarSpinModel(2 * n)
    spins = model.spins
    weingarten = model.weingarten(q * q)
    terms = {tuple(('state', site) for site in range(nSites)): 1.0}
    if ensemble == 'haar':
        for left, right in gates:
            if left == right or not (0 <= left < nSites and 0 <= right < nSites):
                raise ConfigError('invalid gate on sites {}'.format((left, right)))
            updated = collections.defaultdict(float)
            for factors, coefficient in terms.items():
                overlaps = np.array([
                    _siteTrace(factors[left], tau, rhos, q) * _siteTrace(factors[right], tau, rhos, q)
                    for tau in spins
                ])
                weights = coefficient * weingarten.dot(overlaps)
                for sigma, weight in zip(spins, weights):
                    if weight == 0:
                        continue
                    key = list(factors)
                    key[left] = key[right] = ('perm', sigma)
                    updated[tuple(key)] += weight
            terms = updated
            logger.debug('Gate %s leaves %s terms', (left, right), len(terms))

    total = 0.0
    for factors, coefficient in terms.items():
        value = coefficient
        for site, factor in enumerate(factors):
            value *= _closeSite(factor, site in regionA, rhos, q, n)
        total += value
    return float(total)
