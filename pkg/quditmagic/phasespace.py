"""Discrete phase space of N qudits of odd prime dimension q.

Phase points are interleaved vectors u = (m_1, n_1, ..., m_N, n_N) and
tables are indexed [m, n] with m and n flattened in row-major order, so
site 0 is the most significant digit (matching `numpy.kron` ordering).
"""

from __future__ import absolute_import

import logging

import numpy as np

from .exceptions import ConfigError, DimensionMismatchError, IntegrityError, StateValidationError
from .fqarith import PrimeField, coefficientGrid
from .utils import checkGuard

__all__ = [
    'DEFAULT_TOLERANCE', 'rootOfUnity', 'siteCount', 'validateDensity',
    'displacementOperator', 'phasePointOperator', 'parityOperator', 'parityTrace',
    'wignerTable', 'wignerFunction', 'weylTable', 'weylFunction',
    'magicMeasures', 'renyiNegativity', 'stabilizerRenyiEntropy', 'momentOperator',
]

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-9

MOMENT_GUARD = 4000

_ROOTS = {}


def rootOfUnity(q):
    """Get the powers w^k of w = exp(2 pi i / q) for k in [0, q)."""
    try:
        return _ROOTS[q]
    except KeyError:
        powers = np.exp(2j * np.pi * np.arange(q) / q)
        _ROOTS[q] = powers
        return powers


def siteCount(dim, q):
    """Get N from a dimension q^N.

    >>> siteCount(27, 3)
    3

    Raises:
        DimensionMismatchError: If the dimension is not a power of q.
    """
    n = 0
    size = 1
    while size < dim:
        size *= q
        n += 1
    if size != dim:
        raise DimensionMismatchError('dimension {} is not a power of {}'.format(dim, q))
    return n


def _flatIndex(vectors, q):
    """Get the row-major index of digit vectors along the last axis."""
    vectors = np.asarray(vectors) % q
    weights = q ** np.arange(vectors.shape[-1] - 1, -1, -1)
    return vectors.dot(weights)


def _splitPoint(u, q):
    u = np.asarray(u, dtype=np.int64) % q
    if u.ndim != 1 or len(u) % 2:
        raise DimensionMismatchError('phase point must have even length, got {}'.format(u.shape))
    return u[0::2], u[1::2]


def validateDensity(rho, q, tol=DEFAULT_TOLERANCE):
    """Check a density matrix and get its site count.

    Returns:
        Tuple of the matrix as a complex array and N.

    Raises:
        StateValidationError: If it is not square, Hermitian and of unit trace.
    """
    PrimeField(q)
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise StateValidationError('density matrix must be square, got shape {}'.format(rho.shape))
    try:
        nSites = siteCount(rho.shape[0], q)
    except DimensionMismatchError as e:
        raise StateValidationError(str(e))
    if not np.allclose(rho, rho.conj().T, atol=tol, rtol=0):
        raise StateValidationError('density matrix is not Hermitian')
    trace = np.trace(rho)
    if abs(trace - 1) > tol:
        raise StateValidationError('density matrix has trace {}'.format(trace))
    return rho, nSites


def displacementOperator(u, q):
    """Build T_u = w^(-mn/2) Z^m X^n, tensored over the qudits of u.

    >>> T = displacementOperator((0, 1), 3)
    >>> [int(T[i, 0].real) for i in range(3)]
    [0, 1, 0]
    """
    field = PrimeField(q)
    powers = rootOfUnity(q)
    ms, ns = _splitPoint(u, q)
    operator = np.ones((1, 1), dtype=complex)
    k = np.arange(q)
    for m, n in zip(ms, ns):
        single = np.zeros((q, q), dtype=complex)
        single[(k + n) % q, k] = powers[(m * k + field.inv2 * m * n) % q]
        operator = np.kron(operator, single)
    return operator


def phasePointOperator(u, q):
    """Build A_u = T_u A_0 T_u^dagger, tensored over the qudits of u.

    On one qudit A_(m,n)|b> = w^(2m(n-b)) |2n-b>.
    """
    PrimeField(q)
    powers = rootOfUnity(q)
    ms, ns = _splitPoint(u, q)
    operator = np.ones((1, 1), dtype=complex)
    b = np.arange(q)
    for m, n in zip(ms, ns):
        single = np.zeros((q, q), dtype=complex)
        single[(2 * n - b) % q, b] = powers[(2 * m * (n - b)) % q]
        operator = np.kron(operator, single)
    return operator


def parityOperator(q, nQudits=1):
    """Get A_0, sending each |j> to |-j>."""
    return phasePointOperator(np.zeros(2 * nQudits, dtype=np.int64), q)


def parityTrace(q, power):
    """Get Tr(A_0^c) on one qudit, which is q for even c and 1 for odd c.

    >>> parityTrace(5, 4), parityTrace(5, 3)
    (5, 1)
    """
    return q if not power % 2 else 1


def wignerTable(rho, q, tol=DEFAULT_TOLERANCE):
    """Get every value W(u) = q^-N Tr(A_u rho).

    Each column n is a single inverse FFT of s -> rho[n-s, n+s] read at
    the frequency 2m, so A_u is never built.

    Returns:
        Real array of shape (q^N, q^N) indexed [m, n].

    Raises:
        StateValidationError: If rho is not a density matrix.
        IntegrityError: If the table has an imaginary part above tolerance.
    """
    rho, nSites = validateDensity(rho, q, tol)
    dim = rho.shape[0]
    digits = coefficientGrid(q, nSites)
    rows = _flatIndex(digits[:, None, :] - digits[None, :, :], q)
    cols = _flatIndex(digits[:, None, :] + digits[None, :, :], q)
    diagonals = rho[rows, cols].reshape((dim,) + (q,) * nSites)
    spectrum = np.fft.ifftn(diagonals, axes=tuple(range(1, nSites + 1))).reshape(dim, dim)
    table = spectrum[:, _flatIndex(2 * digits, q)].T
    residue = np.abs(table.imag).max()
    if residue > tol:
        raise IntegrityError('Wigner function has imaginary part {:.3g}'.format(residue))
    return np.ascontiguousarray(table.real)


def wignerFunction(rho, u, q, tol=DEFAULT_TOLERANCE):
    """Get W(u) at a single phase point."""
    rho, nSites = validateDensity(rho, q, tol)
    ms, ns = _splitPoint(u, q)
    if len(ms) != nSites:
        raise DimensionMismatchError('phase point has {} qudits, state has {}'.format(len(ms), nSites))
    digits = coefficientGrid(q, nSites)
    phases = rootOfUnity(q)[(2 * digits.dot(ms)) % q]
    values = rho[_flatIndex(ns - digits, q), _flatIndex(ns + digits, q)]
    value = phases.dot(values) / rho.shape[0]
    if abs(value.imag) > tol:
        raise IntegrityError('Wigner function has imaginary part {:.3g}'.format(abs(value.imag)))
    return float(value.real)


def weylTable(rho, q, tol=DEFAULT_TOLERANCE):
    """Get every value chi(u) = Tr(T_u rho).

    Returns:
        Complex array of shape (q^N, q^N) indexed [m, n].
    """
    rho, nSites = validateDensity(rho, q, tol)
    dim = rho.shape[0]
    digits = coefficientGrid(q, nSites)
    cols = _flatIndex(digits[:, None, :] + digits[None, :, :], q)
    offDiagonals = rho[np.arange(dim)[None, :], cols].reshape((dim,) + (q,) * nSites)
    spectrum = np.fft.ifftn(offDiagonals, axes=tuple(range(1, nSites + 1))).reshape(dim, dim) * dim
    phases = rootOfUnity(q)[(PrimeField(q).inv2 * digits.dot(digits.T)) % q]
    return phases * spectrum.T


def weylFunction(rho, u, q, tol=DEFAULT_TOLERANCE):
    """Get chi(u) at a single phase point."""
    rho, nSites = validateDensity(rho, q, tol)
    ms, ns = _splitPoint(u, q)
    if len(ms) != nSites:
        raise DimensionMismatchError('phase point has {} qudits, state has {}'.format(len(ms), nSites))
    return complex(np.trace(displacementOperator(u, q).dot(rho)))


def magicMeasures(rho, q, tol=DEFAULT_TOLERANCE, table=None):
    """Get the Wigner one-norm, sum negativity and mana.

    Only values below -tol count as negative, so stabilizer states give
    exact zeros.

    >>> rho = np.zeros((3, 3)); rho[0, 0] = 1
    >>> sorted(magicMeasures(rho, 3).items())
    [('mana', 0.0), ('one_norm', 1.0), ('sum_negativity', 0.0)]
    """
    if table is None:
        table = wignerTable(rho, q, tol)
    negatives = table[table < -tol]
    sumNegativity = float(-negatives.sum()) if len(negatives) else 0.0
    oneNorm = 1.0 + 2.0 * sumNegativity
    return {
        'one_norm': oneNorm,
        'sum_negativity': sumNegativity,
        'mana': float(np.log(oneNorm)),
    }


def renyiNegativity(rho, n, q, tol=DEFAULT_TOLERANCE, table=None):
    """Get the replica moment sum_u |W(u)|^(2n).

    At n = 1/2 this is the one-norm.
    """
    if n <= 0:
        raise ConfigError('replica index must be positive, got {}'.format(n))
    if table is None:
        table = wignerTable(rho, q, tol)
    return float(np.sum(np.abs(table) ** (2 * n)))


def stabilizerRenyiEntropy(rho, q, alpha=2, tol=DEFAULT_TOLERANCE):
    """Get M_alpha = log(sum |chi|^(2 alpha) / (d Tr rho^2)) / (1 - alpha).

    For alpha=2 this is -log(sum |chi|^4 / (d Tr rho^2)).
    """
    if alpha == 1:
        raise ConfigError('stabilizer entropy is not defined here for alpha=1')
    rho, _ = validateDensity(rho, q, tol)
    chi = weylTable(rho, q, tol)
    purity = float(np.real(np.trace(rho.dot(rho))))
    total = np.sum(np.abs(chi) ** (2 * alpha))
    value = float(np.log(total / (rho.shape[0] * purity)) / (1 - alpha))
    if abs(value) < tol:
        return 0.0
    return value


def momentOperator(kind, n, q):
    """Build a replica moment operator on 2n copies of one qudit.

    Parameters:
        kind (str): 'A' for sum_u A_u^(x2n), 'T' for sum_u T_u^(xn) x T_u^dagger^(xn).
        n (int): Replica index.
        q (int): Modulus.

    Raises:
        GuardExceededError: If q^(2n) is above the moment guard.
    """
    if kind not in ('A', 'T'):
        raise ConfigError('moment kind must be "A" or "T", got {!r}'.format(kind))
    PrimeField(q)
    checkGuard(q ** (2 * n), MOMENT_GUARD, 'moment operator dimension q^2n')
    total = np.zeros((q ** (2 * n), q ** (2 * n)), dtype=complex)
    for m in range(q):
        for p in range(q):
            if kind == 'A':
                factors = [phasePointOperator((m, p), q)] * (2 * n)
            else:
                single = displacementOperator((m, p), q)
                factors = [single] * n + [single.conj().T] * n
            term = factors[0]
            for factor in factors[1:]:
                term = np.kron(term, factor)
            total += term
    logger.debug('Built %s^(%s) moment operator for q=%s', kind, 2 * n, q)
    return total
