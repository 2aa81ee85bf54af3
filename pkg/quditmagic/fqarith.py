"""Arithmetic over the prime field F_q for odd primes q.

Vectors in phase space use the interleaved layout (m_1, n_1, ..., m_N, n_N),
so the operators of one qudit are contiguous.
"""

from __future__ import absolute_import

import itertools
import logging

import numpy as np

from .exceptions import DimensionMismatchError, NonInvertibleError, NotPrimeError
from .utils import CustomEncoder, checkGuard

__all__ = [
    'PrimeField', 'FVector', 'isPrime', 'symplecticForm', 'symplecticGram',
    'rowReduce', 'rank', 'nullspace', 'inverseMatrix', 'coefficientGrid',
    'spanElements', 'enumerateSubspaces', 'gaussianBinomial',
]

logger = logging.getLogger(__name__)

SUBSPACE_GUARD = 10 ** 7


def isPrime(n):
    """Check primality by trial division.

    >>> [p for p in range(12) if isPrime(p)]
    [2, 3, 5, 7, 11]
    """
    if n < 2:
        return False
    if n < 4:
        return True
    if not n % 2:
        return False
    i = 3
    while i * i <= n:
        if not n % i:
            return False
        i += 2
    return True


class PrimeField(object):
    """The field F_q of residues modulo an odd prime.

    >>> F = PrimeField(7)
    >>> F.inv2
    4
    >>> F.inv(3), F.neg(3), F.mul(4, 5)
    (5, 4, 6)
    """

    __slots__ = ['_q']

    def __init__(self, q):
        try:
            q = int(q)
        except (TypeError, ValueError):
            raise NotPrimeError('modulus must be an integer, got {!r}'.format(q))
        if q < 3 or not isPrime(q):
            raise NotPrimeError('modulus must be an odd prime, got {}'.format(q))
        self._q = q

    def __repr__(self):
        return '{}({})'.format(type(self).__name__, self._q)

    def __int__(self):
        return self._q
    __index__ = __int__

    def __eq__(self, other):
        return int(self) == int(other)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(self._q)

    @property
    def q(self):
        """Get the modulus."""
        return self._q

    def reduce(self, a):
        """Get the canonical representative in [0, q)."""
        return int(a) % self._q

    def add(self, a, b):
        return (int(a) + int(b)) % self._q

    def sub(self, a, b):
        return (int(a) - int(b)) % self._q

    def mul(self, a, b):
        return (int(a) * int(b)) % self._q

    def neg(self, a):
        return (-int(a)) % self._q

    def inv(self, a):
        """Get the multiplicative inverse.

        Raises:
            NonInvertibleError: If a is zero in the field.
        """
        a = int(a) % self._q
        if not a:
            raise NonInvertibleError('non-invertible element 0 in F_{}'.format(self._q))
        return pow(a, self._q - 2, self._q)

    def pow(self, a, k):
        return pow(int(a) % self._q, int(k), self._q)

    @property
    def inv2(self):
        """Get the inverse of two, which is (q+1)/2."""
        return (self._q + 1) // 2

    def vector(self, entries):
        """Build an `FVector` over this field."""
        return FVector(entries, self._q)

    def elements(self):
        return range(self._q)


class FVector(object):
    """Immutable vector of residues modulo q."""

    __slots__ = ['_entries', '_q']

    def __init__(self, entries, q):
        q = int(q)
        self._q = q
        self._entries = tuple(int(x) % q for x in entries)

    def __repr__(self):
        return '{}({}, q={})'.format(type(self).__name__, list(self._entries), self._q)

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def __getitem__(self, item):
        return self._entries[item]

    def __eq__(self, other):
        if isinstance(other, FVector):
            return self._q == other._q and self._entries == other._entries
        return self._entries == tuple(other)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self._q, self._entries))

    def __array__(self, dtype=None, copy=None):
        return np.array(self._entries, dtype=dtype or np.int64)

    def _other(self, other):
        other = tuple(other)
        if len(other) != len(self):
            raise DimensionMismatchError('length {} does not match {}'.format(len(other), len(self)))
        return other

    def __add__(self, other):
        return type(self)([a + b for a, b in zip(self._entries, self._other(other))], self._q)

    def __sub__(self, other):
        return type(self)([a - b for a, b in zip(self._entries, self._other(other))], self._q)

    def __neg__(self):
        return type(self)([-a for a in self._entries], self._q)

    def __mul__(self, scalar):
        return type(self)([a * int(scalar) for a in self._entries], self._q)
    __rmul__ = __mul__

    @property
    def q(self):
        return self._q

    @property
    def entries(self):
        return self._entries

    def dot(self, other):
        return sum(a * b for a, b in zip(self._entries, self._other(other))) % self._q

    def isZero(self):
        return not any(self._entries)


CustomEncoder.register(FVector, list)


def symplecticForm(u, v, q):
    """Get [u, v] = sum_i (m_i q_i - n_i p_i) for u = (m_i, n_i) and v = (p_i, q_i).

    >>> symplecticForm((2, 3), (1, 4), 5)
    0
    >>> symplecticForm((1, 0), (0, 1), 3)
    1

    Raises:
        DimensionMismatchError: If the lengths differ or are odd.
    """
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    if u.shape != v.shape or u.shape[-1] % 2:
        raise DimensionMismatchError('symplectic form needs equal even lengths, got {} and {}'.format(u.shape, v.shape))
    value = np.sum(u[..., 0::2] * v[..., 1::2] - u[..., 1::2] * v[..., 0::2], axis=-1)
    return int(value % q) if np.ndim(value) == 0 else value % q


def symplecticGram(nQudits):
    """Get the matrix J with [u, v] = u^T J v in the interleaved layout."""
    gram = np.zeros((2 * nQudits, 2 * nQudits), dtype=np.int64)
    for i in range(nQudits):
        gram[2 * i, 2 * i + 1] = 1
        gram[2 * i + 1, 2 * i] = -1
    return gram


def _inverse(a, q):
    a = int(a) % q
    if not a:
        raise NonInvertibleError('non-invertible element 0 in F_{}'.format(q))
    return pow(a, q - 2, q)


def rowReduce(matrix, q):
    """Reduce a matrix to row echelon form over F_q.

    Returns:
        Tuple of the reduced matrix (same shape, zero rows at the bottom)
        and the tuple of pivot columns.
    """
    reduced = np.array(matrix, dtype=np.int64).reshape(np.shape(matrix)) % q
    if reduced.ndim != 2:
        raise DimensionMismatchError('expected a matrix, got shape {}'.format(reduced.shape))
    rows, cols = reduced.shape
    pivots = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        nonzero = np.nonzero(reduced[row:, col])[0]
        if not len(nonzero):
            continue
        swap = row + nonzero[0]
        if swap != row:
            reduced[[row, swap]] = reduced[[swap, row]]
        reduced[row] = (reduced[row] * _inverse(reduced[row, col], q)) % q
        factors = reduced[:, col].copy()
        factors[row] = 0
        reduced = (reduced - np.outer(factors, reduced[row])) % q
        pivots.append(col)
        row += 1
    return reduced, tuple(pivots)


def rank(matrix, q):
    if not np.size(matrix):
        return 0
    return len(rowReduce(matrix, q)[1])


def nullspace(matrix, q):
    """Get a basis (as rows) of {x : matrix x = 0} over F_q."""
    matrix = np.array(matrix, dtype=np.int64)
    cols = matrix.shape[1]
    if not matrix.shape[0]:
        return np.eye(cols, dtype=np.int64)
    reduced, pivots = rowReduce(matrix, q)
    free = [col for col in range(cols) if col not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, col in enumerate(free):
        basis[i, col] = 1
        for j, pivot in enumerate(pivots):
            basis[i, pivot] = (-reduced[j, col]) % q
    return basis


def inverseMatrix(matrix, q):
    """Invert a square matrix over F_q.

    Raises:
        NonInvertibleError: If the matrix is singular.
    """
    matrix = np.array(matrix, dtype=np.int64) % q
    size = matrix.shape[0]
    reduced, pivots = rowReduce(np.hstack([matrix, np.eye(size, dtype=np.int64)]), q)
    if pivots[:size] != tuple(range(size)):
        raise NonInvertibleError('matrix is singular over F_{}'.format(q))
    return reduced[:, size:]


def coefficientGrid(q, k):
    """Get every vector of F_q^k as rows, in lexicographic order."""
    if not k:
        return np.zeros((1, 0), dtype=np.int64)
    return np.indices((q,) * k, dtype=np.int64).reshape(k, -1).T


def spanElements(basis, q):
    """Get every element of the span of the basis rows."""
    basis = np.array(basis, dtype=np.int64)
    return coefficientGrid(q, basis.shape[0]).dot(basis) % q


def gaussianBinomial(n, k, q):
    """Count the k-dimensional subspaces of F_q^n.

    >>> gaussianBinomial(2, 1, 3)
    4
    """
    if k < 0 or k > n:
        return 0
    numerator = denominator = 1
    for i in range(k):
        numerator *= q ** (n - i) - 1
        denominator *= q ** (i + 1) - 1
    return numerator // denominator


def enumerateSubspaces(ambient, dimension, q):
    """Enumerate every subspace of F_q^ambient of the given dimension.

    Each subspace appears once, given by its reduced row echelon basis.

    Raises:
        GuardExceededError: If q^ambient is above the enumeration guard.
    """
    checkGuard(q ** ambient, SUBSPACE_GUARD, 'q^ambient')
    if not dimension:
        return [np.zeros((0, ambient), dtype=np.int64)]
    subspaces = []
    for pivots in itertools.combinations(range(ambient), dimension):
        free = [(row, col) for row, pivot in enumerate(pivots)
                for col in range(pivot + 1, ambient) if col not in pivots]
        for values in itertools.product(range(q), repeat=len(free)):
            basis = np.zeros((dimension, ambient), dtype=np.int64)
            for row, pivot in enumerate(pivots):
                basis[row, pivot] = 1
            for (row, col), value in zip(free, values):
                basis[row, col] = value
            subspaces.append(basis)
    logger.debug('Enumerated %s subspaces of dimension %s in F_%s^%s', len(subspaces), dimension, q, ambient)
    return subspaces
