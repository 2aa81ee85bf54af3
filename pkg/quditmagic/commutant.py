"""Stochastic Lagrangian subspaces and the Clifford commutant.

A subspace T of F_q^2t is written as the row space of a t x 2t basis
whose rows are (x | y). It is stochastic Lagrangian when it has dimension
t, x.x = y.y for every element, and it contains (1...1 | 1...1). Its
operator on t replicas of one qudit is r(T) = sum_(x, y) |x><y|.
"""

from __future__ import absolute_import

import logging

import numpy as np
import scipy.linalg

from .exceptions import GuardExceededError, IntegrityError, NonInvertibleError, NotLagrangianError
from .fqarith import PrimeField, inverseMatrix, nullspace, rank, rowReduce, spanElements
from .phasespace import DEFAULT_TOLERANCE
from .utils import CustomEncoder, checkGuard

__all__ = [
    'StochasticLagrangian', 'identityMatrix', 'antiIdentity', 'sreRotation', 'multiSwap',
    'cyclicShift', 'permutationMatrix', 'enumerateSigma', 'enumerateStochasticOrthogonal',
    'rOperator', 'rOperatorFromBasis', 'gramDistance', 'traceOverlap', 'gramDistanceFromTrace',
    'distanceMatrix', 'cliffordGram', 'cliffordWeingarten', 'verifyCommutant',
]

logger = logging.getLogger(__name__)

SIGMA_GUARD = 10 ** 5

VECTOR_GUARD = 10 ** 7

OPERATOR_GUARD = 4000

WEINGARTEN_GUARD = 500


def _differenceForm(t):
    return np.diag(np.concatenate([np.ones(t, dtype=np.int64), -np.ones(t, dtype=np.int64)]))


class StochasticLagrangian(object):
    """Stochastic Lagrangian subspace kept as its reduced row echelon basis.

    Raises:
        NotLagrangianError: If any defining condition fails.
    """

    def __init__(self, basis, q):
        PrimeField(q)
        basis = np.array(basis, dtype=np.int64) % q
        if basis.ndim != 2 or basis.shape[1] % 2:
            raise NotLagrangianError('basis must be a matrix with an even number of columns')
        t = basis.shape[1] // 2
        reduced, pivots = rowReduce(basis, q)
        if len(pivots) != t:
            raise NotLagrangianError('subspace has dimension {}, expected {}'.format(len(pivots), t))
        self.basis = reduced[:t]
        self.basis.setflags(write=False)
        self.q = q
        self.t = t
        if np.any(self.basis.dot(_differenceForm(t)).dot(self.basis.T) % q):
            raise NotLagrangianError('subspace is not isotropic for x.x - y.y')
        if rank(np.vstack([self.basis, np.ones((1, 2 * t), dtype=np.int64)]), q) != t:
            raise NotLagrangianError('subspace does not contain (1|1)')

    def __repr__(self):
        return '{}({}, q={})'.format(type(self).__name__, self.basis.tolist(), self.q)

    def __eq__(self, other):
        return isinstance(other, StochasticLagrangian) and self.key == other.key

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(self.key)

    @property
    def key(self):
        return (self.q, self.t, self.basis.tobytes())

    @classmethod
    def fromMatrix(cls, matrix, q):
        """Get the graph {(O y, y)} of a matrix."""
        matrix = np.array(matrix, dtype=np.int64) % q
        t = matrix.shape[0]
        return cls(np.hstack([matrix.T, np.eye(t, dtype=np.int64)]), q)

    @classmethod
    def fromPermutation(cls, images, q):
        """Get the graph of the replica permutation sending copy i to copy images[i]."""
        return cls.fromMatrix(permutationMatrix(images), q)

    @classmethod
    def identity(cls, t, q):
        return cls.fromMatrix(identityMatrix(t), q)

    def elements(self):
        """Get all q^t elements as rows (x | y)."""
        return spanElements(self.basis, self.q)

    def isFullRank(self):
        """Check whether this is the graph of an invertible matrix."""
        return rank(self.basis[:, self.t:], self.q) == self.t

    def orthogonalMatrix(self):
        """Get O with T = {(O y, y)}.

        Raises:
            NonInvertibleError: If the subspace is not full rank.
        """
        if not self.isFullRank():
            raise NonInvertibleError('subspace is not the graph of a matrix')
        left, right = self.basis[:, :self.t], self.basis[:, self.t:]
        return inverseMatrix(right, self.q).dot(left).T % self.q


CustomEncoder.register(StochasticLagrangian, lambda subspace: subspace.basis.tolist())


def identityMatrix(t):
    return np.eye(t, dtype=np.int64)


def permutationMatrix(images):
    """Get O with (O y)_i = y_images[i]."""
    size = len(images)
    matrix = np.zeros((size, size), dtype=np.int64)
    matrix[np.arange(size), list(images)] = 1
    return matrix


def antiIdentity(n, q):
    """Get n^-1 J - I on 2n replicas, J being the all-ones matrix.

    Raises:
        NonInvertibleError: If q divides n.
    """
    inverse = PrimeField(q).inv(n)
    return (inverse * np.ones((2 * n, 2 * n), dtype=np.int64) - np.eye(2 * n, dtype=np.int64)) % q


def sreRotation(n, q):
    """Get I - n^-1 s s^T on 2n replicas with s = (1, ..., 1, -1, ..., -1)."""
    inverse = PrimeField(q).inv(n)
    s = np.concatenate([np.ones(n, dtype=np.int64), -np.ones(n, dtype=np.int64)])
    return (np.eye(2 * n, dtype=np.int64) - inverse * np.outer(s, s)) % q


def multiSwap(n):
    """Get the permutation swapping replica i with replica i + n."""
    return permutationMatrix([(i + n) % (2 * n) for i in range(2 * n)])


def cyclicShift(t):
    return permutationMatrix([(i + 1) % t for i in range(t)])


def enumerateSigma(t, q):
    """Enumerate every stochastic Lagrangian subspace of F_q^2t.

    Isotropic flags are grown one vector at a time from (1|1); each level
    keeps the subspaces by their canonical basis.

    Raises:
        GuardExceededError: If q^t or q^2t is above the enumeration guards.
    """
    PrimeField(q)
    checkGuard(q ** t, SIGMA_GUARD, 'q^t')
    checkGuard(q ** (2 * t), VECTOR_GUARD, 'q^2t')
    form = _differenceForm(t)
    level = {}
    start, _ = rowReduce(np.ones((1, 2 * t), dtype=np.int64), q)
    level[start.tobytes()] = start
    for dim in range(1, t):
        nextLevel = {}
        for basis in level.values():
            _, pivots = rowReduce(basis, q)
            candidates = spanElements(nullspace(basis.dot(form) % q, q), q)
            norms = (np.sum(candidates[:, :t] ** 2, axis=1) - np.sum(candidates[:, t:] ** 2, axis=1)) % q
            candidates = candidates[norms == 0]
            for row, pivot in enumerate(pivots):
                candidates = (candidates - np.outer(candidates[:, pivot], basis[row])) % q
            candidates = candidates[candidates.any(axis=1)]
            if not len(candidates):
                continue
            leading = candidates[np.arange(len(candidates)), np.argmax(candidates != 0, axis=1)]
            inverses = np.array([pow(int(a), q - 2, q) for a in range(q)], dtype=np.int64)
            candidates = np.unique((candidates * inverses[leading][:, None]) % q, axis=0)
            for vector in candidates:
                extended, _ = rowReduce(np.vstack([basis, vector]), q)
                nextLevel.setdefault(extended.tobytes(), extended)
        level = nextLevel
        logger.debug('Found %s isotropic subspaces of dimension %s containing (1|1)', len(level), dim + 1)
    sigma = sorted((StochasticLagrangian(basis, q) for basis in level.values()),
                   key=lambda subspace: subspace.basis.tolist())
    logger.info('Enumerated %s stochastic Lagrangian subspaces for t=%s, q=%s', len(sigma), t, q)
    return sigma


def enumerateStochasticOrthogonal(t, q):
    """Enumerate the matrices O with O^T O = I and O 1 = 1.

    Rows are chosen depth first among unit vectors with entry sum 1,
    each orthogonal to the rows already placed.
    """
    PrimeField(q)
    checkGuard(q ** t, SIGMA_GUARD, 'q^t')
    vectors = spanElements(np.eye(t, dtype=np.int64), q)
    rows = vectors[(np.sum(vectors ** 2, axis=1) % q == 1) & (np.sum(vectors, axis=1) % q == 1)]

    found = []

    def extend(chosen):
        if len(chosen) == t:
            found.append(np.array(chosen, dtype=np.int64))
            return
        for row in rows:
            if all(not int(row.dot(other)) % q for other in chosen):
                extend(chosen + [row])

    extend([])
    return found


def rOperatorFromBasis(basis, q):
    """Get sum_(x, y) |x><y| over the span of any basis, without validation."""
    basis = np.array(basis, dtype=np.int64) % q
    t = basis.shape[1] // 2
    checkGuard(q ** t, OPERATOR_GUARD, 'operator dimension q^t')
    elements = spanElements(basis, q)
    weights = q ** np.arange(t - 1, -1, -1)
    operator = np.zeros((q ** t, q ** t))
    np.add.at(operator, (elements[:, :t].dot(weights), elements[:, t:].dot(weights)), 1)
    return np.minimum(operator, 1)


def rOperator(subspace):
    return rOperatorFromBasis(subspace.basis, subspace.q)


def gramDistance(a, b):
    """Get |T_a, T_b| = t - dim(T_a & T_b)."""
    return rank(np.vstack([a.basis, b.basis]), a.q) - a.t


def traceOverlap(a, b):
    """Get Tr[r(T_a)^dagger r(T_b)] = q^dim(T_a & T_b)."""
    return a.q ** (a.t - gramDistance(a, b))


def gramDistanceFromTrace(a, b):
    """Get the distance from the traced operators instead of ranks.

    Raises:
        IntegrityError: If the trace is not an integer power of q.
    """
    trace = float(np.sum(rOperator(a) * rOperator(b)))
    exponent = np.log(trace) / np.log(a.q)
    if abs(exponent - round(exponent)) > 1e-9:
        raise IntegrityError('trace {} is not a power of {}'.format(trace, a.q))
    return a.t - int(round(exponent))


def distanceMatrix(subspaces):
    size = len(subspaces)
    distances = np.zeros((size, size), dtype=np.int64)
    for i in range(size):
        for j in range(i + 1, size):
            distances[i, j] = distances[j, i] = gramDistance(subspaces[i], subspaces[j])
    return distances


def cliffordGram(t, q, nQudits=2, subspaces=None):
    """Get the Gram matrix Q^(t - |T_a, T_b|) with Q = q^nQudits."""
    if subspaces is None:
        subspaces = enumerateSigma(t, q)
    return float(q ** nQudits) ** (t - distanceMatrix(subspaces))


def cliffordWeingarten(t, q, nQudits=2, subspaces=None):
    """Invert the Clifford Gram matrix.

    Returns:
        Tuple of the Weingarten matrix and the subspaces indexing it.

    Raises:
        IntegrityError: If the Gram matrix is singular.
    """
    if subspaces is None:
        subspaces = enumerateSigma(t, q)
    if len(subspaces) > WEINGARTEN_GUARD:
        raise GuardExceededError('{} subspaces is above the limit of {}'.format(len(subspaces), WEINGARTEN_GUARD))
    gram = cliffordGram(t, q, nQudits, subspaces)
    try:
        weingarten = scipy.linalg.solve(gram, np.eye(len(subspaces)), assume_a='sym')
    except (scipy.linalg.LinAlgError, ValueError) as e:
        raise IntegrityError('Clifford Gram matrix is singular for t={}, q={}: {}'.format(t, q, e))
    residual = np.abs(weingarten.dot(gram) - np.eye(len(subspaces))).max()
    if residual > 1e-10:
        raise IntegrityError('Clifford Gram matrix is singular for t={}, q={} (residual {:.3g})'.format(t, q, residual))
    return weingarten, subspaces


def verifyCommutant(operator, unitaries, t, tol=DEFAULT_TOLERANCE):
    """Check an operator commutes with V^(x t) for every given single-qudit V.

    Returns:
        List of indices of the unitaries that failed.
    """
    failures = []
    for index, unitary in enumerate(unitaries):
        power = np.ones((1, 1), dtype=complex)
        for _ in range(t):
            power = np.kron(power, unitary)
        if np.abs(operator.dot(power) - power.dot(operator)).max() > tol:
            failures.append(index)
    return failures
