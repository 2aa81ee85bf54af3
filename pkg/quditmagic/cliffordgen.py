"""Qudit Clifford unitaries from symplectic matrices over F_q and Pauli shifts."""

from __future__ import absolute_import

import itertools
import logging

import numpy as np

from .densesim import DenseState
from .exceptions import ConfigError, DimensionMismatchError, IntegrityError
from .fqarith import PrimeField, coefficientGrid, symplecticForm, symplecticGram
from .phasespace import DEFAULT_TOLERANCE, displacementOperator
from .utils import checkGuard

__all__ = [
    'SymplecticMatrix', 'CliffordElement', 'transvection', 'transvectionsBetween', 'randomSymplectic',
    'symplecticToUnitary', 'randomClifford', 'allSymplectic', 'allSingleQuditCliffords',
    'stabilizerOrbit', 'framePotential',
]

logger = logging.getLogger(__name__)

ENUMERATION_GUARD = 10 ** 5


class SymplecticMatrix(object):
    """Matrix F over F_q with F^T J F = J in the interleaved layout.

    Raises:
        ConfigError: If the matrix is not symplectic.
    """

    def __init__(self, matrix, q):
        PrimeField(q)
        matrix = np.array(matrix, dtype=np.int64) % q
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] % 2:
            raise DimensionMismatchError('symplectic matrix must be square of even size, got {}'.format(matrix.shape))
        self.matrix = matrix
        self.q = q
        gram = symplecticGram(self.nQudits)
        if np.any((matrix.T.dot(gram).dot(matrix) - gram) % q):
            raise ConfigError('matrix is not symplectic over F_{}'.format(q))
        self.matrix.setflags(write=False)

    def __repr__(self):
        return '{}({}, q={})'.format(type(self).__name__, self.matrix.tolist(), self.q)

    def __eq__(self, other):
        return isinstance(other, SymplecticMatrix) and self.q == other.q and np.array_equal(self.matrix, other.matrix)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((self.q, self.matrix.tobytes()))

    @classmethod
    def identity(cls, nQudits, q):
        return cls(np.eye(2 * nQudits, dtype=np.int64), q)

    @property
    def nQudits(self):
        return self.matrix.shape[0] // 2

    def apply(self, u):
        return self.matrix.dot(np.asarray(u, dtype=np.int64)) % self.q

    def compose(self, other):
        """Get the matrix of self after other."""
        return type(self)(self.matrix.dot(other.matrix), self.q)

    def inverse(self):
        gram = symplecticGram(self.nQudits)
        return type(self)(-gram.dot(self.matrix.T).dot(gram), self.q)


def transvection(v, q, scale=1):
    """Get the symplectic matrix of x -> x + c [v, x] v."""
    v = np.asarray(v, dtype=np.int64) % q
    gram = symplecticGram(len(v) // 2)
    matrix = np.eye(len(v), dtype=np.int64) + scale * np.outer(v, v.dot(gram))
    return SymplecticMatrix(matrix, q)


def _pairing(u, v, q):
    return symplecticForm(u % q, v % q, q)


def _transvectionTo(start, end, q):
    """Get the transvection sending `start` to `end`, which needs [end, start] != 0."""
    return transvection(end - start, q, pow(_pairing(end, start, q), q - 2, q))


def transvectionsBetween(start, end, q, rng):
    """Get at most two transvections whose product sends `start` to `end`.

    Both vectors must be nonzero. The list is in application order.
    """
    start = np.asarray(start, dtype=np.int64) % q
    end = np.asarray(end, dtype=np.int64) % q
    if not start.any() or not end.any():
        raise ConfigError('transvections only connect nonzero vectors')
    if np.array_equal(start, end):
        return []
    if _pairing(end, start, q):
        return [_transvectionTo(start, end, q)]
    while True:
        middle = rng.integers(0, q, len(start))
        if _pairing(middle, start, q) and _pairing(end, middle, q):
            break
    return [_transvectionTo(start, middle, q), _transvectionTo(middle, end, q)]


def _product(transvections, size, q):
    matrix = np.eye(size, dtype=np.int64)
    for step in transvections:
        matrix = step.matrix.dot(matrix) % q
    return matrix


def _randomPairMap(size, q, rng):
    """Get a symplectic matrix sending (e_0, e_1) to a uniform pair (x, y) with [x, y] = 1."""
    e0 = np.eye(size, dtype=np.int64)[0]
    e1 = np.eye(size, dtype=np.int64)[1]
    while True:
        x = rng.integers(0, q, size)
        if x.any():
            break
    while True:
        w = rng.integers(0, q, size)
        pairing = _pairing(x, w, q)
        if pairing:
            break
    y = w * pow(pairing, q - 2, q) % q

    toX = SymplecticMatrix(_product(transvectionsBetween(e0, x, q, rng), size, q), q)
    target = toX.inverse().apply(y)

    # Every transvection below uses a vector v with [v, e_0] = 0, so e_0 stays put
    fixing = []
    if not np.array_equal(target, e1):
        if _pairing(target, e1, q):
            fixing = [_transvectionTo(e1, target, q)]
        else:
            middle = (e0 + e1) % q
            fixing = [transvection(e0, q), _transvectionTo(middle, target, q)]
    return toX.matrix.dot(_product(fixing, size, q)) % q


def randomSymplectic(nQudits, q, rng):
    """Sample uniformly from Sp(2N, F_q).

    Transvections send the first canonical pair to a uniform symplectic
    pair (x, y), then the same is done recursively on the complement of
    the first pair, which the earlier steps leave fixed.
    """
    PrimeField(q)
    size = 2 * nQudits
    matrix = np.eye(size, dtype=np.int64)
    for i in range(nQudits):
        offset = 2 * i
        block = np.eye(size, dtype=np.int64)
        block[offset:, offset:] = _randomPairMap(size - offset, q, rng)
        matrix = matrix.dot(block) % q
    return SymplecticMatrix(matrix, q)


def symplecticToUnitary(symplectic, shift=None):
    """Build a unitary U with U T_u U^dagger = T_Fu, then displace it by T_shift.

    The image of |0...0> is the common +1 eigenvector of the images of the
    Z operators, and |j> goes to the images of the X operators raised to j
    acting on it.

    Raises:
        IntegrityError: If the construction does not give a unitary.
    """
    q = symplectic.q
    nQudits = symplectic.nQudits
    dim = q ** nQudits
    columns = symplectic.matrix.T
    projector = np.eye(dim, dtype=complex)
    for i in range(nQudits):
        image = displacementOperator(columns[2 * i], q)
        power = np.eye(dim, dtype=complex)
        average = np.zeros((dim, dim), dtype=complex)
        for _ in range(q):
            average += power
            power = power.dot(image)
        projector = projector.dot(average / q)
    best = np.argmax(np.linalg.norm(projector, axis=0))
    vacuum = projector[:, best] / np.linalg.norm(projector[:, best])

    shifts = [displacementOperator(columns[2 * i + 1], q) for i in range(nQudits)]
    unitary = np.zeros((dim, dim), dtype=complex)
    for index, digits in enumerate(coefficientGrid(q, nQudits)):
        column = vacuum
        for i, power in enumerate(digits):
            for _ in range(power):
                column = shifts[i].dot(column)
        unitary[:, index] = column

    if not np.allclose(unitary.dot(unitary.conj().T), np.eye(dim), atol=DEFAULT_TOLERANCE, rtol=0):
        raise IntegrityError('symplectic matrix did not give a unitary: {!r}'.format(symplectic))
    if shift is not None:
        unitary = displacementOperator(shift, q).dot(unitary)
    return unitary


class CliffordElement(object):
    """Clifford unitary given by its symplectic part and Pauli shift.

    The unitary is built on first access and its global phase is arbitrary.
    """

    def __init__(self, symplectic, shift=None):
        self.symplectic = symplectic
        if shift is None:
            shift = np.zeros(2 * symplectic.nQudits, dtype=np.int64)
        self.shift = np.array(shift, dtype=np.int64) % symplectic.q
        if self.shift.shape != (2 * symplectic.nQudits,):
            raise DimensionMismatchError('shift must have length {}'.format(2 * symplectic.nQudits))
        self._unitary = None

    def __repr__(self):
        return '{}({!r}, shift={})'.format(type(self).__name__, self.symplectic, self.shift.tolist())

    @property
    def q(self):
        return self.symplectic.q

    @property
    def nQudits(self):
        return self.symplectic.nQudits

    @property
    def unitary(self):
        if self._unitary is None:
            self._unitary = symplecticToUnitary(self.symplectic, self.shift)
            self._unitary.setflags(write=False)
        return self._unitary

    def conjugationPhase(self, u):
        """Get c with U T_u U^dagger = c T_Fu, where |c| = 1 for a Clifford."""
        image = displacementOperator(self.symplectic.apply(u), self.q)
        conjugated = self.unitary.dot(displacementOperator(u, self.q)).dot(self.unitary.conj().T)
        return complex(np.trace(image.conj().T.dot(conjugated)) / conjugated.shape[0])

    def checkCovariance(self, points=None, tol=DEFAULT_TOLERANCE):
        """Check the Pauli conjugation rule on the given points (default all).

        Returns:
            List of (point, phase) pairs that failed.
        """
        if points is None:
            points = coefficientGrid(self.q, 2 * self.nQudits)
        failures = []
        for u in points:
            phase = self.conjugationPhase(u)
            image = displacementOperator(self.symplectic.apply(u), self.q)
            conjugated = self.unitary.dot(displacementOperator(u, self.q)).dot(self.unitary.conj().T)
            if abs(abs(phase) - 1) > tol or not np.allclose(conjugated, phase * image, atol=tol, rtol=0):
                failures.append((tuple(int(x) for x in u), phase))
        return failures

    def compose(self, other):
        """Get the element of self after other, checked by its unitary."""
        symplectic = self.symplectic.compose(other.symplectic)
        product = self.unitary.dot(other.unitary)
        # Any Clifford with this symplectic part differs from this one by a displacement
        for shift in coefficientGrid(self.q, 2 * self.nQudits):
            candidate = CliffordElement(symplectic, shift)
            overlap = abs(np.trace(candidate.unitary.conj().T.dot(product))) / product.shape[0]
            if abs(overlap - 1) < DEFAULT_TOLERANCE:
                return candidate
        raise IntegrityError('product of {!r} and {!r} is not a Clifford'.format(self, other))


def randomClifford(nQudits, q, rng):
    """Sample a Clifford uniformly, modulo global phase."""
    symplectic = randomSymplectic(nQudits, q, rng)
    shift = rng.integers(0, q, 2 * nQudits)
    return CliffordElement(symplectic, shift)


def allSymplectic(nQudits, q):
    """Enumerate Sp(2N, F_q) by brute force.

    Raises:
        GuardExceededError: If there are too many candidate matrices.
    """
    size = 2 * nQudits
    checkGuard(q ** (size * size), ENUMERATION_GUARD, 'candidate matrix count q^(4N^2)')
    gram = symplecticGram(nQudits)
    found = []
    for entries in itertools.product(range(q), repeat=size * size):
        matrix = np.array(entries, dtype=np.int64).reshape(size, size)
        if not np.any((matrix.T.dot(gram).dot(matrix) - gram) % q):
            found.append(SymplecticMatrix(matrix, q))
    return found


def allSingleQuditCliffords(q):
    """Get every single-qudit Clifford modulo phase, q^3 (q^2 - 1) in total."""
    return [CliffordElement(symplectic, shift)
            for symplectic in allSymplectic(1, q)
            for shift in coefficientGrid(q, 2)]


def stabilizerOrbit(q, tol=DEFAULT_TOLERANCE):
    """Get the single-qudit stabilizer states as the Clifford orbit of |0>.

    Returns:
        List of `DenseState`, deduplicated up to global phase.
    """
    if q > 7:
        raise ConfigError('stabilizer orbit enumeration supports q <= 7, got {}'.format(q))
    orbit = []
    for element in allSingleQuditCliffords(q):
        vector = element.unitary[:, 0]
        if all(abs(np.vdot(known, vector)) < 1 - tol for known in orbit):
            orbit.append(vector)
    logger.debug('Found %s single-qudit stabilizer states for q=%s', len(orbit), q)
    return [DenseState(vector, q, 1) for vector in orbit]


def framePotential(unitaries, other=None, k=2):
    """Get the mean of |Tr(U^dagger V)|^2k over pairs of unitaries.

    Pairs come from the two lists elementwise when `other` is given, and
    from every ordered pair of `unitaries` otherwise.
    """
    if other is not None:
        values = [abs(np.trace(u.conj().T.dot(v))) ** (2 * k) for u, v in zip(unitaries, other)]
    else:
        values = [abs(np.trace(u.conj().T.dot(v))) ** (2 * k) for u in unitaries for v in unitaries]
    return float(np.mean(values))
