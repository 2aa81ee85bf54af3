from __future__ import absolute_import

import itertools

from ..exceptions import ConfigError, DimensionMismatchError
from ..utils import CustomEncoder


class Permutation(tuple):
    """Permutation of replica indices, stored as its images.

    >>> p = Permutation([1, 0, 3, 2])
    >>> p.cycleCount(), p.distance(Permutation.identity(4))
    (2, 2)
    """

    def __new__(cls, images):
        images = [int(i) for i in images]
        if sorted(images) != list(range(len(images))):
            raise ConfigError('{} is not a permutation'.format(images))
        return tuple.__new__(cls, images)

    def __repr__(self):
        return '{}({})'.format(type(self).__name__, list(self))

    @classmethod
    def identity(cls, size):
        return cls(range(size))

    @classmethod
    def multiSwap(cls, n):
        """Get X, swapping replica i with i + n for 2n replicas."""
        return cls([(i + n) % (2 * n) for i in range(2 * n)])

    @classmethod
    def cyclic(cls, size):
        return cls([(i + 1) % size for i in range(size)])

    @classmethod
    def allOfSize(cls, size):
        return [cls(images) for images in itertools.permutations(range(size))]

    @property
    def size(self):
        return len(self)

    def _check(self, other):
        if len(other) != len(self):
            raise DimensionMismatchError('permutations of {} and {} elements'.format(len(self), len(other)))

    def compose(self, other):
        """Get self after other."""
        self._check(other)
        return type(self)(self[i] for i in other)

    def inverse(self):
        images = [0] * len(self)
        for i, image in enumerate(self):
            images[image] = i
        return type(self)(images)

    def cycleLengths(self):
        seen = [False] * len(self)
        lengths = []
        for start in range(len(self)):
            if seen[start]:
                continue
            length = 0
            i = start
            while not seen[i]:
                seen[i] = True
                i = self[i]
                length += 1
            lengths.append(length)
        return sorted(lengths)

    def cycleCount(self):
        return len(self.cycleLengths())

    def distance(self, other):
        """Get |self, other| = size - #(self other^-1)."""
        self._check(other)
        return len(self) - self.compose(other.inverse()).cycleCount()


CustomEncoder.register(Permutation, list)
