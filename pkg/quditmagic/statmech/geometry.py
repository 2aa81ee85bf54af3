from __future__ import absolute_import

from ..densesim import brickworkPairs
from ..exceptions import GeometryError
from ..utils import CustomEncoder
from ..utils.regions import Region

INJECTION_KINDS = ('none', 'single_qudit_haar', 'multi_qudit_haar', 'magical_measurement')


class Geometry(object):
    """Regions of a brickwork circuit of N sites and depth t.

    Parameters:
        regionA (Region): Output sites whose state is studied.
        regionM (Region): Injection sites. For 'magical_measurement' these
            are the measured output sites, otherwise input sites.
        measured (Region): Output sites measured before looking at A.
        injection (str): One of `INJECTION_KINDS`.

    B is every output site outside A and the measured sites.

    Raises:
        GeometryError: If the regions are inconsistent.
    """

    def __init__(self, nSites, depth, regionA, regionM=(), measured=(), injection='none'):
        if nSites < 1:
            raise GeometryError('need at least one site, got {}'.format(nSites))
        if depth < 0:
            raise GeometryError('depth must not be negative, got {}'.format(depth))
        if injection not in INJECTION_KINDS:
            raise GeometryError('unknown injection {!r}, expected one of {}'.format(injection, INJECTION_KINDS))
        self.nSites = int(nSites)
        self.depth = int(depth)
        self.injection = injection
        self.regionA = Region(regionA, self.nSites)
        self.regionM = Region(regionM, self.nSites)
        self.measured = Region(measured, self.nSites)
        if not self.regionA.isdisjoint(self.measured):
            raise GeometryError('region A {} overlaps the measured sites {}'.format(self.regionA, self.measured))
        if injection == 'magical_measurement' and self.regionM != self.measured:
            raise GeometryError('magical measurement needs M equal to the measured sites')
        if injection == 'none' and self.regionM:
            raise GeometryError('region M {} given without an injection'.format(self.regionM))
        self.regionB = self.regionA.union(self.measured).complement(self.nSites)

    def __repr__(self):
        return '{}(nSites={}, depth={}, regionA={}, regionM={}, measured={}, injection={!r})'.format(
            type(self).__name__, self.nSites, self.depth, list(self.regionA),
            list(self.regionM), list(self.measured), self.injection,
        )

    @classmethod
    def fromDict(cls, data):
        try:
            return cls(
                data['N'], data['t'], data.get('A', ()), data.get('M', ()),
                data.get('measured', ()), data.get('injection', 'none'),
            )
        except (KeyError, TypeError) as e:
            raise GeometryError('invalid geometry document: {}'.format(e))

    def toDict(self):
        return {
            'N': self.nSites,
            't': self.depth,
            'A': self.regionA,
            'B': self.regionB,
            'M': self.regionM,
            'measured': self.measured,
            'injection': self.injection,
        }

    def layers(self):
        """Get the gate pairs of each layer, starting with the even layer."""
        return [brickworkPairs(self.nSites, layer % 2) for layer in range(self.depth)]

    def futureCone(self, region=None):
        """Get the output sites causally connected to input sites (default M)."""
        cone = set(self.regionM if region is None else region)
        for pairs in self.layers():
            for left, right in pairs:
                if left in cone or right in cone:
                    cone.update((left, right))
        return Region(cone)

    def pastCone(self, region=None):
        """Get the input sites causally connected to output sites (default A)."""
        cone = set(self.regionA if region is None else region)
        for pairs in reversed(self.layers()):
            for left, right in pairs:
                if left in cone or right in cone:
                    cone.update((left, right))
        return Region(cone)


CustomEncoder.register(Geometry, Geometry.toDict)
