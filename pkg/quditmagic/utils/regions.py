from __future__ import absolute_import

from . import CustomEncoder
from ..exceptions import ConfigError


class Region(tuple):
    """Sorted set of distinct site indices.

    >>> Region([3, 1])
    Region(1, 3)
    >>> Region([0, 2]).complement(4)
    Region(1, 3)
    """

    def __new__(cls, sites=(), nSites=None):
        sites = [int(site) for site in sites]
        if len(set(sites)) != len(sites):
            raise ConfigError('repeated sites in region {}'.format(sites))
        if any(site < 0 for site in sites):
            raise ConfigError('negative site in region {}'.format(sites))
        if nSites is not None and any(site >= nSites for site in sites):
            raise ConfigError('region {} out of range for {} sites'.format(sites, nSites))
        return tuple.__new__(cls, sorted(sites))

    def __repr__(self):
        return '{}({})'.format(type(self).__name__, ', '.join(map(str, self)))

    def complement(self, nSites):
        """Get every other site of the system."""
        return Region(site for site in range(nSites) if site not in self)

    def union(self, other):
        return Region(set(self) | set(other))

    def intersection(self, other):
        return Region(set(self) & set(other))

    def difference(self, other):
        return Region(set(self) - set(other))

    def isdisjoint(self, other):
        return not set(self) & set(other)

    def issubset(self, other):
        return set(self) <= set(other)


CustomEncoder.register(Region, list)
