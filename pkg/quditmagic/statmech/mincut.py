"""Minimal domain walls on the brickwork lattice.

Spins sit on gates. Each site carries a chain of legs from its input
boundary, through every gate acting on it in time order, to its output
boundary, and a leg whose ends hold spins a and b costs the distance
D(a, b) in units of log q. A boundary is either a fixed label, free (its
leg costs nothing), or a choice of labels. Choices are per site unless
the problem shares one choice between all of them.

The solution ignores the rule that a gate below two aligned spins must
align with them. For a metric D this never changes the minimum, and the
witness is relabelled top down afterwards so that it obeys the rule.
"""

from __future__ import absolute_import

import collections
import itertools
import logging
import warnings

import networkx
import numpy as np
from networkx.algorithms.flow import boykov_kolmogorov

from .geometry import Geometry
from ..exceptions import ApproximateSolutionWarning, ConfigError, IntegrityError

__all__ = ['CutProblem', 'CutSolution', 'solveCut', 'cutProblem', 'cutLength']

logger = logging.getLogger(__name__)

EXHAUSTIVE_GUARD = 2 * 10 ** 5

CutSolution = collections.namedtuple('CutSolution', 'value gates boundaries exact method')


class CutProblem(object):
    """Domain wall problem on a brickwork lattice.

    Parameters:
        nSites (int): Number of sites.
        depth (int): Number of brickwork layers.
        labels (list of str): Spin names.
        distances (array): Symmetric non-negative costs between labels.
        top (dict): Output boundary per site: a label, a tuple of allowed
            labels, or None (the default) for free.
        bottom (dict): Input boundary per site, in the same format.
        shareChoice (bool): If every choice boundary takes the same label.
    """

    def __init__(self, nSites, depth, labels, distances, top=None, bottom=None, shareChoice=False):
        self.nSites = int(nSites)
        self.depth = int(depth)
        self.labels = list(labels)
        self.distances = np.array(distances, dtype=np.int64)
        size = len(self.labels)
        if len(set(self.labels)) != size or self.distances.shape != (size, size):
            raise ConfigError('labels and distance matrix do not match')
        if np.any(self.distances < 0) or np.any(self.distances != self.distances.T) or np.any(np.diag(self.distances)):
            raise ConfigError('distances must be symmetric, non-negative and zero on the diagonal')
        self.shareChoice = shareChoice
        self.gates = [(layer, pair) for layer, pairs in enumerate(Geometry(self.nSites, self.depth, ()).layers())
                      for pair in pairs]
        self.boundaries = {}
        for side, specs in (('top', top or {}), ('bottom', bottom or {})):
            for site, spec in specs.items():
                if not 0 <= site < self.nSites:
                    raise ConfigError('{} boundary site {} out of range'.format(side, site))
                allowed = self._allowed(spec)
                if allowed is not None:
                    self.boundaries[(side, site)] = allowed
        self._buildLegs()

    def __repr__(self):
        return '{}(nSites={}, depth={}, labels={})'.format(type(self).__name__, self.nSites, self.depth, self.labels)

    def _allowed(self, spec):
        """Get the tuple of label indices a boundary may take, or None if free."""
        if spec is None:
            return None
        names = (spec,) if isinstance(spec, str) else tuple(spec)
        try:
            allowed = tuple(sorted(set(self.labels.index(name) for name in names)))
        except ValueError:
            raise ConfigError('unknown label in boundary {!r}, expected {}'.format(spec, self.labels))
        if not allowed:
            raise ConfigError('a boundary needs at least one allowed label')
        return allowed

    def _buildLegs(self):
        """Get the legs as pairs of endpoints, skipping free boundaries."""
        chains = [[('bottom', site)] for site in range(self.nSites)]
        for index, (_, (left, right)) in enumerate(self.gates):
            chains[left].append(('gate', index))
            chains[right].append(('gate', index))
        for site in range(self.nSites):
            chains[site].append(('top', site))
        self.chains = chains
        self.legs = []
        for chain in chains:
            for lower, upper in zip(chain, chain[1:]):
                if self._isFree(lower) or self._isFree(upper):
                    continue
                self.legs.append((lower, upper))

    def _isFree(self, endpoint):
        return endpoint[0] != 'gate' and endpoint not in self.boundaries

    def choiceBoundaries(self):
        return sorted(key for key, allowed in self.boundaries.items() if len(allowed) > 1)

    def energy(self, gates, boundaries=None):
        """Get the total cost of a labelling.

        Parameters:
            gates (list of int): Label index of every gate.
            boundaries (dict): Label index of every choice boundary.
        """
        boundaries = boundaries or {}

        def label(endpoint):
            if endpoint[0] == 'gate':
                return gates[endpoint[1]]
            allowed = self.boundaries[endpoint]
            if len(allowed) == 1:
                return allowed[0]
            return boundaries[endpoint]

        return int(sum(self.distances[label(a), label(b)] for a, b in self.legs))

    def upperNeighbours(self, index):
        """Get the next element above a gate on each of its two sites."""
        neighbours = []
        for site in self.gates[index][1]:
            chain = self.chains[site]
            neighbours.append(chain[chain.index(('gate', index)) + 1])
        return neighbours


class _LabelProblem(object):
    """Flattened problem: variables with unary costs and pairwise legs."""

    def __init__(self, variables, allowed, unary, pairs, constant, distances):
        self.variables = variables
        self.allowed = allowed
        self.unary = unary
        self.pairs = pairs
        self.constant = constant
        self.distances = distances

    def energy(self, assignment):
        total = self.constant
        for v, label in enumerate(assignment):
            total += self.unary[v][label]
        for a, b in self.pairs:
            total += self.distances[assignment[a], assignment[b]]
        return total


def _flatten(problem, fixed):
    """Turn a `CutProblem` into a `_LabelProblem`, with some choices fixed."""
    labelCount = len(problem.labels)
    variables = [('gate', index) for index in range(len(problem.gates))]
    allowed = [tuple(range(labelCount))] * len(variables)
    for key in problem.choiceBoundaries():
        if key not in fixed:
            variables.append(key)
            allowed.append(problem.boundaries[key])
    position = {variable: i for i, variable in enumerate(variables)}

    def fixedLabel(endpoint):
        if endpoint in fixed:
            return fixed[endpoint]
        return problem.boundaries[endpoint][0]

    unary = np.zeros((len(variables), labelCount), dtype=np.int64)
    pairs = []
    constant = 0
    for a, b in problem.legs:
        if a in position and b in position:
            pairs.append((position[a], position[b]))
        elif a in position:
            unary[position[a]] += problem.distances[:, fixedLabel(b)]
        elif b in position:
            unary[position[b]] += problem.distances[:, fixedLabel(a)]
        else:
            constant += int(problem.distances[fixedLabel(a), fixedLabel(b)])
    return _LabelProblem(variables, allowed, unary, pairs, constant, problem.distances)


def _binaryMinimum(count, unary, pairs):
    """Minimise sum_v unary[v][x_v] + sum E(x_a, x_b) over x in {0, 1}^count.

    Every pairwise table (a, b, E00, E01, E10, E11) must be submodular.

    Returns:
        Tuple of the minimum and the assignment.
    """
    graph = networkx.DiGraph()
    graph.add_nodes_from(['source', 'sink'])
    graph.add_nodes_from(range(count))
    constant = 0

    def addEdge(u, v, capacity):
        if capacity <= 0:
            return
        if graph.has_edge(u, v):
            graph[u][v]['capacity'] += capacity
        else:
            graph.add_edge(u, v, capacity=capacity)

    def addLinear(v, coefficient):
        # coefficient * x_v, with x_v = 1 on the sink side
        if coefficient >= 0:
            addEdge('source', v, coefficient)
            return 0
        addEdge(v, 'sink', -coefficient)
        return coefficient

    for v, (cost0, cost1) in enumerate(unary):
        constant += cost0
        constant += addLinear(v, cost1 - cost0)
    for a, b, e00, e01, e10, e11 in pairs:
        interaction = e01 + e10 - e00 - e11
        if interaction < 0:
            raise IntegrityError('pairwise term is not submodular')
        constant += e00
        constant += addLinear(a, e10 - e00)
        constant += addLinear(b, e11 - e10)
        addEdge(a, b, interaction)

    value, (sourceSide, _) = networkx.minimum_cut(graph, 'source', 'sink', flow_func=boykov_kolmogorov)
    assignment = [0 if v in sourceSide else 1 for v in range(count)]
    return constant + value, assignment


def _penalty(flat):
    return 1 + int(np.abs(flat.unary).sum()) + int(flat.distances.max()) * (len(flat.pairs) + 1)


def _solveTwoLabels(flat):
    big = _penalty(flat)
    unary = []
    for v, allowed in enumerate(flat.allowed):
        unary.append([int(flat.unary[v][label]) if label in allowed else big for label in (0, 1)])
    weight = int(flat.distances[0, 1])
    pairs = [(a, b, 0, weight, weight, 0) for a, b in flat.pairs]
    value, assignment = _binaryMinimum(len(flat.variables), unary, pairs)
    if value + flat.constant != flat.energy(assignment):
        raise IntegrityError('cut value {} does not match the energy {}'.format(
            value + flat.constant, flat.energy(assignment)))
    return assignment


def _lineOrder(distances):
    """Get an order of the labels placing them on a line, or None.

    >>> _lineOrder(np.array([[0, 2, 3], [2, 0, 1], [3, 1, 0]]))
    [0, 1, 2]
    >>> _lineOrder(np.ones((3, 3), dtype=int) - np.eye(3, dtype=int)) is None
    True
    """
    size = len(distances)
    for order in itertools.permutations(range(size)):
        positions = distances[order[0], list(order)]
        if np.all(np.diff(positions) >= 0) and all(
                distances[order[i], order[j]] == abs(positions[i] - positions[j])
                for i in range(size) for j in range(size)):
            return list(order)
    return None


def _solveLine(flat, order):
    """Solve a line metric as one binary cut per gap between neighbouring labels.

    Every labelling's energy splits into a sum over the gaps, so the sum
    of the per-gap minima bounds the minimum from below. The labelling
    read from the nested cuts is only returned if it reaches that bound.
    """
    rank = {label: i for i, label in enumerate(order)}
    for allowed in flat.allowed:
        ranks = sorted(rank[label] for label in allowed)
        if ranks != list(range(ranks[0], ranks[-1] + 1)):
            return None
    positions = flat.distances[order[0], order]
    size = len(flat.variables)
    big = _penalty(flat)
    levels = np.full(size, len(order) - 1)
    inside = np.zeros(size, dtype=bool)
    bound = flat.constant + sum(int(flat.unary[v][order[0]]) for v in range(size))
    for gap in range(len(order) - 1):
        weight = int(positions[gap + 1] - positions[gap])
        unary = []
        for v in range(size):
            ranks = [rank[label] for label in flat.allowed[v]]
            step = int(flat.unary[v][order[gap + 1]]) - int(flat.unary[v][order[gap]])
            # x = 0 keeps the variable at or below this gap
            below = 0 if min(ranks) <= gap else big
            above = step if max(ranks) > gap else step + big
            unary.append([below, above])
        pairs = [(a, b, 0, weight, weight, 0) for a, b in flat.pairs]
        value, assignment = _binaryMinimum(size, unary, pairs)
        bound += value
        below = np.array(assignment) == 0
        levels[below & ~inside] = gap
        inside |= below
    assignment = [order[level] for level in levels]
    energy = flat.energy(assignment)
    if energy < bound:
        raise IntegrityError('line labelling energy {} is below its lower bound {}'.format(energy, bound))
    if energy != bound:
        logger.debug('Nested cuts missed the bound (%s > %s)', energy, bound)
        return None
    return assignment


def _solveExhaustive(flat):
    """Try every labelling, keeping the lexicographically first minimum."""
    grid = np.array(list(itertools.product(*flat.allowed)), dtype=np.int64).reshape(-1, len(flat.variables))
    energies = np.full(len(grid), flat.constant, dtype=np.int64)
    for v in range(len(flat.variables)):
        energies += flat.unary[v][grid[:, v]]
    for a, b in flat.pairs:
        energies += flat.distances[grid[:, a], grid[:, b]]
    return [int(label) for label in grid[int(np.argmin(energies))]]


def _solveExpansion(flat):
    """Local search moving any set of variables to one label at a time."""
    big = _penalty(flat)
    assignment = [min(allowed, key=lambda label: flat.unary[v][label]) for v, allowed in enumerate(flat.allowed)]
    energy = flat.energy(assignment)
    improved = True
    while improved:
        improved = False
        for alpha in range(len(flat.distances)):
            unary = []
            for v, current in enumerate(assignment):
                unary.append([int(flat.unary[v][current]),
                              int(flat.unary[v][alpha]) if alpha in flat.allowed[v] else big])
            pairs = []
            for a, b in flat.pairs:
                ca, cb = assignment[a], assignment[b]
                pairs.append((a, b, int(flat.distances[ca, cb]), int(flat.distances[ca, alpha]),
                              int(flat.distances[alpha, cb]), 0))
            _, moves = _binaryMinimum(len(assignment), unary, pairs)
            candidate = [alpha if move else current for move, current in zip(moves, assignment)]
            candidateEnergy = flat.energy(candidate)
            if candidateEnergy < energy:
                assignment, energy = candidate, candidateEnergy
                improved = True
    return assignment


def _solveFlat(flat):
    """Get (assignment, exact, method) for a flattened problem."""
    if not flat.variables:
        return [], True, 'trivial'
    if len(flat.distances) == 2:
        return _solveTwoLabels(flat), True, 'binary_cut'
    order = _lineOrder(flat.distances)
    if order is not None:
        assignment = _solveLine(flat, order)
        if assignment is not None:
            return assignment, True, 'line_cut'
    count = int(np.prod([float(len(allowed)) for allowed in flat.allowed]))
    if count <= EXHAUSTIVE_GUARD:
        return _solveExhaustive(flat), True, 'exhaustive'
    warnings.warn('{} labellings is too many to search, using alpha expansion'.format(count),
                  ApproximateSolutionWarning)
    return _solveExpansion(flat), False, 'alpha_expansion'


def _pushWitness(problem, gates, boundaries):
    """Align every gate below two aligned spins with them, working downwards.

    Raises:
        IntegrityError: If the relabelling raises the energy.
    """
    gates = list(gates)
    before = problem.energy(gates, boundaries)

    def label(endpoint):
        if endpoint[0] == 'gate':
            return gates[endpoint[1]]
        allowed = problem.boundaries.get(endpoint)
        if allowed is None:
            return None
        if len(allowed) == 1:
            return allowed[0]
        return boundaries[endpoint]

    for index in reversed(range(len(gates))):
        upper = [label(endpoint) for endpoint in problem.upperNeighbours(index)]
        if upper[0] is not None and upper[0] == upper[1]:
            gates[index] = upper[0]
    after = problem.energy(gates, boundaries)
    if after > before:
        raise IntegrityError('aligning the witness raised the energy from {} to {}'.format(before, after))
    return gates


def solveCut(problem):
    """Find the cheapest labelling of a `CutProblem`.

    Returns:
        CutSolution: The minimum, the gate and choice labels by name, if
            the result is exact and the method used.
    """
    choices = problem.choiceBoundaries()
    if problem.shareChoice and choices:
        shared = set(problem.boundaries[choices[0]])
        for key in choices[1:]:
            shared &= set(problem.boundaries[key])
        if not shared:
            raise ConfigError('shared choice boundaries have no label in common')
        candidates = [{key: label for key in choices} for label in sorted(shared)]
    else:
        candidates = [{}]

    best = None
    for fixed in candidates:
        flat = _flatten(problem, fixed)
        assignment, exact, method = _solveFlat(flat)
        gates = assignment[:len(problem.gates)]
        boundaries = dict(fixed)
        boundaries.update(zip(flat.variables[len(problem.gates):], assignment[len(problem.gates):]))
        value = problem.energy(gates, boundaries)
        if value != flat.energy(assignment):
            raise IntegrityError('flattened energy does not match the lattice energy')
        if best is None or value < best[0]:
            best = (value, gates, boundaries, exact, method)

    value, gates, boundaries, exact, method = best
    gates = _pushWitness(problem, gates, boundaries)
    value = problem.energy(gates, boundaries)
    logger.debug('Solved %r with %s: %s', problem, method, value)
    return CutSolution(
        value=value,
        gates=[problem.labels[label] for label in gates],
        boundaries={key: problem.labels[label] for key, label in boundaries.items()},
        exact=exact,
        method=method,
    )


def cutProblem(nSites, depth, sourceTop, sinkTop, sourceBottom=(), sinkBottom=()):
    """Build the two-label problem separating source sites from sink sites.

    Sites named in neither region of a side are free on that side.
    """
    top = {site: 'source' for site in sourceTop}
    top.update({site: 'sink' for site in sinkTop})
    bottom = {site: 'source' for site in sourceBottom}
    bottom.update({site: 'sink' for site in sinkBottom})
    if len(top) != len(sourceTop) + len(sinkTop) or len(bottom) != len(sourceBottom) + len(sinkBottom):
        raise ConfigError('a site cannot be on both sides of a cut')
    return CutProblem(nSites, depth, ['source', 'sink'], [[0, 1], [1, 0]], top=top, bottom=bottom)


def cutLength(nSites, depth, sourceTop, sinkTop, sourceBottom=(), sinkBottom=()):
    """Get the fewest legs a wall between the source and sink sites must cross.

    >>> cutLength(4, 0, [0, 1], [2, 3])
    0
    >>> cutLength(4, 2, [0, 1], [2, 3], sinkBottom=[0, 1, 2, 3])
    2
    """
    return solveCut(cutProblem(nSites, depth, sourceTop, sinkTop, sourceBottom, sinkBottom)).value
