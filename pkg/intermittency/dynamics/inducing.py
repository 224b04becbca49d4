# -*- coding: utf-8 -*-
"""The first return map to the junction ``Y`` and its excursions into the rays.

Every excursion of an orbit from ``Y`` enters exactly one ray ``A_j`` on one side ``sigma`` of its fixed point and
stays there until it returns. In the distance coordinate ``h = |x - x_j|`` the excursion is the iteration of the
side map ``g`` until ``h`` exceeds the distance ``s_1`` of the ray boundary. The backward chain ``s_{m+1} =
g^{-1}(s_m)`` therefore determines the excursion length of any entry point by a binary search:

>>> table = ExitTable(BOOLE, build_partition(BOOLE), depth=64)
>>> int(table.steps(np.array([0.35]))[0])
1
>>> int(table.steps(np.array([0.05]))[0]) > 100
True

The same chain pulled back by the other inverse branches gives the cells of the return map (see :class:`CellTable`).
"""
import bisect
import csv
import logging
import math
from typing import Dict, Iterator, List, NamedTuple, Optional, Tuple

import numpy as np

from ..errors import StallDetected
from ..processes.cadlag import StepFunction
from .maps import IntermittentMapSpec
from .partition import JUNCTION, RaysPartition

__all__ = [
    'RaySide', 'ExitTable', 'ExcursionTrace', 'Excursion', 'iter_excursions', 'excursion_trace', 'CellTable',
    'cell_table', 'ConditionReport', 'check_return_map_conditions'
]

logger = logging.getLogger(__name__)

UNRESOLVED = -1
_MAX_STEPS = 2.0**62


class RaySide:
    """One side ``sigma`` of the ray ``A_j`` together with its backward chain.

    Attributes:
        j: The ray.
        sigma: ``+1`` for the side right of ``x_j``, ``-1`` for the left side.
        fixed: The fixed point ``x_j``.
        side: The side map of the branch.
        boundary: Distance ``s_1`` of the edge between the ray and the junction.
        outer: Distance ``s_0 = g(s_1)``.
        closed: Whether the boundary edge belongs to the ray.
        chain: Distances ``s_1 > s_2 > ... > s_D``.
    """

    def __init__(self, spec: IntermittentMapSpec, partition: RaysPartition, j: int, sigma: int, depth: int):
        self.j = j
        self.sigma = sigma
        self.fixed = spec.x[j - 1]
        self.side = spec.sides[(j, sigma)]
        edge = partition.ray_boundary(j, sigma)
        self.boundary = abs(edge - self.fixed)
        self.outer = float(self.side.forward(self.boundary))
        self.closed = partition.label(edge) == j
        self.chain = spec.approach_distances(j, sigma, self.boundary, depth - 1)
        self._ascending = self.chain[1:][::-1].copy()
        self._chain_list = self.chain.tolist()
        self.analytic_from = float(self.chain[-1])

    def __repr__(self):
        return 'RaySide(j={}, sigma={:+d}, boundary={!r}, depth={})'.format(
            self.j, self.sigma, self.boundary, self.chain.size
        )

    def contains(self, h):
        """Whether the point at distance *h* on this side lies in the ray."""
        h = np.asarray(h, dtype=float)
        if self.closed:
            return h <= self.boundary
        return h < self.boundary

    def fatou(self, h):
        """The escape time coordinate ``h^(1-e) / ((e-1) c)`` of the local approximation ``h' = c h^e``."""
        e, c = self.side.exponent, self.side.coefficient
        with np.errstate(divide='ignore', over='ignore'):
            return np.asarray(h, dtype=float)**(1.0 - e) / ((e - 1.0) * c)

    def _from_fatou(self, value):
        e, c = self.side.exponent, self.side.coefficient
        return (np.asarray(value, dtype=float) * (e - 1.0) * c)**(1.0 / (1.0 - e))

    def steps(self, h, analytic: bool=True) -> np.ndarray:
        """Number of iterations ``m >= 1`` until a point at distance *h* inside the ray leaves it.

        Points deeper than the chain are resolved by the local approximation if *analytic* is set, otherwise they are
        reported as ``-1``. The fixed point itself never leaves.
        """
        h = np.atleast_1d(np.asarray(h, dtype=float))
        side = 'right' if not self.closed else 'left'
        inside = self._ascending.size - np.searchsorted(self._ascending, h, side=side)
        result = (inside + 1).astype(np.int64)
        deep = inside >= self._ascending.size
        result[deep] = UNRESOLVED
        if analytic and np.any(deep):
            excess = np.ceil(self.fatou(h[deep]) - self.fatou(self.analytic_from))
            total = (self.chain.size - 1) + np.maximum(excess, 1.0)
            usable = np.isfinite(total) & (total < _MAX_STEPS) & (h[deep] > 0)
            values = np.full(total.shape, UNRESOLVED, dtype=np.int64)
            values[usable] = total[usable].astype(np.int64)
            result[deep] = values
        return result

    def scalar_steps(self, h: float, analytic: bool=True) -> int:
        """Scalar version of :meth:`steps`."""
        chain = self._chain_list
        low, high = 1, len(chain)
        # first index m >= 1 with h >= chain[m] (h > chain[m] for closed boundaries)
        while low < high:
            middle = (low + high) // 2
            if (h > chain[middle]) if self.closed else (h >= chain[middle]):
                high = middle
            else:
                low = middle + 1
        if low < len(chain):
            return low
        if not analytic or h <= 0:
            return UNRESOLVED
        total = (len(chain) - 1) + max(math.ceil(float(self.fatou(h)) - float(self.fatou(self.analytic_from))), 1)
        return total if total < _MAX_STEPS else UNRESOLVED

    def exit_distance(self, h: float, steps: int) -> float:
        """A representative of the exit point of an excursion entering at distance *h* that takes *steps* steps.

        The position of *h* within its band ``[s_{k+1}, s_k)`` of the chain, measured in the escape time coordinate, is
        carried over to the band ``[s_1, s_0)`` the excursion exits into.
        """
        depth = len(self._chain_list)
        if steps < depth:
            lower, upper = self._chain_list[steps], self._chain_list[steps - 1]
            fraction = (float(self.fatou(h)) - float(self.fatou(lower))) / (
                float(self.fatou(upper)) - float(self.fatou(lower))
            )
        else:
            excess = float(self.fatou(h)) - float(self.fatou(self.analytic_from))
            fraction = math.ceil(excess) - excess
        fraction = min(max(fraction, 0.0), 1.0)
        start, stop = float(self.fatou(self.boundary)), float(self.fatou(self.outer))
        return float(self._from_fatou(start + fraction * (stop - start)))


class ExitTable:
    """Backward chains for every ray side of a partition.

    Args:
        spec:
            The map.
        partition:
            A partition whose rays are neighbourhoods of the fixed points.
        depth:
            Number of chain points per side; deeper entry points use the local approximation.
    """

    def __init__(self, spec: IntermittentMapSpec, partition: RaysPartition, depth: int=2**14):
        if depth < 2:
            raise ValueError("The chain depth must be at least 2")
        self.spec = spec
        self.partition = partition
        self.depth = depth
        self.sides = {key: RaySide(spec, partition, key[0], key[1], depth) for key in spec.sides}
        logger.debug('Exit table with %d sides of depth %d', len(self.sides), depth)

    def __getitem__(self, key: Tuple[int, int]) -> RaySide:
        return self.sides[key]

    def locate(self, x: float) -> Optional[Tuple[RaySide, float]]:
        """Return the ray side containing *x* and the distance to its fixed point, or ``None`` for ``Y``."""
        spec = self.spec
        j = bisect.bisect_left(spec.a, x, 1, spec.d)
        offset = x - spec.x[j - 1]
        sigma = 1 if offset > 0 else -1
        ray_side = self.sides.get((j, sigma))
        if ray_side is None:
            return (self.sides.get((j, -sigma)), 0.0) if offset == 0 else None
        h = sigma * offset
        if h < ray_side.boundary or (ray_side.closed and h == ray_side.boundary):
            return ray_side, h
        return None

    def steps(self, x, analytic: bool=True) -> np.ndarray:
        """Steps until the points *x* of the rays reach ``Y``; points of ``Y`` give ``0``, unresolved ``-1``."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        result = np.zeros(x.shape, dtype=np.int64)
        labels = self.partition.label(x)
        for (j, sigma), ray_side in self.sides.items():
            offset = sigma * (x - ray_side.fixed)
            mask = (labels == j) & (offset > 0)
            if np.any(mask):
                result[mask] = ray_side.steps(offset[mask], analytic)
        fixed = (labels != JUNCTION) & np.isin(x, self.spec.x)
        result[fixed] = UNRESOLVED
        return result


class ExcursionTrace:
    """The sequence of excursions of an orbit between consecutive visits to ``Y``.

    Record ``k`` describes the excursion that starts at the ``k``-th return epoch (record ``0`` starts at the initial
    point): the ray it enters (``0`` if it returns immediately) and its return time ``phi``, which is one more than the
    time ``ell_j`` spent in the ray.

    Attributes:
        d: Number of rays.
        rays: Ray index per record.
        phi: Return time per record.
        starts_in_y: Whether the initial point lies in ``Y``.
        approximated: Number of excursions completed by the local approximation.
    """

    def __init__(self, d: int, rays, phi, starts_in_y: bool, approximated: int=0):
        self.d = d
        self.rays = np.asarray(rays, dtype=np.int64)
        self.phi = np.asarray(phi, dtype=np.int64)
        self.starts_in_y = bool(starts_in_y)
        self.approximated = int(approximated)
        if self.rays.shape != self.phi.shape:
            raise ValueError("Ray indices and return times must have the same length")
        if np.any(self.phi < 1) or np.any((self.rays == 0) != (self.phi == 1)):
            raise ValueError("Records must have phi >= 1 and a ray exactly when phi > 1")

    def __len__(self):
        return self.phi.size

    def __repr__(self):
        return 'ExcursionTrace(d={}, records={}, starts_in_y={})'.format(self.d, len(self), self.starts_in_y)

    @property
    def ell(self) -> np.ndarray:
        """Matrix of the times ``ell_j`` spent in every ray, one row per record."""
        lengths = np.zeros((self.phi.size, self.d), dtype=np.int64)
        rows = np.flatnonzero(self.rays)
        lengths[rows, self.rays[rows] - 1] = self.phi[rows] - 1
        return lengths

    @property
    def epochs(self) -> np.ndarray:
        """Return epochs ``phi(0) < phi(1) < ...``."""
        return np.cumsum(self.phi)

    def eta(self, j: int) -> StepFunction:
        """The process ``eta_j(t)`` of the time spent in ray *j* up to the ``floor(t+1)``-th return."""
        return StepFunction.partial_sums(self.ell[:, j - 1])

    @property
    def eta_processes(self) -> List[StepFunction]:
        return [self.eta(j) for j in range(1, self.d + 1)]

    @property
    def phi_process(self) -> StepFunction:
        """The return epochs ``phi(t)`` as a process in ``t``."""
        return StepFunction.partial_sums(self.phi)

    def stationary(self) -> 'ExcursionTrace':
        """The trace without the initial record when the orbit did not start in ``Y``."""
        if self.starts_in_y or not len(self):
            return self
        return ExcursionTrace(self.d, self.rays[1:], self.phi[1:], True, self.approximated)

    def to_csv(self, path: str) -> None:
        """Write the records as CSV with the columns ``record, ray, phi, ell_1..ell_d``."""
        ell = self.ell
        with open(path, 'w', newline='') as handle:
            writer = csv.writer(handle)
            writer.writerow(['record', 'ray', 'phi'] + ['ell_{}'.format(j) for j in range(1, self.d + 1)])
            for k in range(len(self)):
                writer.writerow([k, int(self.rays[k]), int(self.phi[k])] + ell[k].tolist())


class Excursion(NamedTuple):
    """One record of an :class:`ExcursionTrace` as produced by :func:`iter_excursions`.

    The *point* is where the orbit returns to ``Y``.
    """
    ray: int
    phi: int
    approximated: bool = False
    point: float = math.nan


def iter_excursions(
        spec: IntermittentMapSpec,
        partition: RaysPartition,
        x0: float,
        stall_policy: str='analytic-tail',
        direct_limit: int=1024,
        table: Optional[ExitTable]=None
) -> Iterator[Excursion]:
    """Yield the excursions of the orbit of *x0* between consecutive visits to ``Y``.

    Excursions of at most *direct_limit* steps are iterated exactly with the same arithmetic as the map itself.
    Longer excursions take their length from the backward chain and continue at a representative of the exit band
    (see :meth:`RaySide.exit_distance`); this requires ``stall_policy='analytic-tail'``. With ``stall_policy='error'``
    every excursion is iterated and an orbit that freezes raises :class:`StallDetected`.

    The generator is infinite; the first excursion starts at *x0* itself.

    Raises:
        ValueError:
            If *x0* is outside ``[0, 1]``, is an indifferent fixed point or the policy is unknown.
        StallDetected:
            If the orbit freezes and the policy is ``'error'``.
    """
    if not 0.0 <= x0 <= 1.0:
        raise ValueError("Initial point {!r} outside [0, 1]".format(x0))
    if stall_policy not in ('analytic-tail', 'error'):
        raise ValueError("Unknown stall policy {!r}".format(stall_policy))
    if x0 in spec.x:
        raise ValueError("The orbit of the fixed point {!r} never returns".format(x0))
    return _excursions(spec, table or ExitTable(spec, partition), float(x0), stall_policy == 'analytic-tail',
                       direct_limit)


def _excursions(spec: IntermittentMapSpec, table: ExitTable, point: float, analytic: bool,
                direct_limit: int) -> Iterator[Excursion]:
    time = 0
    a, d = spec.a, spec.d
    while True:
        j = bisect.bisect_left(a, point, 1, d)
        point = spec.evaluate_branch(j, point)
        time += 1
        located = table.locate(point)
        if located is None:
            yield Excursion(JUNCTION, 1, False, point)
            continue
        ray_side, h = located
        expected = ray_side.scalar_steps(h, analytic)
        if expected == UNRESOLVED and analytic:
            raise StallDetected(point, time)
        approximated = analytic and expected > direct_limit
        if approximated:
            point = ray_side.fixed + ray_side.sigma * ray_side.exit_distance(h, expected)
            length = expected
        else:
            fixed, sigma, forward, boundary = ray_side.fixed, ray_side.sigma, ray_side.side.forward, ray_side.boundary
            closed = ray_side.closed
            length = 0
            while True:
                previous = point
                point = fixed + sigma * float(forward(sigma * (point - fixed)))
                length += 1
                offset = sigma * (point - fixed)
                if (offset > boundary) if closed else (offset >= boundary):
                    break
                if point == previous:
                    raise StallDetected(point, time + length)
        time += length
        yield Excursion(ray_side.j, length + 1, approximated, point)


def excursion_trace(
        spec: IntermittentMapSpec,
        partition: RaysPartition,
        x0: float,
        n_returns: int,
        stall_policy: str='analytic-tail',
        direct_limit: int=1024,
        table: Optional[ExitTable]=None
) -> ExcursionTrace:
    """Follow the orbit of *x0* through *n_returns* excursions.

    Record ``0`` is the excursion that starts at *x0*; :attr:`ExcursionTrace.starts_in_y` tells whether it is a
    genuine excursion from ``Y``.

    >>> trace = excursion_trace(BOOLE, build_partition(BOOLE), 0.45, 5)
    >>> bool(np.all(trace.phi == 1 + trace.ell.sum(axis=1)))
    True

    Args:
        spec:
            The map.
        partition:
            The partition into rays and junction.
        x0:
            The initial point.
        n_returns:
            Number of records.
        stall_policy:
            ``'analytic-tail'`` or ``'error'``.
        direct_limit:
            Longest excursion that is iterated step by step.
        table:
            A prebuilt :class:`ExitTable` for *spec* and *partition*.

    Raises:
        ValueError:
            Propagated from :func:`iter_excursions`.
        StallDetected:
            If the orbit freezes and the policy is ``'error'``.
    """
    table = table or ExitTable(spec, partition)
    excursions = iter_excursions(spec, partition, x0, stall_policy, direct_limit, table)
    rays = np.zeros(n_returns, dtype=np.int64)
    phi = np.ones(n_returns, dtype=np.int64)
    approximated = 0
    for record, excursion in zip(range(n_returns), excursions):
        rays[record], phi[record] = excursion.ray, excursion.phi
        approximated += excursion.approximated
    if approximated:
        logger.info('%d of %d excursions were completed by the local approximation', approximated, n_returns)
    return ExcursionTrace(spec.d, rays, phi, table.locate(float(x0)) is None, approximated)


class CellTable:
    """The cells of the first return map, grouped by the branch ``i`` they lie in and the ray side they enter.

    The cell ``(i, j, sigma, n)`` is the image under ``f_i`` of the band ``[s_{n+1}, s_n]`` on side *sigma* of ``x_j``
    (with ``s_0`` the distance of the branch end that the junction piece next to ``A_j`` reaches); its points enter
    ``A_j`` and return after ``n + 1`` steps. For two branches the cells with ``n = 0`` are empty.

    Attributes:
        n_min: Smallest excursion length with a cell.
        n_max: Largest tabulated excursion length.
        groups: Mapping ``(i, j, sigma)`` to the cell edges ``E_n = f_i(x_j + sigma s_n)`` for ``n = n_min..n_max+1``.
    """

    def __init__(self, spec: IntermittentMapSpec, partition: RaysPartition, n_max: int):
        if n_max < 1:
            raise ValueError("At least one cell per ray is needed")
        if partition.kind != 'dynamical':
            raise ValueError("Cells of the return map need the dynamically separating partition")
        self.spec = spec
        self.partition = partition
        self.n_max = n_max
        self.n_min = 1 if spec.d == 2 else 0
        self.groups = {}  # type: Dict[Tuple[int, int, int], np.ndarray]
        self.chains = {}  # type: Dict[Tuple[int, int], np.ndarray]
        for (j, sigma) in spec.sides:
            start = abs(self._outer_point(j, sigma) - spec.x[j - 1])
            chain = spec.approach_distances(j, sigma, start, n_max + 1)
            self.chains[(j, sigma)] = chain
            points = np.clip(spec.x[j - 1] + sigma * chain[self.n_min:], 0.0, 1.0)
            for i in range(1, spec.d + 1):
                if i != j:
                    self.groups[(i, j, sigma)] = spec.inverse(i, points)
        self._group_edges = {}
        for i in range(1, spec.d + 1):
            landmarks = sorted(set(spec.a) | set(spec.x))
            self._group_edges[i] = (spec.inverse(i, np.array(landmarks)), landmarks)
        logger.debug('Cell table with %d groups up to n=%d', len(self.groups), n_max)

    def _outer_point(self, j: int, sigma: int) -> float:
        if self.spec.d == 2:
            junction = self.partition.junction[0]
            return junction.right if sigma > 0 else junction.left
        return self.spec.a[j] if sigma > 0 else self.spec.a[j - 1]

    def __repr__(self):
        return 'CellTable(d={}, n_max={})'.format(self.spec.d, self.n_max)

    def cell(self, i: int, j: int, sigma: int, n: int) -> Tuple[float, float]:
        """End points ``(left, right)`` of a cell."""
        if not self.n_min <= n <= self.n_max:
            raise ValueError("Cell index {} outside {}..{}".format(n, self.n_min, self.n_max))
        edges = self.groups[(i, j, sigma)]
        first, second = edges[n - self.n_min], edges[n - self.n_min + 1]
        return (float(min(first, second)), float(max(first, second)))

    def sizes(self, i: int, j: int, sigma: int) -> np.ndarray:
        """Lebesgue sizes of the cells ``n = n_min..n_max`` of a group."""
        return np.abs(np.diff(self.groups[(i, j, sigma)]))

    def _group_of(self, z: float) -> Optional[Tuple[int, int, int]]:
        spec = self.spec
        i = bisect.bisect_left(spec.a, z, 1, spec.d)
        images, landmarks = self._group_edges[i]
        k = int(np.searchsorted(images, z, side='left'))
        if k == 0 or k >= len(landmarks):
            k = min(max(k, 1), len(landmarks) - 1)
        # landmarks alternate between partition points and fixed points
        left, right = landmarks[k - 1], landmarks[k]
        if left in spec.x and right in spec.a:
            j, sigma = spec.x.index(left) + 1, 1
        elif left in spec.a and right in spec.x:
            j, sigma = spec.x.index(right) + 1, -1
        else:
            return None
        if j == i or (i, j, sigma) not in self.groups:
            return None
        return i, j, sigma

    def lookup(self, z) -> Tuple[np.ndarray, np.ndarray]:
        """Find the ray and the excursion length ``n`` of entry points *z* in ``Y``.

        Ties at cell edges are resolved toward the smaller ``n``. Points beyond the tabulated cells give ``n = -1``.
        """
        z = np.atleast_1d(np.asarray(z, dtype=float))
        rays = np.zeros(z.shape, dtype=np.int64)
        lengths = np.full(z.shape, UNRESOLVED, dtype=np.int64)
        for index, value in enumerate(z):
            group = self._group_of(float(value))
            if group is None:
                continue
            _, j, sigma = group
            full = self.groups[group]
            edges = full[1:]
            if full[0] > full[-1]:
                ascending = edges[::-1]
                count = ascending.size - np.searchsorted(ascending, value, side='right')
            else:
                count = np.searchsorted(edges, value, side='left')
            rays[index] = j
            if count < edges.size:
                lengths[index] = self.n_min + int(count)
        return rays, lengths

    def to_csv(self, path: str) -> None:
        """Write the cells as CSV with the columns ``i, j, sigma, n, left, right``."""
        with open(path, 'w', newline='') as handle:
            writer = csv.writer(handle)
            writer.writerow(['i', 'j', 'sigma', 'n', 'left', 'right'])
            for (i, j, sigma) in sorted(self.groups):
                for n in range(self.n_min, self.n_max + 1):
                    left, right = self.cell(i, j, sigma, n)
                    writer.writerow([i, j, sigma, n, repr(left), repr(right)])


def cell_table(spec: IntermittentMapSpec, partition: RaysPartition, n_max: int) -> CellTable:
    """Build the :class:`CellTable` of the return map up to excursion length *n_max*.

    >>> cells = cell_table(BOOLE, build_partition(BOOLE), 20)
    >>> left, right = cells.cell(2, 1, 1, 1)
    >>> round(right, 12) == round(2 - math.sqrt(2), 12)
    True
    """
    return CellTable(spec, partition, n_max)


class ConditionReport(NamedTuple):
    """Numerical estimates of the expansion and distortion of the return map."""
    min_derivative: float
    max_distortion: float
    chain_rule_error: float
    expansion_threshold: float
    distortion_threshold: float
    samples: int

    @property
    def expanding(self) -> bool:
        return self.min_derivative > self.expansion_threshold

    @property
    def bounded_distortion(self) -> bool:
        return self.max_distortion < self.distortion_threshold

    @property
    def passed(self) -> bool:
        return self.expanding and self.bounded_distortion


def _inverse_log_derivative(spec: IntermittentMapSpec, i: int, j: int, n: int, y: np.ndarray) -> np.ndarray:
    """``log (f_i o f_j^n)'(y)`` by the chain rule through the inverse branches."""
    total = np.zeros_like(y)
    point = y
    for _ in range(n):
        total += np.log(spec.inverse_derivative(j, point))
        point = spec.inverse(j, point)
    return total + np.log(spec.inverse_derivative(i, point))


def check_return_map_conditions(
        spec: IntermittentMapSpec,
        partition: RaysPartition,
        n_max: int,
        samples_per_cell: int=5,
        expansion_threshold: float=1.0 + 1e-6,
        distortion_threshold: float=1e6
) -> ConditionReport:
    """Estimate ``inf T_Y'`` and ``sup |T_Y''| / T_Y'^2`` over sampled interiors of the cells up to *n_max*.

    On the cell ``f_i f_j^n (Y_j)`` the return map is the inverse of ``F = f_i o f_j^n``, so ``T_Y'(F(y)) = 1 /
    F'(y)`` and ``|T_Y''| / T_Y'^2 = |(log F')'(y)|``. The log derivative is differentiated by central differences.
    The derivative is cross-checked against the product of ``T'`` along the forward excursion.
    """
    table = CellTable(spec, partition, n_max)
    minimum, distortion, chain_error = math.inf, 0.0, 0.0
    count = 0
    for (i, j, sigma) in table.groups:
        chain = table.chains[(j, sigma)]
        fixed = spec.x[j - 1]
        for n in range(table.n_min, n_max + 1):
            # sample the exit band [s_1, s_0] of side (j, sigma), which every cell maps onto
            outer, inner = chain[0], chain[1]
            fractions = (np.arange(samples_per_cell) + 0.5) / samples_per_cell
            y = fixed + sigma * (inner + fractions * (outer - inner))
            step = 1e-6 * (outer - inner)
            log_derivative = _inverse_log_derivative(spec, i, j, n, y)
            derivative = np.exp(-log_derivative)
            slope = (_inverse_log_derivative(spec, i, j, n, y + step) -
                     _inverse_log_derivative(spec, i, j, n, y - step)) / (2 * step)
            minimum = min(minimum, float(derivative.min()))
            distortion = max(distortion, float(np.abs(slope).max()))
            # forward product of T' along the excursion from the cell point
            point = spec.inverse(i, _pull_back(spec, j, n, y))
            log_product = np.zeros_like(point)
            for _ in range(n + 1):
                log_product += np.log(spec.derivative(point))
                point = spec(point)
            chain_error = max(chain_error, float(np.max(np.abs(log_product + log_derivative))))
            count += y.size
    logger.info('Return map conditions: inf T_Y\'=%.6g, distortion=%.6g over %d samples', minimum, distortion, count)
    return ConditionReport(minimum, distortion, chain_error, expansion_threshold, distortion_threshold, count)


def _pull_back(spec: IntermittentMapSpec, j: int, n: int, y: np.ndarray) -> np.ndarray:
    point = y
    for _ in range(n):
        point = spec.inverse(j, point)
    return point
