# -*- coding: utf-8 -*-
"""Tails of excursion lengths, wandering rates and the parameters of the limit laws.

The return time ``phi`` to ``Y`` is regularly varying under ``mu_Y``: ``mu_Y[phi > n]`` decays like ``n^-alpha`` and
the share of the excursions longer than ``n`` that go into the ray ``A_j`` tends to ``beta_j``. :func:`tail_statistics`
estimates these quantities from an :class:`~intermittency.dynamics.inducing.ExcursionTrace`, while
:func:`predicted_parameters` evaluates them from the map itself:

>>> predicted = predicted_parameters(BOOLE)
>>> list(predicted.params.beta)
[0.5, 0.5]
>>> round(float(predicted.b_n(2 * math.pi)), 12)
1.0
"""
import csv
import logging
import math
from typing import Callable, List, NamedTuple, Optional, Tuple

import numpy as np
from multiset import Multiset
from scipy import special

from ..errors import InsufficientData
from ..processes.stable import StableParams
from ..utils import log_log_slope
from .inducing import ExitTable, ExcursionTrace, iter_excursions
from .maps import IntermittentMapSpec
from .partition import JUNCTION, RaysPartition

__all__ = [
    'TailReport', 'tail_statistics', 'PredictedParameters', 'predicted_parameters', 'HistogramDensity',
    'estimate_invariant_density', 'sample_mu_y'
]

logger = logging.getLogger(__name__)

MIN_RETURNS = 10**4
"""Shortest trace accepted by :func:`tail_statistics`."""

_MIN_EXCEEDANCES = 100
_GRID_PER_OCTAVE = 4


class TailReport:
    """Empirical tails of the return time and the wandering rates reconstructed from them.

    All probabilities refer to the empirical law of the records of a stationary trace, i.e. to ``mu_Y``.

    Attributes:
        records: Number of records the report is based on.
        mu_y: The measure ``mu(Y)`` used for the wandering rates.
        alpha_loglog: Tail index from the log-log fit over the most stable decade.
        alpha_hill: Hill estimate of the tail index from the largest return times.
        window: The decade ``(n_low, n_high)`` of the log-log fit.
        beta: Shares ``beta_j`` of the rays among the excursions longer than ``n_low``.
        entries: Number of excursions into each ray.
        alpha: The tail index used for the normalizing sequences.
        grid: Geometric grid of lengths ``n`` for the tabulated columns.
    """

    def __init__(self, phi, rays, d: int, mu_y: float, alpha_loglog: float, alpha_hill: float,
                 window: Tuple[int, int], beta, entries: Multiset, alpha: float, grid):
        self._sorted = np.sort(np.asarray(phi, dtype=np.int64))
        self._phi = np.asarray(phi, dtype=np.int64)
        self._rays = np.asarray(rays, dtype=np.int64)
        self.d = d
        self.records = self._phi.size
        self.mu_y = float(mu_y)
        self.alpha_loglog = alpha_loglog
        self.alpha_hill = alpha_hill
        self.window = window
        self.beta = np.asarray(beta, dtype=float)
        self.entries = entries
        self.alpha = alpha
        self.grid = np.asarray(grid, dtype=np.int64)

    def __repr__(self):
        return 'TailReport(records={}, alpha_loglog={:.4f}, alpha_hill={:.4f}, beta={!r})'.format(
            self.records, self.alpha_loglog, self.alpha_hill, self.beta.round(4).tolist()
        )

    def tail(self, n) -> np.ndarray:
        """The empirical ``mu_Y[phi > n]``."""
        n = np.asarray(n)
        return (self.records - np.searchsorted(self._sorted, n, side='right')) / self.records

    def ray_tail(self, j: int, n) -> np.ndarray:
        """The empirical ``mu_Y[ell_j >= n]`` for ``n >= 1``."""
        lengths = np.sort(np.where(self._rays == j, self._phi - 1, 0))
        return (self.records - np.searchsorted(lengths, np.asarray(n), side='left')) / self.records

    def wandering_rate(self, n) -> np.ndarray:
        """The wandering rate ``w(n) = mu(Y) * sum_{k<n} mu_Y[phi > k]``, evaluated as ``mu(Y) E[min(phi, n)]``."""
        n = np.atleast_1d(np.asarray(n, dtype=np.int64))
        return self.mu_y * np.array([np.minimum(self._phi, value).mean() for value in n])

    def ray_wandering_rate(self, j: int, n) -> np.ndarray:
        """The wandering rate ``w_j(n) = mu(Y) * sum_{1<=k<n} mu_Y[ell_j >= k]`` of ``Y`` starting from ``A_j``.

        Together with the junction itself they add up to ``w(n) = mu(Y) + w_1(n) + ... + w_d(n)`` for ``n >= 1``.
        """
        n = np.atleast_1d(np.asarray(n, dtype=np.int64))
        lengths = np.where(self._rays == j, self._phi - 1, 0)
        return self.mu_y * np.array([np.minimum(lengths, max(value - 1, 0)).mean() for value in n])

    def b_n(self, n) -> np.ndarray:
        """The normalizing sequence ``1 / (Gamma(1 - alpha) mu_Y[phi >= n])``, which grows like ``mu(Y)`` times the
        normalizing sequence of the map."""
        n = np.asarray(n, dtype=np.int64)
        with np.errstate(divide='ignore'):
            return 1.0 / (special.gamma(1.0 - self.alpha) * self.tail(n - 1))

    def b_n_wandering(self, n) -> np.ndarray:
        """The normalizing sequence ``mu(Y) n / (Gamma(2 - alpha) w(n))`` from the wandering rate."""
        n = np.asarray(n, dtype=float)
        return self.mu_y * n / (special.gamma(2.0 - self.alpha) * self.wandering_rate(n))

    def to_csv(self, path: str) -> None:
        """Write the columns ``n, tail, w, w_1..w_d, b_n, b_n_map, b_n_wandering`` on :attr:`grid`."""
        grid = self.grid
        columns = [grid, self.tail(grid), self.wandering_rate(grid)]
        columns += [self.ray_wandering_rate(j, grid) for j in range(1, self.d + 1)]
        b_n = self.b_n(grid)
        columns += [b_n, b_n / self.mu_y, self.b_n_wandering(grid)]
        header = ['n', 'tail', 'w'] + ['w_{}'.format(j) for j in range(1, self.d + 1)]
        header += ['b_n', 'b_n_map', 'b_n_wandering']
        with open(path, 'w', newline='') as handle:
            writer = csv.writer(handle)
            writer.writerow(header)
            for row in zip(*columns):
                writer.writerow([int(row[0])] + ['{:.10g}'.format(float(value)) for value in row[1:]])


def _geometric_grid(upper: float) -> np.ndarray:
    points = []
    k = _GRID_PER_OCTAVE
    while True:
        value = int(round(2.0**(k / _GRID_PER_OCTAVE)))
        if value > upper:
            break
        if not points or value > points[-1]:
            points.append(value)
        k += 1
    return np.array(points, dtype=np.int64)


def _stable_decade(grid: np.ndarray, tail: np.ndarray) -> Tuple[int, int]:
    """Indices of the decade of *grid* whose local log-log slopes vary least."""
    slopes = np.diff(np.log(tail)) / np.diff(np.log(grid))
    best, best_score = None, math.inf
    for start in range(grid.size):
        ends = np.flatnonzero(grid >= 10 * grid[start])
        if not ends.size:
            break
        end = int(ends[0])
        score = float(np.std(slopes[start:end]))
        if score <= best_score:
            best, best_score = (start, end), score
    if best is None:
        logger.warning('No full decade of reliable tail estimates, fitting over the whole range')
        return 0, grid.size - 1
    return best


def _hill(values: np.ndarray, k: int) -> float:
    top = np.sort(values)[::-1]
    return float(1.0 / np.mean(np.log(top[:k] / top[k])))


def tail_statistics(
        trace: ExcursionTrace, mu_y: float, alpha: Optional[float]=None, min_returns: int=MIN_RETURNS
) -> TailReport:
    """Estimate the tail index and the ray weights from an excursion trace.

    The initial record is discarded unless the orbit started in ``Y``. The tail index is the negative slope of the
    least squares fit of ``log mu_Y[phi > n]`` against ``log n`` over the decade on which the local slopes are most
    stable, among the lengths exceeded by at least 100 records. The Hill estimator over the largest ``sqrt(N)``
    return times is reported alongside.

    Args:
        trace:
            The excursion trace.
        mu_y:
            The invariant measure of ``Y``.
        alpha:
            The tail index for the normalizing sequences; defaults to the log-log estimate.
        min_returns:
            Minimum number of records.

    Returns:
        The :class:`TailReport`.

    Raises:
        InsufficientData:
            If the stationary part of the trace has fewer than *min_returns* records or its tail is too short for a
            fit.
    """
    stationary = trace.stationary()
    records = len(stationary)
    if records < min_returns:
        raise InsufficientData("Tail statistics need at least {} returns, got {}".format(min_returns, records))
    phi, rays = stationary.phi, stationary.rays
    sorted_phi = np.sort(phi)
    reliable = float(sorted_phi[-_MIN_EXCEEDANCES - 1]) if records > _MIN_EXCEEDANCES else 0.0
    grid = _geometric_grid(reliable)
    if grid.size < 3:
        raise InsufficientData("Too few long excursions for a tail fit")
    tail = (records - np.searchsorted(sorted_phi, grid, side='right')) / records
    start, end = _stable_decade(grid, tail)
    alpha_loglog = -log_log_slope(grid[start:end + 1], tail[start:end + 1])
    alpha_hill = _hill(phi.astype(float), max(10, int(math.sqrt(records))))
    low = int(grid[start])
    long_entries = Multiset(rays[phi > low].tolist())
    beta = np.array([long_entries[j] for j in range(1, trace.d + 1)]) / max(len(long_entries), 1)
    entries = Multiset(rays[rays != JUNCTION].tolist())
    logger.info('Tail index %.4f (log-log over [%d, %d]), %.4f (Hill); beta %r', alpha_loglog, low,
                int(grid[end]), alpha_hill, beta.round(4).tolist())
    full_grid = _geometric_grid(float(sorted_phi[-1]))
    return TailReport(
        phi, rays, trace.d, mu_y, alpha_loglog, alpha_hill, (low, int(grid[end])), beta, entries,
        alpha_loglog if alpha is None else alpha, full_grid
    )


class PredictedParameters(NamedTuple):
    """The limit parameters of a map.

    Attributes:
        params: The tail index and the ray weights ``beta``.
        weights: The inflow weights ``v_j``.
        scale: ``sum_j c_j^-alpha v_j``.
    """
    params: StableParams
    weights: np.ndarray
    scale: float

    def b_n(self, n) -> np.ndarray:
        """The normalizing sequence ``inf{s >= 1: alpha / (s Psi(1/s)) > n} / (Gamma(1 - alpha) scale)``.

        For ``Psi(s) = s^(1 + 1/alpha)`` the infimum is ``max(1, (n / alpha)^alpha)``.
        """
        alpha = self.params.alpha
        level = np.maximum(1.0, (np.asarray(n, dtype=float) / alpha)**alpha)
        return level / (special.gamma(1.0 - alpha) * self.scale)


def predicted_parameters(spec: IntermittentMapSpec, density: Optional[Callable]=None) -> PredictedParameters:
    """Evaluate ``beta`` and the normalizing sequence of a map from its invariant density.

    The inflow weight of the fixed point ``x_j`` is ``v_j = sum_{i != j} h(f_j(x_i)) f_j'(x_i)``, doubled for the
    interior fixed points which are approached from both sides, and ``beta_j`` is proportional to ``c_j^-alpha
    v_j``. Fixed points with ``c_j = inf`` receive ``beta_j = 0``.

    Args:
        spec:
            The map.
        density:
            The invariant density ``h`` near the preimages of the fixed points. Defaults to the closed form of the
            map, e.g. a :class:`HistogramDensity` can be passed for maps without one.

    Raises:
        ValueError:
            If no density is given and the map has no closed form density.
    """
    if density is None:
        if not spec.has_density:
            raise ValueError("The {!r} family has no closed form density; pass an estimate".format(spec.family))
        density = spec.density
    weights = np.zeros(spec.d)
    for j in range(1, spec.d + 1):
        total = 0.0
        for i, fixed in enumerate(spec.x, start=1):
            if i == j:
                continue
            total += float(density(spec.inverse(j, fixed))) * float(spec.inverse_derivative(j, fixed))
        weights[j - 1] = total if j in (1, spec.d) else 2.0 * total
    strength = np.array([c**-spec.alpha for c in spec.c]) * weights
    scale = float(strength.sum())
    return PredictedParameters(StableParams(spec.alpha, strength / scale), weights, scale)


class HistogramDensity:
    """A piecewise constant density on the junction, normalized to ``mu(Y) = 1``.

    Attributes:
        edges: Bin edges, consecutive pairs lying in one junction interval.
        values: Density value per bin.
        widths: Bin widths.
    """

    def __init__(self, edges, values, pieces):
        self.edges = np.asarray(edges, dtype=float)
        self.values = np.asarray(values, dtype=float)
        self.pieces = list(pieces)
        self.widths = self.edges[:, 1] - self.edges[:, 0]

    def __repr__(self):
        return 'HistogramDensity(bins={})'.format(self.values.size)

    def __call__(self, x):
        points = np.atleast_1d(np.asarray(x, dtype=float))
        index = np.searchsorted(self.edges[:, 0], points, side='right') - 1
        valid = (index >= 0) & (points <= self.edges[np.maximum(index, 0), 1])
        result = np.where(valid, self.values[np.maximum(index, 0)], 0.0)
        if np.ndim(x) == 0:
            return float(result[0])
        return result

    def sample(self, size: int, rng: np.random.Generator) -> np.ndarray:
        """Draw from the normalized density."""
        bins = rng.choice(self.values.size, size=size, p=self.values * self.widths)
        return self.edges[bins, 0] + rng.random(size) * self.widths[bins]


def estimate_invariant_density(
        spec: IntermittentMapSpec,
        partition: RaysPartition,
        n_returns: int=10**6,
        bins: int=200,
        x0: Optional[float]=None,
        table: Optional[ExitTable]=None
) -> HistogramDensity:
    """Estimate the invariant density on ``Y`` by the Hopf ratios of a long orbit.

    The fraction of the returns to ``Y`` that land in a bin converges to its ``mu_Y`` measure, so the histogram of the
    return points estimates the density of ``mu_Y``. The bins are spread over the junction intervals in proportion to
    their lengths.

    Args:
        spec:
            The map.
        partition:
            The partition into rays and junction.
        n_returns:
            Number of returns to ``Y``.
        bins:
            Total number of bins.
        x0:
            The initial point, by default :attr:`~intermittency.dynamics.partition.RaysPartition.junction_point`.
        table:
            A prebuilt :class:`~intermittency.dynamics.inducing.ExitTable`.

    Raises:
        InsufficientData:
            If *n_returns* is smaller than the number of bins.
    """
    if n_returns < bins:
        raise InsufficientData("At least one return per bin is needed")
    pieces = partition.junction
    lengths = np.array([piece.right - piece.left for piece in pieces])
    counts = np.maximum(1, np.round(bins * lengths / lengths.sum()).astype(int))
    edges = []
    for piece, count in zip(pieces, counts):
        points = np.linspace(piece.left, piece.right, count + 1)
        edges.extend(zip(points[:-1], points[1:]))
    edges = np.array(edges)
    if x0 is None:
        x0 = partition.junction_point
    excursions = iter_excursions(spec, partition, x0, table=table)
    points = np.fromiter((excursion.point for _, excursion in zip(range(n_returns), excursions)), dtype=float,
                         count=n_returns)
    index = np.clip(np.searchsorted(edges[:, 0], points, side='right') - 1, 0, len(edges) - 1)
    histogram = np.bincount(index, minlength=len(edges)) / n_returns
    logger.debug('Density estimate from %d returns in %d bins', n_returns, len(edges))
    return HistogramDensity(edges, histogram / (edges[:, 1] - edges[:, 0]), pieces)


def sample_mu_y(
        spec: IntermittentMapSpec,
        partition: RaysPartition,
        size: int,
        rng: np.random.Generator,
        density: Optional[Callable]=None
) -> np.ndarray:
    """Draw *size* points from the normalized invariant measure ``mu_Y`` on the junction.

    A :class:`HistogramDensity` is sampled directly; other densities by rejection from the uniform law on ``Y`` with
    an envelope from a fine grid.

    >>> points = sample_mu_y(BOOLE, build_partition(BOOLE), 100, np.random.default_rng(1))
    >>> bool(np.all(build_partition(BOOLE).label(points) == 0))
    True

    Raises:
        ValueError:
            If no density is given and the map has no closed form density.
    """
    if isinstance(density, HistogramDensity):
        return density.sample(size, rng)
    if density is None:
        if not spec.has_density:
            raise ValueError("The {!r} family has no closed form density; pass an estimate".format(spec.family))
        density = spec.density
    pieces = partition.junction
    lengths = np.array([piece.right - piece.left for piece in pieces])
    grid = np.concatenate([np.linspace(piece.left, piece.right, 1025) for piece in pieces])
    envelope = 1.05 * float(np.max(density(grid)))
    accepted: List[np.ndarray] = []
    missing = size
    while missing > 0:
        batch = 2 * missing + 16
        which = rng.choice(len(pieces), size=batch, p=lengths / lengths.sum())
        left = np.array([piece.left for piece in pieces])[which]
        proposal = left + rng.random(batch) * lengths[which]
        keep = proposal[rng.random(batch) * envelope < density(proposal)]
        accepted.append(keep[:missing])
        missing -= accepted[-1].size
    return np.concatenate(accepted)
