# -*- coding: utf-8 -*-
"""Orbits of intermittent maps and the occupation times of the rays and the junction.

The occupation time of a set ``A`` up to time ``t`` counts the iterates ``T^k x`` with ``1 <= k <= floor(t)`` in
``A``. Together with the last visit ``G_Y(t)`` to the junction before ``t`` and the first visit ``D_Y(t)`` after
``t`` they form an :class:`OccupationRecord`:

>>> labels = np.array([0, 1, 0, 2, 2, 0, 0])
>>> record = occupation_from_labels(labels, 2, [6])
>>> record.s_a[0].tolist(), int(record.s_y[0]), int(record.g_y[0])
([1, 2], 3, 6)
"""
import logging
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, List, NamedTuple, Optional, Sequence

import numpy as np

from ..errors import DYUnresolved
from ..processes.cadlag import StepFunction
from .inducing import Excursion, ExcursionTrace
from .maps import IntermittentMapSpec
from .partition import JUNCTION, RaysPartition

__all__ = [
    'STALL_POLICIES', 'OrbitConfig', 'iterate', 'orbit', 'OccupationRecord', 'ScaledOccupation', 'occupation_process',
    'occupation_from_labels', 'occupation_from_excursions', 'occupation_step_functions',
    'trace_from_labels'
]

logger = logging.getLogger(__name__)

STALL_POLICIES = ('error', 'analytic-tail')


@dataclass(frozen=True)
class OrbitConfig:
    """Initial point, horizon and stall handling of an orbit.

    Raises:
        ValueError:
            If the initial point is outside ``[0, 1]``, the horizon is negative or the policy is unknown.
    """
    x0: float
    n_steps: int
    stall_policy: str = 'analytic-tail'

    def __post_init__(self):
        if not 0.0 <= self.x0 <= 1.0:
            raise ValueError("Initial point {!r} outside [0, 1]".format(self.x0))
        if int(self.n_steps) != self.n_steps or self.n_steps < 0:
            raise ValueError("The horizon must be a non-negative integer, got {!r}".format(self.n_steps))
        if self.stall_policy not in STALL_POLICIES:
            raise ValueError("Unknown stall policy {!r}, expected one of {}".format(self.stall_policy, STALL_POLICIES))


def iterate(spec: IntermittentMapSpec, config: OrbitConfig) -> Iterator[float]:
    """Yield ``x0, T x0, ..., T^n x0`` for ``n = config.n_steps``.

    Next to an indifferent fixed point the orbit eventually freezes in floating point arithmetic. With the
    ``'analytic-tail'`` policy an orbit entering that zone stays at its point for the number of steps the local
    approximation ``h' = c h^e`` needs to leave the zone and then continues at the edge of the zone. With the
    ``'error'`` policy a frozen orbit raises :class:`~intermittency.errors.StallDetected`.

    >>> list(iterate(BOOLE, OrbitConfig(0.5, 3)))
    [0.5, 1.0, 1.0, 1.0]

    Raises:
        StallDetected:
            If the orbit freezes away from a fixed point and the policy is ``'error'``.
    """
    x = np.array([float(config.x0)])
    yield float(x[0])
    analytic = config.stall_policy == 'analytic-tail'
    frozen = 0
    resume = 0.0
    for step in range(1, config.n_steps + 1):
        if frozen > 1:
            frozen -= 1
        elif frozen == 1:
            frozen = 0
            x[0] = resume
        else:
            following = spec(x)
            if not analytic:
                spec.check_stall(x, following, step)
            x = following
            if analytic:
                zone, steps, exits = spec.stall_state(x, config.stall_policy)
                if zone[0] and steps[0] >= 1:
                    frozen, resume = int(min(steps[0], config.n_steps + 1)), float(exits[0])
                    logger.debug('Orbit enters the stall zone at step %d, resuming after %d steps', step, frozen)
        yield float(x[0])


def orbit(spec: IntermittentMapSpec, config: OrbitConfig) -> np.ndarray:
    """The orbit of :func:`iterate` as an array."""
    return np.fromiter(iterate(spec, config), dtype=float, count=config.n_steps + 1)


class ScaledOccupation(NamedTuple):
    """Occupation statistics divided by their normalizing sequences."""
    s_a: np.ndarray
    s_y: np.ndarray
    g_y: np.ndarray
    d_y: np.ndarray
    s_a_at_g: np.ndarray


class OccupationRecord:
    """Occupation statistics of one orbit at a list of sample times.

    Attributes:
        times: The sample times ``t``.
        s_a: Matrix of the occupation times ``S_{A_j}(t)``, one row per time.
        s_y: Occupation times ``S_Y(t)``.
        g_y: Last visits ``G_Y(t)`` to the junction (``0`` if there is none).
        d_y: First visits ``D_Y(t)`` after ``t``; ``nan`` where censored.
        censored: Mask of the times whose ``D_Y`` lies beyond the simulated horizon.
        s_a_at_g: Matrix of ``S_{A_j}(G_Y(t))``.
    """

    def __init__(self, times, s_a, s_y, g_y, d_y, censored, s_a_at_g):
        self.times = np.asarray(times, dtype=float)
        self.s_a = np.asarray(s_a, dtype=np.int64)
        self.s_y = np.asarray(s_y, dtype=np.int64)
        self.g_y = np.asarray(g_y, dtype=np.int64)
        self.d_y = np.asarray(d_y, dtype=float)
        self.censored = np.asarray(censored, dtype=bool)
        self.s_a_at_g = np.asarray(s_a_at_g, dtype=np.int64)

    def __repr__(self):
        return 'OccupationRecord(times={!r}, censored={})'.format(self.times.tolist(), int(self.censored.sum()))

    def scaled(self, n: float, b_n: float) -> ScaledOccupation:
        """Divide occupation times of the rays and visit epochs by *n* and the junction occupation by *b_n*.

        ``S_{A_j}(G_Y(t))`` is divided by ``G_Y(t)`` (``0`` where ``G_Y(t) = 0``).
        """
        with np.errstate(invalid='ignore', divide='ignore'):
            at_g = np.where(self.g_y[:, None] > 0, self.s_a_at_g / np.maximum(self.g_y[:, None], 1), 0.0)
        return ScaledOccupation(self.s_a / n, self.s_y / b_n, self.g_y / n, self.d_y / n, at_g)


def _sample_indices(sample_times: Sequence[float], horizon: int) -> np.ndarray:
    times = np.asarray(sample_times, dtype=float)
    if times.ndim != 1:
        raise ValueError("Sample times must be a sequence")
    if np.any(np.diff(times) < 0):
        raise ValueError("Sample times must be sorted")
    if np.any(times < 0) or np.any(times > horizon):
        raise ValueError("Sample times must lie in [0, {}]".format(horizon))
    return np.floor(times).astype(np.int64)


def occupation_from_labels(
        labels: np.ndarray, d: int, sample_times: Sequence[float], strict: bool=False
) -> OccupationRecord:
    """Compute the :class:`OccupationRecord` of an orbit given by its labels ``0`` (junction) or ``j`` (ray).

    Args:
        labels:
            Labels of ``x, T x, ..., T^n x``.
        d:
            Number of rays.
        sample_times:
            Sorted times in ``[0, n]``.
        strict:
            Raise instead of censoring unresolved first visits.

    Raises:
        DYUnresolved:
            If *strict* is set and no visit to the junction follows a sample time within the horizon.
        ValueError:
            If the sample times are not sorted or outside the horizon.
    """
    labels = np.asarray(labels, dtype=np.int64)
    horizon = labels.size - 1
    index = _sample_indices(sample_times, horizon)
    steps = np.arange(labels.size)
    one_hot = np.zeros((labels.size, d + 1), dtype=np.int64)
    one_hot[steps[1:], labels[1:]] = 1
    counts = np.cumsum(one_hot, axis=0)

    in_y = (labels == JUNCTION) & (steps >= 1)
    last_visit = np.maximum.accumulate(np.where(in_y, steps, 0))
    next_visit = np.where(in_y, steps, labels.size)
    next_visit = np.minimum.accumulate(next_visit[::-1])[::-1]

    following = index + 1
    d_y = np.full(index.shape, np.nan)
    resolved = following <= horizon
    found = np.zeros(index.shape, dtype=bool)
    found[resolved] = next_visit[following[resolved]] <= horizon
    d_y[found] = next_visit[following[found]]
    censored = ~found
    if strict and np.any(censored):
        raise DYUnresolved(float(np.asarray(sample_times, dtype=float)[censored][0]), horizon)
    if np.any(censored):
        logger.debug('D_Y censored at %d of %d sample times', int(censored.sum()), index.size)
    g_y = last_visit[index]
    return OccupationRecord(
        np.asarray(sample_times, dtype=float), counts[index, 1:], counts[index, JUNCTION], g_y, d_y, censored,
        counts[g_y, 1:]
    )


def occupation_process(
        spec: IntermittentMapSpec,
        partition: RaysPartition,
        config: OrbitConfig,
        sample_times: Sequence[float],
        strict: bool=False
) -> OccupationRecord:
    """Iterate the orbit of *config* and record the occupation statistics at the sample times.

    >>> record = occupation_process(BOOLE, build_partition(BOOLE), OrbitConfig(0.45, 10), [0, 10])
    >>> record.s_a.sum(axis=1) + record.s_y
    array([ 0, 10])

    Raises:
        DYUnresolved:
            If *strict* is set and ``D_Y(t)`` lies beyond the horizon.
        StallDetected:
            Propagated from :func:`iterate`.
    """
    labels = partition.label(orbit(spec, config))
    return occupation_from_labels(labels, partition.d, sample_times, strict)


def occupation_step_functions(labels: np.ndarray, d: int) -> List[StepFunction]:
    """The occupation times ``S_{A_1}, ..., S_{A_d}`` of a labelled orbit as step functions.

    An orbit of ``n`` steps determines ``S_{A_j}(u)`` for ``u < n + 1``.
    """
    labels = np.asarray(labels, dtype=np.int64)
    steps = np.arange(labels.size)
    horizon = float(labels.size)
    return [StepFunction.counting(steps[1:][labels[1:] == j], horizon) for j in range(1, d + 1)]


def trace_from_labels(labels: np.ndarray, d: int) -> ExcursionTrace:
    """The excursions of a labelled orbit that are completed within the orbit.

    >>> trace = trace_from_labels(np.array([0, 1, 0, 2, 2, 0, 0]), 2)
    >>> trace.rays.tolist(), trace.phi.tolist()
    ([1, 2, 0], [2, 3, 1])
    """
    labels = np.asarray(labels, dtype=np.int64)
    returns = np.flatnonzero(labels[1:] == JUNCTION) + 1
    starts = np.concatenate(([0], returns))[:returns.size]
    phi = returns - starts
    rays = np.where(phi > 1, labels[np.minimum(starts + 1, labels.size - 1)], JUNCTION)
    return ExcursionTrace(d, rays, phi, labels.size > 0 and labels[0] == JUNCTION)


def occupation_from_excursions(
        excursions: Iterable[Excursion],
        d: int,
        sample_times: Sequence[float],
        d_horizon: Optional[float]=None,
        strict: bool=False
) -> OccupationRecord:
    """Compute the :class:`OccupationRecord` from the excursions of an orbit.

    Excursion ``k`` starts at the epoch ``E`` of the ``k``-th return (``E = 0`` for the first one), spends the times
    ``E+1, ..., E+phi-1`` in its ray and returns to ``Y`` at ``E+phi``. Only as many excursions are consumed as needed
    to resolve ``D_Y`` at the last sample time, so an infinite excursion stream is fine.

    >>> steps = [Excursion(0, 1, False), Excursion(1, 2, False), Excursion(2, 3, False), Excursion(0, 1, False)]
    >>> record = occupation_from_excursions(iter(steps), 2, [0, 3, 6])
    >>> record.s_a.tolist(), record.d_y.tolist()
    ([[0, 0], [1, 0], [1, 2]], [1.0, 6.0, 7.0])

    Args:
        excursions:
            The excursions, e.g. from :func:`~intermittency.dynamics.inducing.iter_excursions`.
        d:
            Number of rays.
        sample_times:
            Sorted non-negative times.
        d_horizon:
            First visits after this time are censored. Defaults to no limit.
        strict:
            Raise instead of censoring.

    Raises:
        DYUnresolved:
            If *strict* is set and a first visit lies beyond *d_horizon* or the excursions run out.
        ValueError:
            If the sample times are not sorted or negative.
    """
    times = np.asarray(sample_times, dtype=float)
    index = _sample_indices(times, math.inf)
    size = index.size
    counts = np.zeros(d + 1, dtype=np.int64)
    s_a = np.zeros((size, d), dtype=np.int64)
    s_y = np.zeros(size, dtype=np.int64)
    g_y = np.zeros(size, dtype=np.int64)
    s_a_at_g = np.zeros((size, d), dtype=np.int64)
    d_y = np.full(size, np.nan)
    limit = math.inf if d_horizon is None else d_horizon
    epoch = 0
    pending = 0
    for excursion in excursions:
        if pending == size:
            break
        end = epoch + excursion.phi
        while pending < size and index[pending] < end:
            u = index[pending]
            s_a[pending] = counts[1:]
            if excursion.ray != JUNCTION:
                s_a[pending, excursion.ray - 1] += u - epoch
            s_y[pending] = counts[JUNCTION]
            g_y[pending] = epoch
            s_a_at_g[pending] = counts[1:]
            if end <= limit:
                d_y[pending] = end
            pending += 1
        if excursion.ray != JUNCTION:
            counts[excursion.ray] += excursion.phi - 1
        counts[JUNCTION] += 1
        epoch = end
    censored = np.isnan(d_y)
    if pending < size:
        raise DYUnresolved(float(times[pending]), epoch)
    if strict and np.any(censored):
        raise DYUnresolved(float(times[censored][0]), limit)
    if np.any(censored):
        logger.debug('D_Y censored at %d of %d sample times beyond %r', int(censored.sum()), size, limit)
    return OccupationRecord(times, s_a, s_y, g_y, d_y, censored, s_a_at_g)
