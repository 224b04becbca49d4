# -*- coding: utf-8 -*-
"""Nondecreasing càdlàg functions represented exactly as piecewise linear step functions.

A :class:`StepFunction` is given by its break times ``0 = t_0 < t_1 < ... < t_K``, the value ``v_k`` at every break
time and a slope ``s_k >= 0`` on every piece, so that ``x(t) = v_k + s_k (t - t_k)`` on ``[t_k, t_{k+1})``. The
function is known on ``[0, horizon)``; evaluation beyond raises :class:`~intermittency.errors.HorizonExceeded`.
Integer valued processes use zero slopes and are evaluated exactly.

>>> floor = StepFunction([0, 1, 2, 3], [0, 1, 2, 3], horizon=4)
>>> float(floor(2.5))
2.0
>>> inverse = rc_inverse(floor)
>>> float(inverse(0.5)), float(inverse(2))
(1.0, 3.0)

The last exit and first entrance operators act on the range of the function:

>>> jump = StepFunction([0, 1], [0, 2])
>>> float(g_op(jump, 1)), float(d_op(jump, 1))
(0.0, 2.0)
"""
import logging
import math
from typing import List, NamedTuple, Sequence, Tuple

import numpy as np

from ..errors import HorizonExceeded, NotProper

__all__ = [
    'StepFunction', 'rc_inverse', 'compose', 'g_op', 'd_op', 'compose_inverse', 'WilliamsReport',
    'williams_discrete_check', 'j1_upper_bound'
]

logger = logging.getLogger(__name__)

_MONOTONE_TOLERANCE = 1e-9


class StepFunction:
    """A nondecreasing right-continuous function on ``[0, horizon)``.

    Attributes:
        times: Break times, starting at ``0``.
        values: Values at the break times.
        slopes: Slope of each piece.
        horizon: The function is known on ``[0, horizon)``.
    """

    __slots__ = ('times', 'values', 'slopes', 'horizon')

    def __init__(self, times: Sequence[float], values: Sequence[float], slopes=None, horizon: float=math.inf):
        times = np.asarray(times, dtype=float)
        values = np.asarray(values, dtype=float)
        slopes = np.zeros_like(values) if slopes is None else np.asarray(slopes, dtype=float)
        if times.ndim != 1 or times.size == 0 or values.shape != times.shape or slopes.shape != times.shape:
            raise ValueError("Break times, values and slopes must be non-empty sequences of equal length")
        if times[0] != 0.0 or np.any(np.diff(times) <= 0):
            raise ValueError("Break times must start at 0 and increase strictly")
        if horizon < times[-1]:
            raise ValueError("The horizon {!r} precedes the last break time {!r}".format(horizon, times[-1]))
        if np.any(slopes < 0) or np.any(values < 0):
            raise ValueError("Step functions in D_0 have non-negative values and slopes")
        if times.size > 1:
            ends = values[:-1] + slopes[:-1] * np.diff(times)
            drop = values[1:] - ends
            if np.any(drop < -_MONOTONE_TOLERANCE * np.maximum(1.0, np.abs(ends))):
                raise ValueError("Step functions must be nondecreasing")
            values = values.copy()
            values[1:] = np.maximum(values[1:], ends)
            # merge pieces that continue the previous one
            keep = np.ones(times.size, dtype=bool)
            keep[1:] = (slopes[1:] != slopes[:-1]) | (values[1:] != ends)
            times, values, slopes = times[keep], values[keep], slopes[keep]
        self.times = times
        self.values = values
        self.slopes = slopes
        self.horizon = float(horizon)

    @classmethod
    def identity(cls, horizon: float=math.inf) -> 'StepFunction':
        """The ramp ``x(t) = t``."""
        return cls([0.0], [0.0], [1.0], horizon)

    @classmethod
    def partial_sums(cls, increments: Sequence[float]) -> 'StepFunction':
        """The process ``t -> sum(increments[k] for k <= floor(t))`` on ``[0, len(increments))``.

        >>> StepFunction.partial_sums([1, 0, 2]).values
        array([1., 3.])
        """
        increments = np.asarray(increments, dtype=float)
        if increments.size == 0:
            return cls([0.0], [0.0], horizon=0.0)
        return cls(np.arange(increments.size, dtype=float), np.cumsum(increments), horizon=float(increments.size))

    @classmethod
    def counting(cls, events: Sequence[float], horizon: float=math.inf) -> 'StepFunction':
        """The counting process ``t -> #{e in events : e <= t}``."""
        events = np.sort(np.asarray(events, dtype=float))
        if events.size == 0:
            return cls([0.0], [0.0], horizon=horizon)
        times, counts = np.unique(events, return_counts=True)
        values = np.cumsum(counts).astype(float)
        if times[0] > 0:
            times = np.concatenate(([0.0], times))
            values = np.concatenate(([0.0], values))
        return cls(times, values, horizon=horizon)

    def __repr__(self):
        return 'StepFunction(pieces={}, horizon={!r})'.format(self.times.size, self.horizon)

    def __eq__(self, other):
        if not isinstance(other, StepFunction):
            return NotImplemented
        return (
            self.horizon == other.horizon and np.array_equal(self.times, other.times) and
            np.array_equal(self.values, other.values) and np.array_equal(self.slopes, other.slopes)
        )

    __hash__ = None

    @property
    def ends(self) -> np.ndarray:
        """Left limits at the end of every piece; the last entry is ``x(horizon-)``."""
        following = np.append(self.times[1:], self.horizon)
        with np.errstate(invalid='ignore'):
            return np.where(self.slopes > 0, self.values + self.slopes * (following - self.times), self.values)

    @property
    def is_bounded(self) -> bool:
        """Whether the function stays bounded on its (infinite) horizon."""
        return math.isinf(self.horizon) and self.slopes[-1] == 0

    def _piece(self, t: np.ndarray) -> np.ndarray:
        return np.searchsorted(self.times, t, side='right') - 1

    def _check(self, t: np.ndarray) -> None:
        if np.any(t < 0):
            raise ValueError("Step functions are defined for t >= 0")
        beyond = t >= self.horizon
        if np.any(beyond):
            raise HorizonExceeded(float(t[beyond][0]), self.horizon)

    def known(self, t) -> np.ndarray:
        """Mask of the times in *t* at which the function is known."""
        t = np.asarray(t, dtype=float)
        return (t >= 0) & (t < self.horizon)

    def __call__(self, t):
        """Evaluate the function at *t*.

        Raises:
            HorizonExceeded:
                If *t* is not smaller than the horizon.
            ValueError:
                If *t* is negative.
        """
        t_array = np.asarray(t, dtype=float)
        self._check(t_array)
        k = self._piece(t_array)
        result = self.values[k] + self.slopes[k] * (t_array - self.times[k])
        if np.ndim(t) == 0:
            return float(result)
        return result

    def slope_at(self, t) -> np.ndarray:
        """Right derivative at *t*."""
        return self.slopes[self._piece(np.asarray(t, dtype=float))]

    def left_limit(self, t):
        """Evaluate ``x(t-)`` for ``0 < t <= horizon``."""
        t_array = np.asarray(t, dtype=float)
        if np.any(t_array <= 0) or np.any(t_array > self.horizon):
            raise ValueError("Left limits are defined on (0, horizon]")
        k = np.searchsorted(self.times, t_array, side='left') - 1
        result = self.values[k] + self.slopes[k] * (t_array - self.times[k])
        if np.ndim(t) == 0:
            return float(result)
        return result

    def first_reach(self, level: float) -> float:
        """The time ``inf{t : x(t) >= level}``, or the horizon if the level is not reached while known."""
        ends = self.ends
        reached = (self.values >= level) | ((self.slopes > 0) & (ends > level))
        if not np.any(reached):
            return self.horizon
        k = int(np.argmax(reached))
        if self.values[k] >= level:
            return float(self.times[k])
        return float(self.times[k] + (level - self.values[k]) / self.slopes[k])

    def jump_times(self, horizon: float=math.inf) -> np.ndarray:
        """Break times in ``(0, horizon)`` at which the function jumps."""
        if self.times.size < 2:
            return np.empty(0)
        jumps = self.times[1:][self.values[1:] > self.ends[:-1]]
        return jumps[jumps < horizon]

    def inverse(self) -> 'StepFunction':
        """See :func:`rc_inverse`."""
        return rc_inverse(self)

    def __add__(self, other: 'StepFunction') -> 'StepFunction':
        if not isinstance(other, StepFunction):
            return NotImplemented
        horizon = min(self.horizon, other.horizon)
        times = np.union1d(self.times, other.times)
        times = np.concatenate(([0.0], times[(times > 0) & (times < horizon)]))
        mine, theirs = self._piece(times), other._piece(times)
        values = (
            self.values[mine] + self.slopes[mine] * (times - self.times[mine]) + other.values[theirs] +
            other.slopes[theirs] * (times - other.times[theirs])
        )
        return StepFunction(times, values, self.slopes[mine] + other.slopes[theirs], horizon)


def rc_inverse(x: StepFunction) -> StepFunction:
    """The right-continuous inverse ``s -> inf{t > 0 : x(t) > s}``.

    The inverse of a function known on ``[0, H)`` is known on ``[0, x(H-))``.

    >>> ramp = StepFunction.identity()
    >>> rc_inverse(ramp) == ramp
    True

    Raises:
        NotProper:
            If *x* is bounded on an infinite horizon.
    """
    if x.is_bounded:
        raise NotProper("The right-continuous inverse of a bounded function does not tend to infinity")
    times, values, slopes = x.times, x.values, x.slopes
    ends = x.ends
    count = times.size
    following = np.append(times[1:], x.horizon)
    next_values = np.append(values[1:], np.nan)
    last = np.arange(count) == count - 1
    sloped = slopes > 0

    # piece over [v_k, e_k) for ramps, [v_k, v_{k+1}) for flat pieces
    with np.errstate(divide='ignore'):
        main_slopes = np.where(sloped, 1.0 / np.where(sloped, slopes, 1.0), 0.0)
    main_values = np.where(sloped, times, following)
    main_valid = sloped | (~last & (next_values > values))
    # gap [e_k, v_{k+1}) after a ramp that ends below the next value
    gap_valid = sloped & ~last & (next_values > ends)

    starts = np.column_stack((values, ends)).ravel()
    inverse_values = np.column_stack((main_values, following)).ravel()
    inverse_slopes = np.column_stack((main_slopes, np.zeros(count))).ravel()
    valid = np.column_stack((main_valid, gap_valid)).ravel()
    starts, inverse_values, inverse_slopes = starts[valid], inverse_values[valid], inverse_slopes[valid]

    horizon = float(ends[-1])
    if values[0] > 0:
        starts = np.concatenate(([0.0], starts))
        inverse_values = np.concatenate(([0.0], inverse_values))
        inverse_slopes = np.concatenate(([0.0], inverse_slopes))
    if starts.size == 0:
        return StepFunction([0.0], [0.0], horizon=horizon)
    return StepFunction(starts, inverse_values, inverse_slopes, horizon)


def compose(outer: StepFunction, inner: StepFunction) -> StepFunction:
    """The composition ``t -> outer(inner(t))``, known while ``inner(t) < outer.horizon``.

    >>> twice = StepFunction([0], [0], [2])
    >>> float(compose(StepFunction.counting([1, 2, 3]), twice)(1.2))
    2.0
    """
    horizon = inner.horizon
    if not math.isinf(outer.horizon):
        horizon = min(horizon, inner.first_reach(outer.horizon))
    breaks = inner.times[inner.times < horizon] if horizon > 0 else inner.times[:1]
    if outer.times.size > 1:
        levels = outer.times[1:]
        k = np.clip(np.searchsorted(inner.values, levels, side='right') - 1, 0, None)
        ends = inner.ends[k]
        inside = (inner.slopes[k] > 0) & (inner.values[k] < levels) & (levels < ends)
        with np.errstate(divide='ignore', invalid='ignore'):
            preimages = inner.times[k] + (levels - inner.values[k]) / inner.slopes[k]
        preimages = preimages[inside & (preimages < horizon)]
        breaks = np.union1d(breaks, preimages)
    k_inner = inner._piece(breaks)
    middle = inner.values[k_inner] + inner.slopes[k_inner] * (breaks - inner.times[k_inner])
    k_outer = outer._piece(middle)
    values = outer.values[k_outer] + outer.slopes[k_outer] * (middle - outer.times[k_outer])
    slopes = outer.slopes[k_outer] * inner.slopes[k_inner]
    return StepFunction(breaks, values, slopes, horizon)


def _range_lookup(x: StepFunction, t: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    t = np.asarray(t, dtype=float)
    ends = x.ends
    if not math.isinf(x.horizon):
        unknown = t >= ends[-1]
        if np.any(unknown):
            raise HorizonExceeded(float(t[unknown][0]), float(ends[-1]))
    return np.searchsorted(x.values, t, side='right') - 1, ends


def g_op(x: StepFunction, t):
    """The last exit value ``G(t) = sup{x(s) : x(s) <= t}`` with ``sup {} = 0``.

    Raises:
        HorizonExceeded:
            If values beyond the horizon could still be ``<= t``.
    """
    t_array = np.asarray(t, dtype=float)
    k, ends = _range_lookup(x, t_array)
    result = np.where(k >= 0, np.minimum(t_array, ends[np.maximum(k, 0)]), 0.0)
    if np.ndim(t) == 0:
        return float(result)
    return result


def d_op(x: StepFunction, t):
    """The first entrance value ``D(t) = inf{x(s) : x(s) > t}`` with ``inf {} = inf``.

    Raises:
        HorizonExceeded:
            If the first value above *t* lies beyond the horizon.
    """
    t_array = np.asarray(t, dtype=float)
    k, ends = _range_lookup(x, t_array)
    index = np.maximum(k, 0)
    on_ramp = (k >= 0) & (x.slopes[index] > 0) & (t_array < ends[index])
    following = np.append(x.values[1:], np.inf)[index]
    result = np.where(k < 0, x.values[0], np.where(on_ramp, t_array, following))
    if np.ndim(t) == 0:
        return float(result)
    return result


def compose_inverse(y: StepFunction, x: StepFunction, t):
    """Evaluate ``y(x^{-1}(t))``.

    >>> counts = StepFunction.counting([1, 2, 3], horizon=10)
    >>> float(compose_inverse(counts, counts, 1.5))
    2.0

    Raises:
        NotProper:
            If *x* is bounded.
    """
    return y(rc_inverse(x)(t))


class WilliamsReport(NamedTuple):
    """Outcome of :func:`williams_discrete_check`."""
    checked: int
    skipped: int
    violations: List[Tuple[str, int, float, float, float]]

    @property
    def passed(self) -> bool:
        return not self.violations


def williams_discrete_check(trace, occupation: Sequence[StepFunction], t_grid) -> WilliamsReport:
    """Verify the discrete Williams identities on an excursion trace.

    For every ray ``j`` and every grid time ``t`` at which both sides are known, the inverse occupation time satisfies
    ``S_j^{-1}(t) = floor(t + 1) + sum(eta_i(eta_j^{-1}(t)) for i != j) + eta_j^{-1}(t)``, and the return times
    satisfy ``phi(t) = floor(t + 1) + sum(eta_i(t))``. Both sides are integers and compared exactly.

    Args:
        trace:
            An :class:`~intermittency.dynamics.inducing.ExcursionTrace`.
        occupation:
            The occupation times ``S_{A_j}`` of the same orbit, one per ray.
        t_grid:
            The times to check.

    Returns:
        The number of checked and skipped evaluations and the list of violations as tuples
        ``(identity, ray, t, lhs, rhs)``.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    eta = trace.eta_processes
    checked = skipped = 0
    violations = []
    for j in range(1, trace.d + 1):
        inverse_occupation = rc_inverse(occupation[j - 1])
        inverse_eta = rc_inverse(eta[j - 1])
        usable = inverse_eta.known(t_grid) & inverse_occupation.known(t_grid)
        n_index = np.zeros_like(t_grid)
        n_index[usable] = inverse_eta(t_grid[usable])
        for i in range(1, trace.d + 1):
            if i != j:
                usable &= eta[i - 1].known(n_index)
        skipped += int(np.count_nonzero(~usable))
        if not np.any(usable):
            continue
        t = t_grid[usable]
        n_index = n_index[usable]
        rhs = np.floor(t + 1) + n_index
        for i in range(1, trace.d + 1):
            if i != j:
                rhs = rhs + eta[i - 1](n_index)
        lhs = inverse_occupation(t)
        checked += t.size
        for bad in np.flatnonzero(lhs != rhs):
            violations.append(('inverse occupation', j, float(t[bad]), float(lhs[bad]), float(rhs[bad])))

    phi = trace.phi_process
    usable = phi.known(t_grid)
    t = t_grid[usable]
    skipped += int(np.count_nonzero(~usable))
    if t.size:
        lhs = phi(t)
        rhs = np.floor(t + 1) + sum(eta[i](t) for i in range(trace.d))
        checked += t.size
        for bad in np.flatnonzero(lhs != rhs):
            violations.append(('return times', 0, float(t[bad]), float(lhs[bad]), float(rhs[bad])))
    if violations:
        logger.warning('%d violations of the Williams identities in %d checks', len(violations), checked)
    return WilliamsReport(checked, skipped, violations)


def _segment_cost(x: StepFunction, y: StepFunction, start: Tuple[float, float], end: Tuple[float, float]) -> float:
    """Cost of the linear time change mapping ``[start[1], end[1]]`` of *y* onto ``[start[0], end[0]]`` of *x*."""
    (a0, b0), (a1, b1) = start, end
    if a1 <= a0 or b1 <= b0:
        return math.inf
    scale = (a1 - a0) / (b1 - b0)
    stretch = abs(math.log(scale))
    points = np.concatenate(([b0], y.times[(y.times > b0) & (y.times < b1)]))
    x_breaks = x.times[(x.times > a0) & (x.times < a1)]
    points = np.union1d(points, b0 + (x_breaks - a0) / scale)
    points = points[points < b1]
    following = np.append(points[1:], b1)

    def warp(t):
        return np.clip(a0 + (t - b0) * scale, a0, a1)

    right = np.abs(x(np.minimum(warp(points), np.nextafter(a1, a0))) - y(points))
    left = np.abs(x.left_limit(warp(following)) - y.left_limit(following))
    gap = min(1.0, float(max(right.max(), left.max())))
    return max(stretch, gap)


def j1_upper_bound(x: StepFunction, y: StepFunction, horizon: float, max_skip: int=3) -> float:
    """An upper bound of the Skorokhod J1 distance of *x* and *y* on ``[0, horizon]``.

    The bound minimizes ``max(gamma(lambda), min(1, sup |x(lambda(t)) - y(t)|))`` over piecewise linear time changes
    ``lambda`` that map some jumps of *y* onto jumps of *x* in increasing order, where ``gamma`` is the largest
    absolute log slope of ``lambda``. At most *max_skip* jumps are left unmatched between consecutive anchors. The
    identity time change is always a candidate.

    >>> x = StepFunction([0, 1], [0, 1])
    >>> j1_upper_bound(x, x, 3.0)
    0.0

    Raises:
        ValueError:
            If the horizon exceeds the known range of either function.
    """
    if not 0 < horizon <= min(x.horizon, y.horizon):
        raise ValueError("The horizon must be positive and within both horizons")
    a_jumps = x.jump_times(horizon)
    b_jumps = y.jump_times(horizon)
    nodes = [(0.0, 0.0)] + [(float(a), float(b)) for a in a_jumps for b in b_jumps] + [(horizon, horizon)]
    index = {(0, 0): 0}
    for i in range(len(a_jumps)):
        for j in range(len(b_jumps)):
            index[(i + 1, j + 1)] = len(index)
    index[(len(a_jumps) + 1, len(b_jumps) + 1)] = len(nodes) - 1
    logger.debug('J1 bound over %d anchor candidates', len(nodes))

    best = {(0, 0): 0.0}
    order = sorted(index, key=lambda pair: (pair[0], pair[1]))
    final = (len(a_jumps) + 1, len(b_jumps) + 1)
    for target in order[1:]:
        candidate = math.inf
        for source, cost in best.items():
            if source[0] >= target[0] or source[1] >= target[1]:
                continue
            if target != final or source != (0, 0):
                if target[0] - source[0] > max_skip + 1 or target[1] - source[1] > max_skip + 1:
                    continue
            if cost >= candidate:
                continue
            step = _segment_cost(x, y, nodes[index[source]], nodes[index[target]])
            candidate = min(candidate, max(cost, step))
        if candidate < math.inf:
            best[target] = candidate
    return float(best[final])
