# -*- coding: utf-8 -*-
"""Two constructions of the skew Bessel diffusion on ``d`` rays and its occupation functionals.

The *subordinator construction* draws independent stable subordinators ``eta_1, ..., eta_d``, the inverse local
times spent in the rays, and recovers the occupation times through the Williams formula

    ``Z_j^{-1}(t) = t + sum_{i != j} eta_i(eta_j^{-1}(t))``

with the step function algebra of :mod:`intermittency.processes.cadlag`. The *diffusion construction* simulates the
squared modulus, a squared Bessel process of dimension ``2 - 2 alpha``, with exact transitions and tags every
excursion above ``eps`` with a ray.

>>> params = StableParams(0.5, (0.5, 0.5))
>>> path = subordinator_paths(params, s_max=4.0, rng=np.random.default_rng(3))
>>> limit = occupation_from_subordinators(path, [0.5, 1.0])
>>> bool(np.allclose(limit.z.sum(axis=1), [0.5, 1.0]))
True
"""
import csv
import logging
import math
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Sequence

import numpy as np
from scipy import special

from ..errors import HorizonExceeded
from .cadlag import StepFunction, compose, d_op, g_op, rc_inverse
from .stable import StableParams

__all__ = [
    'SubordinatorPath', 'subordinator_paths', 'SubordinatorOccupation', 'occupation_from_subordinators',
    'sample_subordinator_functionals', 'besq_step', 'c_alpha', 'DiffusionPath', 'simulate_skew_path',
    'SkewFunctionals', 'sample_skew_functionals'
]

logger = logging.getLogger(__name__)

TRUNCATION_FACTOR = 1e-6
"""Default cutoff of the small jumps relative to the typical largest jump."""


def c_alpha(alpha: float) -> float:
    """The local time constant ``2^alpha Gamma(alpha) / Gamma(1 - alpha)``.

    >>> round(c_alpha(0.5), 12) == round(math.sqrt(2), 12)
    True
    """
    return 2.0**alpha * math.gamma(alpha) / math.gamma(1.0 - alpha)


class SubordinatorPath:
    """Jumps and drift of the subordinators ``eta_1, ..., eta_d`` on ``[0, s_max]``.

    Attributes:
        params: The limit parameters.
        s_max: The local time horizon.
        j_min: The smallest simulated jump.
        epochs: Per ray, the sorted local times of the jumps.
        sizes: Per ray, the jump sizes.
        drifts: Per ray, the mean ``beta_j alpha j_min^(1 - alpha) / ((1 - alpha) Gamma(1 - alpha))`` of the jumps
            below ``j_min`` per unit of local time.
    """

    def __init__(self, params: StableParams, s_max: float, j_min: float, epochs: List[np.ndarray],
                 sizes: List[np.ndarray]):
        self.params = params
        self.s_max = float(s_max)
        self.j_min = float(j_min)
        self.epochs = epochs
        self.sizes = sizes
        alpha = params.alpha
        self.drifts = [
            beta * alpha * j_min**(1.0 - alpha) / ((1.0 - alpha) * math.gamma(1.0 - alpha)) for beta in params.beta
        ]

    def __repr__(self):
        return 'SubordinatorPath(s_max={!r}, jumps={})'.format(self.s_max, [epochs.size for epochs in self.epochs])

    def eta(self, j: int) -> StepFunction:
        """The subordinator ``eta_j`` as a step function on ``[0, s_max)``."""
        epochs, sizes, drift = self.epochs[j - 1], self.sizes[j - 1], self.drifts[j - 1]
        inside = epochs > 0
        times = np.concatenate(([0.0], epochs[inside]))
        values = np.concatenate(([0.0], drift * epochs[inside] + np.cumsum(sizes[inside])))
        if np.any(~inside):
            values[0] = float(sizes[~inside].sum())
            values[1:] += values[0]
        return StepFunction(times, values, np.full(times.size, drift), self.s_max)

    @property
    def etas(self) -> List[StepFunction]:
        return [self.eta(j) for j in range(1, self.params.d + 1)]

    @property
    def total(self) -> StepFunction:
        """The inverse local time ``eta = eta_1 + ... + eta_d``."""
        etas = self.etas
        result = etas[0]
        for eta in etas[1:]:
            result = result + eta
        return result

    def extended(self, rng: np.random.Generator) -> 'SubordinatorPath':
        """Continue the path independently on ``(s_max, 2 s_max]``."""
        epochs, sizes = _jumps(self.params, self.s_max, self.j_min, rng)
        return SubordinatorPath(
            self.params, 2.0 * self.s_max, self.j_min,
            [np.concatenate((old, self.s_max + new)) for old, new in zip(self.epochs, epochs)],
            [np.concatenate((old, new)) for old, new in zip(self.sizes, sizes)]
        )


def _jumps(params: StableParams, length: float, j_min: float, rng: np.random.Generator):
    alpha = params.alpha
    epochs, sizes = [], []
    for beta in params.beta:
        rate = beta * j_min**-alpha / math.gamma(1.0 - alpha)
        count = rng.poisson(rate * length) if beta > 0 else 0
        times = np.sort(rng.uniform(0.0, length, count))
        epochs.append(times)
        sizes.append(j_min * (1.0 - rng.random(count))**(-1.0 / alpha))
    return epochs, sizes


def subordinator_paths(
        params: StableParams, s_max: float, rng: np.random.Generator, j_min: Optional[float]=None
) -> SubordinatorPath:
    """Simulate the subordinators ``eta_j`` with Laplace exponents ``beta_j lambda^alpha`` on ``[0, s_max]``.

    Jumps of size at least *j_min* form a Poisson random measure with intensity ``ds beta_j alpha r^(-1-alpha) /
    Gamma(1 - alpha) dr``; the jumps below the cutoff are replaced by their mean as a drift.

    Args:
        params:
            The limit parameters.
        s_max:
            The local time horizon.
        rng:
            The random generator.
        j_min:
            The small jump cutoff. Defaults to :data:`TRUNCATION_FACTOR` times the typical largest jump
            ``(s_max / Gamma(1 - alpha))^(1/alpha)``.

    Raises:
        ValueError:
            If *s_max* or *j_min* is not positive.
    """
    if not s_max > 0:
        raise ValueError("The local time horizon must be positive")
    alpha = params.alpha
    if j_min is None:
        j_min = TRUNCATION_FACTOR * (s_max / math.gamma(1.0 - alpha))**(1.0 / alpha)
    if not j_min > 0:
        raise ValueError("The jump cutoff must be positive")
    epochs, sizes = _jumps(params, s_max, j_min, rng)
    logger.debug('Subordinators with %r jumps above %r', [times.size for times in epochs], j_min)
    return SubordinatorPath(params, s_max, j_min, epochs, sizes)


class SubordinatorOccupation(NamedTuple):
    """Occupation functionals of the subordinator construction.

    Attributes:
        times: The sample times.
        z: Occupation times ``Z_j(t)``, one row per time.
        l: Local time ``L(t)``.
        g: Last zero ``G(t)``.
        dv: First zero ``D(t)``.
        processes: The occupation times ``Z_1, ..., Z_d`` as step functions.
        local_time: The local time as a step function.
    """
    times: np.ndarray
    z: np.ndarray
    l: np.ndarray
    g: np.ndarray
    dv: np.ndarray
    processes: List[StepFunction]
    local_time: StepFunction


def occupation_from_subordinators(path: SubordinatorPath, t_grid: Sequence[float]) -> SubordinatorOccupation:
    """Compute ``Z_j``, ``L``, ``G`` and ``D`` from the subordinators.

    ``Z_j`` is the right-continuous inverse of ``t + sum_{i != j} eta_i(eta_j^{-1}(t))``, ``L`` the inverse of
    ``eta`` and ``G``, ``D`` are the last exit and first entrance values of the range of ``eta``. Rays with
    ``beta_j = 0`` are never visited.

    Raises:
        HorizonExceeded:
            If a time of *t_grid* is not covered by ``eta(s_max-)``.
    """
    times = np.asarray(t_grid, dtype=float)
    etas = path.etas
    total = path.total
    reach = float(total.ends[-1])
    if np.any(times >= reach):
        raise HorizonExceeded(float(times.max()), reach)
    processes = []
    for j, eta in enumerate(etas):
        if path.params.beta[j] == 0:
            processes.append(StepFunction([0.0], [0.0], horizon=reach))
            continue
        inverse = rc_inverse(eta)
        williams = StepFunction.identity(inverse.horizon)
        for i, other in enumerate(etas):
            if i != j and path.params.beta[i] > 0:
                williams = williams + compose(other, inverse)
        processes.append(rc_inverse(williams))
    z = np.column_stack([process(times) for process in processes])
    local_time = rc_inverse(total)
    return SubordinatorOccupation(times, z, local_time(times), g_op(total, times), d_op(total, times), processes,
                                  local_time)


def sample_subordinator_functionals(
        params: StableParams, t_grid: Sequence[float], rng: np.random.Generator, size: int
) -> List[SubordinatorOccupation]:
    """Sample the occupation functionals at *t_grid* from *size* independent subordinator paths.

    Each path starts on ``[0, 4 T^alpha]`` for the largest time ``T`` and is extended until ``eta`` passes ``T``.
    """
    top = float(np.max(t_grid)) if len(t_grid) else 0.0
    s_max = 4.0 * max(top, 1.0)**params.alpha
    samples = []
    for _ in range(size):
        path = subordinator_paths(params, s_max, rng)
        while path.total.ends[-1] <= top:
            path = path.extended(rng)
        samples.append(occupation_from_subordinators(path, t_grid))
    return samples


def besq_step(x, dt: float, alpha: float, rng: np.random.Generator):
    """Sample the squared Bessel process of dimension ``2 - 2 alpha`` after time *dt* from *x*.

    The transition is the Poisson mixture of gamma laws ``N ~ Poisson(x / (2 dt))``, ``X ~ Gamma(1 - alpha + N,
    scale=2 dt)``, which is exact and non-negative.

    >>> float(np.min(besq_step(np.zeros(100), 0.01, 0.5, np.random.default_rng(0)))) >= 0
    True

    Raises:
        ValueError:
            If *dt* is not positive or *x* is negative.
    """
    if not dt > 0:
        raise ValueError("The time step must be positive")
    values = np.asarray(x, dtype=float)
    if np.any(values < 0):
        raise ValueError("Squared Bessel processes are non-negative")
    mixing = rng.poisson(values / (2.0 * dt))
    result = rng.gamma(1.0 - alpha + mixing, 2.0 * dt)
    if np.ndim(x) == 0:
        return float(result)
    return result


@dataclass
class DiffusionPath:
    """A discretized skew Bessel path.

    Attributes:
        dt: The time step.
        values: The modulus ``R(k dt)``.
        ray_tags: The ray of the excursion above *eps* at every step, ``0`` while ``R <= eps``.
        eps: The excursion and local time threshold.
        c_alpha: The local time constant.
        alpha: The tail index.
    """
    dt: float
    values: np.ndarray
    ray_tags: np.ndarray
    eps: float
    c_alpha: float
    alpha: float

    @property
    def times(self) -> np.ndarray:
        return self.dt * np.arange(self.values.size)

    @property
    def local_time(self) -> np.ndarray:
        """``L(k dt) = (2 - 2 alpha) / (C eps^(2 - 2 alpha)) * dt #{i < k : R(i dt) <= eps}``."""
        factor = (2.0 - 2.0 * self.alpha) / (self.c_alpha * self.eps**(2.0 - 2.0 * self.alpha))
        below = (self.values <= self.eps).astype(float)
        return factor * self.dt * np.concatenate(([0.0], np.cumsum(below)[:-1]))

    def functionals(self, t: float, d: int) -> 'SkewFunctionals':
        """The occupation times, local time and surrounding zeros at time *t*; ``D`` is ``nan`` if censored.

        Raises:
            HorizonExceeded:
                If *t* is beyond the simulated path.
        """
        k = int(math.floor(t / self.dt))
        if k >= self.values.size:
            raise HorizonExceeded(t, self.dt * (self.values.size - 1))
        tags = self.ray_tags[:k]
        z = np.array([self.dt * np.count_nonzero(tags == j) for j in range(1, d + 1)])
        zeros = np.flatnonzero(self.values <= self.eps)
        before = zeros[zeros <= k]
        after = zeros[zeros >= k]
        g = self.dt * before[-1] if before.size else 0.0
        dv = self.dt * after[0] if after.size else math.nan
        return SkewFunctionals(z[None, :], self.local_time[k:k + 1], np.array([g]), np.array([dv]))

    def to_csv(self, path: str) -> None:
        """Write the columns ``t, modulus, ray, L``."""
        local_time = self.local_time
        with open(path, 'w', newline='') as handle:
            writer = csv.writer(handle)
            writer.writerow(['t', 'modulus', 'ray', 'L'])
            for k in range(self.values.size):
                writer.writerow([
                    '{:.10g}'.format(k * self.dt), '{:.10g}'.format(self.values[k]),
                    int(self.ray_tags[k]), '{:.10g}'.format(local_time[k])
                ])


def _check_discretization(dt: float, eps: float):
    if not dt > 0 or not eps > 0:
        raise ValueError("The time step and the threshold must be positive")
    if dt > eps * eps:
        raise ValueError("The time step {!r} must be small against eps^2 = {!r}".format(dt, eps * eps))


def simulate_skew_path(
        params: StableParams, dt: float, eps: float, horizon: float, rng: np.random.Generator
) -> DiffusionPath:
    """Simulate the modulus from ``0`` on ``[0, horizon]`` and tag its excursions above *eps*.

    Every maximal run of steps with ``R > eps`` is one excursion; its ray is drawn with probabilities ``beta``.

    Raises:
        ValueError:
            If ``dt > eps^2`` or a parameter is not positive.
    """
    _check_discretization(dt, eps)
    steps = int(math.ceil(horizon / dt))
    squared = np.zeros(steps + 1)
    for k in range(1, steps + 1):
        squared[k] = besq_step(squared[k - 1], dt, params.alpha, rng)
    values = np.sqrt(squared)
    above = values > eps
    starts = np.flatnonzero(above & ~np.concatenate(([False], above[:-1])))
    labels = rng.choice(params.d, size=starts.size, p=params.weights) + 1
    run = np.cumsum(np.isin(np.arange(values.size), starts)) - 1
    tags = np.where(above, labels[np.maximum(run, 0)] if starts.size else 0, 0)
    return DiffusionPath(dt, values, tags.astype(np.int64), eps, c_alpha(params.alpha), params.alpha)


class SkewFunctionals(NamedTuple):
    """Functionals of discretized skew Bessel paths at a fixed time, one row per path."""
    z: np.ndarray
    l: np.ndarray
    g: np.ndarray
    dv: np.ndarray


def sample_skew_functionals(
        params: StableParams,
        dt: float,
        eps: float,
        t: float,
        rng: np.random.Generator,
        size: int,
        extension: float=10.0
) -> SkewFunctionals:
    """Simulate *size* paths in parallel and return ``Z_j(t)``, ``L(t)``, ``G(t)`` and ``D(t)``.

    ``D(t)`` is the first time ``s >= t`` with the modulus at most *eps*, so paths below *eps* at *t* have ``D(t) = t``.
    The others are continued until they fall below *eps* again, at most up to ``(1 + extension) t``; ``D`` is ``nan``
    for the paths that do not.

    Raises:
        ValueError:
            If ``dt > eps^2`` or a parameter is not positive.
    """
    _check_discretization(dt, eps)
    alpha = params.alpha
    steps = int(math.floor(t / dt))
    limit = int(math.ceil((1.0 + extension) * t / dt))
    squared = np.zeros(size)
    tags = np.zeros(size, dtype=np.int64)
    z = np.zeros((size, params.d))
    below = np.zeros(size)
    last_zero = np.zeros(size, dtype=np.int64)
    first_zero = np.full(size, -1, dtype=np.int64)
    for k in range(limit + 1):
        if k > 0:
            squared = besq_step(squared, dt, alpha, rng)
        modulus = np.sqrt(squared)
        zero = modulus <= eps
        if k <= steps:
            entering = ~zero & (tags == 0)
            if np.any(entering):
                tags[entering] = rng.choice(params.d, size=int(entering.sum()), p=params.weights) + 1
            tags[zero] = 0
            last_zero[zero] = k
            if k < steps:
                below += zero
                active = tags > 0
                z[active, tags[active] - 1] += dt
        if k >= steps:
            first_zero[zero & (first_zero < 0)] = k
            if np.all(first_zero >= 0):
                break
    factor = (2.0 - 2.0 * alpha) / (c_alpha(alpha) * eps**(2.0 - 2.0 * alpha))
    dv = np.where(first_zero >= 0, dt * first_zero, np.nan)
    censored = int(np.count_nonzero(first_zero < 0))
    if censored:
        logger.debug('%d of %d diffusion paths did not return below eps by %r', censored, size, limit * dt)
    return SkewFunctionals(z, factor * dt * below, dt * last_zero, dv)
