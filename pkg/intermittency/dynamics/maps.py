# -*- coding: utf-8 -*-
"""Interval maps with indifferent fixed points.

An :class:`IntermittentMapSpec` describes a piecewise increasing map of the unit interval with ``d`` full branches
``T_j: [a_{j-1}, a_j] -> [0, 1]`` and an indifferent fixed point ``x_j`` inside every branch. Each branch is assembled
from two monotone *sides*, the part left and the part right of the fixed point, written in the local coordinate
``h = |x - x_j|`` as ``T(x_j ± h) = x_j ± g(h)``. Working in the distance coordinate keeps the iteration accurate near
fixed points at ``1`` where absolute coordinates lose their relative precision.

Two families are available:

- Boole's map with closed forms for everything, including the invariant density:

  >>> boole_eval(0.5)
  1.0
  >>> BOOLE(0.0)
  0.0

- The polynomial family of :func:`make_thaler_family` where each side is ``h + c_j h^p + k h^{p+1}`` with
  ``p = 1 + 1/alpha`` and ``k >= 0`` chosen so that the branch ends are mapped to ``0`` and ``1``:

  >>> spec = make_thaler_family(2, 0.5, (1, 1))
  >>> spec.a
  (0.0, 0.5, 1.0)
  >>> round(spec(0.25), 12) == round(0.25 + 0.25**3 + 6 * 0.25**4, 12)
  True
"""
import logging
import math
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import optimize

from ..errors import EndpointSingularity, StallDetected

__all__ = [
    'BranchSide', 'BooleSide', 'PolynomialSide', 'IntermittentMapSpec', 'make_thaler_family', 'boole_eval',
    'invariant_density_boole', 'boole_measure', 'BOOLE', 'STALL_FACTOR'
]

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

STALL_FACTOR = 2.0**10
"""Safety factor between the stall radius and the scale at which ``T(x) == x`` in double precision."""

_EPS = np.finfo(float).eps


def _like(result: np.ndarray, reference) -> ArrayLike:
    if np.ndim(reference) == 0:
        return float(result)
    return result


class BranchSide:
    """One side of an indifferent fixed point in the local coordinate ``h >= 0``.

    Subclasses implement the side map ``g`` with ``g(0) = 0``, ``g'(0) = 1``, its first two derivatives and its
    inverse. The attributes *exponent* and *coefficient* describe the local behaviour ``g(h) - h ~ coefficient *
    h**exponent`` which is used to bridge stalls of the floating point orbit.

    Attributes:
        extent: The largest admissible ``h``; ``g(extent)`` is the distance from the fixed point to the image end.
        exponent: Local exponent of ``g(h) - h`` at ``0``.
        coefficient: Local coefficient of ``g(h) - h`` at ``0``.
    """

    extent = 0.0
    exponent = 0.0
    coefficient = 0.0

    def forward(self, h: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def derivative(self, h: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def second_derivative(self, h: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def backward(self, s: float) -> float:
        """Return the ``h`` with ``g(h) = s`` for a scalar *s*."""
        raise NotImplementedError

    def stall_radius(self, fixed_point: float) -> float:
        """Distance from the fixed point below which an orbit is considered stalled.

        The orbit freezes once ``coefficient * h**exponent`` drops below the floating point spacing at
        ``fixed_point ± h``; the radius keeps a margin of :data:`STALL_FACTOR` to that scale.
        """
        relative = (STALL_FACTOR * _EPS / self.coefficient)**(1.0 / (self.exponent - 1.0))
        absolute = 0.0
        if fixed_point != 0.0:
            absolute = (STALL_FACTOR * float(np.spacing(fixed_point)) / self.coefficient)**(1.0 / self.exponent)
        return max(relative, absolute)

    def escape_steps(self, h: np.ndarray, radius: float) -> np.ndarray:
        """Number of steps the continuous approximation ``h' = coefficient * h**exponent`` needs from *h* to
        *radius*."""
        h = np.maximum(np.asarray(h, dtype=float), np.finfo(float).tiny)
        power = 1.0 - self.exponent
        steps = (h**power - radius**power) / ((self.exponent - 1.0) * self.coefficient)
        return np.floor(np.maximum(steps, 0.0))


class BooleSide(BranchSide):
    """The left half of Boole's map, ``h(1 - h) / (1 - h - h^2)`` on ``[0, 1/2]``."""

    extent = 0.5
    exponent = 3.0
    coefficient = 1.0

    def forward(self, h):
        return h * (1.0 - h) / (1.0 - h - h * h)

    def derivative(self, h):
        return (1.0 - 2.0 * h + 2.0 * h * h) / (1.0 - h - h * h)**2

    def second_derivative(self, h):
        denominator = 1.0 - h - h * h
        numerator = (4.0 * h - 2.0) * denominator + 2.0 * (1.0 - 2.0 * h + 2.0 * h * h) * (1.0 + 2.0 * h)
        return numerator / denominator**3

    def backward(self, s):
        return 2.0 * s / ((1.0 + s) + math.sqrt(1.0 - 2.0 * s + 5.0 * s * s))

    def backward_array(self, s: np.ndarray) -> np.ndarray:
        return 2.0 * s / ((1.0 + s) + np.sqrt(1.0 - 2.0 * s + 5.0 * s * s))


class PolynomialSide(BranchSide):
    """The side ``g(h) = h + coefficient * h**exponent + correction * h**(p + 1)`` on ``[0, extent]``."""

    def __init__(self, exponent: float, coefficient: float, correction: float, extent: float, upper: float):
        self.exponent = exponent
        self.coefficient = coefficient
        self.correction = correction
        self.upper = upper
        self.extent = extent

    def forward(self, h):
        return h + self.coefficient * h**self.exponent + self.correction * h**self.upper

    def derivative(self, h):
        e, q = self.exponent, self.upper
        return 1.0 + self.coefficient * e * h**(e - 1.0) + self.correction * q * h**(q - 1.0)

    def second_derivative(self, h):
        e, q = self.exponent, self.upper
        return self.coefficient * e * (e - 1.0) * h**(e - 2.0) + self.correction * q * (q - 1.0) * h**(q - 2.0)

    def backward(self, s):
        if s <= 0.0:
            return 0.0
        top = min(s, self.extent)
        if self.forward(top) <= s:
            return top
        return optimize.brentq(lambda h: self.forward(h) - s, 0.0, top, xtol=1e-300, rtol=4 * _EPS)

    def __repr__(self):
        return 'PolynomialSide(exponent={!r}, coefficient={!r}, correction={!r}, extent={!r})'.format(
            self.exponent, self.coefficient, self.correction, self.extent
        )


class IntermittentMapSpec:
    """Branch structure and regular variation parameters of a ``d``-branch interval map.

    The branch ``J_j`` is ``[a_{j-1}, a_j]`` for ``j = 1`` and ``(a_{j-1}, a_j]`` otherwise, so a partition point
    belongs to the branch on its left. In particular ``T(1/2) = 1`` for Boole's map.

    Instances are immutable and can be evaluated on scalars and arrays:

    >>> BOOLE(np.array([0.0, 0.5, 1.0]))
    array([0., 1., 1.])

    Attributes:
        d: Number of branches.
        a: Partition points ``0 = a_0 < ... < a_d = 1``.
        x: Indifferent fixed points ``x_1 = 0 < ... < x_d = 1``.
        alpha: Tail index in ``(0, 1)``.
        c: Coefficients ``c_j`` in ``(0, inf]``.
        family: Name of the family the map belongs to.
    """

    def __init__(
            self,
            a: Sequence[float],
            x: Sequence[float],
            alpha: float,
            c: Sequence[float],
            sides: Dict[Tuple[int, int], BranchSide],
            family: str,
            density=None
    ):
        self.a = tuple(float(v) for v in a)
        self.x = tuple(float(v) for v in x)
        self.d = len(self.x)
        self.alpha = float(alpha)
        self.c = tuple(float(v) for v in c)
        self.family = family
        self.sides = dict(sides)
        self._density = density
        self._inner = np.array(self.a[1:-1])
        self._fixed = np.array(self.x)
        self.stall_radii = {key: side.stall_radius(self.x[key[0] - 1]) for key, side in self.sides.items()}

    def __repr__(self):
        return '{}(d={}, alpha={!r}, c={!r}, family={!r})'.format(
            type(self).__name__, self.d, self.alpha, self.c, self.family
        )

    def __eq__(self, other):
        if not isinstance(other, IntermittentMapSpec):
            return NotImplemented
        return (self.family, self.a, self.x, self.alpha, self.c) == (other.family, other.a, other.x, other.alpha,
                                                                      other.c)

    def __hash__(self):
        return hash((self.family, self.a, self.x, self.alpha, self.c))

    @property
    def has_density(self) -> bool:
        """Whether a closed form invariant density is available."""
        return self._density is not None

    def density(self, x: ArrayLike) -> ArrayLike:
        """Evaluate the closed form invariant density.

        Raises:
            NotImplementedError:
                If the family has no closed form density.
        """
        if self._density is None:
            raise NotImplementedError("No closed form invariant density for the {!r} family".format(self.family))
        return self._density(x)

    def psi(self, s: ArrayLike) -> ArrayLike:
        """The regularly varying function ``Psi(s) = s**(1 + 1/alpha)``."""
        return np.asarray(s, dtype=float)**(1.0 + 1.0 / self.alpha)

    def branch_index(self, x: ArrayLike) -> ArrayLike:
        """Return the branch ``j`` (starting at ``1``) containing *x*."""
        index = np.searchsorted(self._inner, np.asarray(x, dtype=float), side='left') + 1
        if np.ndim(x) == 0:
            return int(index)
        return index

    def _sides_of(self, x):
        x = np.asarray(x, dtype=float)
        branch = np.searchsorted(self._inner, x, side='left')
        offset = x - self._fixed[branch]
        return x, branch, offset

    def _apply(self, x, method, signed):
        x, branch, offset = self._sides_of(x)
        # fixed points: T(x_j) = x_j, T'(x_j) = 1, T''(x_j) = 0
        if method == 'forward':
            result = x.copy()
        elif method == 'derivative':
            result = np.ones_like(x)
        else:
            result = np.zeros_like(x)
        for (j, sigma), side in self.sides.items():
            if sigma > 0:
                mask = (branch == j - 1) & (offset > 0)
            else:
                mask = (branch == j - 1) & (offset < 0)
            if not np.any(mask):
                continue
            value = getattr(side, method)(np.abs(offset[mask]))
            if method == 'forward':
                result[mask] = self.x[j - 1] + sigma * value
            elif signed:
                result[mask] = sigma * value
            else:
                result[mask] = value
        return result

    def __call__(self, x: ArrayLike) -> ArrayLike:
        """Evaluate ``T(x)``."""
        return _like(self._apply(x, 'forward', False), x)

    def derivative(self, x: ArrayLike) -> ArrayLike:
        """Evaluate ``T'(x)``."""
        return _like(self._apply(x, 'derivative', False), x)

    def second_derivative(self, x: ArrayLike) -> ArrayLike:
        """Evaluate ``T''(x)``."""
        return _like(self._apply(x, 'second_derivative', True), x)

    def evaluate_branch(self, j: int, x: float) -> float:
        """Evaluate the extension ``T_j`` of branch *j* on the closed interval ``[a_{j-1}, a_j]``.

        Unlike ``T`` itself this uses the formula of branch *j* at both end points:

        >>> BOOLE.evaluate_branch(2, 0.5)
        0.0
        """
        if not self.a[j - 1] <= x <= self.a[j]:
            raise ValueError("{!r} is outside the closure of branch {}".format(x, j))
        fixed = self.x[j - 1]
        sigma = 1 if x >= fixed and (j, 1) in self.sides else -1
        if x == fixed:
            return fixed
        return fixed + sigma * float(self.sides[(j, sigma)].forward(abs(x - fixed)))

    def is_symmetric(self, samples: int=257) -> bool:
        """Whether ``T(1 - x) = 1 - T(x)`` holds on a grid, up to rounding."""
        grid = np.linspace(0.0, 1.0, samples)[1:-1]
        grid = grid[~np.isin(grid, self.a)]
        return bool(np.allclose(self(1.0 - grid), 1.0 - self(grid), rtol=0, atol=1e-12))

    def inverse(self, j: int, y: ArrayLike) -> ArrayLike:
        """Evaluate the inverse branch ``f_j: [0, 1] -> J_j``.

        >>> round(BOOLE.inverse(1, 1.0), 15)
        0.5

        Raises:
            ValueError:
                If *j* is not a branch index or *y* is outside ``[0, 1]``.
        """
        if not 1 <= j <= self.d:
            raise ValueError("Branch index {} out of range 1..{}".format(j, self.d))
        values = np.atleast_1d(np.asarray(y, dtype=float))
        if np.any((values < 0) | (values > 1)):
            raise ValueError("Inverse branches are defined on [0, 1]")
        fixed = self.x[j - 1]
        result = np.full_like(values, fixed)
        for sigma in (1, -1):
            side = self.sides.get((j, sigma))
            if side is None:
                continue
            mask = sigma * (values - fixed) > 0
            if not np.any(mask):
                continue
            distance = np.abs(values[mask] - fixed)
            if hasattr(side, 'backward_array'):
                result[mask] = fixed + sigma * side.backward_array(distance)
            else:
                result[mask] = fixed + sigma * np.array([side.backward(value) for value in distance])
        if np.ndim(y) == 0:
            return float(result[0])
        return result

    def inverse_derivative(self, j: int, y: ArrayLike) -> ArrayLike:
        """Evaluate ``f_j'(y) = 1 / T'(f_j(y))``."""
        return 1.0 / self.derivative(self.inverse(j, y))

    def inverse_second_derivative(self, j: int, y: ArrayLike) -> ArrayLike:
        """Evaluate ``f_j''(y) = -T''(f_j y) / T'(f_j y)**3``."""
        point = self.inverse(j, y)
        return -self.second_derivative(point) / self.derivative(point)**3

    def approach_distances(self, j: int, sigma: int, start: float, depth: int) -> np.ndarray:
        """Distances ``|f_j^m(y) - x_j|`` for ``m = 0..depth`` where ``|y - x_j| = start`` on side *sigma*.

        The chain is computed in the local coordinate, so it stays accurate next to fixed points at ``1``.
        """
        side = self.sides[(j, sigma)]
        distances = np.empty(depth + 1)
        distances[0] = value = float(start)
        backward = side.backward
        for m in range(1, depth + 1):
            value = backward(value)
            distances[m] = value
        return distances

    def stall_state(self, x: np.ndarray, policy: str='analytic-tail') -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Find the points of *x* that lie in a stall zone next to a fixed point.

        Args:
            x:
                Current orbit points.
            policy:
                Only used for logging; the zone itself does not depend on it.

        Returns:
            A tuple ``(mask, steps, exits)`` where *mask* flags points inside a stall zone (excluding the fixed
            points themselves), *steps* is the number of iterations needed to leave the zone and *exits* is the
            point at which the orbit resumes.
        """
        x = np.asarray(x, dtype=float)
        mask = np.zeros(x.shape, dtype=bool)
        steps = np.zeros(x.shape)
        exits = x.copy()
        for (j, sigma), side in self.sides.items():
            fixed = self.x[j - 1]
            radius = self.stall_radii[(j, sigma)]
            offset = sigma * (x - fixed)
            zone = (offset > 0) & (offset < radius)
            if np.any(zone):
                mask |= zone
                steps[zone] = side.escape_steps(offset[zone], radius)
                exits[zone] = fixed + sigma * radius
                logger.debug('%d points inside the stall zone of x_%d (side %+d, %s)', np.count_nonzero(zone), j,
                             sigma, policy)
        return mask, steps, exits

    def check_stall(self, previous: np.ndarray, current: np.ndarray, step: int) -> None:
        """Raise :class:`StallDetected` if an orbit point away from the fixed points did not move."""
        frozen = (previous == current) & ~np.isin(previous, self._fixed)
        if np.any(frozen):
            raise StallDetected(float(np.asarray(previous)[frozen][0]), step)


def boole_eval(x: ArrayLike) -> ArrayLike:
    """Evaluate Boole's map ``x(1-x)/(1-x-x^2)`` for ``x <= 1/2`` and ``1 - T(1-x)`` otherwise.

    >>> boole_eval(0.3) == 0.3 * 0.7 / (1 - 0.3 - 0.09)
    True
    """
    return BOOLE(x)


def invariant_density_boole(x: ArrayLike) -> ArrayLike:
    """The invariant density ``x^-2 + (1-x)^-2`` of Boole's map.

    >>> invariant_density_boole(0.5)
    8.0

    Raises:
        EndpointSingularity:
            If *x* contains one of the indifferent fixed points ``0`` and ``1``.
    """
    values = np.asarray(x, dtype=float)
    if np.any((values <= 0) | (values >= 1)):
        raise EndpointSingularity("The invariant density is unbounded at 0 and 1")
    return _like(values**-2 + (1.0 - values)**-2, x)


def boole_measure(left: float, right: float) -> float:
    """Invariant measure of ``[left, right]`` for Boole's map from the antiderivative ``1/(1-x) - 1/x``.

    >>> round(boole_measure(math.sqrt(2) - 1, 2 - math.sqrt(2)), 12)
    1.414213562373

    Raises:
        EndpointSingularity:
            If the interval touches ``0`` or ``1``.
    """
    if left <= 0 or right >= 1:
        raise EndpointSingularity("Neighbourhoods of the fixed points have infinite measure")

    def antiderivative(x):
        return 1.0 / (1.0 - x) - 1.0 / x

    return antiderivative(right) - antiderivative(left)


def _reach(exponent: float, coefficient: float, distance: float) -> float:
    # largest h with h + coefficient * h**exponent <= distance
    return optimize.brentq(lambda h: h + coefficient * h**exponent - distance, 0.0, distance, xtol=1e-15)


def make_thaler_family(d: int, alpha: float, c: Sequence[float], family: str='thaler') -> IntermittentMapSpec:
    """Build a ``d``-branch map with indifferent fixed points ``x_j = (j-1)/(d-1)``.

    Each side of a fixed point has the form ``g(h) = h + c_j h^p + k h^{p+1}`` with ``p = 1 + 1/alpha``. The
    partition point between ``x_j`` and ``x_{j+1}`` splits the gap in proportion to the largest reach of the two
    sides without correction term, and ``k >= 0`` is fixed so that the branch ends map onto ``0`` and ``1``. A side
    with ``c_j = inf`` uses ``g(h) = h + h^r + k h^{p+1}`` with ``r = 1 + p/2``, so ``|Tx - x| / Psi(|x - x_j|)``
    diverges at that fixed point.

    The reserved parameterization ``(2, 1/2, (1, 1), 'boole')`` returns :data:`BOOLE`.

    Args:
        d:
            Number of branches, at least 2.
        alpha:
            Tail index in ``(0, 1)``.
        c:
            The ``d`` coefficients in ``(0, inf]``, at least one finite.
        family:
            Either ``'thaler'`` or ``'boole'``.

    Returns:
        The map specification.

    Raises:
        ValueError:
            If a parameter is out of range or the coefficients are too large for the polynomial sides to reach the
            branch ends.
    """
    if family == 'boole':
        if d != 2 or alpha != 0.5 or tuple(float(v) for v in c) != (1.0, 1.0):
            raise ValueError("The Boole family is reserved for d=2, alpha=1/2, c=(1, 1)")
        return BOOLE
    if family != 'thaler':
        raise ValueError("Unknown map family {!r}".format(family))
    if int(d) != d or d < 2:
        raise ValueError("At least two branches are needed, got {!r}".format(d))
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1), got {!r}".format(alpha))
    c = tuple(float(v) for v in c)
    if len(c) != d:
        raise ValueError("Expected {} coefficients, got {}".format(d, len(c)))
    if any(not v > 0 for v in c):
        raise ValueError("Coefficients must be positive, got {!r}".format(c))
    if all(math.isinf(v) for v in c):
        raise ValueError("At least one coefficient must be finite")

    p = 1.0 + 1.0 / alpha
    upper = p + 1.0
    fixed = [j / (d - 1) for j in range(d)]
    gap = 1.0 / (d - 1)
    local = [((1.0 + p / 2.0, 1.0) if math.isinf(v) else (p, v)) for v in c]

    right_reach = [_reach(local[j][0], local[j][1], 1.0 - fixed[j]) for j in range(d - 1)]
    left_reach = [None] + [_reach(local[j][0], local[j][1], fixed[j]) for j in range(1, d)]
    a = [0.0]
    for j in range(d - 1):
        total = right_reach[j] + left_reach[j + 1]
        if total < gap:
            raise ValueError(
                "Coefficients {!r} and {!r} are too large for branches of width {:.4g}".format(c[j], c[j + 1], gap)
            )
        a.append(fixed[j] + gap * right_reach[j] / total)
    a.append(1.0)

    sides = {}
    for j in range(d):
        exponent, coefficient = local[j]
        if j < d - 1:
            extent = a[j + 1] - fixed[j]
            correction = (1.0 - fixed[j] - extent - coefficient * extent**exponent) / extent**upper
            sides[(j + 1, 1)] = PolynomialSide(exponent, coefficient, max(correction, 0.0), extent, upper)
        if j > 0:
            extent = fixed[j] - a[j]
            correction = (fixed[j] - extent - coefficient * extent**exponent) / extent**upper
            sides[(j + 1, -1)] = PolynomialSide(exponent, coefficient, max(correction, 0.0), extent, upper)
    logger.debug('Built %d-branch map with partition points %r', d, a)
    return IntermittentMapSpec(a, fixed, alpha, c, sides, family)


BOOLE = IntermittentMapSpec(
    a=(0.0, 0.5, 1.0),
    x=(0.0, 1.0),
    alpha=0.5,
    c=(1.0, 1.0),
    sides={
        (1, 1): BooleSide(),
        (2, -1): BooleSide()
    },
    family='boole',
    density=invariant_density_boole
)
"""Boole's map ``T(x) = x(1-x)/(1-x-x^2)`` on ``[0, 1/2]`` and ``1 - T(1-x)`` on ``(1/2, 1]``."""
