# -*- coding: utf-8 -*-
"""Decompositions of the unit interval into rays ``A_1, ..., A_d`` and a junction ``Y``.

A :class:`RaysPartition` labels every point of ``[0, 1]``: label ``j`` in ``1..d`` for the ray ``A_j`` around the
fixed point ``x_j`` and label ``0`` for the junction ``Y``. The partition is stored as a sorted list of edges with a
label for every open piece between edges and a separate label for every edge, so arbitrary closedness of the
intervals is represented exactly.

>>> partition = build_partition(BOOLE)
>>> partition.edges.round(10).tolist()
[0.0, 0.4142135624, 0.5857864376, 1.0]
>>> partition.label(np.array([0.1, 0.5, 0.9]))
array([1, 0, 2])
"""
import logging
import math
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
from scipy import integrate, optimize

from ..errors import NoPeriodicPoint
from .maps import IntermittentMapSpec

__all__ = [
    'Interval', 'RaysPartition', 'find_periodic_gamma', 'build_partition', 'window_partition', 'audit_separation'
]

logger = logging.getLogger(__name__)

_GOLDEN_SECTION = 0.5 * (3.0 - math.sqrt(5.0))

JUNCTION = 0

Interval = NamedTuple(
    'Interval', [('left', float), ('right', float), ('left_closed', bool), ('right_closed', bool)]
)


class RaysPartition:
    """The partition ``[0, 1] = A_1 + ... + A_d + Y``.

    Attributes:
        d: Number of rays.
        edges: Sorted edge coordinates, starting at ``0`` and ending at ``1``.
        piece_labels: Label of the open piece between consecutive edges.
        edge_labels: Label of each edge point.
        gamma: The 2-periodic point the junction is built from (``d = 2`` only).
        kind: ``'dynamical'`` for the partition of :func:`build_partition`, ``'window'`` for symmetric windows.
    """

    def __init__(
            self,
            d: int,
            edges: Sequence[float],
            piece_labels: Sequence[int],
            edge_labels: Sequence[int],
            gamma: Optional[float]=None,
            kind: str='dynamical',
            delta: Optional[float]=None
    ):
        self.d = d
        self.edges = np.asarray(edges, dtype=float)
        self.piece_labels = np.asarray(piece_labels, dtype=np.int64)
        self.edge_labels = np.asarray(edge_labels, dtype=np.int64)
        self.gamma = gamma
        self.kind = kind
        self.delta = delta
        if len(self.piece_labels) != len(self.edges) - 1 or len(self.edge_labels) != len(self.edges):
            raise ValueError("Inconsistent number of labels for {} edges".format(len(self.edges)))
        if self.edges[0] != 0.0 or self.edges[-1] != 1.0 or np.any(np.diff(self.edges) <= 0):
            raise ValueError("Edges must increase strictly from 0 to 1")

    def __repr__(self):
        return 'RaysPartition(d={}, kind={!r}, edges={!r})'.format(self.d, self.kind, self.edges.tolist())

    def label(self, x):
        """Return ``j`` for points of ``A_j`` and ``0`` for points of ``Y``."""
        values = np.asarray(x, dtype=float)
        index = np.searchsorted(self.edges, values, side='left')
        capped = np.minimum(index, len(self.edges) - 1)
        on_edge = self.edges[capped] == values
        labels = np.where(on_edge, self.edge_labels[capped], self.piece_labels[np.maximum(index - 1, 0)])
        if np.ndim(x) == 0:
            return int(labels)
        return labels

    def intervals(self, label: int) -> List[Interval]:
        """The maximal intervals with the given *label*."""
        result = []
        current = None
        for k in range(len(self.piece_labels)):
            left, right = float(self.edges[k]), float(self.edges[k + 1])
            if self.piece_labels[k] != label:
                if current is not None:
                    result.append(current)
                    current = None
                continue
            if current is None:
                current = Interval(left, right, bool(self.edge_labels[k] == label), False)
            else:
                current = Interval(current.left, right, current.left_closed, False)
            current = current._replace(right_closed=bool(self.edge_labels[k + 1] == label))
            if not current.right_closed:
                result.append(current)
                current = None
        if current is not None:
            result.append(current)
        return result

    @property
    def rays(self) -> List[List[Interval]]:
        """The rays ``A_1, ..., A_d`` as lists of intervals."""
        return [self.intervals(j) for j in range(1, self.d + 1)]

    @property
    def junction(self) -> List[Interval]:
        """The junction ``Y`` as a list of intervals."""
        return self.intervals(JUNCTION)

    @property
    def junction_point(self) -> float:
        """A starting point inside the first junction interval, at its golden section.

        For symmetric maps the midpoint is mapped onto an indifferent fixed point.
        """
        piece = self.junction[0]
        return piece.left + _GOLDEN_SECTION * (piece.right - piece.left)

    def ray_boundary(self, j: int, sigma: int) -> float:
        """The edge where the ray ``A_j`` meets the junction on side *sigma* of its fixed point."""
        pieces = self.intervals(j)
        return pieces[-1].right if sigma > 0 else pieces[0].left

    def junction_measure(self, density) -> float:
        """The invariant measure of ``Y`` for a *density* that is integrable on ``Y``."""
        return float(sum(integrate.quad(density, piece.left, piece.right)[0] for piece in self.junction))


def find_periodic_gamma(spec: IntermittentMapSpec) -> float:
    """Find the 2-periodic point ``gamma`` in the first branch of a two-branch map.

    For maps with ``T(1 - x) = 1 - T(x)`` the point solves ``T(gamma) = 1 - gamma``. Otherwise ``T_2(T_1(x)) = x`` is
    solved on ``[f_1(a_1), a_1]`` where the composition is an expanding full branch.

    >>> round(find_periodic_gamma(BOOLE), 12) == round(math.sqrt(2) - 1, 12)
    True

    Raises:
        ValueError:
            If the map does not have two branches.
        NoPeriodicPoint:
            If the bracketing search fails.
    """
    if spec.d != 2:
        raise ValueError("The 2-periodic point is only used for maps with two branches, got d={}".format(spec.d))
    split = spec.a[1]
    try:
        if spec.is_symmetric():
            gamma = optimize.brentq(lambda x: spec.evaluate_branch(1, x) + x - 1.0, 0.0, split, xtol=1e-16)
        else:
            low = spec.inverse(1, split)
            gamma = optimize.brentq(
                lambda x: spec.evaluate_branch(2, max(spec.evaluate_branch(1, x), split)) - x,
                low,
                split,
                xtol=1e-16
            )
    except ValueError as error:
        raise NoPeriodicPoint("No sign change while bracketing the 2-periodic point: {}".format(error)) from error
    image = spec.evaluate_branch(1, gamma)
    if abs(image - gamma) < 1e-12 or image <= split:
        raise NoPeriodicPoint("The point {!r} is not 2-periodic".format(gamma))
    logger.debug('2-periodic point gamma=%r with image %r', gamma, image)
    return float(gamma)


def build_partition(spec: IntermittentMapSpec) -> RaysPartition:
    """Build the dynamically separating partition of a map.

    For two branches ``A_1 = [0, gamma)``, ``Y = [gamma, T gamma]`` and ``A_2 = (T gamma, 1]``. For ``d >= 3`` the
    rays are the closed intervals ``A_j = f_j(J_j)`` of points of ``J_j`` which are mapped into ``J_j`` again, and
    ``Y`` is the complement.

    Raises:
        NoPeriodicPoint:
            Propagated from :func:`find_periodic_gamma`.
    """
    if spec.d == 2:
        gamma = find_periodic_gamma(spec)
        image = spec.evaluate_branch(1, gamma)
        return RaysPartition(2, [0.0, gamma, image, 1.0], [1, JUNCTION, 2], [1, JUNCTION, JUNCTION, 2], gamma=gamma)
    edges = [0.0]
    pieces = []
    edge_labels = [1]
    for j in range(1, spec.d + 1):
        if j > 1:
            edges.append(float(spec.inverse(j, spec.a[j - 1])))
            edge_labels.append(j)
            pieces.append(j)
        if j < spec.d:
            edges.append(float(spec.inverse(j, spec.a[j])))
            edge_labels.append(j)
            pieces.append(j)
            pieces.append(JUNCTION)
    edges.append(1.0)
    edge_labels.append(spec.d)
    pieces.append(spec.d)
    # interior rays contribute one piece label from each end
    return RaysPartition(spec.d, edges, _collapse(pieces, len(edges) - 1), edge_labels)


def _collapse(pieces: List[int], count: int) -> List[int]:
    merged = [pieces[0]]
    for label in pieces[1:]:
        if label != merged[-1]:
            merged.append(label)
    if len(merged) != count:
        raise ValueError("Inconsistent partition construction")
    return merged


def window_partition(spec: IntermittentMapSpec, delta: float) -> RaysPartition:
    """Partition into windows ``A_j = (x_j - delta, x_j + delta)`` around the fixed points.

    >>> window_partition(BOOLE, 0.1).junction
    [Interval(left=0.1, right=0.9, left_closed=True, right_closed=True)]

    Args:
        spec:
            The map.
        delta:
            Half width of the windows.

    Raises:
        ValueError:
            If *delta* is not positive or the windows are too wide for the partition to separate the rays
            dynamically.
    """
    if not delta > 0:
        raise ValueError("The window half width must be positive")
    edges = [0.0]
    pieces = []
    edge_labels = [1]
    for j, fixed in enumerate(spec.x, start=1):
        if j > 1:
            edges.append(fixed - delta)
            edge_labels.append(JUNCTION)
            pieces.append(JUNCTION)
        if j < spec.d:
            reach = fixed + float(spec.sides[(j, 1)].forward(delta))
            if reach >= spec.x[j] - delta:
                raise ValueError("Windows of half width {!r} do not separate rays {} and {}".format(delta, j, j + 1))
            edges.append(fixed + delta)
            edge_labels.append(JUNCTION)
        if j > 1:
            reach = fixed - float(spec.sides[(j, -1)].forward(delta))
            if reach <= spec.x[j - 2] + delta:
                raise ValueError("Windows of half width {!r} do not separate rays {} and {}".format(delta, j - 1, j))
        pieces.append(j)
    edges.append(1.0)
    edge_labels.append(spec.d)
    if np.any(np.diff(edges) <= 0):
        raise ValueError("Windows of half width {!r} overlap".format(delta))
    return RaysPartition(spec.d, edges, pieces, edge_labels, kind='window', delta=float(delta))


def audit_separation(
        spec: IntermittentMapSpec, partition: RaysPartition, segments: int, length: int, rng: np.random.Generator
) -> int:
    """Count direct transitions ``A_i -> A_j`` with ``i != j`` on random orbit segments.

    Args:
        spec:
            The map.
        partition:
            The partition to audit.
        segments:
            Number of orbit segments, started uniformly on ``[0, 1]``.
        length:
            Number of steps per segment.
        rng:
            Source of the starting points.

    Returns:
        The number of violations of dynamical separation.
    """
    x = rng.random(segments)
    labels = partition.label(x)
    violations = 0
    for _ in range(length):
        x = spec(x)
        current = partition.label(x)
        violations += int(np.count_nonzero((labels != JUNCTION) & (current != JUNCTION) & (labels != current)))
        labels = current
    if violations:
        logger.warning('%d violations of dynamical separation in %d segments', violations, segments)
    return violations
