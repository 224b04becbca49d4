# -*- coding: utf-8 -*-
"""This module contains various utility functions."""
import itertools
from typing import Iterable, Iterator, Optional, Sequence, Tuple, TypeVar

import numpy as np

__all__ = ['replica_generator', 'chunked', 'as_probability_vector', 'log_log_slope', 'parse_float_tuple']

T = TypeVar('T')


def replica_generator(master_seed: int, index: int) -> np.random.Generator:
    """Return the random generator of a single replica.

    The stream of replica *index* is derived from ``SeedSequence([master_seed, index])`` so that every replica sees
    the same numbers no matter how the replicas are distributed over workers:

    >>> a = replica_generator(7, 3).random()
    >>> b = replica_generator(7, 3).random()
    >>> a == b
    True
    >>> replica_generator(7, 4).random() == a
    False

    Args:
        master_seed:
            The seed of the whole experiment.
        index:
            The index of the replica.

    Returns:
        A fresh :class:`numpy.random.Generator`.

    Raises:
        ValueError:
            If the seed or the index is negative.
    """
    if master_seed < 0 or index < 0:
        raise ValueError("Seeds and replica indices must be non-negative")
    return np.random.default_rng(np.random.SeedSequence([int(master_seed), int(index)]))


def chunked(items: Iterable[T], size: int) -> Iterator[Tuple[T, ...]]:
    """Split *items* into consecutive tuples of at most *size* elements.

    >>> list(chunked(range(5), 2))
    [(0, 1), (2, 3), (4,)]

    Raises:
        ValueError:
            If *size* is not positive.
    """
    if size <= 0:
        raise ValueError("Chunk size must be positive")
    iterator = iter(items)
    while True:
        chunk = tuple(itertools.islice(iterator, size))
        if not chunk:
            return
        yield chunk


def as_probability_vector(weights: Sequence[float], length: Optional[int]=None, tolerance: float=1e-12) -> np.ndarray:
    """Validate *weights* as a probability vector and return it as an array.

    >>> as_probability_vector([0.25, 0.75])
    array([0.25, 0.75])

    Args:
        weights:
            The candidate probabilities.
        length:
            If given, the required number of entries.
        tolerance:
            Admissible deviation of the sum from one.

    Returns:
        The weights as a float array.

    Raises:
        ValueError:
            If an entry is negative, the sum deviates from one or the length is wrong.
    """
    vector = np.asarray(weights, dtype=float)
    if vector.ndim != 1 or vector.size == 0:
        raise ValueError("A probability vector must be a non-empty sequence")
    if length is not None and vector.size != length:
        raise ValueError("Expected {} probabilities, got {}".format(length, vector.size))
    if np.any(vector < 0) or not np.all(np.isfinite(vector)):
        raise ValueError("Probabilities must be finite and non-negative: {!r}".format(weights))
    if abs(vector.sum() - 1.0) > tolerance:
        raise ValueError("Probabilities must sum to one, got {!r}".format(vector.sum()))
    return vector


def log_log_slope(x: Sequence[float], y: Sequence[float]) -> float:
    """Least squares slope of ``log y`` against ``log x``.

    >>> round(log_log_slope([1, 10, 100], [1, 0.1, 0.01]), 12)
    -1.0

    Raises:
        ValueError:
            If fewer than two positive pairs are available.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    usable = (x > 0) & (y > 0)
    if np.count_nonzero(usable) < 2:
        raise ValueError("At least two positive points are needed for a log-log fit")
    slope, _ = np.polyfit(np.log(x[usable]), np.log(y[usable]), 1)
    return float(slope)


def parse_float_tuple(text: str) -> Tuple[float, ...]:
    """Parse a comma separated list of floats. ``inf`` is accepted.

    >>> parse_float_tuple('0.5, 1,inf')
    (0.5, 1.0, inf)

    Raises:
        ValueError:
            If an entry is not a number.
    """
    parts = [part.strip() for part in text.split(',')]
    if not parts or any(part == '' for part in parts):
        raise ValueError("Expected a comma separated list of numbers, got {!r}".format(text))
    return tuple(float(part) for part in parts)
