# -*- coding: utf-8 -*-
"""Goodness of fit statistics.

>>> ks_statistic([0.5, 0.5], lambda x: np.where(np.asarray(x) >= 0.5, 1.0, 0.0))
0.0
>>> empirical_laplace([1.0, 2.0], [0.0]).tolist()
[1.0]
"""
import logging
from typing import Callable, NamedTuple, Sequence

import numpy as np
from scipy import stats

from ..errors import EmptySample

__all__ = ['ks_statistic', 'empirical_laplace', 'laplace_mismatch', 'TwoSample', 'two_sample_ks', 'empirical_cdf']

logger = logging.getLogger(__name__)


def _sample(samples) -> np.ndarray:
    values = np.asarray(samples, dtype=float).ravel()
    values = values[~np.isnan(values)]
    if values.size == 0:
        raise EmptySample("The statistic needs at least one finite sample")
    return values


def ks_statistic(samples: Sequence[float], cdf: Callable) -> float:
    """The one-sample Kolmogorov-Smirnov statistic ``sup |F_N - F|`` of *samples* against a continuous *cdf*.

    ``nan`` samples (censored values) are ignored. The supremum is evaluated at the sample points from both sides,
    which is exact for a continuous *cdf* and for point masses at the sample points.

    Raises:
        EmptySample:
            If no finite sample is left.
    """
    values = _sample(samples)
    unique, counts = np.unique(values, return_counts=True)
    upper = np.cumsum(counts) / values.size
    lower = upper - counts / values.size
    reference = np.asarray(cdf(unique), dtype=float)
    left = np.asarray(cdf(np.nextafter(unique, -np.inf)), dtype=float)
    return float(max(np.max(np.abs(upper - reference)), np.max(np.abs(lower - left))))


def empirical_laplace(samples: Sequence[float], lambdas: Sequence[float]) -> np.ndarray:
    """The empirical Laplace transform ``mean(exp(-lambda * sample))`` at every ``lambda``.

    Raises:
        EmptySample:
            If no finite sample is given.
    """
    values = _sample(samples)
    return np.array([np.mean(np.exp(-float(lam) * values)) for lam in lambdas])


def laplace_mismatch(samples: Sequence[float], lambdas: Sequence[float], reference: Sequence[float]) -> float:
    """The largest deviation of :func:`empirical_laplace` from the *reference* values."""
    return float(np.max(np.abs(empirical_laplace(samples, lambdas) - np.asarray(reference, dtype=float))))


class TwoSample(NamedTuple):
    statistic: float
    pvalue: float


def two_sample_ks(first: Sequence[float], second: Sequence[float]) -> TwoSample:
    """The two-sample Kolmogorov-Smirnov test of :func:`scipy.stats.ks_2samp`.

    Raises:
        EmptySample:
            If one of the samples has no finite value.
    """
    result = stats.ks_2samp(_sample(first), _sample(second))
    return TwoSample(float(result.statistic), float(result.pvalue))


def empirical_cdf(samples: Sequence[float]) -> Callable:
    """The right-continuous empirical distribution function.

    >>> cdf = empirical_cdf([1, 2, 2, 4])
    >>> cdf([0, 2, 3, 4]).tolist()
    [0.0, 0.75, 0.75, 1.0]

    Raises:
        EmptySample:
            If no finite sample is given.
    """
    values = np.sort(_sample(samples))

    def cdf(x):
        return np.searchsorted(values, np.asarray(x, dtype=float), side='right') / values.size

    return cdf
