# -*- coding: utf-8 -*-
"""Exact samplers for the limit objects of the occupation times.

The limit laws are driven by independent one-sided stable variables ``xi_1, ..., xi_d`` with Laplace transforms
``E exp(-lambda xi_j) = exp(-lambda^alpha beta_j)``. Occupation fractions and local time at time ``1`` are

    ``Z_j(1) = xi_j / sum(xi)``,  ``L(1) = sum(xi)^-alpha``

and the last zero ``G`` before ``1`` splits the path into a part that is a reweighted copy of the above and a single
excursion into one ray:

>>> params = StableParams(0.5, (0.5, 0.5))
>>> sample = sample_zg_joint(params, np.random.default_rng(0), size=1000)
>>> bool(np.allclose(sample.z.sum(axis=1), 1.0))
True
>>> bool(np.all((sample.g <= 1) & (sample.dv > 1)))
True
"""
import csv
import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import special

from ..errors import EffectiveSampleSizeLow
from ..utils import as_probability_vector

__all__ = [
    'StableParams', 'LimitSample', 'sample_one_sided_stable', 'sample_lamperti_joint', 'sample_gd_pair',
    'gd_joint_density', 'sample_zg_joint', 'MIN_ESS', 'WARN_ESS'
]

logger = logging.getLogger(__name__)

MIN_ESS = 0.10
"""Relative effective sample size below which reweighted samples are rejected."""

WARN_ESS = 0.25
"""Relative effective sample size below which a warning is logged."""


@dataclass(frozen=True)
class StableParams:
    """The tail index ``alpha`` and the ray weights ``beta`` of a limit object.

    >>> StableParams(0.5, [0.25, 0.75]).d
    2

    Raises:
        ValueError:
            If ``alpha`` is not in ``(0, 1)`` or ``beta`` is not a probability vector.
    """
    alpha: float
    beta: Tuple[float, ...]

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1), got {!r}".format(self.alpha))
        beta = as_probability_vector(self.beta)
        object.__setattr__(self, 'alpha', float(self.alpha))
        object.__setattr__(self, 'beta', tuple(float(value) for value in beta))

    @property
    def d(self) -> int:
        return len(self.beta)

    @property
    def weights(self) -> np.ndarray:
        return np.array(self.beta)


@dataclass
class LimitSample:
    """Samples of the limit variables at time ``1``, one row per sample.

    Fields that a sampler does not produce are ``None``.

    Attributes:
        z: Occupation fractions ``Z_j(1)``.
        l: Local time ``L(1)``.
        g: Last zero ``G(1)``.
        dv: First zero ``D(1)`` after ``1``.
        zg: Fractions ``Z_j(G) / G`` at the last zero.
        ray: The ray ``1..d`` of the excursion straddling ``1``.
    """
    z: Optional[np.ndarray] = None
    l: Optional[np.ndarray] = None
    g: Optional[np.ndarray] = None
    dv: Optional[np.ndarray] = None
    zg: Optional[np.ndarray] = None
    ray: Optional[np.ndarray] = None

    def __len__(self):
        for value in (self.z, self.l, self.g, self.zg):
            if value is not None:
                return len(value)
        return 0

    def to_csv(self, path: str) -> None:
        """Write the columns ``z1..zd, l, g, d, zg1..zgd``.

        Raises:
            ValueError:
                If a column is missing.
        """
        if any(value is None for value in (self.z, self.l, self.g, self.dv, self.zg)):
            raise ValueError("Only complete samples can be written")
        d = self.z.shape[1]
        header = ['z{}'.format(j) for j in range(1, d + 1)] + ['l', 'g', 'd']
        header += ['zg{}'.format(j) for j in range(1, d + 1)]
        with open(path, 'w', newline='') as handle:
            writer = csv.writer(handle)
            writer.writerow(header)
            for k in range(len(self)):
                row = list(self.z[k]) + [self.l[k], self.g[k], self.dv[k]] + list(self.zg[k])
                writer.writerow(['{:.12g}'.format(float(value)) for value in row])


def sample_one_sided_stable(alpha: float, beta_j: float, rng: np.random.Generator, size=None):
    """Sample ``xi`` with ``E exp(-lambda xi) = exp(-beta_j lambda^alpha)``.

    Uses Kanter's representation of the one-sided stable law, which is the Chambers-Mallows-Stuck transform for
    skewness one: with ``U`` uniform on ``(0, pi)`` and ``E`` standard exponential,

        ``xi = sin(alpha U) / sin(U)^(1/alpha) * (sin((1 - alpha) U) / E)^((1 - alpha) / alpha)``

    has Laplace exponent ``lambda^alpha``, and ``beta_j^(1/alpha) xi`` has exponent ``beta_j lambda^alpha``.

    >>> sample_one_sided_stable(0.5, 0.0, np.random.default_rng(0))
    0.0

    Raises:
        ValueError:
            If *beta_j* is negative or *alpha* is not in ``(0, 1)``.
    """
    if beta_j < 0:
        raise ValueError("The scale must be non-negative, got {!r}".format(beta_j))
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1), got {!r}".format(alpha))
    if beta_j == 0:
        return 0.0 if size is None else np.zeros(size)
    u = rng.uniform(0.0, math.pi, size)
    e = rng.standard_exponential(size)
    xi = np.sin(alpha * u) / np.sin(u)**(1.0 / alpha) * (np.sin((1.0 - alpha) * u) / e)**((1.0 - alpha) / alpha)
    xi = xi * beta_j**(1.0 / alpha)
    return float(xi) if size is None else xi


def _stable_matrix(params: StableParams, rng: np.random.Generator, size: int) -> np.ndarray:
    return np.column_stack([sample_one_sided_stable(params.alpha, beta, rng, size) for beta in params.beta])


def sample_lamperti_joint(params: StableParams, rng: np.random.Generator, size: int=1) -> LimitSample:
    """Sample ``(Z_1(1), ..., Z_d(1), L(1))`` as ``(xi_j / sum(xi), sum(xi)^-alpha)``.

    The fractions sum to one exactly up to rounding:

    >>> sample = sample_lamperti_joint(StableParams(0.5, (0.5, 0.5)), np.random.default_rng(1), size=5)
    >>> bool(np.allclose(sample.z.sum(axis=1), 1.0))
    True
    """
    xi = _stable_matrix(params, rng, size)
    total = xi.sum(axis=1)
    return LimitSample(z=xi / total[:, None], l=total**-params.alpha)


def sample_gd_pair(params: StableParams, t: float, rng: np.random.Generator,
                   size: int=1) -> Tuple[np.ndarray, np.ndarray]:
    """Sample the last zero ``G(t)`` before and the first zero ``D(t)`` after *t*.

    ``G(t) / t`` is ``Beta(alpha, 1 - alpha)`` distributed and drawn by inverting the regularized incomplete beta
    function; given ``G(t) = u`` the excess has the Pareto tail ``P[D(t) > v] = ((v - u) / (t - u))^-alpha``.

    Raises:
        ValueError:
            If *t* is not positive.
    """
    if not t > 0:
        raise ValueError("The time must be positive, got {!r}".format(t))
    alpha = params.alpha
    g = t * special.betaincinv(alpha, 1.0 - alpha, rng.random(size))
    v = 1.0 - rng.random(size)
    dv = g + (t - g) * v**(-1.0 / alpha)
    return g, dv


def gd_joint_density(u, v, t: float, alpha: float):
    """The joint density ``alpha sin(alpha pi) / pi * u^(alpha - 1) (v - u)^(-1 - alpha)`` on ``0 < u < t < v``."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    inside = (u > 0) & (u < t) & (v > t)
    safe_u = np.where(inside, u, 1.0)
    safe_gap = np.where(inside, v - u, 1.0)
    value = alpha * math.sin(alpha * math.pi) / math.pi * safe_u**(alpha - 1.0) * safe_gap**(-1.0 - alpha)
    return np.where(inside, value, 0.0)


def sample_zg_joint(
        params: StableParams, rng: np.random.Generator, size: int=1, oversample: int=4
) -> LimitSample:
    """Sample the complete limit vector at time ``1`` through the decomposition at the last zero ``G``.

    The fractions ``Z_j(G) / G`` and ``L / G^alpha`` have the law of ``(xi_j / sum(xi), sum(xi)^-alpha)`` reweighted
    by ``Gamma(1 + alpha) sum(xi)^-alpha``. A pool of ``oversample * size`` stable vectors is drawn and resampled by
    the self-normalized weights. ``(G, D)`` and the ray of the excursion straddling ``1`` (chosen with probabilities
    ``beta``) are independent of them, which yields ``Z_j(1) = G Z_j(G)/G + (1 - G) 1{ray = j}`` and
    ``L(1) = G^alpha L/G^alpha``.

    Raises:
        EffectiveSampleSizeLow:
            If the relative effective sample size of the weights is below :data:`MIN_ESS`.
    """
    alpha = params.alpha
    pool = max(1, oversample) * size
    xi = _stable_matrix(params, rng, pool)
    total = xi.sum(axis=1)
    weights = special.gamma(1.0 + alpha) * total**-alpha
    ess = weights.sum()**2 / (weights**2).sum() / pool
    if ess < MIN_ESS:
        raise EffectiveSampleSizeLow(float(ess), MIN_ESS)
    if ess < WARN_ESS:
        logger.warning('Relative effective sample size of the reweighting is only %.3f', ess)
    chosen = rng.choice(pool, size=size, p=weights / weights.sum())
    zg = xi[chosen] / total[chosen, None]
    lg = total[chosen]**-alpha
    g, dv = sample_gd_pair(params, 1.0, rng, size)
    ray = rng.choice(params.d, size=size, p=params.weights) + 1
    straddling = np.zeros((size, params.d))
    straddling[np.arange(size), ray - 1] = 1.0
    z = g[:, None] * zg + (1.0 - g)[:, None] * straddling
    return LimitSample(z=z, l=g**alpha * lg, g=g, dv=dv, zg=zg, ray=ray)
