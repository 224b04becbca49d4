# -*- coding: utf-8 -*-
"""Distribution functions, densities and transforms of the limit laws.

For ``alpha = 1/2`` and equal weights the laws reduce to classical ones. The occupation fraction of a ray follows the
arcsine law, the local time is half-Gaussian with Laplace transform ``e^(x^2) erfc(x)``, and the fraction at the last
zero is uniform:

>>> round(arcsine_cdf(0.25, 1.0), 12)
0.333333333333
>>> round(mittag_leffler_laplace(1.0, 1.0, 0.5), 7)
0.4275836
>>> round(lamperti_zg_density(0.3, 0.5, 0.5), 12)
1.0
"""
import logging
import math
from typing import Union

import numpy as np
from scipy import integrate, special

from ..errors import EndpointSingularity

__all__ = [
    'mittag_leffler_laplace', 'mittag_leffler_moment', 'arcsine_cdf', 'beta_a_1ma_cdf', 'half_gaussian_cdf',
    'half_gaussian_density', 'lamperti_density', 'lamperti_cdf', 'lamperti_zg_density', 'lamperti_zg_cdf'
]

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

SERIES_LIMIT = 13.8
"""Largest ``x^(1/alpha)`` for which ``E_alpha(-x)`` is summed as a power series."""

_DIFFERENCE_STEP = 1e-5


def _like(result: np.ndarray, reference) -> ArrayLike:
    if np.ndim(reference) == 0:
        return float(result)
    return result


def _mittag_leffler_series(x: float, alpha: float) -> float:
    total = 0.0
    n = 0
    while True:
        term = math.exp(n * math.log(x) - special.gammaln(1.0 + n * alpha)) if x > 0 else float(n == 0)
        total += -term if n % 2 else term
        if n > x**(1.0 / alpha) + 10 and term < 1e-17 * max(abs(total), 1e-300):
            return total
        n += 1


def _mittag_leffler_integral(x: float, alpha: float) -> float:
    scale = x**(1.0 / alpha)
    cosine = math.cos(alpha * math.pi)

    def integrand(w):
        return math.exp(-scale * w**(1.0 / alpha)) / (w * w + 2.0 * w * cosine + 1.0)

    split = 1.0 / x
    head, head_error = integrate.quad(integrand, 0.0, split, epsabs=1e-15, epsrel=1e-12, limit=200)
    tail, tail_error = integrate.quad(integrand, split, math.inf, epsabs=1e-15, epsrel=1e-12, limit=200)
    value, error = head + tail, head_error + tail_error
    logger.debug('Mittag-Leffler integral at x=%r: %r (error %r)', x, value, error)
    return math.sin(alpha * math.pi) / (math.pi * alpha) * value


def mittag_leffler_laplace(lam: ArrayLike, t: float, alpha: float) -> ArrayLike:
    """The Laplace transform ``E exp(-lam L(t)) = E_alpha(-lam t^alpha)`` of the local time.

    ``E_alpha(-x) = sum_n (-x)^n / Gamma(1 + n alpha)`` is summed while ``x^(1/alpha)`` is at most
    :data:`SERIES_LIMIT`, where the largest term stays below ``10^6``. Larger arguments use the representation

        ``E_alpha(-x) = sin(alpha pi) / (alpha pi) int_0^inf exp(-(w x)^(1/alpha)) / (w^2 + 2w cos(alpha pi) + 1) dw``

    >>> mittag_leffler_laplace(0.0, 2.0, 0.3)
    1.0
    >>> round(mittag_leffler_laplace(2.0, 1.5, 1.0) - math.exp(-3.0), 15)
    0.0

    Raises:
        ValueError:
            If *lam* or *t* is negative or *alpha* is not in ``(0, 1]``.
    """
    values = np.atleast_1d(np.asarray(lam, dtype=float))
    if np.any(values < 0) or t < 0:
        raise ValueError("The Laplace variable and the time must be non-negative")
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1], got {!r}".format(alpha))
    arguments = values * t**alpha
    if alpha == 1.0:
        return _like(np.exp(-arguments), lam)
    result = np.empty_like(arguments)
    for k, x in enumerate(arguments):
        if x == 0:
            result[k] = 1.0
        elif x**(1.0 / alpha) <= SERIES_LIMIT:
            result[k] = _mittag_leffler_series(x, alpha)
        else:
            result[k] = _mittag_leffler_integral(x, alpha)
    return _like(result, lam)


def mittag_leffler_moment(n: int, alpha: float) -> float:
    """The moment ``E L(1)^n = n! / Gamma(1 + n alpha)``.

    >>> round(mittag_leffler_moment(1, 0.5), 12) == round(2 / math.sqrt(math.pi), 12)
    True
    """
    return math.factorial(n) / math.gamma(1.0 + n * alpha)


def _check_unit(u, t: float):
    values = np.asarray(u, dtype=float)
    if not t > 0:
        raise ValueError("The time must be positive, got {!r}".format(t))
    if np.any((values < 0) | (values > t)):
        raise ValueError("Arguments must lie in [0, {}]".format(t))
    return values


def arcsine_cdf(u: ArrayLike, t: float=1.0) -> ArrayLike:
    """The arcsine law ``2 / pi arcsin(sqrt(u / t))`` on ``[0, t]``.

    >>> arcsine_cdf(0.5, 1.0)
    0.5

    Raises:
        ValueError:
            If *u* is outside ``[0, t]``.
    """
    values = _check_unit(u, t)
    return _like(2.0 / math.pi * np.arcsin(np.sqrt(values / t)), u)


def beta_a_1ma_cdf(u: ArrayLike, alpha: float) -> ArrayLike:
    """The ``Beta(alpha, 1 - alpha)`` distribution function on ``[0, 1]``.

    >>> round(beta_a_1ma_cdf(0.25, 0.5), 12) == round(arcsine_cdf(0.25), 12)
    True

    Raises:
        ValueError:
            If *u* is outside ``[0, 1]``.
    """
    values = _check_unit(u, 1.0)
    return _like(special.betainc(alpha, 1.0 - alpha, values), u)


def half_gaussian_cdf(u: ArrayLike, t: float=1.0) -> ArrayLike:
    """The distribution function ``int_0^u exp(-s^2 / (4t)) / sqrt(pi t) ds = erf(u / (2 sqrt(t)))``.

    >>> round(half_gaussian_cdf(2.0), 7)
    0.8427008

    Raises:
        ValueError:
            If *t* is not positive.
    """
    if not t > 0:
        raise ValueError("The time must be positive, got {!r}".format(t))
    values = np.maximum(np.asarray(u, dtype=float), 0.0)
    return _like(special.erf(values / (2.0 * math.sqrt(t))), u)


def half_gaussian_density(u: ArrayLike, t: float=1.0) -> ArrayLike:
    """The density ``exp(-u^2 / (4t)) / sqrt(pi t)`` of ``L(t)`` on ``u >= 0``, zero below.

    Raises:
        ValueError:
            If *t* is not positive.
    """
    if not t > 0:
        raise ValueError("The time must be positive, got {!r}".format(t))
    values = np.asarray(u, dtype=float)
    density = np.exp(-values**2 / (4.0 * t)) / math.sqrt(math.pi * t)
    return _like(np.where(values >= 0, density, 0.0), u)


def _denominator(s, alpha: float, p: float):
    # |p (1-s)^alpha + (1-p) s^alpha e^(i alpha pi)|^2 > 0
    a = (1.0 - s)**alpha
    b = s**alpha
    return p * p * a * a + (1.0 - p)**2 * b * b + 2.0 * p * (1.0 - p) * a * b * math.cos(alpha * math.pi)


def _check_law(alpha: float, p: float):
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1), got {!r}".format(alpha))
    if not 0 < p < 1:
        raise ValueError("p must lie in (0, 1), got {!r}".format(p))


def lamperti_density(x: ArrayLike, alpha: float, p: float) -> ArrayLike:
    """Density of the occupation fraction ``Z_1(t) / t`` of a ray with weight *p*.

    The density is ``sin(alpha pi) / pi * p (1 - p) x^(alpha - 1) (1 - x)^(alpha - 1)`` divided by
    ``p^2 (1 - x)^(2 alpha) + (1 - p)^2 x^(2 alpha) + 2 p (1 - p) x^alpha (1 - x)^alpha cos(alpha pi)``.

    Raises:
        EndpointSingularity:
            At ``x = 0`` and ``x = 1``.
    """
    _check_law(alpha, p)
    values = np.asarray(x, dtype=float)
    if np.any((values <= 0) | (values >= 1)):
        raise EndpointSingularity("The occupation fraction density is unbounded at 0 and 1")
    numerator = math.sin(alpha * math.pi) / math.pi * p * (1.0 - p) * (values * (1.0 - values))**(alpha - 1.0)
    return _like(numerator / _denominator(values, alpha, p), x)


def lamperti_cdf(x: ArrayLike, alpha: float, p: float) -> ArrayLike:
    """Distribution function of :func:`lamperti_density`, by quadrature with algebraic endpoint weights.

    >>> round(lamperti_cdf(0.25, 0.5, 0.5), 10) == round(arcsine_cdf(0.25), 10)
    True
    """
    _check_law(alpha, p)
    values = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any((values < 0) | (values > 1)):
        raise ValueError("Arguments must lie in [0, 1]")
    factor = math.sin(alpha * math.pi) / math.pi * p * (1.0 - p)

    def integrand(s):
        return factor / _denominator(s, alpha, p)

    result = np.empty_like(values)
    for k, value in enumerate(values):
        if value <= 0 or value >= 1:
            result[k] = float(value >= 1)
            continue
        if value <= 0.5:
            mass = integrate.quad(lambda s: integrand(s) * (1.0 - s)**(alpha - 1.0), 0.0, value, weight='alg',
                                  wvar=(alpha - 1.0, 0.0))[0]
        else:
            mass = 1.0 - integrate.quad(lambda s: integrand(s) * s**(alpha - 1.0), value, 1.0, weight='alg',
                                        wvar=(0.0, alpha - 1.0))[0]
        result[k] = min(max(mass, 0.0), 1.0)
    return _like(result, x)


def lamperti_zg_cdf(x: ArrayLike, alpha: float, p: float) -> ArrayLike:
    """Distribution function of the fraction ``Z_1(G) / G`` at the last zero for a ray with weight *p*.

    The distribution function is

        ``sin(alpha pi) / pi * int_0^x (1 - p) (x - s)^(alpha - 1) s^alpha / den(s) ds``

    with the denominator of :func:`lamperti_density`. The factors ``s^alpha`` and ``(x - s)^(alpha - 1)`` are
    integrated exactly as algebraic weights of the quadrature rule.

    >>> round(lamperti_zg_cdf(0.4, 0.5, 0.5), 8)
    0.4

    Raises:
        ValueError:
            If *x* is outside ``[0, 1]`` or a parameter is out of range.
    """
    _check_law(alpha, p)
    values = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any((values < 0) | (values > 1)):
        raise ValueError("Arguments must lie in [0, 1]")
    factor = math.sin(alpha * math.pi) / math.pi * (1.0 - p)
    result = np.empty_like(values)
    for k, value in enumerate(values):
        if value <= 0:
            result[k] = 0.0
            continue
        integral = integrate.quad(lambda s: factor / _denominator(s, alpha, p), 0.0, value, weight='alg',
                                  wvar=(alpha, alpha - 1.0))[0]
        result[k] = min(max(integral, 0.0), 1.0)
    return _like(result, x)


def lamperti_zg_density(x: ArrayLike, alpha: float, p: float) -> ArrayLike:
    """Density of the fraction ``Z_1(G) / G`` at the last zero.

    For ``alpha = 1/2`` the density is ``p (1 - p) / 2 * ((1 - 2p) x + p^2)^(-3/2)``; otherwise it is the central
    difference quotient of :func:`lamperti_zg_cdf`.

    >>> round(lamperti_zg_density(0.0, 0.5, 0.25), 12)
    6.0

    Raises:
        EndpointSingularity:
            At ``x = 0`` or ``x = 1`` when ``alpha != 1/2``.
    """
    _check_law(alpha, p)
    values = np.asarray(x, dtype=float)
    if np.any((values < 0) | (values > 1)):
        raise ValueError("Arguments must lie in [0, 1]")
    if alpha == 0.5:
        return _like(p * (1.0 - p) / 2.0 * ((1.0 - 2.0 * p) * values + p * p)**-1.5, x)
    if np.any((values <= 0) | (values >= 1)):
        raise EndpointSingularity("The density at the last zero is only evaluated in the open unit interval")
    step = np.minimum(_DIFFERENCE_STEP, 0.5 * np.minimum(values, 1.0 - values))
    upper = np.asarray(lamperti_zg_cdf(values + step, alpha, p))
    lower = np.asarray(lamperti_zg_cdf(values - step, alpha, p))
    return _like((upper - lower) / (2.0 * step), x)
