# -*- coding: utf-8 -*-
import math

from hypothesis import given
import hypothesis.strategies as st
import numpy as np
import pytest
from scipy import integrate, special

from intermittency.errors import EndpointSingularity
from intermittency.processes.laws import (
    arcsine_cdf, beta_a_1ma_cdf, half_gaussian_cdf, half_gaussian_density, lamperti_cdf, lamperti_density,
    lamperti_zg_cdf, lamperti_zg_density, mittag_leffler_laplace, mittag_leffler_moment
)

unit_points = st.floats(min_value=0.01, max_value=0.99)


class TestMittagLeffler:
    @pytest.mark.parametrize('lam', [0.1, 1.0, 3.0, 5.0, 10.0, 50.0])
    def test_half_order(self, lam):
        assert mittag_leffler_laplace(lam, 1.0, 0.5) == pytest.approx(special.erfcx(lam), rel=1e-6)

    def test_time_scaling(self):
        assert mittag_leffler_laplace(1.0, 4.0, 0.5) == pytest.approx(special.erfcx(2.0), rel=1e-9)

    def test_exponential(self):
        lam = np.array([0.0, 0.5, 2.0])
        assert np.allclose(mittag_leffler_laplace(lam, 2.0, 1.0), np.exp(-2.0 * lam))

    def test_vectorized(self):
        values = mittag_leffler_laplace(np.array([0.0, 1.0, 100.0]), 1.0, 0.3)
        assert values.shape == (3, )
        assert values[0] == 1.0
        assert 0 < values[2] < values[1] < 1

    def test_series_and_integral_agree(self):
        below = mittag_leffler_laplace(3.7, 1.0, 0.5)
        above = mittag_leffler_laplace(3.72, 1.0, 0.5)
        assert below > above
        assert below - above == pytest.approx(special.erfcx(3.7) - special.erfcx(3.72), rel=1e-4)

    # yapf: disable
    @pytest.mark.parametrize(
        '   lam,    t,      alpha',
        [
            (-1.0,  1.0,    0.5),
            (1.0,   -1.0,   0.5),
            (1.0,   1.0,    0.0),
            (1.0,   1.0,    1.5),
        ]
    )
    # yapf: enable
    def test_invalid(self, lam, t, alpha):
        with pytest.raises(ValueError):
            mittag_leffler_laplace(lam, t, alpha)

    @pytest.mark.parametrize('n', [1, 2, 3])
    def test_moments(self, n):
        moment = integrate.quad(lambda u: u**n * half_gaussian_density(u), 0, math.inf)[0]
        assert mittag_leffler_moment(n, 0.5) == pytest.approx(moment, rel=1e-8)

    def test_moment_values(self):
        assert mittag_leffler_moment(1, 0.5) == pytest.approx(2 / math.sqrt(math.pi))
        assert mittag_leffler_moment(2, 0.5) == pytest.approx(2.0)
        assert mittag_leffler_moment(3, 1.0) == pytest.approx(1.0)


class TestClassicalLaws:
    @given(st.floats(min_value=0.0, max_value=1.0))
    def test_arcsine_is_beta(self, u):
        assert beta_a_1ma_cdf(u, 0.5) == pytest.approx(arcsine_cdf(u), abs=1e-12)

    def test_arcsine_scaling(self):
        assert arcsine_cdf(0.5, 2.0) == pytest.approx(0.5)
        assert np.allclose(arcsine_cdf(np.array([0.0, 2.0]), 2.0), [0.0, 1.0])

    @pytest.mark.parametrize('u, t', [(1.5, 1.0), (-0.1, 1.0), (0.5, 0.0)])
    def test_arcsine_invalid(self, u, t):
        with pytest.raises(ValueError):
            arcsine_cdf(u, t)

    def test_beta_invalid(self):
        with pytest.raises(ValueError):
            beta_a_1ma_cdf(1.1, 0.3)

    @pytest.mark.parametrize('u, t', [(0.5, 1.0), (2.0, 1.0), (1.0, 3.0)])
    def test_half_gaussian(self, u, t):
        mass = integrate.quad(lambda s: half_gaussian_density(s, t), 0, u)[0]
        assert half_gaussian_cdf(u, t) == pytest.approx(mass, rel=1e-9)

    def test_half_gaussian_negative(self):
        assert half_gaussian_cdf(-1.0) == 0.0
        assert half_gaussian_density(-1.0) == 0.0
        with pytest.raises(ValueError):
            half_gaussian_cdf(1.0, 0.0)
        with pytest.raises(ValueError):
            half_gaussian_density(1.0, -1.0)


class TestLamperti:
    def test_arcsine_case(self):
        x = np.array([0.1, 0.25, 0.5, 0.9])
        assert np.allclose(lamperti_cdf(x, 0.5, 0.5), arcsine_cdf(x), atol=1e-10)

    @pytest.mark.parametrize('x', [0.1, 0.4, 0.5, 0.6, 0.95])
    def test_density_is_derivative(self, x):
        h = 1e-4
        slope = (lamperti_cdf(x + h, 0.3, 0.7) - lamperti_cdf(x - h, 0.3, 0.7)) / (2 * h)
        assert slope == pytest.approx(lamperti_density(x, 0.3, 0.7), rel=1e-4)

    @given(unit_points, st.floats(min_value=0.05, max_value=0.95))
    def test_symmetry(self, x, p):
        assert lamperti_cdf(x, 0.4, p) + lamperti_cdf(1 - x, 0.4, 1 - p) == pytest.approx(1.0, abs=1e-8)

    def test_endpoints(self):
        assert lamperti_cdf(np.array([0.0, 1.0]), 0.3, 0.2).tolist() == [0.0, 1.0]
        with pytest.raises(EndpointSingularity):
            lamperti_density(0.0, 0.3, 0.2)
        with pytest.raises(EndpointSingularity):
            lamperti_density([0.5, 1.0], 0.3, 0.2)

    # yapf: disable
    @pytest.mark.parametrize(
        '   x,      alpha,  p',
        [
            (0.5,   0.0,    0.5),
            (0.5,   1.0,    0.5),
            (0.5,   0.5,    0.0),
            (0.5,   0.5,    1.0),
            (1.5,   0.5,    0.5),
        ]
    )
    # yapf: enable
    def test_invalid(self, x, alpha, p):
        with pytest.raises(ValueError):
            lamperti_cdf(x, alpha, p)


class TestLampertiAtLastZero:
    @pytest.mark.parametrize('x', [0.0, 0.1, 0.5, 0.9, 1.0])
    def test_closed_form(self, x):
        p = 0.25
        expected = p * (1 - p) / (1 - 2 * p) * (1 / p - ((1 - 2 * p) * x + p * p)**-0.5)
        assert lamperti_zg_cdf(x, 0.5, p) == pytest.approx(expected, rel=1e-7, abs=1e-12)

    def test_uniform_case(self):
        x = np.linspace(0, 1, 11)
        assert np.allclose(lamperti_zg_cdf(x, 0.5, 0.5), x, atol=1e-8)
        assert np.allclose(lamperti_zg_density(x, 0.5, 0.5), 1.0)

    @pytest.mark.parametrize('alpha, p', [(0.3, 0.4), (0.7, 0.2), (0.5, 0.9)])
    def test_normalized(self, alpha, p):
        assert lamperti_zg_cdf(1.0, alpha, p) == pytest.approx(1.0, abs=1e-6)

    def test_density_is_derivative(self):
        x = np.array([0.2, 0.5, 0.8])
        density = lamperti_zg_density(x, 0.3, 0.4)
        h = 1e-3
        slope = (lamperti_zg_cdf(x + h, 0.3, 0.4) - lamperti_zg_cdf(x - h, 0.3, 0.4)) / (2 * h)
        assert np.allclose(density, slope, rtol=1e-3)

    def test_endpoints(self):
        assert lamperti_zg_density(0.0, 0.5, 0.25) == pytest.approx(6.0)
        with pytest.raises(EndpointSingularity):
            lamperti_zg_density(0.0, 0.3, 0.4)
        with pytest.raises(ValueError):
            lamperti_zg_cdf(-0.1, 0.3, 0.4)
