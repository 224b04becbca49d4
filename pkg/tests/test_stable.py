# -*- coding: utf-8 -*-
import csv
import math

import numpy as np
import pytest
from scipy import integrate, stats

from intermittency.errors import EffectiveSampleSizeLow
from intermittency.harness.statistics import ks_statistic
from intermittency.processes import stable
from intermittency.processes.laws import arcsine_cdf, half_gaussian_cdf, lamperti_cdf
from intermittency.processes.stable import (
    LimitSample, StableParams, gd_joint_density, sample_gd_pair, sample_lamperti_joint, sample_one_sided_stable,
    sample_zg_joint
)

BOOLE_PARAMS = StableParams(0.5, (0.5, 0.5))


class TestStableParams:
    def test_normalized(self):
        params = StableParams(0.3, [0.25, 0.25, 0.5])
        assert params.d == 3
        assert params.beta == (0.25, 0.25, 0.5)
        assert params.weights.tolist() == [0.25, 0.25, 0.5]

    # yapf: disable
    @pytest.mark.parametrize(
        '   alpha,  beta',
        [
            (0.0,   (0.5, 0.5)),
            (1.0,   (0.5, 0.5)),
            (0.5,   (0.5, 0.6)),
            (0.5,   (1.5, -0.5)),
            (0.5,   ()),
        ]
    )
    # yapf: enable
    def test_invalid(self, alpha, beta):
        with pytest.raises(ValueError):
            StableParams(alpha, beta)

    def test_frozen(self):
        with pytest.raises(AttributeError):
            BOOLE_PARAMS.alpha = 0.3


class TestOneSidedStable:
    @pytest.mark.parametrize('alpha, beta_j', [(0.5, 0.5), (0.3, 1.0), (0.8, 0.25)])
    def test_laplace_transform(self, alpha, beta_j):
        xi = sample_one_sided_stable(alpha, beta_j, np.random.default_rng(3), 20000)
        assert np.all(xi > 0)
        for lam in (0.5, 1.0, 2.0):
            expected = math.exp(-beta_j * lam**alpha)
            assert np.mean(np.exp(-lam * xi)) == pytest.approx(expected, abs=0.015)

    def test_levy_law(self):
        xi = sample_one_sided_stable(0.5, 1.0, np.random.default_rng(4), 10000)
        assert ks_statistic(xi, stats.levy(scale=0.5).cdf) < 0.03

    def test_scalar(self, rng):
        assert isinstance(sample_one_sided_stable(0.5, 1.0, rng), float)
        assert sample_one_sided_stable(0.5, 0.0, rng, 3).tolist() == [0.0, 0.0, 0.0]

    @pytest.mark.parametrize('alpha, beta_j', [(0.5, -0.1), (1.0, 0.5), (0.0, 0.5)])
    def test_invalid(self, alpha, beta_j, rng):
        with pytest.raises(ValueError):
            sample_one_sided_stable(alpha, beta_j, rng)


class TestLampertiJoint:
    @pytest.fixture(scope='class')
    def sample(self):
        return sample_lamperti_joint(BOOLE_PARAMS, np.random.default_rng(5), 10000)

    def test_structure(self, sample):
        assert sample.z.shape == (10000, 2)
        assert np.allclose(sample.z.sum(axis=1), 1.0)
        assert sample.g is None and sample.zg is None
        assert len(sample) == 10000

    def test_arcsine_fraction(self, sample):
        assert ks_statistic(sample.z[:, 0], arcsine_cdf) < 0.03

    def test_half_gaussian_local_time(self, sample):
        assert ks_statistic(sample.l, half_gaussian_cdf) < 0.03

    def test_asymmetric_weights(self):
        params = StableParams(0.6, (0.2, 0.8))
        sample = sample_lamperti_joint(params, np.random.default_rng(6), 5000)
        assert ks_statistic(sample.z[:, 0], lambda x: lamperti_cdf(x, 0.6, 0.2)) < 0.035


class TestLastZero:
    def test_beta_law(self):
        g, dv = sample_gd_pair(StableParams(0.3, (1.0, )), 2.0, np.random.default_rng(7), 10000)
        assert np.all((g >= 0) & (g <= 2) & (dv > 2))
        assert ks_statistic(g / 2.0, stats.beta(0.3, 0.7).cdf) < 0.03

    def test_pareto_excess(self):
        alpha = 0.5
        g, dv = sample_gd_pair(BOOLE_PARAMS, 1.0, np.random.default_rng(8), 10000)
        uniform = ((dv - g) / (1.0 - g))**-alpha
        assert ks_statistic(uniform, stats.uniform.cdf) < 0.03

    @pytest.mark.parametrize('t', [0.0, -1.0])
    def test_invalid_time(self, t, rng):
        with pytest.raises(ValueError):
            sample_gd_pair(BOOLE_PARAMS, t, rng)

    def test_density_support(self):
        values = gd_joint_density([0.5, 0.0, 1.5, 0.5], [2.0, 2.0, 2.0, 0.9], 1.0, 0.5)
        assert values[0] > 0
        assert values[1:].tolist() == [0.0, 0.0, 0.0]

    @pytest.mark.parametrize('u', [0.1, 0.5, 0.8])
    def test_density_marginal(self, u):
        alpha = 0.4
        marginal = integrate.quad(lambda v: float(gd_joint_density(u, v, 1.0, alpha)), 1.0, math.inf)[0]
        assert marginal == pytest.approx(stats.beta(alpha, 1 - alpha).pdf(u), rel=1e-4)


class TestZGJoint:
    @pytest.fixture(scope='class')
    def sample(self):
        return sample_zg_joint(BOOLE_PARAMS, np.random.default_rng(9), 10000)

    def test_structure(self, sample):
        assert np.allclose(sample.z.sum(axis=1), 1.0)
        assert np.allclose(sample.zg.sum(axis=1), 1.0)
        assert set(np.unique(sample.ray)) <= {1, 2}
        straddling = np.eye(2)[sample.ray - 1]
        expected = sample.g[:, None] * sample.zg + (1 - sample.g)[:, None] * straddling
        assert np.allclose(sample.z, expected)

    def test_fraction_matches_lamperti(self, sample):
        assert ks_statistic(sample.z[:, 0], arcsine_cdf) < 0.03

    def test_local_time_matches_lamperti(self, sample):
        assert ks_statistic(sample.l, half_gaussian_cdf) < 0.03

    def test_last_zero(self, sample):
        assert ks_statistic(sample.g, arcsine_cdf) < 0.03

    def test_fraction_at_last_zero(self, sample):
        assert ks_statistic(sample.zg[:, 0], stats.uniform.cdf) < 0.03

    def test_low_effective_sample_size(self, monkeypatch, rng):
        monkeypatch.setattr(stable, 'MIN_ESS', 1.01)
        with pytest.raises(EffectiveSampleSizeLow) as info:
            sample_zg_joint(BOOLE_PARAMS, rng, 100)
        assert 0 < info.value.ess < 1.01


class TestLimitSample:
    def test_to_csv(self, tmp_path):
        sample = sample_zg_joint(StableParams(0.5, (0.2, 0.3, 0.5)), np.random.default_rng(10), 20)
        path = str(tmp_path / 'limits.csv')
        sample.to_csv(path)
        with open(path, newline='') as handle:
            rows = list(csv.reader(handle))
        assert rows[0] == ['z1', 'z2', 'z3', 'l', 'g', 'd', 'zg1', 'zg2', 'zg3']
        assert len(rows) == 21
        assert float(rows[1][4]) == pytest.approx(sample.g[0])

    def test_incomplete(self, tmp_path):
        sample = sample_lamperti_joint(BOOLE_PARAMS, np.random.default_rng(11), 5)
        with pytest.raises(ValueError):
            sample.to_csv(str(tmp_path / 'limits.csv'))

    def test_empty(self):
        assert len(LimitSample()) == 0
