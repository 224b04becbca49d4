# -*- coding: utf-8 -*-
import csv
import math

import numpy as np
import pytest

from intermittency.errors import HorizonExceeded
from intermittency.processes.bessel import (
    besq_step, c_alpha, occupation_from_subordinators, sample_skew_functionals, sample_subordinator_functionals,
    simulate_skew_path, subordinator_paths
)
from intermittency.processes.stable import StableParams

BOOLE_PARAMS = StableParams(0.5, (0.5, 0.5))


def test_c_alpha():
    assert c_alpha(0.5) == pytest.approx(math.sqrt(2))
    assert c_alpha(0.25) == pytest.approx(2**0.25 * math.gamma(0.25) / math.gamma(0.75))


class TestSquaredBessel:
    @pytest.mark.parametrize('x, alpha', [(1.0, 0.5), (0.0, 0.3), (0.2, 0.8)])
    def test_mean(self, x, alpha):
        dt = 0.01
        values = besq_step(np.full(100000, x), dt, alpha, np.random.default_rng(12))
        assert np.all(values >= 0)
        assert values.mean() == pytest.approx(x + (2 - 2 * alpha) * dt, abs=0.003)

    def test_scalar(self, rng):
        assert isinstance(besq_step(0.5, 0.01, 0.5, rng), float)

    @pytest.mark.parametrize('x, dt', [(1.0, 0.0), (1.0, -0.1), (-1.0, 0.1)])
    def test_invalid(self, x, dt, rng):
        with pytest.raises(ValueError):
            besq_step(x, dt, 0.5, rng)


class TestSubordinators:
    def test_laplace_transform(self):
        rng = np.random.default_rng(13)
        paths = [subordinator_paths(BOOLE_PARAMS, 1.0, rng) for _ in range(2000)]
        single = np.array([path.eta(1).ends[-1] for path in paths])
        total = np.array([path.total.ends[-1] for path in paths])
        assert np.mean(np.exp(-single)) == pytest.approx(math.exp(-0.5), abs=0.03)
        assert np.mean(np.exp(-total)) == pytest.approx(math.exp(-1.0), abs=0.03)

    def test_drift(self):
        path = subordinator_paths(StableParams(0.5, (0.25, 0.75)), 2.0, np.random.default_rng(14), j_min=0.01)
        expected = 0.5 * 0.01**0.5 / (0.5 * math.sqrt(math.pi))
        assert path.drifts == pytest.approx([0.25 * expected, 0.75 * expected])
        assert path.eta(1).slopes[0] == pytest.approx(0.25 * expected)
        assert path.eta(1).horizon == 2.0

    def test_extended(self):
        path = subordinator_paths(BOOLE_PARAMS, 1.0, np.random.default_rng(15))
        longer = path.extended(np.random.default_rng(16))
        assert longer.s_max == 2.0
        grid = np.linspace(0, 0.99, 50)
        assert np.allclose(longer.eta(1)(grid), path.eta(1)(grid))
        assert longer.total.ends[-1] >= path.total.ends[-1]

    @pytest.mark.parametrize('s_max, j_min', [(0.0, None), (1.0, 0.0), (-1.0, 0.1)])
    def test_invalid(self, s_max, j_min, rng):
        with pytest.raises(ValueError):
            subordinator_paths(BOOLE_PARAMS, s_max, rng, j_min)


class TestSubordinatorOccupation:
    @pytest.fixture
    def path(self):
        return subordinator_paths(BOOLE_PARAMS, 4.0, np.random.default_rng(17))

    def test_occupation_adds_up(self, path):
        times = [0.25, 0.5, 1.0]
        limit = occupation_from_subordinators(path, times)
        assert np.allclose(limit.z.sum(axis=1), times)
        assert np.all(limit.z >= 0)
        assert np.all((limit.g <= limit.times) & (limit.times <= limit.dv))
        assert np.all(np.diff(limit.l) >= 0)

    def test_single_ray(self):
        path = subordinator_paths(StableParams(0.5, (1.0, 0.0)), 4.0, np.random.default_rng(18))
        limit = occupation_from_subordinators(path, [0.5, 1.0])
        assert np.allclose(limit.z[:, 0], [0.5, 1.0])
        assert np.all(limit.z[:, 1] == 0)

    def test_beyond_horizon(self, path):
        with pytest.raises(HorizonExceeded):
            occupation_from_subordinators(path, [1e12])

    def test_sampled_functionals(self):
        samples = sample_subordinator_functionals(BOOLE_PARAMS, [0.5, 2.0], np.random.default_rng(19), 5)
        assert len(samples) == 5
        for limit in samples:
            assert np.allclose(limit.z.sum(axis=1), [0.5, 2.0])


class TestSkewPath:
    @pytest.fixture(scope='class')
    def path(self):
        return simulate_skew_path(BOOLE_PARAMS, 1e-3, 0.05, 1.0, np.random.default_rng(20))

    def test_tags(self, path):
        above = path.values > path.eps
        assert np.all(path.ray_tags[~above] == 0)
        assert np.all(np.isin(path.ray_tags[above], [1, 2]))
        same_run = above[1:] & above[:-1]
        assert np.all(path.ray_tags[1:][same_run] == path.ray_tags[:-1][same_run])

    def test_local_time(self, path):
        local_time = path.local_time
        assert local_time[0] == 0.0
        assert np.all(np.diff(local_time) >= 0)
        assert path.times.size == path.values.size == 1001

    def test_functionals(self, path):
        functionals = path.functionals(0.5, 2)
        assert functionals.z.shape == (1, 2)
        assert functionals.z.sum() <= 0.5 + 1e-12
        assert functionals.g[0] <= 0.5
        assert np.isnan(functionals.dv[0]) or functionals.dv[0] >= 0.5
        assert (functionals.g[0] == functionals.dv[0]) == (path.values[500] <= path.eps)
        with pytest.raises(HorizonExceeded):
            path.functionals(2.0, 2)

    def test_to_csv(self, path, tmp_path):
        target = str(tmp_path / 'bessel_path.csv')
        path.to_csv(target)
        with open(target, newline='') as handle:
            rows = list(csv.reader(handle))
        assert rows[0] == ['t', 'modulus', 'ray', 'L']
        assert len(rows) == 1002

    # yapf: disable
    @pytest.mark.parametrize(
        '   dt,     eps',
        [
            (0.01,  0.05),
            (0.0,   0.05),
            (1e-4,  0.0),
        ]
    )
    # yapf: enable
    def test_invalid(self, dt, eps, rng):
        with pytest.raises(ValueError):
            simulate_skew_path(BOOLE_PARAMS, dt, eps, 1.0, rng)
        with pytest.raises(ValueError):
            sample_skew_functionals(BOOLE_PARAMS, dt, eps, 1.0, rng, 10)


class TestSkewFunctionals:
    def test_shapes_and_bounds(self):
        dt, eps = 1e-3, 0.05
        functionals = sample_skew_functionals(BOOLE_PARAMS, dt, eps, 1.0, np.random.default_rng(21), 200)
        assert functionals.z.shape == (200, 2)
        assert np.all(functionals.g <= 1.0)
        resolved = ~np.isnan(functionals.dv)
        assert np.all(functionals.dv[resolved] >= 1.0)
        at_zero = functionals.g == 1.0
        assert np.all(functionals.dv[at_zero] == 1.0)
        assert np.all(functionals.g[functionals.dv > 1.0] < 1.0)
        factor = (2 - 2 * 0.5) / (c_alpha(0.5) * eps**(2 - 2 * 0.5))
        steps = math.floor(1.0 / dt)
        assert np.allclose(functionals.z.sum(axis=1) + functionals.l / factor, steps * dt)

    def test_first_zero_at_the_sample_time(self, rng):
        # with a threshold far above the modulus every path sits at zero at t
        functionals = sample_skew_functionals(BOOLE_PARAMS, 1e-3, 10.0, 1.0, rng, 50)
        assert np.all(functionals.g == 1.0)
        assert np.all(functionals.dv == 1.0)
        path = simulate_skew_path(BOOLE_PARAMS, 1e-3, 10.0, 1.0, rng)
        single = path.functionals(0.5, 2)
        assert single.g[0] == single.dv[0] == 0.5
