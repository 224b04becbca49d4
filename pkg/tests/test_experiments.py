# -*- coding: utf-8 -*-
import dataclasses
import math

import numpy as np
import pytest

from intermittency.dynamics.tails import TailReport
from intermittency.harness.config import ExperimentConfig
from intermittency.harness.experiments import (
    StatReport, TestResult, build_setup, draw_initial_point, run_functional_experiment, run_identity_audit,
    run_initial_law_comparison, run_limit_cross_validation, run_marginal_experiment, run_suites, run_tail_experiment,
    simulate_records
)
from intermittency.processes.stable import StableParams

from .utils import SMALL_ENTRIES

SMALL = ExperimentConfig(**SMALL_ENTRIES)


@pytest.fixture(scope='module')
def boole_setup():
    return build_setup(SMALL)


def statistics(report):
    return np.array([result.statistic for result in report])


class TestTestResult:
    # yapf: disable
    @pytest.mark.parametrize(
        '   kind,          statistic, threshold, passed',
        [
            ('ks',         0.01,      0.02,      True),
            ('ks',         0.03,      0.02,      False),
            ('violations', 0,         0,         True),
            ('pvalue',     0.5,       0.01,      True),
            ('pvalue',     0.001,     0.01,      False),
            ('deviation',  math.inf,  0.1,       False),
        ]
    )
    # yapf: enable
    def test_create(self, kind, statistic, threshold, passed):
        result = TestResult.create('x', kind, statistic, threshold, 10)
        assert result.passed is passed
        assert isinstance(result.statistic, float)
        assert result.summary().startswith('PASS' if passed else 'FAIL')

    def test_summary_relation(self):
        assert '>=' in TestResult.create('p', 'pvalue', 0.5, 0.01, 10).summary()
        assert '<=' in TestResult.create('k', 'ks', 0.5, 0.01, 10).summary()


class TestStatReport:
    def report(self):
        report = StatReport('first', [TestResult.create('a', 'ks', 0.01, 0.02, 100)])
        report.add('second', TestResult.create('b', 'pvalue', 0.001, 0.01, 50, censored=3))
        return report

    def test_failures(self):
        report = self.report()
        assert len(report) == 2
        assert [result.name for result in report.failures] == ['b']
        assert not report.passed
        assert StatReport('empty').passed

    def test_extend(self):
        report = StatReport('x').extend(self.report())
        assert len(report) == 2
        assert report.summary_lines()[0].startswith('[first] PASS a')
        assert report.summary_lines()[1].startswith('[second] FAIL b')

    def test_csv(self, tmp_path):
        path = str(tmp_path / 'report.csv')
        self.report().to_csv(path)
        with open(path) as handle:
            lines = handle.read().splitlines()
        assert lines[0] == ','.join(StatReport.FIELDS)
        assert len(lines) == 3
        assert lines[2].startswith('second,b,pvalue,50,')

    def test_jsonl(self, tmp_path):
        path = str(tmp_path / 'report.jsonl')
        report = self.report()
        report.to_jsonl(path)
        restored = StatReport.from_jsonl(path)
        assert list(restored.rows()) == list(report.rows())
        assert not restored.passed

    @pytest.mark.parametrize('line', ['{"foo": 1}', '[1, 2]', 'not json'])
    def test_bad_jsonl(self, tmp_path, line):
        path = tmp_path / 'bad.jsonl'
        path.write_text(line + '\n')
        with pytest.raises(ValueError):
            StatReport.from_jsonl(str(path))


class TestSetup:
    def test_boole(self, boole_setup):
        assert boole_setup.params.alpha == 0.5
        assert boole_setup.params.beta == pytest.approx((0.5, 0.5))
        assert boole_setup.mu_y == pytest.approx(math.sqrt(2.0))
        assert boole_setup.normalizer(2 * math.pi) == pytest.approx(math.sqrt(2.0))

    def test_uniform_initial_point(self, boole_setup, rng):
        points = [draw_initial_point(boole_setup, 'uniform', rng) for _ in range(100)]
        assert all(0 <= x <= 1 for x in points)

    def test_mu_y_initial_point(self, boole_setup, rng):
        for _ in range(20):
            assert boole_setup.partition.label(draw_initial_point(boole_setup, 'mu_y', rng)) == 0

    def test_unknown_initial_point(self, boole_setup, rng):
        with pytest.raises(ValueError):
            draw_initial_point(boole_setup, 'gaussian', rng)


class TestSimulateRecords:
    def test_shapes(self, boole_setup):
        records = simulate_records(boole_setup, [0, 1000, 2000])
        assert records.s_a.shape == (SMALL.replicas, 3, 2)
        assert records.s_y.shape == records.g_y.shape == records.d_y.shape == (SMALL.replicas, 3)
        np.testing.assert_array_equal(records.s_a.sum(axis=2) + records.s_y, np.tile([0, 1000, 2000], (20, 1)))

    def test_worker_independence(self, boole_setup):
        single = simulate_records(boole_setup, [SMALL.n], workers=1)
        pooled = simulate_records(boole_setup, [SMALL.n], workers=2)
        for first, second in zip(single, pooled):
            np.testing.assert_array_equal(first, second)


class TestExperiments:
    def test_identity_audit(self, boole_setup):
        report = run_identity_audit(SMALL, boole_setup)
        assert len(report) == 2
        assert report.passed

    def test_marginal(self, boole_setup):
        report = run_marginal_experiment(SMALL, boole_setup, workers=1)
        results = {result.name: result for result in report}
        assert results['occupation decomposition'].passed
        assert 'joint Laplace transform' in results
        assert 'S_Y/(b_n mu(Y)) local time' in results
        assert 'S_A1(G_Y)/G_Y fraction at last visit' in results
        assert results['b_2n / (2^alpha b_n)'].statistic == pytest.approx(0.0, abs=1e-12)

    def test_marginal_reproducible(self, boole_setup):
        first = run_marginal_experiment(SMALL, boole_setup, workers=1)
        second = run_marginal_experiment(SMALL, boole_setup, workers=2)
        np.testing.assert_array_equal(statistics(first), statistics(second))

    def test_functional(self, boole_setup):
        report = run_functional_experiment(SMALL, boole_setup, workers=1)
        results = {result.name: result for result in report}
        assert results['t=0: all statistics'].passed
        assert results['t=0.5: occupation decomposition'].passed
        assert results['t=1: occupation decomposition'].passed
        assert 'S_A1 increment on [0.5, 1]' in results
        assert 'S_Y increment on [0, 0.5]' in results

    def test_initial_law(self, boole_setup):
        report = run_initial_law_comparison(SMALL, boole_setup, workers=1)
        assert len(report) == 4
        assert all(result.kind == 'pvalue' and 0 <= result.statistic <= 1 for result in report)

    def test_tails(self, boole_setup):
        config = dataclasses.replace(SMALL, tail_returns=2 * 10**4)
        report, tails = run_tail_experiment(config, boole_setup)
        assert isinstance(tails, TailReport)
        assert [result.name for result in report] == ['alpha log-log estimate', 'beta_1 estimate', 'beta_2 estimate']
        assert tails.records > 10**4

    def test_limits(self):
        report = run_limit_cross_validation(SMALL, StableParams(0.5, (0.5, 0.5)))
        names = [result.name for result in report]
        assert len(names) == 8
        assert sum('exact vs subordinators' in name for name in names) == 4
        assert sum('diffusion vs subordinators' in name for name in names) == 4
        diffusion = {result.name: result for result in report}['D(1) diffusion vs subordinators']
        assert diffusion.size == SMALL.bessel_paths
        assert 0 <= diffusion.censored < SMALL.bessel_paths
        assert 0 <= diffusion.statistic <= 1

    def test_suites(self):
        report = run_suites(SMALL, ['identities'])
        assert [experiment for experiment, _ in report.entries] == ['identities', 'identities']
        assert report.passed

    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            run_suites(SMALL, ['nope'])


@pytest.mark.slow
def test_marginal_laws():
    config = dataclasses.replace(SMALL, n=10**5, replicas=2000, limit_samples=10**4)
    report = run_marginal_experiment(config)
    assert report.passed, '\n'.join(report.summary_lines())
