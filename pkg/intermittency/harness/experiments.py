# -*- coding: utf-8 -*-
"""Monte Carlo experiments comparing scaled occupation statistics of orbits with their limit laws.

Every experiment returns a :class:`StatReport` with one :class:`TestResult` per comparison. A result records the
statistic next to its threshold, so reports are self-contained; they carry no timing information and are identical
for identical configurations. The thresholds are pilot calibrated.

The suites are

``identities``
    Exact bookkeeping identities of simulated orbits (zero tolerance).
``marginal``
    Laws of the scaled occupation vector at time ``n``.
``functional``
    Marginals at every time of ``experiment.t_grid`` and increments against the subordinator construction.
``initial-law``
    Two-sample comparison of the uniform initial law with ``mu_Y``.
``tails``
    Recovery of ``alpha`` and ``beta`` from the excursion lengths.
``limits``
    Cross validation of the exact limit sampler with the two skew Bessel constructions.
"""
import csv
import dataclasses
import json
import logging
import math
from typing import Callable, Dict, Iterator, List, NamedTuple, Optional, Sequence

import numpy as np

from ..dynamics.inducing import ExitTable, excursion_trace, iter_excursions
from ..dynamics.maps import IntermittentMapSpec, make_thaler_family
from ..dynamics.occupation import (
    OccupationRecord, OrbitConfig, occupation_from_excursions, occupation_from_labels, occupation_step_functions,
    orbit, trace_from_labels
)
from ..dynamics.partition import RaysPartition, build_partition, window_partition
from ..dynamics.tails import estimate_invariant_density, predicted_parameters, sample_mu_y, tail_statistics
from ..processes.bessel import sample_skew_functionals, sample_subordinator_functionals
from ..processes.cadlag import williams_discrete_check
from ..processes.laws import (
    beta_a_1ma_cdf, half_gaussian_cdf, lamperti_cdf, lamperti_zg_cdf, mittag_leffler_laplace
)
from ..processes.stable import StableParams, sample_zg_joint
from ..utils import replica_generator
from .config import ExperimentConfig, SUITES
from .parallel import run_replicas
from .statistics import empirical_laplace, ks_statistic, laplace_mismatch, two_sample_ks

__all__ = [
    'TestResult', 'StatReport', 'ExperimentSetup', 'build_setup', 'draw_initial_point', 'simulate_records',
    'run_identity_audit', 'run_marginal_experiment', 'run_functional_experiment', 'run_initial_law_comparison',
    'run_tail_experiment', 'run_limit_cross_validation', 'run_suites'
]

logger = logging.getLogger(__name__)

_REFERENCE_STREAM = 2**31 - 1
"""Replica index reserved for the reference samples of the limit laws."""


class TestResult(NamedTuple):
    """The outcome of one comparison.

    Attributes:
        name: What is compared.
        kind: ``'ks'``, ``'laplace'``, ``'pvalue'``, ``'deviation'`` or ``'violations'``.
        statistic: The observed value.
        threshold: The bound it is compared with. For ``'pvalue'`` results the statistic must not be smaller, for
            all others not larger.
        size: Number of samples.
        passed: Whether the statistic respects the threshold.
        censored: Number of samples excluded because of censoring.
    """
    __test__ = False

    name: str
    kind: str
    statistic: float
    threshold: float
    size: int
    passed: bool
    censored: int = 0

    @classmethod
    def create(cls, name: str, kind: str, statistic: float, threshold: float, size: int,
               censored: int=0) -> 'TestResult':
        statistic = float(statistic)
        if kind == 'pvalue':
            passed = statistic >= threshold
        else:
            passed = statistic <= threshold
        return cls(name, kind, statistic, float(threshold), int(size), bool(passed), int(censored))

    def summary(self) -> str:
        relation = '>=' if self.kind == 'pvalue' else '<='
        return '{} {} {:.6g} {} {:.6g} (N={}, censored={})'.format(
            'PASS' if self.passed else 'FAIL', self.name, self.statistic, relation, self.threshold, self.size,
            self.censored
        )


class StatReport:
    """An ordered collection of :class:`TestResult` entries of one or more experiments."""

    FIELDS = ('experiment', 'name', 'kind', 'size', 'statistic', 'threshold', 'passed', 'censored')

    def __init__(self, experiment: str, results: Sequence[TestResult]=()):
        self.entries = [(experiment, result) for result in results]

    def __repr__(self):
        return 'StatReport(tests={}, failed={})'.format(len(self), len(self.failures))

    def __len__(self):
        return len(self.entries)

    def __iter__(self) -> Iterator[TestResult]:
        return (result for _, result in self.entries)

    def add(self, experiment: str, result: TestResult) -> None:
        self.entries.append((experiment, result))

    def extend(self, other: 'StatReport') -> 'StatReport':
        self.entries.extend(other.entries)
        return self

    @property
    def failures(self) -> List[TestResult]:
        return [result for result in self if not result.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def rows(self) -> Iterator[Dict[str, object]]:
        for experiment, result in self.entries:
            row = result._asdict()
            row['experiment'] = experiment
            yield {key: row[key] for key in self.FIELDS}

    def summary_lines(self) -> List[str]:
        return ['[{}] {}'.format(experiment, result.summary()) for experiment, result in self.entries]

    def to_csv(self, path: str) -> None:
        with open(path, 'w', newline='') as handle:
            writer = csv.writer(handle)
            writer.writerow(self.FIELDS)
            for row in self.rows():
                writer.writerow([repr(value) if isinstance(value, float) else value for value in row.values()])

    def to_jsonl(self, path: str) -> None:
        """Write one JSON object per test."""
        with open(path, 'w') as handle:
            for row in self.rows():
                handle.write(json.dumps(row, sort_keys=True) + '\n')

    @classmethod
    def from_jsonl(cls, path: str) -> 'StatReport':
        """Read a report written by :meth:`to_jsonl`.

        Raises:
            ValueError:
                If a line is not a test record.
        """
        report = cls('')
        with open(path) as handle:
            for line in handle:
                if not line.strip():
                    continue
                row = json.loads(line)
                try:
                    experiment = row.pop('experiment')
                    report.add(experiment, TestResult(**row))
                except (AttributeError, KeyError, TypeError):
                    raise ValueError("Not a test record: {!r}".format(line.strip())) from None
        return report


class ExperimentSetup(NamedTuple):
    """Everything an experiment derives from the map part of its configuration.

    Attributes:
        config: The configuration.
        spec: The map.
        partition: The partition into rays and junction.
        table: The exit table of the excursions.
        params: The parameters of the limit laws.
        mu_y: The invariant measure of the junction.
        density: The invariant density used to sample ``mu_Y``.
        normalizer: ``m -> b_m mu(Y)``, the normalization of the junction occupation time.
    """
    config: ExperimentConfig
    spec: IntermittentMapSpec
    partition: RaysPartition
    table: ExitTable
    params: StableParams
    mu_y: float
    density: Callable
    normalizer: Callable[[float], float]


def build_setup(config: ExperimentConfig) -> ExperimentSetup:
    """Build the map, its partition and the parameters of the limit laws.

    Maps with a closed form density use :func:`~intermittency.dynamics.tails.predicted_parameters`. For the others
    the parameters and the normalization come from the tails of a trace of ``experiment.tail_returns`` excursions,
    with ``mu(Y) = 1`` as the normalization of the infinite invariant measure.
    """
    family = 'boole' if config.family == 'boole' else 'thaler'
    spec = make_thaler_family(config.d, config.alpha, config.c, family)
    if config.partition == 'window':
        partition = window_partition(spec, config.delta)
    else:
        partition = build_partition(spec)
    table = ExitTable(spec, partition)
    if spec.has_density:
        predicted = predicted_parameters(spec)
        mu_y = partition.junction_measure(spec.density)
        params = predicted.params
        density = spec.density

        def normalizer(m):
            return float(predicted.b_n(m)) * mu_y
    else:
        trace = excursion_trace(spec, partition, partition.junction_point, config.tail_returns,
                                direct_limit=config.direct_limit, table=table)
        tails = tail_statistics(trace, 1.0, alpha=spec.alpha)
        mu_y = 1.0
        params = StableParams(spec.alpha, tuple(tails.beta))
        density = estimate_invariant_density(spec, partition, config.tail_returns, table=table)

        def normalizer(m):
            return float(tails.b_n(int(m)))
    logger.info('Limit parameters alpha=%r beta=%r, mu(Y)=%.6g', params.alpha, params.beta, mu_y)
    return ExperimentSetup(config, spec, partition, table, params, mu_y, density, normalizer)


def draw_initial_point(setup: ExperimentSetup, initial_law: str, rng: np.random.Generator) -> float:
    """Draw an initial point from the uniform law on ``[0, 1]`` or from ``mu_Y``.

    Raises:
        ValueError:
            If the law is unknown.
    """
    if initial_law == 'mu_y':
        return float(sample_mu_y(setup.spec, setup.partition, 1, rng, setup.density)[0])
    if initial_law != 'uniform':
        raise ValueError("Unknown initial law {!r}".format(initial_law))
    point = float(rng.random())
    while point in setup.spec.x:
        point = float(rng.random())
    return point


class _OrbitReplica:
    """Simulate the occupation record of replica ``index``; picklable for worker processes."""

    def __init__(self, setup: ExperimentSetup, initial_law: str, sample_times: Sequence[float],
                 d_horizon: Optional[float]):
        self.setup = setup._replace(normalizer=None)
        self.master_seed = setup.config.master_seed
        self.direct_limit = setup.config.direct_limit
        self.initial_law = initial_law
        self.sample_times = list(sample_times)
        self.d_horizon = d_horizon

    def __call__(self, index: int) -> OccupationRecord:
        rng = replica_generator(self.master_seed, index)
        setup = self.setup
        x0 = draw_initial_point(setup, self.initial_law, rng)
        excursions = iter_excursions(
            setup.spec, setup.partition, x0, direct_limit=self.direct_limit, table=setup.table
        )
        return occupation_from_excursions(excursions, setup.partition.d, self.sample_times, self.d_horizon)


class _Records(NamedTuple):
    s_a: np.ndarray
    s_y: np.ndarray
    g_y: np.ndarray
    d_y: np.ndarray
    s_a_at_g: np.ndarray


def simulate_records(setup: ExperimentSetup, sample_times: Sequence[float], initial_law: Optional[str]=None,
                     workers: Optional[int]=None) -> _Records:
    """Simulate ``experiment.N`` orbits and stack their occupation records, replica index first.

    ``D_Y`` is resolved up to ``(1 + experiment.extension)`` times the last sample time and censored (``nan``)
    beyond.
    """
    config = setup.config
    d_horizon = (1.0 + config.extension) * max(sample_times) if len(sample_times) else None
    task = _OrbitReplica(setup, initial_law or config.initial_law, sample_times, d_horizon)
    records = run_replicas(task, range(config.replicas), workers, config.chunk)
    return _Records(
        np.stack([record.s_a for record in records]), np.stack([record.s_y for record in records]),
        np.stack([record.g_y for record in records]), np.stack([record.d_y for record in records]),
        np.stack([record.s_a_at_g for record in records])
    )


def _pareto_exponent(excess: np.ndarray, limits: np.ndarray) -> float:
    # maximum likelihood for Pareto(alpha) samples on [1, inf) right-censored at the given limits
    observed = ~np.isnan(excess)
    exposure = np.log(excess[observed]).sum() + np.log(limits[~observed]).sum()
    if exposure <= 0:
        return math.inf
    return float(np.count_nonzero(observed) / exposure)


def _marginal_tests(setup: ExperimentSetup, records: _Records, k: int, t: float, label: str,
                    d_horizon: float) -> List[TestResult]:
    config, params = setup.config, setup.params
    alpha = params.alpha
    size = records.s_y.shape[0]
    elapsed = t * config.n
    if elapsed < 1:
        largest = max(
            np.abs(records.s_a[:, k]).max(), np.abs(records.s_y[:, k]).max(), np.abs(records.g_y[:, k]).max()
        )
        return [TestResult.create('{}all statistics'.format(label), 'deviation', largest, 0.0, size)]
    broken = records.s_a[:, k].sum(axis=1) + records.s_y[:, k] != math.floor(elapsed)
    results = [
        TestResult.create('{}occupation decomposition'.format(label), 'violations', np.count_nonzero(broken), 0, size)
    ]
    for j, p in enumerate(params.beta, start=1):
        if not 0 < p < 1:
            continue
        fractions = records.s_a[:, k, j - 1] / elapsed
        statistic = ks_statistic(fractions, lambda x, p=p: lamperti_cdf(np.clip(x, 0, 1), alpha, p))
        results.append(TestResult.create('{}S_A{}/t occupation fraction'.format(label, j), 'ks', statistic,
                                         config.ks_arcsine, size))
    local = records.s_y[:, k] / setup.normalizer(config.n)
    if alpha == 0.5:
        statistic = ks_statistic(local, lambda u: half_gaussian_cdf(u, t))
        results.append(TestResult.create('{}S_Y/(b_n mu(Y)) local time'.format(label), 'ks', statistic,
                                         config.ks_half_gaussian, size))
    reference = mittag_leffler_laplace(np.asarray(config.lambdas), t, alpha)
    results.append(TestResult.create('{}S_Y/(b_n mu(Y)) Laplace'.format(label), 'laplace',
                                     laplace_mismatch(local, config.lambdas, reference), config.laplace, size))
    last = records.g_y[:, k] / elapsed
    statistic = ks_statistic(last, lambda u: beta_a_1ma_cdf(np.clip(u, 0, 1), alpha))
    results.append(TestResult.create('{}G_Y/t last visit'.format(label), 'ks', statistic, config.ks_beta, size))
    visited = records.g_y[:, k] > 0
    for j, p in enumerate(params.beta, start=1):
        if not 0 < p < 1 or not np.any(visited):
            continue
        fractions = records.s_a_at_g[visited, k, j - 1] / records.g_y[visited, k]
        statistic = ks_statistic(fractions, lambda x, p=p: lamperti_zg_cdf(np.clip(x, 0, 1), alpha, p))
        results.append(TestResult.create('{}S_A{}(G_Y)/G_Y fraction at last visit'.format(label, j), 'ks', statistic,
                                         config.ks_zg, int(visited.sum())))

    g_y, d_y = records.g_y[:, k].astype(float), records.d_y[:, k]
    usable = g_y < elapsed
    gap = elapsed - g_y[usable]
    excess = (d_y[usable] - g_y[usable]) / gap
    limits = (d_horizon - g_y[usable]) / gap
    censored = int(np.count_nonzero(np.isnan(d_y)))
    if censored > config.censored * size:
        logger.warning('D_Y censored for %d of %d orbits at %s', censored, size, label or 't=1')
    exponent = _pareto_exponent(excess, limits)
    results.append(TestResult.create('{}D_Y excess tail exponent'.format(label), 'deviation', abs(exponent - alpha),
                                     config.dy_exponent, int(usable.sum()), censored))
    return results


def _reference_generator(config: ExperimentConfig) -> np.random.Generator:
    return replica_generator(config.master_seed, _REFERENCE_STREAM)


def run_identity_audit(config: ExperimentConfig, setup: Optional[ExperimentSetup]=None) -> StatReport:
    """Check ``sum_j S_{A_j}(u) + S_Y(u) = u`` and the discrete Williams identities on iterated orbits.

    The orbits are iterated step by step for ``experiment.audit_length`` steps from the initial law.
    """
    setup = setup or build_setup(config)
    length = config.audit_length
    times = np.arange(length + 1)
    decomposition = williams = checked = 0
    for index in range(config.audit_orbits):
        rng = replica_generator(config.master_seed, index)
        x0 = draw_initial_point(setup, config.initial_law, rng)
        labels = setup.partition.label(orbit(setup.spec, OrbitConfig(x0, length)))
        record = occupation_from_labels(labels, setup.partition.d, times)
        decomposition += int(np.count_nonzero(record.s_a.sum(axis=1) + record.s_y != times))
        trace = trace_from_labels(labels, setup.partition.d)
        check = williams_discrete_check(trace, occupation_step_functions(labels, setup.partition.d), times[:-1])
        williams += len(check.violations)
        checked += check.checked
    logger.info('Audited %d orbits of length %d (%d Williams evaluations)', config.audit_orbits, length, checked)
    return StatReport('identities', [
        TestResult.create('occupation decomposition', 'violations', decomposition, 0, config.audit_orbits),
        TestResult.create('discrete Williams identities', 'violations', williams, 0, checked),
    ])


def run_marginal_experiment(config: ExperimentConfig, setup: Optional[ExperimentSetup]=None,
                            workers: Optional[int]=None) -> StatReport:
    """Compare the scaled occupation vector at time ``n`` with its limit.

    Each coordinate is compared with its closed form law, the joint law through the Laplace transform of
    ``S_{A_1}(n)/n + S_Y(n)/(b_n mu(Y)) + G_Y(n)/n`` against samples of the exact limit sampler, and the
    normalization through its regular variation ``b_{2n} / b_n -> 2^alpha``.
    """
    setup = setup or build_setup(config)
    logger.info('Marginal experiment: n=%d, N=%d, initial law %s', config.n, config.replicas, config.initial_law)
    records = simulate_records(setup, [config.n], workers=workers)
    d_horizon = (1.0 + config.extension) * config.n
    results = _marginal_tests(setup, records, 0, 1.0, '', d_horizon)

    limit = sample_zg_joint(setup.params, _reference_generator(config), config.limit_samples)
    observed = records.s_a[:, 0, 0] / config.n + records.s_y[:, 0] / setup.normalizer(config.n)
    observed = observed + records.g_y[:, 0] / config.n
    reference = empirical_laplace(limit.z[:, 0] + limit.l + limit.g, config.lambdas)
    results.append(TestResult.create('joint Laplace transform', 'laplace',
                                     laplace_mismatch(observed, config.lambdas, reference), config.laplace,
                                     config.replicas))
    ratio = setup.normalizer(2 * config.n) / setup.normalizer(config.n) / 2.0**setup.params.alpha
    results.append(TestResult.create('b_2n / (2^alpha b_n)', 'deviation', abs(ratio - 1.0), config.b_n_scaling, 1))
    for result in results:
        logger.info(result.summary())
    return StatReport('marginal', results)


def run_functional_experiment(config: ExperimentConfig, setup: Optional[ExperimentSetup]=None,
                              workers: Optional[int]=None) -> StatReport:
    """Compare the finite-dimensional laws at the times ``t n`` of ``experiment.t_grid``.

    The marginals at every time are compared with the self-similar rescaling of the laws at time ``1``; the
    increments of ``S_{A_1}`` and of the junction occupation between consecutive times are compared in Laplace
    transform with the increments of the subordinator construction.
    """
    setup = setup or build_setup(config)
    grid = list(config.t_grid)
    sample_times = [t * config.n for t in grid]
    logger.info('Functional experiment at t=%r: n=%d, N=%d', grid, config.n, config.replicas)
    records = simulate_records(setup, sample_times, workers=workers)
    d_horizon = (1.0 + config.extension) * max(sample_times)
    results = []
    for k, t in enumerate(grid):
        results += _marginal_tests(setup, records, k, t, 't={:g}: '.format(t), d_horizon)
    if len(grid) > 1 and grid[-1] > 0:
        rng = _reference_generator(config)
        limits = sample_subordinator_functionals(setup.params, grid, rng, config.limit_samples)
        z = np.stack([limit.z[:, 0] for limit in limits])
        l = np.stack([limit.l for limit in limits])
        b = setup.normalizer(config.n)
        for k in range(1, len(grid)):
            label = '[{:g}, {:g}]'.format(grid[k - 1], grid[k])
            increments = (records.s_a[:, k, 0] - records.s_a[:, k - 1, 0]) / config.n
            reference = empirical_laplace(z[:, k] - z[:, k - 1], config.lambdas)
            results.append(TestResult.create('S_A1 increment on {}'.format(label), 'laplace',
                                             laplace_mismatch(increments, config.lambdas, reference), config.laplace,
                                             config.replicas))
            increments = (records.s_y[:, k] - records.s_y[:, k - 1]) / b
            reference = empirical_laplace(l[:, k] - l[:, k - 1], config.lambdas)
            results.append(TestResult.create('S_Y increment on {}'.format(label), 'laplace',
                                             laplace_mismatch(increments, config.lambdas, reference), config.laplace,
                                             config.replicas))
    for result in results:
        logger.info(result.summary())
    return StatReport('functional', results)


def run_initial_law_comparison(config: ExperimentConfig, setup: Optional[ExperimentSetup]=None,
                               workers: Optional[int]=None) -> StatReport:
    """Two-sample tests of every marginal at time ``n`` between the uniform initial law and ``mu_Y``.

    The ``mu_Y`` run uses the master seed plus one so that both samples are independent.
    """
    setup = setup or build_setup(config)
    uniform = simulate_records(setup, [config.n], 'uniform', workers)
    shifted = setup._replace(config=dataclasses.replace(config, master_seed=config.master_seed + 1))
    stationary = simulate_records(shifted, [config.n], 'mu_y', workers)
    b = setup.normalizer(config.n)
    marginals = [('S_Y/(b_n mu(Y))', uniform.s_y[:, 0] / b, stationary.s_y[:, 0] / b),
                 ('G_Y/n', uniform.g_y[:, 0] / config.n, stationary.g_y[:, 0] / config.n)]
    for j in range(1, setup.partition.d + 1):
        marginals.append(('S_A{}/n'.format(j), uniform.s_a[:, 0, j - 1] / config.n,
                          stationary.s_a[:, 0, j - 1] / config.n))
    results = []
    for name, first, second in marginals:
        test = two_sample_ks(first, second)
        results.append(TestResult.create('{} uniform vs mu_Y'.format(name), 'pvalue', test.pvalue, config.two_sample_p,
                                         config.replicas))
    for result in results:
        logger.info(result.summary())
    return StatReport('initial-law', results)


def run_tail_experiment(config: ExperimentConfig, setup: Optional[ExperimentSetup]=None):
    """Estimate ``alpha`` and ``beta`` from ``experiment.tail_returns`` excursions.

    Returns:
        The :class:`StatReport` and the :class:`~intermittency.dynamics.tails.TailReport`.
    """
    setup = setup or build_setup(config)
    trace = excursion_trace(setup.spec, setup.partition, setup.partition.junction_point, config.tail_returns,
                            direct_limit=config.direct_limit, table=setup.table)
    tails = tail_statistics(trace, setup.mu_y)
    results = [TestResult.create('alpha log-log estimate', 'deviation', abs(tails.alpha_loglog - setup.params.alpha),
                                 config.alpha_hat, tails.records)]
    for j in range(1, setup.partition.d + 1):
        deviation = abs(tails.beta[j - 1] - setup.params.beta[j - 1])
        results.append(TestResult.create('beta_{} estimate'.format(j), 'deviation', deviation, config.beta_hat,
                                         tails.records))
    for result in results:
        logger.info(result.summary())
    return StatReport('tails', results), tails


def run_limit_cross_validation(config: ExperimentConfig, params: Optional[StableParams]=None) -> StatReport:
    """Compare the exact limit sampler with the subordinator and the diffusion constructions at time ``1``.

    Args:
        config:
            Sample sizes, Bessel discretization and tolerances.
        params:
            The limit parameters; by default those of the configured map.
    """
    if params is None:
        params = build_setup(config).params
    rng = _reference_generator(config)
    exact = sample_zg_joint(params, rng, config.limit_samples)
    limits = sample_subordinator_functionals(params, [1.0], rng, config.limit_samples)
    subordinator = {
        'Z_1(1)': np.array([limit.z[0, 0] for limit in limits]),
        'L(1)': np.array([limit.l[0] for limit in limits]),
        'G(1)': np.array([limit.g[0] for limit in limits]),
        'D(1)': np.array([limit.dv[0] for limit in limits]),
    }
    samples = {'Z_1(1)': exact.z[:, 0], 'L(1)': exact.l, 'G(1)': exact.g, 'D(1)': exact.dv}
    results = []
    for name, values in samples.items():
        test = two_sample_ks(values, subordinator[name])
        results.append(TestResult.create('{} exact vs subordinators'.format(name), 'ks', test.statistic,
                                         config.ks_cross, config.limit_samples))
    diffusion = sample_skew_functionals(params, config.bessel_dt, config.bessel_eps, 1.0, rng, config.bessel_paths,
                                        extension=config.extension)
    simulated = {'Z_1(1)': diffusion.z[:, 0], 'L(1)': diffusion.l, 'G(1)': diffusion.g, 'D(1)': diffusion.dv}
    # the diffusion resolves D(1) only up to the end of its continuation; both samples are capped there
    horizon = 1.0 + config.extension
    for name, values in simulated.items():
        censored = int(np.count_nonzero(np.isnan(values)))
        reference = subordinator[name]
        if name == 'D(1)':
            values = np.where(np.isnan(values), horizon, np.minimum(values, horizon))
            reference = np.minimum(reference, horizon)
        test = two_sample_ks(values, reference)
        results.append(TestResult.create('{} diffusion vs subordinators'.format(name), 'ks', test.statistic,
                                         config.ks_diffusion, config.bessel_paths, censored))
    for result in results:
        logger.info(result.summary())
    return StatReport('limits', results)


def run_suites(config: ExperimentConfig, suites: Optional[Sequence[str]]=None,
               workers: Optional[int]=None) -> StatReport:
    """Run the named suites (default ``experiment.suites``) and merge their reports in the given order.

    Raises:
        ValueError:
            If a suite is unknown.
    """
    suites = list(suites or config.suites)
    for suite in suites:
        if suite not in SUITES:
            raise ValueError("Unknown suite {!r}, expected one of {}".format(suite, ', '.join(SUITES)))
    setup = build_setup(config)
    report = StatReport('')
    for suite in suites:
        if suite == 'identities':
            report.extend(run_identity_audit(config, setup))
        elif suite == 'marginal':
            report.extend(run_marginal_experiment(config, setup, workers))
        elif suite == 'functional':
            report.extend(run_functional_experiment(config, setup, workers))
        elif suite == 'initial-law':
            report.extend(run_initial_law_comparison(config, setup, workers))
        elif suite == 'tails':
            report.extend(run_tail_experiment(config, setup)[0])
        else:
            report.extend(run_limit_cross_validation(config, setup.params))
    return report
