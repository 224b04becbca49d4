# -*- coding: utf-8 -*-
"""Command line interface.

Exit codes: ``0`` success, ``1`` a statistical test failed, ``2`` usage error, ``3`` configuration error.
"""
import argparse
import csv
import logging
import os
import sys
from typing import List, Optional, Sequence

import numpy as np

from .dynamics.inducing import excursion_trace
from .dynamics.occupation import OrbitConfig, occupation_from_labels, orbit
from .dynamics.tails import tail_statistics
from .errors import ConfigError, InsufficientData
from .harness.config import SUITES, ExperimentConfig, apply_overrides, load_config
from .harness.experiments import StatReport, build_setup, draw_initial_point, run_suites
from .processes.bessel import simulate_skew_path
from .processes.stable import StableParams, sample_zg_joint
from .utils import parse_float_tuple, replica_generator

__all__ = ['EXIT_OK', 'EXIT_FAILED', 'EXIT_USAGE', 'EXIT_CONFIG', 'build_parser', 'parse_and_dispatch', 'main']

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_CONFIG = 3

_SCHEMAS = """output files:
  simulate-map     occupation.csv    t, s_a1..s_ad, s_y, g_y, d_y
  excursions       excursions.csv    record, ray, phi, ell_1..ell_d
                   tails.csv         n, tail, w, w_1..w_d, b_n, b_n_map, b_n_wandering
  simulate-bessel  bessel_path.csv   t, modulus, ray, L
  sample-limits    limits.csv        z1..zd, l, g, d, zg1..zgd
  verify           report.csv        experiment, name, kind, size, statistic, threshold, passed, censored
                   report.jsonl      one JSON object per test

exit codes: 0 success, 1 failed test, 2 usage error, 3 configuration error
the environment variable INTERMIT_THREADS caps the number of worker processes
"""


def _float_tuple(text: str):
    try:
        return parse_float_tuple(text)
    except ValueError as error:
        raise argparse.ArgumentTypeError(str(error)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', action='count', default=0, help='-v for info, -vv for debug messages')
    common.add_argument('--config', help='experiment configuration file (key = value)')
    common.add_argument('--output', default='.', help='directory for the output files')
    common.add_argument('--set', action='append', default=[], metavar='KEY=VALUE', help='override a config entry')

    parser = argparse.ArgumentParser(
        prog='intermittency', description='Occupation times of intermittent maps and their limit processes.',
        epilog=_SCHEMAS, formatter_class=argparse.RawDescriptionHelpFormatter
    )
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    command = commands.add_parser('simulate-map', parents=[common], help='iterate one orbit of the configured map')
    command.add_argument('--x0', type=float, help='initial point (default: drawn from the initial law)')
    command.add_argument('--steps', type=int, help='orbit length (default: experiment.n)')
    command.add_argument('--every', type=int, default=1, help='sample every k-th time')

    command = commands.add_parser('excursions', parents=[common], help='excursion trace and tail statistics')
    command.add_argument('--x0', type=float, help='initial point (default: a point of the junction)')
    command.add_argument('--returns', type=int, help='number of excursions (default: experiment.tail_returns)')

    command = commands.add_parser('simulate-bessel', parents=[common], help='simulate one skew Bessel path')
    command.add_argument('--alpha', type=float, default=0.5)
    command.add_argument('--beta', type=_float_tuple, default=(0.5, 0.5))
    command.add_argument('--dt', type=float, default=1e-4)
    command.add_argument('--eps', type=float, default=0.02)
    command.add_argument('--horizon', type=float, default=1.0)
    command.add_argument('--seed', type=int, default=0)

    command = commands.add_parser('sample-limits', parents=[common], help='sample the limit vector at time 1')
    command.add_argument('--alpha', type=float, default=0.5)
    command.add_argument('--beta', type=_float_tuple, default=(0.5, 0.5))
    command.add_argument('--n', type=int, default=1000, help='number of samples')
    command.add_argument('--seed', type=int, default=0)

    command = commands.add_parser('verify', parents=[common], help='run the statistical test suites')
    command.add_argument('--suite', action='append', choices=SUITES, help='suite to run (default: experiment.suites)')
    command.add_argument('--workers', type=int, help='number of worker processes')

    command = commands.add_parser('report', parents=[common], help='summarize a report.jsonl file')
    command.add_argument('input', help='report written by verify')
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format='%(levelname)s %(name)s: %(message)s')


def _config(args) -> ExperimentConfig:
    config = load_config(args.config) if args.config else ExperimentConfig()
    return apply_overrides(config, args.set)


def _path(args, name: str) -> str:
    os.makedirs(args.output, exist_ok=True)
    return os.path.join(args.output, name)


def _simulate_map(args) -> int:
    config = _config(args)
    setup = build_setup(config)
    steps = config.n if args.steps is None else args.steps
    if args.every < 1 or steps < 0:
        raise ValueError("--every must be positive and --steps non-negative")
    x0 = args.x0
    if x0 is None:
        x0 = draw_initial_point(setup, config.initial_law, replica_generator(config.master_seed, 0))
    labels = setup.partition.label(orbit(setup.spec, OrbitConfig(x0, steps)))
    times = np.arange(0, steps + 1, args.every)
    record = occupation_from_labels(labels, setup.partition.d, times)
    path = _path(args, 'occupation.csv')
    with open(path, 'w', newline='') as handle:
        writer = csv.writer(handle)
        rays = ['s_a{}'.format(j) for j in range(1, setup.partition.d + 1)]
        writer.writerow(['t'] + rays + ['s_y', 'g_y', 'd_y'])
        for k, t in enumerate(times):
            d_y = '' if record.censored[k] else int(record.d_y[k])
            writer.writerow([int(t)] + record.s_a[k].tolist() + [int(record.s_y[k]), int(record.g_y[k]), d_y])
    print('simulate-map: {} steps from x0={!r} written to {}'.format(steps, x0, path))
    return EXIT_OK


def _excursions(args) -> int:
    config = _config(args)
    setup = build_setup(config)
    returns = config.tail_returns if args.returns is None else args.returns
    x0 = args.x0
    if x0 is None:
        x0 = setup.partition.junction_point
    trace = excursion_trace(setup.spec, setup.partition, x0, returns, direct_limit=config.direct_limit,
                            table=setup.table)
    trace.to_csv(_path(args, 'excursions.csv'))
    try:
        tails = tail_statistics(trace, setup.mu_y, alpha=setup.params.alpha)
    except InsufficientData as error:
        print('excursions: {} records written, no tail statistics: {}'.format(returns, error))
        return EXIT_OK
    tails.to_csv(_path(args, 'tails.csv'))
    entries = ', '.join('{}: {}'.format(j, tails.entries[j]) for j in range(1, tails.d + 1))
    print('excursions: {} records, alpha {:.4f} (log-log) {:.4f} (Hill), beta {}, entries {}'.format(
        returns, tails.alpha_loglog, tails.alpha_hill, ', '.join('{:.4f}'.format(b) for b in tails.beta), entries
    ))
    return EXIT_OK


def _simulate_bessel(args) -> int:
    params = StableParams(args.alpha, args.beta)
    path = simulate_skew_path(params, args.dt, args.eps, args.horizon, np.random.default_rng(args.seed))
    target = _path(args, 'bessel_path.csv')
    path.to_csv(target)
    print('simulate-bessel: {} steps written to {}'.format(path.values.size, target))
    return EXIT_OK


def _sample_limits(args) -> int:
    params = StableParams(args.alpha, args.beta)
    if args.n < 1:
        raise ValueError("--n must be positive")
    sample = sample_zg_joint(params, np.random.default_rng(args.seed), args.n)
    target = _path(args, 'limits.csv')
    sample.to_csv(target)
    print('sample-limits: {} samples written to {}'.format(args.n, target))
    return EXIT_OK


def _finish(report: StatReport) -> int:
    for line in report.summary_lines():
        print(line)
    print('{} of {} tests passed'.format(len(report) - len(report.failures), len(report)))
    return EXIT_OK if report.passed else EXIT_FAILED


def _verify(args) -> int:
    config = _config(args)
    report = run_suites(config, args.suite, args.workers)
    report.to_csv(_path(args, 'report.csv'))
    report.to_jsonl(_path(args, 'report.jsonl'))
    return _finish(report)


def _report(args) -> int:
    try:
        report = StatReport.from_jsonl(args.input)
    except OSError as error:
        raise ConfigError("Cannot read report {}: {}".format(args.input, error.strerror)) from error
    return _finish(report)


_COMMANDS = {
    'simulate-map': _simulate_map,
    'excursions': _excursions,
    'simulate-bessel': _simulate_bessel,
    'sample-limits': _sample_limits,
    'verify': _verify,
    'report': _report,
}


def parse_and_dispatch(argv: Optional[Sequence[str]]=None) -> int:
    """Parse *argv*, run the command and return the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as stop:
        return EXIT_USAGE if stop.code else EXIT_OK
    _configure_logging(args.verbose)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as error:
        print('intermittency: configuration error: {}'.format(error), file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as error:
        print('intermittency: {}'.format(error), file=sys.stderr)
        return EXIT_USAGE


def main(argv: Optional[List[str]]=None) -> None:
    sys.exit(parse_and_dispatch(argv))
