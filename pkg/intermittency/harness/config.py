# -*- coding: utf-8 -*-
"""Experiment configuration as flat ``key = value`` text with dotted sections.

>>> config = parse_config('''
... schema = 1
... map.family = boole
... experiment.n = 1000  # orbit length
... experiment.t_grid = 0.5, 1, 2
... ''')
>>> config.n, config.t_grid
(1000, (0.5, 1.0, 2.0))
>>> apply_overrides(config, ['experiment.N=10']).replicas
10

Unknown keys and malformed values raise :class:`~intermittency.errors.ConfigError`.
"""
import dataclasses
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, Tuple

from ..errors import ConfigError
from ..utils import parse_float_tuple

__all__ = ['SCHEMA', 'MAP_FAMILIES', 'PARTITION_KINDS', 'INITIAL_LAWS', 'SUITES', 'ExperimentConfig', 'parse_config',
           'load_config', 'apply_overrides', 'CONFIG_KEYS']

logger = logging.getLogger(__name__)

SCHEMA = 1

MAP_FAMILIES = ('boole', 'thaler')
PARTITION_KINDS = ('dynamical', 'window')
INITIAL_LAWS = ('uniform', 'mu_y')
SUITES = ('identities', 'marginal', 'functional', 'initial-law', 'tails', 'limits')


def _key(name: str, **kwargs):
    metadata = {'key': name}
    return field(metadata=metadata, **kwargs)


@dataclass(frozen=True)
class ExperimentConfig:
    """An immutable experiment description.

    Every field is addressed by the dotted key in its metadata, e.g. ``tolerance.ks_arcsine``. Tolerances are pilot
    calibrated bounds, not asymptotic guarantees.
    """
    schema: int = _key('schema', default=SCHEMA)
    family: str = _key('map.family', default='boole')
    d: int = _key('map.d', default=2)
    alpha: float = _key('map.alpha', default=0.5)
    c: Tuple[float, ...] = _key('map.c', default=(1.0, 1.0))
    partition: str = _key('partition.kind', default='dynamical')
    delta: float = _key('partition.delta', default=0.1)
    initial_law: str = _key('initial.law', default='uniform')
    n: int = _key('experiment.n', default=10**6)
    replicas: int = _key('experiment.N', default=10**4)
    t_grid: Tuple[float, ...] = _key('experiment.t_grid', default=(1.0, ))
    master_seed: int = _key('experiment.master_seed', default=0)
    extension: float = _key('experiment.extension', default=10.0)
    lambdas: Tuple[float, ...] = _key('experiment.lambdas', default=(0.5, 1.0, 2.0))
    chunk: int = _key('experiment.chunk', default=64)
    limit_samples: int = _key('experiment.limit_samples', default=10**5)
    tail_returns: int = _key('experiment.tail_returns', default=10**6)
    audit_orbits: int = _key('experiment.audit_orbits', default=10)
    audit_length: int = _key('experiment.audit_length', default=10**4)
    direct_limit: int = _key('experiment.direct_limit', default=32)
    suites: Tuple[str, ...] = _key('experiment.suites', default=('identities', 'marginal'))
    bessel_dt: float = _key('bessel.dt', default=1e-4)
    bessel_eps: float = _key('bessel.eps', default=0.02)
    bessel_paths: int = _key('bessel.paths', default=10**4)
    ks_arcsine: float = _key('tolerance.ks_arcsine', default=0.02)
    ks_half_gaussian: float = _key('tolerance.ks_half_gaussian', default=0.03)
    ks_beta: float = _key('tolerance.ks_beta', default=0.02)
    ks_zg: float = _key('tolerance.ks_zg', default=0.02)
    dy_exponent: float = _key('tolerance.dy_exponent', default=0.1)
    laplace: float = _key('tolerance.laplace', default=0.02)
    two_sample_p: float = _key('tolerance.two_sample_p', default=0.01)
    censored: float = _key('tolerance.censored', default=0.001)
    b_n_scaling: float = _key('tolerance.b_n_scaling', default=0.1)
    alpha_hat: float = _key('tolerance.alpha_hat', default=0.05)
    beta_hat: float = _key('tolerance.beta_hat', default=0.03)
    ks_cross: float = _key('tolerance.ks_cross', default=0.02)
    ks_diffusion: float = _key('tolerance.ks_diffusion', default=0.05)

    def __post_init__(self):
        if self.schema != SCHEMA:
            raise ConfigError("Unsupported config schema {!r}, expected {}".format(self.schema, SCHEMA))
        _choice('map.family', self.family, MAP_FAMILIES)
        _choice('partition.kind', self.partition, PARTITION_KINDS)
        _choice('initial.law', self.initial_law, INITIAL_LAWS)
        if not 0 < self.alpha < 1:
            raise ConfigError("map.alpha must lie in (0, 1), got {!r}".format(self.alpha))
        if len(self.c) != self.d:
            raise ConfigError("map.c needs {} coefficients, got {}".format(self.d, len(self.c)))
        if self.n < 1 or self.replicas < 1 or self.chunk < 1:
            raise ConfigError("experiment.n, experiment.N and experiment.chunk must be positive")
        if self.master_seed < 0:
            raise ConfigError("experiment.master_seed must be non-negative")
        if any(t < 0 or math.isinf(t) for t in self.t_grid) or list(self.t_grid) != sorted(self.t_grid):
            raise ConfigError("experiment.t_grid must be sorted finite non-negative times")
        if self.extension < 0:
            raise ConfigError("experiment.extension must be non-negative")
        for suite in self.suites:
            _choice('experiment.suites', suite, SUITES)

    def to_text(self) -> str:
        """Render the configuration in the format read by :func:`parse_config`."""
        lines = []
        for item in dataclasses.fields(self):
            value = getattr(self, item.name)
            if isinstance(value, tuple):
                value = ', '.join(str(v) for v in value)
            lines.append('{} = {}'.format(item.metadata['key'], value))
        return '\n'.join(lines) + '\n'


def _choice(key: str, value: str, choices: Tuple[str, ...]) -> None:
    if value not in choices:
        raise ConfigError("{} must be one of {}, got {!r}".format(key, ', '.join(choices), value))


CONFIG_KEYS: Dict[str, dataclasses.Field] = {
    item.metadata['key']: item
    for item in dataclasses.fields(ExperimentConfig)
}
"""The fields of :class:`ExperimentConfig` by their dotted key."""


def _convert(key: str, text: str):
    kind = CONFIG_KEYS[key].type
    try:
        if kind is int:
            return int(text)
        if kind is float:
            return float(text)
        if kind is str:
            return text
        if kind == Tuple[str, ...]:
            return tuple(part.strip() for part in text.split(',') if part.strip())
        return parse_float_tuple(text)
    except ValueError:
        raise ConfigError("Malformed value {!r} for {}".format(text, key)) from None


def _assignments(lines: Iterable[str], source: str) -> Dict[str, object]:
    values = {}
    for number, line in enumerate(lines, start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigError("{}:{}: expected 'key = value', got {!r}".format(source, number, line))
        key, text = (part.strip() for part in line.split('=', 1))
        if key not in CONFIG_KEYS:
            raise ConfigError("{}:{}: unknown key {!r}".format(source, number, key))
        values[CONFIG_KEYS[key].name] = _convert(key, text)
    return values


def parse_config(text: str, source: str='<string>') -> ExperimentConfig:
    """Parse configuration text; ``schema = 1`` is mandatory.

    Raises:
        ConfigError:
            For unknown keys, malformed values, a missing or unsupported schema or inconsistent settings.
    """
    values = _assignments(text.splitlines(), source)
    if 'schema' not in values:
        raise ConfigError("{}: the key 'schema' is mandatory".format(source))
    return ExperimentConfig(**values)


def load_config(path: str) -> ExperimentConfig:
    """Read and parse the configuration file at *path*.

    Raises:
        ConfigError:
            If the file cannot be read or does not parse.
    """
    try:
        with open(path) as handle:
            text = handle.read()
    except OSError as error:
        raise ConfigError("Cannot read config file {}: {}".format(path, error.strerror)) from error
    config = parse_config(text, path)
    logger.info('Loaded config %s', path)
    return config


def apply_overrides(config: ExperimentConfig, overrides: Iterable[str]) -> ExperimentConfig:
    """Apply ``key=value`` overrides and validate the result like a file.

    Raises:
        ConfigError:
            For unknown keys or malformed values.
    """
    values = _assignments(overrides, '--set')
    if not values:
        return config
    return dataclasses.replace(config, **values)
