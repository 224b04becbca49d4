# -*- coding: utf-8 -*-
import os

import numpy as np

from intermittency.dynamics.inducing import Excursion, ExcursionTrace
from intermittency.dynamics.occupation import trace_from_labels

SMALL_ENTRIES = dict(
    n=2000,
    replicas=20,
    t_grid=(0.0, 0.5, 1.0),
    master_seed=7,
    limit_samples=200,
    tail_returns=10**4,
    audit_orbits=3,
    audit_length=500,
    chunk=8,
    bessel_dt=1e-3,
    bessel_eps=0.05,
    bessel_paths=50,
)

SMALL_CONFIG_TEXT = """
schema = 1
map.family = boole
experiment.n = 2000
experiment.N = 20
experiment.t_grid = 0, 0.5, 1
experiment.master_seed = 7
experiment.limit_samples = 200
experiment.tail_returns = 10000
experiment.audit_orbits = 3
experiment.audit_length = 500
experiment.chunk = 8
bessel.dt = 0.001
bessel.eps = 0.05
bessel.paths = 50
"""


def write_config(directory, text=SMALL_CONFIG_TEXT, name='small.cfg'):
    path = os.path.join(str(directory), name)
    with open(path, 'w') as handle:
        handle.write(text)
    return path


def excursions_of(labels, d=2):
    """The completed excursions of a labelled orbit as :class:`Excursion` records."""
    trace = trace_from_labels(labels, d)
    return [Excursion(int(ray), int(phi)) for ray, phi in zip(trace.rays, trace.phi)]


def pareto_trace(rng, size, alpha, beta):
    """A stationary trace with ``P[phi > n] = n^-alpha`` and rays drawn with probabilities *beta*."""
    phi = np.ceil((1.0 - rng.random(size))**(-1.0 / alpha)).astype(np.int64)
    rays = rng.choice(len(beta), size=size, p=beta) + 1
    rays[phi == 1] = 0
    return ExcursionTrace(len(beta), rays, phi, True)
