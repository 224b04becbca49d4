# -*- coding: utf-8 -*-
import numpy as np
import pytest

from intermittency.harness.config import ExperimentConfig

from .utils import SMALL_ENTRIES


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False, help='run the slow Monte Carlo tests')


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: Monte Carlo test with large samples, needs --runslow')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def small_config():
    return ExperimentConfig(**SMALL_ENTRIES)
