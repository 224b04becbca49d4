# -*- coding: utf-8 -*-
"""Configuration, parallel replicas, statistics and the Monte Carlo experiments."""

from . import config
from . import parallel
from . import statistics
from . import experiments

# pylint: disable=wildcard-import
from .config import *
from .parallel import *
from .statistics import *
from .experiments import *

__all__ = config.__all__ + parallel.__all__ + statistics.__all__ + experiments.__all__
