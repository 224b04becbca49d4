# -*- coding: utf-8 -*-
"""Occupation times of intermittent interval maps and their limit processes."""

# pylint: disable=wildcard-import
from . import errors
from . import utils
from . import processes
from . import dynamics
from . import harness

from .errors import *
from .utils import *
from .processes import *
from .dynamics import *
from .harness import *

__all__ = errors.__all__ + utils.__all__ + processes.__all__ + dynamics.__all__ + harness.__all__

__version__ = '0.1.0'
