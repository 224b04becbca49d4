# -*- coding: utf-8 -*-
"""Intermittent maps, their partition into rays and junction, excursions and occupation times."""

from . import maps
from . import partition
from . import inducing
from . import occupation
from . import tails

# pylint: disable=wildcard-import
from .maps import *
from .partition import *
from .inducing import *
from .occupation import *
from .tails import *

__all__ = maps.__all__ + partition.__all__ + inducing.__all__ + occupation.__all__ + tails.__all__
