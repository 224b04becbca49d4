# -*- coding: utf-8 -*-
"""Limit processes: step function algebra, stable limit laws and skew Bessel simulation."""

from . import cadlag
from . import stable
from . import laws
from . import bessel

# pylint: disable=wildcard-import
from .cadlag import *
from .stable import *
from .laws import *
from .bessel import *

__all__ = cadlag.__all__ + stable.__all__ + laws.__all__ + bessel.__all__
