# -*- coding: utf-8 -*-
"""Exceptions raised by the simulation and verification routines.

All exceptions derive from a builtin exception type so that callers which do not care about the specific failure can
catch :class:`ValueError`, :class:`RuntimeError` or :class:`IndexError` as usual:

>>> issubclass(NotProper, ValueError)
True
>>> issubclass(HorizonExceeded, IndexError)
True
"""

__all__ = [
    'StallDetected', 'DYUnresolved', 'NoPeriodicPoint', 'NotProper', 'HorizonExceeded', 'InsufficientData',
    'EndpointSingularity', 'EffectiveSampleSizeLow', 'EmptySample', 'ConfigError'
]


class StallDetected(RuntimeError):
    """Raised when an orbit freezes in floating point arithmetic away from a fixed point.

    Attributes:
        point: The coordinate at which ``T(x) == x`` was observed.
        step: The iteration index at which the stall happened.
    """

    def __init__(self, point, step):
        super().__init__('Orbit stalled at x={!r} in step {} (T(x) == x in working precision)'.format(point, step))
        self.point = point
        self.step = step


class DYUnresolved(RuntimeError):
    """Raised when the first visit to the junction after a sample time lies beyond the simulated horizon."""

    def __init__(self, time, horizon):
        super().__init__('D_Y({}) is not resolved within the horizon {}'.format(time, horizon))
        self.time = time
        self.horizon = horizon


class NoPeriodicPoint(ValueError):
    """Raised when the bracketing search for the 2-periodic point fails."""


class NotProper(ValueError):
    """Raised when a right-continuous inverse is requested for a bounded function."""


class HorizonExceeded(IndexError):
    """Raised when a step function is evaluated beyond the horizon on which it is known."""

    def __init__(self, time, horizon):
        super().__init__('Evaluation at {!r} exceeds the known horizon {!r}'.format(time, horizon))
        self.time = time
        self.horizon = horizon


class InsufficientData(ValueError):
    """Raised when a trace is too short for tail estimation."""


class EndpointSingularity(ValueError):
    """Raised when a density or distribution function is evaluated at a point where it is singular."""


class EffectiveSampleSizeLow(RuntimeError):
    """Raised when self-normalized importance weights degenerate.

    Attributes:
        ess: The relative effective sample size that was observed.
    """

    def __init__(self, ess, minimum):
        super().__init__('Relative effective sample size {:.4f} is below {:.4f}'.format(ess, minimum))
        self.ess = ess
        self.minimum = minimum


class EmptySample(ValueError):
    """Raised when a statistic is requested for an empty sample."""


class ConfigError(ValueError):
    """Raised for malformed, incomplete or unknown configuration entries."""
