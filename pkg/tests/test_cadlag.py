# -*- coding: utf-8 -*-
import math

from hypothesis import given, settings
import hypothesis.strategies as st
import numpy as np
import pytest

from intermittency.dynamics.inducing import ExcursionTrace
from intermittency.dynamics.maps import BOOLE
from intermittency.dynamics.occupation import OrbitConfig, occupation_step_functions, orbit, trace_from_labels
from intermittency.errors import HorizonExceeded, NotProper
from intermittency.processes.cadlag import (
    StepFunction, compose, compose_inverse, d_op, g_op, j1_upper_bound, rc_inverse, williams_discrete_check
)

from .common import BOOLE_PARTITION, SEVEN_STEP_LABELS

event_lists = st.lists(st.integers(min_value=1, max_value=50), min_size=1, max_size=30)

STAIRS = StepFunction([0, 1, 2], [1, 3, 6], horizon=3)


class TestStepFunction:
    # yapf: disable
    @pytest.mark.parametrize(
        '   times,      values,     slopes,     horizon',
        [
            ([],        [],         None,       math.inf),
            ([1],       [0],        None,       math.inf),
            ([0, 0],    [0, 1],     None,       math.inf),
            ([0, 2],    [0, 1],     None,       1.0),
            ([0],       [0],        [-1],       math.inf),
            ([0],       [-1],       None,       math.inf),
            ([0, 1],    [2, 1],     None,       math.inf),
            ([0, 1],    [0, 0.5],   [1, 0],     math.inf),
            ([0, 1],    [0],        None,       math.inf),
        ]
    )
    # yapf: enable
    def test_invalid(self, times, values, slopes, horizon):
        with pytest.raises(ValueError):
            StepFunction(times, values, slopes, horizon)

    def test_evaluation(self):
        assert STAIRS(1.5) == 3.0
        assert STAIRS([0, 0.99, 2.9]).tolist() == [1.0, 1.0, 6.0]
        assert STAIRS.left_limit(1) == 1.0
        assert STAIRS.left_limit(3) == 6.0

    def test_horizon(self):
        with pytest.raises(HorizonExceeded) as info:
            STAIRS(3)
        assert info.value.horizon == 3
        assert STAIRS.known([0, 2.5, 3, -1]).tolist() == [True, True, False, False]

    @pytest.mark.parametrize('t', [-1, [0.5, -0.5]])
    def test_negative_time(self, t):
        with pytest.raises(ValueError):
            STAIRS(t)

    def test_left_limit_at_zero(self):
        with pytest.raises(ValueError):
            STAIRS.left_limit(0)

    # yapf: disable
    @pytest.mark.parametrize(
        '   level,  expected',
        [
            (0,     0.0),
            (1,     0.0),
            (2,     1.0),
            (3,     1.0),
            (6,     2.0),
            (7,     3.0),
        ]
    )
    # yapf: enable
    def test_first_reach(self, level, expected):
        assert STAIRS.first_reach(level) == expected

    def test_ramp(self):
        ramp = StepFunction([0, 1], [0, 1], [1, 0], horizon=5)
        assert ramp(0.25) == 0.25
        assert ramp.first_reach(0.5) == 0.5
        assert ramp.ends.tolist() == [1.0, 1.0]
        assert ramp.slope_at([0.5, 2]).tolist() == [1.0, 0.0]
        assert ramp.jump_times().size == 0

    def test_jump_times(self):
        assert STAIRS.jump_times().tolist() == [1.0, 2.0]
        assert STAIRS.jump_times(2).tolist() == [1.0]

    def test_continuing_pieces_are_merged(self):
        merged = StepFunction([0, 1, 2], [0, 1, 2], [1, 1, 1])
        assert merged == StepFunction.identity()

    def test_partial_sums(self):
        sums = StepFunction.partial_sums([1, 0, 2])
        assert sums.times.tolist() == [0.0, 2.0]
        assert sums.horizon == 3
        assert StepFunction.partial_sums([]).horizon == 0

    def test_counting(self):
        counts = StepFunction.counting([5, 2, 2], horizon=6)
        assert counts.times.tolist() == [0.0, 2.0, 5.0]
        assert counts.values.tolist() == [0.0, 2.0, 3.0]
        assert StepFunction.counting([0, 1]).values.tolist() == [1.0, 2.0]

    def test_bounded(self):
        assert StepFunction.counting([1]).is_bounded
        assert not StepFunction.counting([1], horizon=2).is_bounded
        assert not StepFunction.identity().is_bounded

    @given(event_lists, event_lists)
    def test_add(self, first, second):
        x = StepFunction.counting(first, 60)
        y = StepFunction.counting(second, 80)
        total = x + y
        assert total.horizon == 60
        grid = np.linspace(0, 59.5, 120)
        assert np.array_equal(total(grid), x(grid) + y(grid))

    def test_add_other_type(self):
        with pytest.raises(TypeError):
            STAIRS + 1

    def test_unhashable(self):
        with pytest.raises(TypeError):
            hash(STAIRS)


class TestInverse:
    @given(event_lists, st.floats(min_value=0.0, max_value=0.999))
    def test_inverse_property(self, events, fraction):
        x = StepFunction.counting(events, 60.0)
        inverse = rc_inverse(x)
        t = fraction * len(events)
        s = inverse(t)
        assert x(s) > t
        if s > 0:
            assert x.left_limit(s) <= t

    def test_inverse_horizon(self):
        inverse = rc_inverse(StepFunction.counting([1, 3], horizon=5))
        assert inverse.horizon == 2
        assert inverse([0, 1.5]).tolist() == [1.0, 3.0]

    def test_ramp_inverse(self):
        ramp = StepFunction([0, 1, 3], [0, 2, 5], [2, 0, 1])
        inverse = rc_inverse(ramp)
        assert inverse(1.0) == 0.5
        assert inverse(2.5) == 3.0
        assert inverse(5.0) == 3.0
        assert inverse(7.0) == 5.0

    def test_bounded(self):
        with pytest.raises(NotProper):
            rc_inverse(StepFunction([0, 1], [0, 2], [1, 0]))
        with pytest.raises(ValueError):
            StepFunction.counting([1, 2]).inverse()

    def test_method(self):
        assert STAIRS.inverse() == rc_inverse(STAIRS)


class TestCompose:
    RAMPS = StepFunction([0, 1, 2.5], [0, 2, 4], [0, 1, 0], horizon=5)

    def test_identity(self):
        assert compose(self.RAMPS, StepFunction.identity()) == self.RAMPS
        assert compose(StepFunction.identity(), self.RAMPS) == self.RAMPS

    def test_horizon(self):
        doubled = compose(self.RAMPS, StepFunction([0], [0], [2]))
        assert doubled.horizon == 2.5
        assert doubled(1.5) == self.RAMPS(3.0)

    def test_compose_inverse(self):
        counts = StepFunction.counting([1, 2, 3], horizon=10)
        assert compose_inverse(counts, StepFunction.identity(), 2.5) == 2.0
        with pytest.raises(NotProper):
            compose_inverse(counts, StepFunction.counting([1]), 0.5)


class TestRangeOperators:
    # yapf: disable
    @pytest.mark.parametrize(
        '   t,      g,      d',
        [
            (0.5,   0.0,    1.0),
            (1.0,   1.0,    3.0),
            (3.0,   3.0,    6.0),
            (4.0,   3.0,    6.0),
        ]
    )
    # yapf: enable
    def test_stairs(self, t, g, d):
        assert g_op(STAIRS, t) == g
        assert d_op(STAIRS, t) == d

    def test_beyond_range(self):
        with pytest.raises(HorizonExceeded):
            g_op(STAIRS, 6)
        with pytest.raises(HorizonExceeded):
            d_op(STAIRS, [1, 7])

    def test_ramp(self):
        ramp = StepFunction([0, 1], [0, 3], [1, 0])
        assert g_op(ramp, 0.5) == 0.5
        assert d_op(ramp, 0.5) == 0.5
        assert g_op(ramp, 2) == 1.0
        assert d_op(ramp, 2) == 3.0

    def test_vectorized(self):
        assert g_op(STAIRS, [0.5, 4]).tolist() == [0.0, 3.0]


class TestWilliamsCheck:
    def test_seven_step_example(self):
        trace = trace_from_labels(SEVEN_STEP_LABELS, 2)
        occupation = occupation_step_functions(SEVEN_STEP_LABELS, 2)
        assert rc_inverse(occupation[0])(0) == 1.0
        report = williams_discrete_check(trace, occupation, [0, 0.5, 1, 2])
        assert report.passed
        assert report.checked > 0

    def test_boole_orbit(self):
        labels = BOOLE_PARTITION.label(orbit(BOOLE, OrbitConfig(0.3, 3000, 'error')))
        trace = trace_from_labels(labels, 2)
        report = williams_discrete_check(trace, occupation_step_functions(labels, 2), np.arange(0, 500, 0.5))
        assert report.passed
        assert report.checked > 0

    def test_swapped_rays(self):
        trace = ExcursionTrace(2, [2, 1, 0], [2, 3, 1], True)
        report = williams_discrete_check(trace, occupation_step_functions(SEVEN_STEP_LABELS, 2), [0, 1])
        assert not report.passed
        assert report.violations[0][:3] == ('inverse occupation', 1, 0.0)


class TestSkorokhodBound:
    JUMP = StepFunction([0, 1], [0, 1], horizon=4)

    def test_equal(self):
        assert j1_upper_bound(self.JUMP, self.JUMP, 4.0) == 0.0

    @settings(max_examples=20, deadline=None)
    @given(st.floats(min_value=0.01, max_value=0.5))
    def test_shifted_jump(self, shift):
        shifted = StepFunction([0, 1 + shift], [0, 1], horizon=4)
        assert j1_upper_bound(self.JUMP, shifted, 4.0) <= math.log(1 + shift) + 1e-9

    def test_value_gap(self):
        higher = StepFunction([0, 1], [0, 1.5], horizon=4)
        assert j1_upper_bound(self.JUMP, higher, 4.0) == pytest.approx(0.5)

    def test_invalid_horizon(self):
        with pytest.raises(ValueError):
            j1_upper_bound(self.JUMP, self.JUMP, 5.0)
