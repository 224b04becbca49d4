# -*- coding: utf-8 -*-
import math

from hypothesis import given
import hypothesis.strategies as st
import numpy as np
import pytest

from intermittency.dynamics.maps import (
    BOOLE, boole_eval, boole_measure, invariant_density_boole, make_thaler_family
)
from intermittency.errors import EndpointSingularity

unit_points = st.floats(min_value=0.01, max_value=0.99)


class TestBoole:
    # yapf: disable
    @pytest.mark.parametrize(
        '   x,      expected',
        [
            (0.0,   0.0),
            (0.5,   1.0),
            (1.0,   1.0),
            (0.25,  0.25 * 0.75 / (1 - 0.25 - 0.0625)),
            (0.75,  1 - 0.25 * 0.75 / (1 - 0.25 - 0.0625)),
        ]
    )
    # yapf: enable
    def test_values(self, x, expected):
        assert BOOLE(x) == pytest.approx(expected, abs=1e-15)
        assert boole_eval(x) == BOOLE(x)

    def test_structure(self):
        assert BOOLE.d == 2
        assert BOOLE.a == (0.0, 0.5, 1.0)
        assert BOOLE.x == (0.0, 1.0)
        assert BOOLE.alpha == 0.5
        assert BOOLE.has_density
        assert BOOLE.is_symmetric()

    @given(st.floats(min_value=0.001, max_value=0.499))
    def test_symmetry(self, x):
        assert BOOLE(1 - x) == pytest.approx(1 - BOOLE(x), abs=1e-12)

    @given(unit_points, st.sampled_from([1, 2]))
    def test_inverse_branches(self, y, j):
        x = BOOLE.inverse(j, y)
        assert BOOLE.a[j - 1] <= x <= BOOLE.a[j]
        assert BOOLE(x) == pytest.approx(y, abs=1e-12)

    def test_inverse_out_of_range(self):
        with pytest.raises(ValueError):
            BOOLE.inverse(3, 0.5)
        with pytest.raises(ValueError):
            BOOLE.inverse(1, 1.5)

    @given(st.floats(min_value=0.01, max_value=0.49))
    def test_derivative(self, x):
        step = 1e-6
        difference = (BOOLE(x + step) - BOOLE(x - step)) / (2 * step)
        assert BOOLE.derivative(x) == pytest.approx(difference, rel=1e-6)

    @given(unit_points)
    def test_density_is_invariant(self, y):
        # the transfer operator fixes the density
        image = sum(
            invariant_density_boole(BOOLE.inverse(j, y)) * BOOLE.inverse_derivative(j, y) for j in (1, 2)
        )
        assert image == pytest.approx(invariant_density_boole(y), rel=1e-9)

    @pytest.mark.parametrize('x', [0.0, 1.0, np.array([0.5, 1.0])])
    def test_density_singular(self, x):
        with pytest.raises(EndpointSingularity):
            invariant_density_boole(x)

    def test_measure_of_junction(self):
        gamma = math.sqrt(2) - 1
        assert boole_measure(gamma, 1 - gamma) == pytest.approx(math.sqrt(2), rel=1e-12)
        with pytest.raises(EndpointSingularity):
            boole_measure(0.0, 0.5)


class TestThalerFamily:
    # yapf: disable
    @pytest.mark.parametrize(
        '   d,  alpha,  c',
        [
            (2, 0.5,    (1, 1)),
            (2, 0.3,    (1, 2)),
            (3, 0.7,    (1, 1, 1)),
            (3, 0.5,    (2, math.inf, 1)),
            (4, 0.6,    (1, 0.5, 1, 2)),
        ]
    )
    # yapf: enable
    def test_full_branches(self, d, alpha, c):
        spec = make_thaler_family(d, alpha, c)
        assert spec.d == d
        assert spec.x == tuple(j / (d - 1) for j in range(d))
        assert not spec.has_density
        for j in range(1, d + 1):
            assert spec.evaluate_branch(j, spec.x[j - 1]) == spec.x[j - 1]
            assert spec.evaluate_branch(j, spec.a[j - 1]) == pytest.approx(0.0, abs=1e-9)
            assert spec.evaluate_branch(j, spec.a[j]) == pytest.approx(1.0, abs=1e-9)

    @given(st.floats(min_value=0.2, max_value=0.9), unit_points)
    def test_inverse(self, alpha, y):
        spec = make_thaler_family(3, alpha, (1, 1, 1))
        for j in (1, 2, 3):
            assert spec(spec.inverse(j, y)) == pytest.approx(y, abs=1e-9)

    def test_local_behaviour(self):
        spec = make_thaler_family(2, 0.5, (2, 1))
        h = 1e-3
        # T(h) - h ~ c_1 h^(1 + 1/alpha)
        assert (spec(h) - h) / h**3 == pytest.approx(2.0, rel=1e-2)

    def test_reserved_boole(self):
        assert make_thaler_family(2, 0.5, (1, 1), 'boole') is BOOLE
        with pytest.raises(ValueError):
            make_thaler_family(3, 0.5, (1, 1, 1), 'boole')

    # yapf: disable
    @pytest.mark.parametrize(
        '   d,      alpha,  c,                      family',
        [
            (1,     0.5,    (1, ),                  'thaler'),
            (2,     1.0,    (1, 1),                 'thaler'),
            (2,     0.0,    (1, 1),                 'thaler'),
            (2,     0.5,    (1, ),                  'thaler'),
            (2,     0.5,    (1, -1),                'thaler'),
            (2,     0.5,    (math.inf, math.inf),   'thaler'),
            (2,     0.5,    (1, 1),                 'other'),
            (2,     0.5,    (1e6, 1e6),             'thaler'),
        ]
    )
    # yapf: enable
    def test_invalid(self, d, alpha, c, family):
        with pytest.raises(ValueError):
            make_thaler_family(d, alpha, c, family)

    def test_density_unavailable(self):
        with pytest.raises(NotImplementedError):
            make_thaler_family(2, 0.5, (1, 1)).density(0.5)
