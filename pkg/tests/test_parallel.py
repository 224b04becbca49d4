# -*- coding: utf-8 -*-
import os

from hypothesis import given
import hypothesis.strategies as st
import pytest

from intermittency.harness.parallel import THREADS_VARIABLE, resolve_workers, run_replicas


@pytest.fixture
def no_cap(monkeypatch):
    monkeypatch.delenv(THREADS_VARIABLE, raising=False)


class TestResolveWorkers:
    def test_requested(self, no_cap):
        assert resolve_workers(3) == 3
        assert resolve_workers(0) == 1

    def test_default(self, no_cap):
        assert resolve_workers() == (os.cpu_count() or 1)

    @pytest.mark.parametrize('cap, requested, expected', [('2', 8, 2), ('2', 1, 1), ('16', 4, 4)])
    def test_cap(self, monkeypatch, cap, requested, expected):
        monkeypatch.setenv(THREADS_VARIABLE, cap)
        assert resolve_workers(requested) == expected

    @pytest.mark.parametrize('cap', ['abc', '0', '-3', '1.5'])
    def test_invalid_cap(self, monkeypatch, cap):
        monkeypatch.setenv(THREADS_VARIABLE, cap)
        with pytest.raises(ValueError) as info:
            resolve_workers(2)
        assert THREADS_VARIABLE in str(info.value)


class TestRunReplicas:
    @given(st.sets(st.integers(min_value=-1000, max_value=1000)), st.integers(min_value=1, max_value=7))
    def test_index_order(self, indices, chunk):
        assert run_replicas(abs, indices, workers=1, chunk=chunk) == [abs(i) for i in sorted(indices)]

    def test_process_pool(self, no_cap):
        indices = list(range(-5, 5))
        assert run_replicas(abs, indices, workers=2, chunk=3) == run_replicas(abs, indices, workers=1)

    def test_empty(self):
        assert run_replicas(abs, [], workers=4) == []
