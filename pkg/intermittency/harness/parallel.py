# -*- coding: utf-8 -*-
"""Replica parallelism with deterministic merging.

Replicas are processed in fixed chunks of consecutive indices. Every replica draws its randomness from
:func:`~intermittency.utils.replica_generator` with its own index, and the results are returned in index order, so the
outcome does not depend on the number of workers:

>>> run_replicas(abs, [2, -1, 0], workers=1, chunk=2)
[1, 0, 2]
"""
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, Sequence, TypeVar

from ..utils import chunked

__all__ = ['THREADS_VARIABLE', 'resolve_workers', 'run_replicas']

logger = logging.getLogger(__name__)

THREADS_VARIABLE = 'INTERMIT_THREADS'

T = TypeVar('T')


def resolve_workers(requested: Optional[int]=None) -> int:
    """The number of worker processes: *requested* or the CPU count, capped by ``INTERMIT_THREADS``.

    Raises:
        ValueError:
            If the environment variable is not a positive integer.
    """
    workers = requested if requested is not None else (os.cpu_count() or 1)
    cap = os.environ.get(THREADS_VARIABLE)
    if cap is not None:
        try:
            limit = int(cap)
        except ValueError:
            raise ValueError("{} must be a positive integer, got {!r}".format(THREADS_VARIABLE, cap)) from None
        if limit < 1:
            raise ValueError("{} must be a positive integer, got {!r}".format(THREADS_VARIABLE, cap))
        workers = min(workers, limit)
    return max(1, workers)


def _run_chunk(task: Callable[[int], T], indices: Sequence[int]) -> List[T]:
    return [task(index) for index in indices]


def run_replicas(task: Callable[[int], T], indices: Iterable[int], workers: Optional[int]=None,
                 chunk: int=64) -> List[T]:
    """Evaluate ``task(index)`` for all *indices* and return the results in index order.

    With a single worker everything runs in the calling process; otherwise chunks are distributed over a
    :class:`~concurrent.futures.ProcessPoolExecutor` and *task* must be picklable.
    """
    chunks = list(chunked(sorted(indices), chunk))
    workers = min(resolve_workers(workers), max(1, len(chunks)))
    logger.info('Running %d replicas in %d chunks on %d workers', sum(map(len, chunks)), len(chunks), workers)
    if workers == 1:
        results = [_run_chunk(task, indices) for indices in chunks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_run_chunk, [task] * len(chunks), chunks))
    return [result for block in results for result in block]
