"""Shared plumbing: deterministic RNG streams and a bounded parallel map.

Every randomized routine in the package draws from a Philox counter-based
generator keyed by (seed, stream index), so results are reproducible across
platforms and independent of execution order.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np


def rng_stream(seed: int, *stream: int) -> np.random.Generator:
    """Return a Philox generator for the given seed and stream indices.

    Distinct stream tuples give statistically independent streams; the same
    tuple always gives the same stream.
    """
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(i) for i in stream))
    return np.random.Generator(np.random.Philox(ss))


def resolve_threads(threads: int | None) -> int:
    """Resolve a worker count: explicit argument, then CMSV_THREADS, then 1."""
    if threads is not None:
        n = int(threads)
    else:
        n = int(os.environ.get("CMSV_THREADS", "1"))
    if n < 1:
        raise ValueError("thread count must be >= 1")
    return n


def parallel_map(fn, items, threads: int | None = None) -> list:
    """Map fn over items with at most `threads` workers.

    Results come back in input order regardless of scheduling, so any
    aggregation downstream is schedule-independent.
    """
    n = resolve_threads(threads)
    items = list(items)
    if n == 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
