"""Deterministic chunked execution of row-range kernels.

Every O(n^2) scan in the package is expressed as a function over a row
range [lo, hi).  run_chunks splits [0, total) into fixed-size ranges and
executes them either inline or on a thread pool (numpy kernels release the
GIL), always returning per-chunk results in range order, so outputs are
bit-identical regardless of the worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, TypeVar

T = TypeVar("T")

DEFAULT_CHUNK_ROWS = 256


def chunk_ranges(total: int, chunk: int) -> list[tuple[int, int]]:
    if chunk < 1:
        raise ValueError("chunk size must be positive")
    return [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]


def run_chunks(total: int, fn: Callable[[int, int], T], workers: int = 1,
               chunk: int = DEFAULT_CHUNK_ROWS) -> list[T]:
    """Apply fn(lo, hi) over consecutive ranges covering [0, total).

    Results come back ordered by range regardless of scheduling, so any
    order-sensitive merge done by the caller is worker-count independent.
    """
    ranges = chunk_ranges(total, chunk)
    if workers <= 1 or len(ranges) <= 1:
        return [fn(lo, hi) for lo, hi in ranges]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda r: fn(*r), ranges))
