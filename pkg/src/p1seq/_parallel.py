"""Process-pool fan-out used by the parallelizable operations.

Callers split work into independent chunks and merge the results in chunk
order, so the output never depends on the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def default_workers() -> int:
    return os.cpu_count() or 1


def run_chunks(fn: Callable[[T], R], chunks: Sequence[T], workers: int = 1) -> list[R]:
    """Apply ``fn`` to every chunk, returning results in chunk order."""
    if workers <= 1 or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    with ProcessPoolExecutor(max_workers=min(workers, len(chunks))) as pool:
        return list(pool.map(fn, chunks))


def split_range(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    """Split the half-open range [lo, hi) into at most ``parts`` contiguous pieces."""
    n = hi - lo
    if n <= 0:
        return []
    parts = max(1, min(parts, n))
    step, extra = divmod(n, parts)
    out, start = [], lo
    for i in range(parts):
        end = start + step + (1 if i < extra else 0)
        out.append((start, end))
        start = end
    return out
