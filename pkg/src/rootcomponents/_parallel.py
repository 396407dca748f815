"""Order-preserving process-pool map."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence


def pmap(fn: Callable, jobs: Sequence[tuple], parallelism: int = 1) -> list:
    """``[fn(*job) for job in jobs]``, spread over ``parallelism`` processes.

    Results come back in job order whatever the pool size, so output built
    from them is identical for every ``parallelism``.
    """
    if parallelism < 1:
        raise ValueError("parallelism must be >= 1")
    if parallelism == 1 or len(jobs) < 2:
        return [fn(*j) for j in jobs]
    with ProcessPoolExecutor(max_workers=min(parallelism, len(jobs))) as pool:
        return list(pool.map(fn, *zip(*jobs)))


def chunks(items: Sequence, n: int) -> list[list]:
    """Split into at most ``n`` contiguous, nearly equal pieces."""
    n = max(1, min(n, len(items)))
    k, r = divmod(len(items), n)
    out, start = [], 0
    for i in range(n):
        end = start + k + (i < r)
        out.append(list(items[start:end]))
        start = end
    return out
