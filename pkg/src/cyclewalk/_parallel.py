from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Optional, TypeVar

from .errors import DomainError

T = TypeVar("T")
R = TypeVar("R")

JOBS_ENV = "CYCLEWALK_JOBS"


def resolve_jobs(jobs: Optional[int] = None) -> int:
    """Explicit value, else ``$CYCLEWALK_JOBS``, else the CPU count."""
    if jobs is None:
        env = os.environ.get(JOBS_ENV)
        if env:
            try:
                jobs = int(env)
            except ValueError:
                raise DomainError(f"{JOBS_ENV} must be an integer, got {env!r}") from None
        else:
            jobs = os.cpu_count() or 1
    if jobs < 1:
        raise DomainError(f"jobs must be >= 1, got {jobs}")
    return jobs


def parallel_map(fn: Callable[[T], R], items: Iterable[T], jobs: Optional[int] = None) -> list[R]:
    """Order-preserving map; runs in-process when one job or one item."""
    items = list(items)
    jobs = min(resolve_jobs(jobs), len(items)) if items else 1
    if jobs <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))
