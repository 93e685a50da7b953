"""Deterministic work distribution.

Tasks are mapped over a thread pool but the reduction always happens in
input order, so results are bit-identical regardless of the worker count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")

_ENV_VAR = "LMOMENT_THREADS"


def resolve_threads(requested: int | None = None) -> int:
    """CLI flag first, LMOMENT_THREADS next, single-threaded otherwise."""
    if requested is not None and requested > 0:
        return requested
    env = os.environ.get(_ENV_VAR)
    if env:
        try:
            val = int(env)
            if val > 0:
                return val
        except ValueError:
            pass
    return 1


def ordered_map(fn: Callable[[T], R], items: Sequence[T], threads: int = 1) -> list[R]:
    """Map fn over items, results returned in input order."""
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def ordered_max(values: Iterable[float]) -> float:
    """Maximum with a fixed left-to-right reduction order."""
    out = float("-inf")
    for v in values:
        if v > out:
            out = v
    return out
