"""Bounded fan-out with results returned in input order."""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from .logger import get_logger

logger = get_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> List[R]:
    """Apply fn to every item; serial when threads <= 1.

    Results keep the order of `items` so callers can pick the first
    success and get the same answer as a serial run.
    """
    work = list(items)
    if threads <= 1 or len(work) <= 1:
        return [fn(item) for item in work]
    logger.debug(f"Fanning out {len(work)} tasks over {threads} threads")
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, work))


def first_success(fn: Callable[[T], Optional[R]], items: Iterable[T], threads: int = 1) -> Optional[R]:
    """First non-None result in input order.

    Work is consumed in chunks of `threads` items, so a serial run stops at
    the first witness and a parallel run never looks past the chunk that
    holds it.
    """
    if threads <= 1:
        for item in items:
            result = fn(item)
            if result is not None:
                return result
        return None
    chunk: List[T] = []
    for item in items:
        chunk.append(item)
        if len(chunk) == threads:
            for result in parallel_map(fn, chunk, threads):
                if result is not None:
                    return result
            chunk = []
    for result in parallel_map(fn, chunk, threads):
        if result is not None:
            return result
    return None
