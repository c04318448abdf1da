from __future__ import annotations

import collections
import typing as t
from concurrent.futures import Future, ProcessPoolExecutor

__all__ = ("ordered_map",)

ItemT = t.TypeVar("ItemT")
ResultT = t.TypeVar("ResultT")


def ordered_map(fn: t.Callable[[ItemT], ResultT], items: t.Iterable[ItemT], workers: int = 1) -> t.Iterator[ResultT]:
    """Lazy ``map`` over a process pool, yielding results in submission order.

    At most ``2 * workers`` items are in flight, so memory stays bounded on
    long inputs and the output sequence never depends on ``workers``.
    ``fn`` and the items must be picklable when ``workers > 1``.
    """
    if workers <= 0:
        raise ValueError("Worker count should be a positive integer")
    if workers == 1:
        yield from map(fn, items)
        return

    pending: t.Deque[Future] = collections.deque()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        try:
            for item in items:
                pending.append(pool.submit(fn, item))
                if len(pending) >= 2 * workers:
                    yield pending.popleft().result()
            while pending:
                yield pending.popleft().result()
        finally:
            for future in pending:
                future.cancel()
