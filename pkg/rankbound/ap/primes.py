from __future__ import annotations

import math
import typing as t
from dataclasses import dataclass

import numpy as np

__all__ = "PrimeRange", "sieve_primes", "sieve_segment", "base_primes"

_MAX_BOUND = (1 << 63) - 1


@dataclass(frozen=True)
class PrimeRange:
    """Closed interval [lo, hi] cut into contiguous chunks of ``chunk_size`` integers.

    Chunk boundaries depend only on (lo, hi, chunk_size), so any consumer that
    merges per-chunk results by index sees the same order.
    """

    lo: int
    hi: int
    chunk_size: int = 1 << 18

    def __post_init__(self):
        if self.chunk_size <= 0:
            raise ValueError("Chunk size should be a positive integer")
        if self.hi > _MAX_BOUND:
            raise ValueError("Upper bound should be below 2**63")

    @property
    def empty(self) -> bool:
        return self.hi < max(self.lo, 2)

    def chunks(self) -> t.Iterator[t.Tuple[int, int, int]]:
        """ Yield ``(index, lo, hi)`` for each chunk, ascending """
        if self.empty:
            return

        lo = max(self.lo, 2)
        for index, start in enumerate(range(lo, self.hi + 1, self.chunk_size)):
            yield index, start, min(start + self.chunk_size - 1, self.hi)


def base_primes(limit: int) -> np.ndarray:
    """ All primes <= limit by a plain sieve; used to strike segments """
    if limit < 2:
        return np.empty(0, dtype=np.int64)

    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


def sieve_segment(lo: int, hi: int, base: t.Optional[np.ndarray] = None) -> np.ndarray:
    """ Primes in [lo, hi] as an ascending int64 array """
    lo = max(lo, 2)
    if hi < lo:
        return np.empty(0, dtype=np.int64)
    if base is None:
        base = base_primes(math.isqrt(hi))

    mask = np.ones(hi - lo + 1, dtype=bool)
    for p in base.tolist():
        square = p * p
        if square > hi:
            break
        start = max(square, -(-lo // p) * p)
        mask[start - lo :: p] = False

    return np.flatnonzero(mask).astype(np.int64) + lo


def sieve_primes(prime_range: PrimeRange) -> t.Iterator[int]:
    """ Stream the primes of ``prime_range`` in ascending order, one segment in memory at a time """
    if prime_range.empty:
        return

    base = base_primes(math.isqrt(prime_range.hi))
    for _, lo, hi in prime_range.chunks():
        yield from sieve_segment(lo, hi, base).tolist()
