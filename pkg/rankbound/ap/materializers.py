from __future__ import annotations

import abc
import typing as t
from dataclasses import dataclass

import numpy as np

from .counting import ApRecord, ApSource

__all__ = (
    "ApChunk",
    "ChunkMaterializer",
    "ArrayMaterializer",
    "RecordMaterializer",
    "PairMaterializer",
    "SOURCE_CODES",
)

ResultT = t.TypeVar("ResultT", covariant=True)

SOURCE_CODES: t.Tuple[ApSource, ...] = (ApSource.Naive, ApSource.BSGS, ApSource.BadPrime, ApSource.Cached)
_CODE_OF = {source: np.uint8(code) for code, source in enumerate(SOURCE_CODES)}


@dataclass
class ApChunk:
    """ Ascending (p, a_p) arrays of one contiguous prime chunk """

    __slots__ = "index", "lo", "hi", "primes", "traces", "sources"

    index: int
    lo: int
    hi: int
    primes: np.ndarray
    traces: np.ndarray
    sources: np.ndarray

    def __len__(self):
        return self.primes.shape[0]

    @classmethod
    def empty(cls, index: int, lo: int, hi: int) -> ApChunk:
        return cls(
            index,
            lo,
            hi,
            np.empty(0, dtype=np.int64),
            np.empty(0, dtype=np.int64),
            np.empty(0, dtype=np.uint8),
        )

    @staticmethod
    def code(source: ApSource) -> np.uint8:
        return _CODE_OF[source]

    def upto(self, x_max: int) -> ApChunk:
        stop = int(np.searchsorted(self.primes, x_max, side="right"))
        return ApChunk(
            self.index,
            self.lo,
            min(self.hi, x_max),
            self.primes[:stop],
            self.traces[:stop],
            self.sources[:stop],
        )


class ChunkMaterializer(t.Generic[ResultT], abc.ABC):
    __slots__ = ()

    @abc.abstractmethod
    def __call__(self, chunks: t.Iterable[ApChunk]) -> t.Iterable[ResultT]:
        pass


class ArrayMaterializer(ChunkMaterializer[ApChunk]):
    __slots__ = ()

    def __call__(self, chunks):
        return iter(chunks)


class RecordMaterializer(ChunkMaterializer[ApRecord]):
    __slots__ = ()

    def __call__(self, chunks):
        for chunk in chunks:
            sources = [SOURCE_CODES[code] for code in chunk.sources.tolist()]
            yield from map(ApRecord, chunk.primes.tolist(), chunk.traces.tolist(), sources)


class PairMaterializer(ChunkMaterializer[t.Tuple[int, int]]):
    __slots__ = ()

    def __call__(self, chunks):
        for chunk in chunks:
            yield from zip(chunk.primes.tolist(), chunk.traces.tolist())
