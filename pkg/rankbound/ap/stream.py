from __future__ import annotations

import collections
import contextlib
import logging
import time
import typing as t
from dataclasses import dataclass, field

import numpy as np

from ..base import HasseViolation, InternalAmbiguity
from ..curves import WeierstrassCurve, classify_reduction
from ..parallel import ordered_map
from ..settings import MIN_BSGS_PRIME, Settings
from . import kernels
from .cache import ApCache
from .counting import ApSource, curve_hash, prime_seed
from .materializers import (
    SOURCE_CODES,
    ApChunk,
    ArrayMaterializer,
    ChunkMaterializer,
    PairMaterializer,
    RecordMaterializer,
)
from .primes import PrimeRange, sieve_segment

__all__ = "ApStream", "StreamStats", "ap_stream", "compute_chunk", "ChunkJob"

logger = logging.getLogger(__name__)

ResultT = t.TypeVar("ResultT")
NewResultT = t.TypeVar("NewResultT")

_NAIVE = ApChunk.code(ApSource.Naive)
_BSGS = ApChunk.code(ApSource.BSGS)
_BAD = ApChunk.code(ApSource.BadPrime)


@dataclass(frozen=True)
class ChunkJob:
    curve: WeierstrassCurve
    index: int
    lo: int
    hi: int
    naive_threshold: int
    curve_hash: int


@dataclass
class StreamStats:
    primes: int = 0
    seconds: float = 0.0
    sources: t.Counter[str] = field(default_factory=collections.Counter)

    @property
    def throughput(self) -> float:
        return self.primes / self.seconds if self.seconds > 0 else 0.0

    def add(self, chunk: ApChunk):
        self.primes += len(chunk)
        codes, counts = np.unique(chunk.sources, return_counts=True)
        for code, count in zip(codes.tolist(), counts.tolist()):
            self.sources[SOURCE_CODES[code].value] += count


def compute_chunk(job: ChunkJob) -> ApChunk:
    """Traces for every prime of one chunk.

    Primes dividing the input discriminant go through ``classify_reduction``
    (they may still be good on a p-minimal model); the rest are split between
    naive counting and baby-step giant-step by ``naive_threshold``.
    """
    curve = job.curve
    primes = sieve_segment(job.lo, job.hi)
    if not primes.shape[0]:
        return ApChunk.empty(job.index, job.lo, job.hi)

    plist = primes.tolist()
    disc = curve.disc
    suspect = np.fromiter((disc % p == 0 for p in plist), dtype=bool, count=len(plist))

    traces = np.zeros(primes.shape[0], dtype=np.int64)
    sources = np.empty(primes.shape[0], dtype=np.uint8)
    threshold = max(job.naive_threshold, MIN_BSGS_PRIME - 1)

    naive = ~suspect & (primes <= threshold)
    if naive.any():
        ps = primes[naive]
        coeffs = np.array([curve.reduce(p) for p in ps.tolist()], dtype=np.int64).reshape(-1, 5)
        out = np.empty(ps.shape[0], dtype=np.int64)
        kernels.naive_traces(ps, *(np.ascontiguousarray(column) for column in coeffs.T), out)
        traces[naive], sources[naive] = out, _NAIVE

    bsgs = ~suspect & (primes > threshold)
    if bsgs.any():
        ps = primes[bsgs]
        pl = ps.tolist()
        a = np.fromiter(((-27 * curve.c4) % p for p in pl), dtype=np.int64, count=len(pl))
        b = np.fromiter(((-54 * curve.c6) % p for p in pl), dtype=np.int64, count=len(pl))
        seeds = np.fromiter((prime_seed(job.curve_hash, p) for p in pl), dtype=np.uint64, count=len(pl))
        out = np.empty(len(pl), dtype=np.int64)
        status = np.empty(len(pl), dtype=np.int64)
        kernels.bsgs_traces(ps, a, b, seeds, out, status)
        if status.any():
            p = int(ps[np.flatnonzero(status)[0]])
            raise InternalAmbiguity(f"Could not isolate a_{p} for {curve}")
        traces[bsgs], sources[bsgs] = out, _BSGS

    for i in np.flatnonzero(suspect).tolist():
        local = classify_reduction(curve, plist[i])
        traces[i] = local.ap
        if local.type.is_bad:
            sources[i] = _BAD
        else:
            sources[i] = _NAIVE if plist[i] <= threshold else _BSGS

    good = sources != _BAD
    # a^2 > 4 p, kept inside int64 for every p < 2**63
    outside = (traces * traces) // 4 + (traces & 1) > primes
    if np.any(outside & good):
        p = int(primes[np.argmax(outside & good)])
        raise HasseViolation(f"a_{p} out of the Hasse interval for {curve}")

    return ApChunk(job.index, job.lo, job.hi, primes, traces, sources)


class ApStream(t.Generic[ResultT]):
    """Ordered a_p data for every prime up to ``x_max``.

    Iterating the stream yields whatever its materializer produces: ``ApRecord``
    objects by default, ``(p, ap)`` pairs or raw chunk arrays through
    ``as_type``. The output does not depend on the worker count, since chunks are
    merged by index.
    """

    def __init__(
        self,
        curve: WeierstrassCurve,
        x_max: int,
        settings: t.Optional[Settings] = None,
        materializer: ChunkMaterializer = RecordMaterializer(),
    ):
        self.curve = curve
        self.x_max = int(x_max)
        self.settings = settings or Settings()
        self.materializer = materializer
        self.stats = StreamStats()

    def __iter__(self) -> t.Iterator[ResultT]:
        return iter(self.materializer(self.chunks()))

    def as_type(self, materializer: ChunkMaterializer[NewResultT]) -> ApStream[NewResultT]:
        return ApStream(self.curve, self.x_max, self.settings, materializer)

    def records(self):
        return self.as_type(RecordMaterializer())

    def pairs(self):
        return self.as_type(PairMaterializer())

    def arrays(self):
        return self.as_type(ArrayMaterializer())

    def chunks(self) -> t.Iterator[ApChunk]:
        self.stats = stats = StreamStats()
        started = time.perf_counter()

        with self._cache() as cache:
            lo = 2
            if cache is not None and cache.last_prime > 1:
                head = cache.read(self.x_max)
                stats.add(head)
                logger.info("Served %d cached traces for %s", len(head), self.curve)
                yield head
                lo = cache.last_prime + 1

            settings = self.settings
            prime_range = PrimeRange(lo, self.x_max, settings.chunk_size)
            hash_ = curve_hash(self.curve)
            jobs = (
                ChunkJob(self.curve, index, chunk_lo, chunk_hi, settings.naive_threshold, hash_)
                for index, chunk_lo, chunk_hi in prime_range.chunks()
            )

            for chunk in ordered_map(compute_chunk, jobs, settings.workers):
                logger.debug("Chunk %d [%d, %d]: %d primes", chunk.index, chunk.lo, chunk.hi, len(chunk))
                if cache is not None:
                    cache.extend(chunk)
                stats.add(chunk)
                yield chunk

        stats.seconds = time.perf_counter() - started
        logger.info(
            "Traces up to %d for %s: %d primes in %.2fs (%.0f primes/s)",
            self.x_max,
            self.curve,
            stats.primes,
            stats.seconds,
            stats.throughput,
        )

    def _cache(self) -> t.ContextManager[t.Optional[ApCache]]:
        if self.settings.cache_dir is None:
            return contextlib.nullcontext()
        return ApCache(self.settings.cache_dir, self.curve)


def ap_stream(curve: WeierstrassCurve, x_max: int, settings: t.Optional[Settings] = None) -> ApStream[t.Any]:
    """ One ``ApRecord`` per prime p <= x_max, ascending, for any worker count """
    return ApStream(curve, x_max, settings)
