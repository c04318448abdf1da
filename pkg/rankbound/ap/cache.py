from __future__ import annotations

import contextlib
import logging
import os
import typing as t
from pathlib import Path

import numpy as np

from ..base import CacheError
from ..curves import WeierstrassCurve
from .counting import ApSource, curve_hash
from .materializers import ApChunk

__all__ = "ApCache", "HEADER_DTYPE", "RECORD_DTYPE"

logger = logging.getLogger(__name__)

HEADER_DTYPE = np.dtype([("magic", "S4"), ("reserved", "<u4"), ("hash", "<u8")])
RECORD_DTYPE = np.dtype([("p", "<u8"), ("ap", "<i8")])


class ApCache(contextlib.AbstractContextManager):
    """Append-only file of (p, a_p) records for one curve.

    The file starts with a 16-byte header (magic ``APV1``, a reserved word and
    the curve hash) followed by little-endian ``(u64 p, i64 ap)`` records in
    ascending p. Every prime up to the last stored one is present, since
    records are only ever appended a whole chunk at a time.

    >>> with ApCache(cache_dir, curve) as cache:
    >>>     head = cache.read(x_max)
    >>>     cache.extend(chunk)
    """

    MAGIC = b"APV1"
    SUFFIX = ".apv1"

    def __init__(self, directory: t.Union[str, os.PathLike], curve: WeierstrassCurve, *, readonly: bool = False):
        self.directory = Path(directory)
        self.curve_hash = curve_hash(curve)
        self.readonly = readonly
        self._file: t.Optional[t.BinaryIO] = None
        self._last_prime = 1

    @property
    def path(self) -> Path:
        return self.directory / f"{self.curve_hash:016x}{self.SUFFIX}"

    @property
    def last_prime(self) -> int:
        return self._last_prime

    def __enter__(self):
        if self.readonly:
            self._file = self.path.open("rb") if self.path.exists() else None
        else:
            self.directory.mkdir(parents=True, exist_ok=True)
            self._file = self.path.open("r+b" if self.path.exists() else "w+b")

        if self._file is not None:
            self._prepare_file()
        return self

    def __exit__(self, *exc_info):
        if self._file is not None:
            self._file.close()
            self._file = None
        return False

    def read(self, x_max: int) -> ApChunk:
        """ Cached records with p <= x_max as a single chunk """
        records = self._records()
        primes = records["p"].astype(np.int64)
        chunk = ApChunk(
            -1,
            2,
            min(x_max, self._last_prime),
            primes,
            records["ap"].astype(np.int64),
            np.full(primes.shape[0], ApChunk.code(ApSource.Cached), dtype=np.uint8),
        )
        return chunk.upto(x_max)

    def extend(self, chunk: ApChunk):
        if self._file is None or self.readonly:
            raise CacheError("Cache is not open for writing")
        if not len(chunk):
            return
        if int(chunk.primes[0]) <= self._last_prime:
            raise CacheError(f"Chunk starting at {int(chunk.primes[0])} overlaps cached records")

        records = np.empty(len(chunk), dtype=RECORD_DTYPE)
        records["p"] = chunk.primes
        records["ap"] = chunk.traces

        self._file.seek(0, os.SEEK_END)
        self._file.write(records.tobytes())
        self._file.flush()
        self._last_prime = int(chunk.primes[-1])

    def _records(self) -> np.ndarray:
        if self._file is None:
            return np.empty(0, dtype=RECORD_DTYPE)

        self._file.seek(HEADER_DTYPE.itemsize)
        raw = self._file.read()
        usable = len(raw) - len(raw) % RECORD_DTYPE.itemsize
        return np.frombuffer(raw[:usable], dtype=RECORD_DTYPE)

    def _prepare_file(self):
        assert self._file is not None
        size = self._file.seek(0, os.SEEK_END)

        if size == 0 and not self.readonly:
            header = np.zeros(1, dtype=HEADER_DTYPE)
            header["magic"] = self.MAGIC
            header["hash"] = self.curve_hash
            self._file.write(header.tobytes())
            self._file.flush()
            return

        self._file.seek(0)
        raw = self._file.read(HEADER_DTYPE.itemsize)
        if len(raw) < HEADER_DTYPE.itemsize:
            raise CacheError(f"Truncated cache header in {self.path}")

        header = np.frombuffer(raw, dtype=HEADER_DTYPE)[0]
        if bytes(header["magic"]) != self.MAGIC:
            raise CacheError(f"{self.path} is not an a_p cache file")
        if int(header["hash"]) != self.curve_hash:
            raise CacheError(f"{self.path} belongs to another curve")

        # A torn trailing record from an interrupted write is dropped
        excess = (size - HEADER_DTYPE.itemsize) % RECORD_DTYPE.itemsize
        if excess and not self.readonly:
            self._file.truncate(size - excess)
            logger.warning("Dropped %d trailing bytes from %s", excess, self.path)

        records = self._records()
        if records.shape[0]:
            self._last_prime = int(records["p"][-1])
