from __future__ import annotations

import dataclasses
import os
import typing as t
from pathlib import Path

__all__ = "Settings", "MIN_BSGS_PRIME"

# Below this bound the twist argument may not isolate a_p, so naive counting is forced.
MIN_BSGS_PRIME = 230

_ENV_PREFIX = "RANKBOUND_"


@dataclasses.dataclass(frozen=True)
class Settings:
    cache_dir: t.Optional[Path] = None
    naive_threshold: int = 2000
    chunk_size: int = 1 << 18
    workers: int = 1
    quad_tolerance: float = 1e-8
    tail_height: float = 500.0
    eps_guard: float = 1e-6

    def __post_init__(self):
        if self.chunk_size <= 0:
            raise ValueError("Chunk size should be a positive integer")
        if self.workers <= 0:
            raise ValueError("Worker count should be a positive integer")
        if self.quad_tolerance <= 0:
            raise ValueError("Quadrature tolerance should be positive")
        if self.naive_threshold < MIN_BSGS_PRIME - 1:
            object.__setattr__(self, "naive_threshold", MIN_BSGS_PRIME - 1)
        if self.cache_dir is not None and not isinstance(self.cache_dir, Path):
            object.__setattr__(self, "cache_dir", Path(self.cache_dir))

    @classmethod
    def from_env(cls, environ: t.Mapping[str, str] = os.environ, **overrides) -> Settings:
        values: dict = {}

        if cache_dir := environ.get(f"{_ENV_PREFIX}CACHE_DIR"):
            values["cache_dir"] = Path(cache_dir)

        for field, name in (
            ("naive_threshold", "NAIVE_THRESHOLD"),
            ("chunk_size", "CHUNK_SIZE"),
            ("workers", "WORKERS"),
        ):
            raw = environ.get(_ENV_PREFIX + name)
            if raw is None or raw == "":
                continue
            try:
                values[field] = int(raw)
            except ValueError:
                raise ValueError(f"{_ENV_PREFIX}{name} should be an integer, got {raw!r}") from None

        values.update((k, v) for k, v in overrides.items() if v is not None)
        return cls(**values)

    def replace(self, **changes) -> Settings:
        return dataclasses.replace(self, **{k: v for k, v in changes.items() if v is not None})
