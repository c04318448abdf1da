from __future__ import annotations

import gzip
import os
import re
import typing as t
from dataclasses import dataclass, field

import numpy as np

from ..base import NotAscending, ParseError

__all__ = "ZeroList", "load_zeros", "parse_zeros"

_MULTIPLICITY = re.compile(r"#\s*r\s*=\s*(?P<value>\S*)\s*$")


@dataclass(frozen=True)
class ZeroList:
    """Positive ordinates of nontrivial zeros above the central point, ascending.

    ``central_multiplicity`` is the assumed order of vanishing at s = 1/2,
    which the ordinates themselves never carry.
    """

    ordinates: np.ndarray = field(repr=False)
    central_multiplicity: int = 0

    def __post_init__(self):
        ordinates = np.asarray(self.ordinates, dtype=np.float64)
        if ordinates.ndim != 1:
            raise ValueError("Ordinates should be a flat sequence")
        if ordinates.shape[0] and (ordinates[0] <= 0 or np.any(np.diff(ordinates) <= 0)):
            raise ValueError("Ordinates should be positive and strictly ascending")
        if self.central_multiplicity < 0:
            raise ValueError("Central multiplicity should be nonnegative")
        object.__setattr__(self, "ordinates", ordinates)

    def __len__(self):
        return self.ordinates.shape[0]

    @property
    def height(self) -> float:
        return float(self.ordinates[-1]) if len(self) else 0.0

    def head(self, count: int) -> ZeroList:
        return ZeroList(self.ordinates[:count], self.central_multiplicity)


def parse_zeros(lines: t.Iterable[str]) -> ZeroList:
    """Read ordinates one per line, the way zero calculators print them.

    Blank lines and ``#`` comments are skipped; a ``#r=<int>`` comment sets
    the central multiplicity.
    """
    values: t.List[float] = []
    multiplicity = 0

    for number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if match := _MULTIPLICITY.match(line):
                try:
                    multiplicity = int(match["value"])
                except ValueError:
                    raise ParseError(f"Bad central multiplicity {match['value']!r}", line=number) from None
                if multiplicity < 0:
                    raise ParseError("Central multiplicity should be nonnegative", line=number)
            continue

        try:
            value = float(line)
        except ValueError:
            raise ParseError(f"Bad ordinate {line!r}", line=number) from None
        if not np.isfinite(value) or value <= 0:
            raise ParseError(f"Ordinate should be a positive number, got {line!r}", line=number)
        if values and value <= values[-1]:
            raise NotAscending(number, value, values[-1])
        values.append(value)

    return ZeroList(np.array(values, dtype=np.float64), multiplicity)


def load_zeros(path: t.Union[str, os.PathLike]) -> ZeroList:
    """Read a zeros file; a `.gz` suffix is decompressed on the fly."""
    opener = gzip.open if os.fspath(path).endswith(".gz") else open
    with opener(path, "rt", encoding="utf-8") as lines:
        return parse_zeros(lines)
