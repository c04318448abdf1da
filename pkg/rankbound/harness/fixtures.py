from __future__ import annotations

import functools
import json
import typing as t
from dataclasses import dataclass
from importlib import resources

from ..curves import WeierstrassCurve, check_bad_primes, curve_from_ainvs
from ..formula import KernelParams, Parity

__all__ = "RecordCurve", "record_curves", "RECORD_CURVE_NAMES"

RECORD_CURVE_NAMES = "E20", "E21", "E22", "E23", "E24", "E28"


@dataclass(frozen=True)
class RecordCurve:
    """A high-rank curve with ``known_rank`` independent points.

    ``log_conductor`` is carried to two decimals, which is all the published
    tables give for these curves.
    """

    name: str
    ainvs: t.Tuple[int, ...]
    known_rank: int
    log_conductor: float
    delta: float
    parity: Parity
    bad_primes: t.Optional[t.Tuple[int, ...]] = None

    @property
    def curve(self) -> WeierstrassCurve:
        curve = curve_from_ainvs(*self.ainvs)
        if self.bad_primes is not None:
            check_bad_primes(curve, self.bad_primes)
        return curve

    @property
    def params(self) -> KernelParams:
        return KernelParams(self.delta)


@functools.lru_cache(maxsize=None)
def record_curves() -> t.Dict[str, RecordCurve]:
    raw = json.loads(resources.files("rankbound").joinpath("data/record_curves.json").read_text(encoding="utf-8"))
    return {
        entry["name"]: RecordCurve(
            name=entry["name"],
            ainvs=tuple(entry["ainvs"]),
            known_rank=entry["known_rank"],
            log_conductor=entry["log_conductor"],
            delta=entry["delta"],
            parity=Parity(entry["parity"]),
            bad_primes=tuple(entry["bad_primes"]) if entry["bad_primes"] is not None else None,
        )
        for entry in raw
    }
