from __future__ import annotations

import collections
import dataclasses
import json
import logging
import math
import os
import time
import typing as t
from pathlib import Path

from tqdm import tqdm

from ..base import EmptyInput
from ..formula import KernelParams, Parity, zero_sum_bound
from ..parallel import ordered_map
from ..settings import Settings
from .table import CurveTableRow, read_curve_table

__all__ = (
    "BatchRecord",
    "BatchJob",
    "evaluate_row",
    "run_batch",
    "read_records",
    "sweep_statistic",
    "dichotomy_counts",
    "DEFAULT_MAX_CONDUCTOR",
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_CONDUCTOR = 1000

PathT = t.Union[str, os.PathLike]


@dataclasses.dataclass(frozen=True)
class BatchRecord:
    """ One isogeny class evaluated at one delta, as stored one JSON object per line """

    id: str
    conductor: int
    delta: float
    conductor_term: float
    log2pi_term: float
    gamma_term: float
    prime_term: float
    gamma_quad_error: float
    total: float
    floor_bound: int
    refined_bound: int
    rank: t.Optional[int] = None
    wall_time: t.Optional[float] = None

    @property
    def excess(self) -> t.Optional[int]:
        return None if self.rank is None else self.floor_bound - self.rank

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> BatchRecord:
        return cls(**json.loads(line))


@dataclasses.dataclass(frozen=True)
class BatchJob:
    row: CurveTableRow
    delta: float
    settings: Settings
    timings: bool = False


def evaluate_row(job: BatchJob) -> BatchRecord:
    row = job.row
    started = time.perf_counter()
    breakdown, result = zero_sum_bound(
        row.curve,
        row.log_conductor,
        KernelParams(job.delta),
        Parity.of_rank(row.rank),
        job.settings,
    )
    return BatchRecord(
        id=row.class_id,
        conductor=row.conductor,
        delta=job.delta,
        conductor_term=breakdown.conductor_term,
        log2pi_term=breakdown.log2pi_term,
        gamma_term=breakdown.gamma_term,
        prime_term=breakdown.prime_term,
        gamma_quad_error=breakdown.gamma_quad_error,
        total=breakdown.total,
        floor_bound=result.floor_bound,
        refined_bound=result.refined_bound,
        rank=row.rank,
        wall_time=time.perf_counter() - started if job.timings else None,
    )


def _resume_ids(path: Path) -> t.Set[str]:
    """ Ids already written to ``path``; a torn last line is cut off """
    if not path.exists():
        return set()

    done, keep = set(), 0
    with path.open("r+b") as file:
        for line in file:
            if not line.endswith(b"\n"):
                break
            try:
                done.add(json.loads(line)["id"])
            except (ValueError, KeyError):
                break
            keep += len(line)
        file.truncate(keep)

    return done


def run_batch(
    table: PathT,
    delta: float,
    out: PathT,
    resume: bool = False,
    workers: int = 1,
    max_conductor: t.Optional[int] = DEFAULT_MAX_CONDUCTOR,
    settings: t.Optional[Settings] = None,
    timings: bool = False,
    progress: bool = False,
) -> int:
    """Evaluate every isogeny class of ``table`` and append one record per class to ``out``.

    Classes are fanned out over ``workers`` processes, each evaluating its
    curve single-threaded; records are written in table order as they
    complete, so an interrupted run leaves a valid prefix. Returns the number
    of records written by this call.
    """
    out = Path(out)
    params = KernelParams(delta)
    curve_settings = (settings or Settings()).replace(workers=1)

    done = _resume_ids(out) if resume else set()
    if done:
        logger.info("Resuming %s: %d classes already done", out, len(done))

    rows = [row for row in read_curve_table(table, max_conductor) if row.class_id not in done]
    jobs = (BatchJob(row, params.delta, curve_settings, timings) for row in rows)

    written, violations = 0, 0
    with out.open("a" if resume else "w", encoding="utf-8") as file, tqdm(
        total=len(rows), unit="class", disable=not progress
    ) as bar:
        for record in ordered_map(evaluate_row, jobs, workers):
            file.write(record.to_json() + "\n")
            file.flush()
            written += 1
            bar.update()

            if record.excess is not None and record.excess not in (0, 1):
                violations += 1
                logger.warning(
                    "Class %s: bound %d against rank %d at delta=%s",
                    record.id,
                    record.floor_bound,
                    record.rank,
                    record.delta,
                )

    logger.info("Wrote %d records to %s (%d dichotomy violations)", written, out, violations)
    return written


def read_records(path: PathT) -> t.Iterator[BatchRecord]:
    with open(path, encoding="utf-8") as lines:
        for line in lines:
            if line.strip():
                yield BatchRecord.from_json(line)


def sweep_statistic(records: t.Union[PathT, t.Iterable[BatchRecord]]) -> float:
    """ Mean of (4 pi / log N) * total over the records, close to 1 for large sweeps at delta 2 """
    if isinstance(records, (str, os.PathLike)):
        records = read_records(records)

    values = [4 * math.pi * record.total / math.log(record.conductor) for record in records]
    if not values:
        raise EmptyInput("No records to average")
    return math.fsum(values) / len(values)


def dichotomy_counts(records: t.Union[PathT, t.Iterable[BatchRecord]]) -> t.Counter[t.Optional[int]]:
    """ How many records have floor_bound - rank equal to each value """
    if isinstance(records, (str, os.PathLike)):
        records = read_records(records)
    return collections.Counter(record.excess for record in records)
